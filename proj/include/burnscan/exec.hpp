#pragma once

#include "burnscan/errors.hpp"
#include "burnscan/grid.hpp"

#include <functional>
#include <vector>

namespace burnscan {

/// Tile-parallel execution policy. threads == 0 means hardware concurrency;
/// threads == 1 runs inline. Results are bit-identical for any combination
/// of tile size and worker count as long as the per-pixel function is pure.
struct ExecPolicy {
    int threads = 1;
    int tile = 256;
};

int resolved_threads(const ExecPolicy& exec);
int tile_count(int width, int height, int tile);

/// Invoke fn once per tile of a width x height grid. Tiles are indexed
/// row-major; each tile is visited exactly once, possibly concurrently.
void for_each_tile(int width, int height, const ExecPolicy& exec,
                   const std::function<void(int tile_index, const Window&)>& fn);

namespace detail {
inline void check_inputs_aligned(const Grid& first) { (void)first; }

template <class... Gs>
void check_inputs_aligned(const Grid& first, const Grid& next, const Gs&... rest) {
    require_aligned(first, next, "map_tiled");
    check_inputs_aligned(first, rest...);
}
} // namespace detail

/// Apply a pure per-pixel function over one or more aligned grids.
/// f receives one float per input (NaN where missing) and returns the output
/// sample. Output equals the sequential whole-grid application for every
/// tile size >= 1 and any worker count.
template <class F, class... Gs>
Grid map_tiled(GridKind out_kind, const ExecPolicy& exec, F&& f, const Grid& g0, const Gs&... rest) {
    detail::check_inputs_aligned(g0, rest...);
    Grid out(g0.width(), g0.height(), g0.transform(), out_kind);
    float* dst = out.values().data();
    const int w = g0.width();
    for_each_tile(g0.width(), g0.height(), exec, [&](int, const Window& win) {
        for (int r = win.row_off; r < win.row_off + win.height; ++r) {
            size_t base = static_cast<size_t>(r) * w;
            for (int c = win.col_off; c < win.col_off + win.width; ++c) {
                size_t i = base + c;
                dst[i] = f(g0.values()[i], rest.values()[i]...);
            }
        }
    });
    return out;
}

/// Runtime-arity variant for scene stacks: f receives the per-pixel column
/// of sample values in stack order.
template <class F>
Grid map_tiled_stack(const std::vector<const Grid*>& inputs, GridKind out_kind, const ExecPolicy& exec, F&& f) {
    if (inputs.empty()) fail(Errc::EmptyStack, "map_tiled_stack requires at least one grid");
    for (const Grid* g : inputs) require_aligned(*inputs.front(), *g, "map_tiled_stack");
    const Grid& g0 = *inputs.front();
    Grid out(g0.width(), g0.height(), g0.transform(), out_kind);
    float* dst = out.values().data();
    const int w = g0.width();
    const size_t n = inputs.size();
    for_each_tile(g0.width(), g0.height(), exec, [&](int, const Window& win) {
        std::vector<float> column(n);
        for (int r = win.row_off; r < win.row_off + win.height; ++r) {
            size_t base = static_cast<size_t>(r) * w;
            for (int c = win.col_off; c < win.col_off + win.width; ++c) {
                size_t i = base + c;
                for (size_t k = 0; k < n; ++k) column[k] = inputs[k]->values()[i];
                dst[i] = f(std::span<const float>(column));
            }
        }
    });
    return out;
}

/// Per-tile reduction: run per_tile over every tile, collect results in tile
/// index order, then fold sequentially (deterministic for any scheduling).
template <class T, class PerTile, class Fold>
T reduce_tiled(int width, int height, const ExecPolicy& exec, T init, PerTile&& per_tile, Fold&& fold) {
    std::vector<T> parts(static_cast<size_t>(tile_count(width, height, exec.tile)), init);
    for_each_tile(width, height, exec, [&](int idx, const Window& win) { parts[idx] = per_tile(win); });
    T acc = init;
    for (const T& p : parts) acc = fold(acc, p);
    return acc;
}

} // namespace burnscan

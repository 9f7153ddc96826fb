#include "burnscan/exec.hpp"

#include <atomic>
#include <mutex>
#include <thread>

namespace burnscan {

int resolved_threads(const ExecPolicy& exec) {
    if (exec.threads > 0) return exec.threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int tile_count(int width, int height, int tile) {
    if (tile < 1) fail(Errc::InvalidSpec, "tile size must be >= 1");
    int tx = (width + tile - 1) / tile;
    int ty = (height + tile - 1) / tile;
    return tx * ty;
}

void for_each_tile(int width, int height, const ExecPolicy& exec,
                   const std::function<void(int, const Window&)>& fn) {
    const int tile = exec.tile;
    const int n = tile_count(width, height, tile);
    const int tx = (width + tile - 1) / tile;
    auto window_of = [&](int idx) {
        int tc = idx % tx, tr = idx / tx;
        Window w;
        w.col_off = tc * tile;
        w.row_off = tr * tile;
        w.width = std::min(tile, width - w.col_off);
        w.height = std::min(tile, height - w.row_off);
        return w;
    };

    int workers = std::min(resolved_threads(exec), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i, window_of(i));
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mtx;
    auto body = [&] {
        for (;;) {
            int i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i, window_of(i));
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mtx);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace burnscan

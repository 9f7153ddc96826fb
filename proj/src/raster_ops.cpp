#include "burnscan/raster_ops.hpp"

#include "burnscan/errors.hpp"

#include <algorithm>
#include <cmath>

namespace burnscan {

namespace {

// snap tolerance for lattice-aligned sample positions; keeps identity
// resampling and repeated clips exact under floating-point round-off
constexpr double kSnapEps = 1e-9;

double snap_frac(double f) {
    if (f < kSnapEps) return 0.0;
    if (f > 1.0 - kSnapEps) return 1.0;
    return f;
}

int floor_snapped(double v) { return static_cast<int>(std::floor(v + kSnapEps)); }
int ceil_snapped(double v) { return static_cast<int>(std::ceil(v - kSnapEps)); }

} // namespace

Grid resample_to(const Grid& src, const GeoTransform& target, int target_w, int target_h,
                 ResampleMethod method, const ExecPolicy& exec) {
    const GeoTransform& st = src.transform();
    if (st.crs != target.crs)
        fail(Errc::CrsMismatch, "resample: src CRS '" + st.crs + "' vs target '" + target.crs + "'");
    if (method == ResampleMethod::Bilinear && kind_is_integer(src.kind()))
        fail(Errc::MethodKindMismatch,
             std::string("bilinear resampling is invalid for ") + kind_name(src.kind()) + " grids");

    if (st == target && src.width() == target_w && src.height() == target_h) return src;

    Grid out(target_w, target_h, target, src.kind());
    const float* sv = src.values().data();
    float* dst = out.values().data();
    const int sw = src.width(), sh = src.height();
    const Bounds cov = src.bounds();

    for_each_tile(target_w, target_h, exec, [&](int, const Window& win) {
        for (int r = win.row_off; r < win.row_off + win.height; ++r) {
            for (int c = win.col_off; c < win.col_off + win.width; ++c) {
                auto [x, y] = pixel_center(target, c, r);
                float& o = dst[static_cast<size_t>(r) * target_w + c];
                if (x < cov.min_x || x >= cov.max_x || y <= cov.min_y || y > cov.max_y) {
                    o = Grid::kNoData;
                    continue;
                }
                if (method == ResampleMethod::Nearest) {
                    auto [sc, sr] = pixel_of(st, x, y);
                    if (sc < 0 || sc >= sw || sr < 0 || sr >= sh) {
                        o = Grid::kNoData;
                    } else {
                        o = sv[static_cast<size_t>(sr) * sw + sc];
                    }
                    continue;
                }
                // bilinear over the four surrounding pixel centers
                double fc = (x - st.origin_x) / st.pixel_w - 0.5;
                double fr = (st.origin_y - y) / st.pixel_h - 0.5;
                int c0 = static_cast<int>(std::floor(fc));
                int r0 = static_cast<int>(std::floor(fr));
                double fx = snap_frac(fc - c0);
                double fy = snap_frac(fr - r0);
                if (fx == 1.0) { ++c0; fx = 0.0; }
                if (fy == 1.0) { ++r0; fy = 0.0; }
                const double wts[4] = {(1 - fx) * (1 - fy), fx * (1 - fy), (1 - fx) * fy, fx * fy};
                const int cols[4] = {c0, c0 + 1, c0, c0 + 1};
                const int rows[4] = {r0, r0, r0 + 1, r0 + 1};
                double acc = 0.0, wsum = 0.0;
                for (int k = 0; k < 4; ++k) {
                    if (wts[k] == 0.0) continue;
                    if (cols[k] < 0 || cols[k] >= sw || rows[k] < 0 || rows[k] >= sh) continue;
                    float v = sv[static_cast<size_t>(rows[k]) * sw + cols[k]];
                    if (Grid::is_nodata(v)) continue;
                    acc += wts[k] * v;
                    wsum += wts[k];
                }
                o = wsum > 0.0 ? static_cast<float>(acc / wsum) : Grid::kNoData;
            }
        }
    });
    return out;
}

Grid clip(const Grid& src, const RoiPolygon& roi, const ExecPolicy& exec) {
    const GeoTransform& st = src.transform();
    if (st.crs != roi.crs())
        fail(Errc::CrsMismatch, "clip: grid CRS '" + st.crs + "' vs ROI '" + roi.crs() + "'");
    Bounds bb = roi.bbox();
    Bounds cov = src.bounds();
    if (!bb.intersects(cov)) fail(Errc::EmptyIntersection, "ROI is disjoint from the grid extent");

    int c0 = std::max(0, floor_snapped((bb.min_x - st.origin_x) / st.pixel_w));
    int c1 = std::min(src.width(), ceil_snapped((bb.max_x - st.origin_x) / st.pixel_w));
    int r0 = std::max(0, floor_snapped((st.origin_y - bb.max_y) / st.pixel_h));
    int r1 = std::min(src.height(), ceil_snapped((st.origin_y - bb.min_y) / st.pixel_h));
    if (c0 >= c1 || r0 >= r1) fail(Errc::EmptyIntersection, "ROI covers no pixel of the grid");

    GeoTransform ot = st;
    ot.origin_x = st.origin_x + c0 * st.pixel_w;
    ot.origin_y = st.origin_y - r0 * st.pixel_h;
    Grid out(c1 - c0, r1 - r0, ot, src.kind());
    const float* sv = src.values().data();
    float* dst = out.values().data();
    const int ow = out.width();

    for_each_tile(out.width(), out.height(), exec, [&](int, const Window& win) {
        for (int r = win.row_off; r < win.row_off + win.height; ++r) {
            for (int c = win.col_off; c < win.col_off + win.width; ++c) {
                auto [x, y] = pixel_center(ot, c, r);
                float v = sv[static_cast<size_t>(r + r0) * src.width() + (c + c0)];
                dst[static_cast<size_t>(r) * ow + c] = roi.contains(x, y) ? v : Grid::kNoData;
            }
        }
    });
    return out;
}

} // namespace burnscan

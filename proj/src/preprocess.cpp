#include "burnscan/preprocess.hpp"

#include "burnscan/errors.hpp"
#include "burnscan/raster_ops.hpp"

#include <algorithm>
#include <cmath>

namespace burnscan {

namespace {

void check_codes(const std::vector<int>& v, int lo, int hi, const char* what) {
    for (int c : v)
        if (c < lo || c > hi)
            fail(Errc::InvalidSpec, std::string(what) + " " + std::to_string(c) + " outside [" +
                                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

} // namespace

MaskPolicy MaskPolicy::defaults(Sensor sensor) {
    switch (sensor) {
    case Sensor::Sentinel2L2A: return scl({3, 8, 9, 10});
    case Sensor::Landsat8TOA: return bits({2, 3, 4});
    default: return none();
    }
}

MaskPolicy MaskPolicy::scl(std::vector<int> codes) {
    check_codes(codes, 0, 11, "SCL class code");
    MaskPolicy p;
    p.mode = Mode::SclClasses;
    p.scl_codes = std::move(codes);
    return p;
}

MaskPolicy MaskPolicy::bits(std::vector<int> positions) {
    check_codes(positions, 0, 15, "QA bit position");
    MaskPolicy p;
    p.mode = Mode::QaBits;
    p.qa_bits = std::move(positions);
    return p;
}

bool MaskPolicy::masks(float qa_sample) const {
    if (mode == Mode::None) return false;
    if (Grid::is_nodata(qa_sample)) return true; // unknown state counts as masked
    long code = std::lround(qa_sample);
    if (mode == Mode::SclClasses)
        return std::find(scl_codes.begin(), scl_codes.end(), static_cast<int>(code)) != scl_codes.end();
    for (int b : qa_bits)
        if ((code >> b) & 1) return true;
    return false;
}

CompositeMethod parse_composite_method(const std::string& s) {
    if (s == "mosaic") return CompositeMethod::Mosaic;
    if (s == "median") return CompositeMethod::Median;
    fail(Errc::ConfigError, "unknown composite method '" + s + "' (mosaic|median)");
}

const char* composite_method_name(CompositeMethod m) {
    return m == CompositeMethod::Mosaic ? "mosaic" : "median";
}

Grid apply_mask(const Grid& band, const Grid& qa, const MaskPolicy& policy, const ExecPolicy& exec) {
    if (policy.mode == MaskPolicy::Mode::None) return band;
    require_aligned(band, qa, "apply_mask");
    return map_tiled(band.kind(), exec,
                     [&policy](float v, float q) { return policy.masks(q) ? Grid::kNoData : v; }, band, qa);
}

Grid composite(const std::vector<const Grid*>& scenes, CompositeMethod method, const ExecPolicy& exec) {
    if (scenes.empty()) fail(Errc::EmptyStack, "composite of an empty scene stack");
    if (method == CompositeMethod::Mosaic) {
        return map_tiled_stack(scenes, scenes.front()->kind(), exec, [](std::span<const float> column) {
            for (size_t k = column.size(); k-- > 0;)
                if (!Grid::is_nodata(column[k])) return column[k];
            return Grid::kNoData;
        });
    }
    return map_tiled_stack(scenes, scenes.front()->kind(), exec, [](std::span<const float> column) {
        float vals[64];
        std::vector<float> spill;
        size_t n = 0;
        bool small = column.size() <= 64;
        if (!small) spill.reserve(column.size());
        for (float v : column) {
            if (Grid::is_nodata(v)) continue;
            if (small) vals[n++] = v;
            else spill.push_back(v);
        }
        float* p = small ? vals : spill.data();
        if (!small) n = spill.size();
        if (n == 0) return Grid::kNoData;
        std::sort(p, p + n);
        if (n % 2 == 1) return p[n / 2];
        return (p[n / 2 - 1] + p[n / 2]) / 2.0f;
    });
}

Grid composite(const std::vector<Grid>& scenes, CompositeMethod method, const ExecPolicy& exec) {
    std::vector<const Grid*> ptrs;
    ptrs.reserve(scenes.size());
    for (const Grid& g : scenes) ptrs.push_back(&g);
    return composite(ptrs, method, exec);
}

MaskPolicy MaskSetting::for_sensor(Sensor s) const {
    switch (kind) {
    case Kind::None: return MaskPolicy::none();
    case Kind::Custom: return custom;
    default: return MaskPolicy::defaults(s);
    }
}

BandMap default_band_map() {
    return {
        {Sensor::Sentinel2L2A, SensorBands{"B8", "B12", "SCL"}},
        {Sensor::Landsat8TOA, SensorBands{"B5", "B7", ""}},
    };
}

GeoTransform analysis_transform(const GeoTransform& finest, const Bounds& roi_bbox, int* out_w, int* out_h) {
    // snap the bbox outward to the finest grid's lattice so that grid
    // resamples onto itself exactly
    constexpr double kSnapEps = 1e-9;
    double c0 = std::floor((roi_bbox.min_x - finest.origin_x) / finest.pixel_w + kSnapEps);
    double c1 = std::ceil((roi_bbox.max_x - finest.origin_x) / finest.pixel_w - kSnapEps);
    double r0 = std::floor((finest.origin_y - roi_bbox.max_y) / finest.pixel_h + kSnapEps);
    double r1 = std::ceil((finest.origin_y - roi_bbox.min_y) / finest.pixel_h - kSnapEps);
    GeoTransform t = finest;
    t.origin_x = finest.origin_x + c0 * finest.pixel_w;
    t.origin_y = finest.origin_y - r0 * finest.pixel_h;
    *out_w = static_cast<int>(c1 - c0);
    *out_h = static_cast<int>(r1 - r0);
    if (*out_w <= 0 || *out_h <= 0) fail(Errc::EmptyIntersection, "ROI snaps to an empty analysis grid");
    return t;
}

std::map<std::string, Grid> build_composite(const std::vector<SceneMeta>& scenes, const CompositeRequest& req,
                                            const ExecPolicy& exec) {
    std::vector<SceneMeta> kept = filter_scenes(scenes, req.window, req.max_cloud, &req.roi);
    if (kept.empty())
        fail(Errc::NoScenesInWindow, "no scenes remain in " + to_string(req.window.start) + " to " +
                                         to_string(req.window.end) + " after filtering");

    auto bands_for = [&](const SceneMeta& s) -> const SensorBands& {
        auto it = req.band_map.find(s.sensor);
        if (it == req.band_map.end())
            fail(Errc::ConfigError, std::string("no band mapping for sensor ") + sensor_name(s.sensor));
        return it->second;
    };
    auto resolve_role = [&](const SceneMeta& s, const std::string& role) -> std::string {
        const SensorBands& sb = bands_for(s);
        if (role == "nir") return sb.nir;
        if (role == "swir2") return sb.swir2;
        if (role == "qa") return sb.qa;
        return role; // literal band name
    };

    // load every requested band of every scene; the finest grid defines the
    // analysis lattice
    struct LoadedScene {
        const SceneMeta* meta;
        std::map<std::string, Grid> bands;
        Grid qa; // optional; width 0 when absent
    };
    std::vector<LoadedScene> loaded;
    loaded.reserve(kept.size());
    for (const SceneMeta& s : kept) {
        LoadedScene ls;
        ls.meta = &s;
        for (const std::string& role : req.bands)
            ls.bands.emplace(role, load_band(s, resolve_role(s, role), GridKind::Reflectance));
        MaskPolicy policy = req.mask.for_sensor(s.sensor);
        std::string qa_name = resolve_role(s, "qa");
        if (policy.mode != MaskPolicy::Mode::None && !qa_name.empty() && s.bands.count(qa_name))
            ls.qa = load_band(s, qa_name, GridKind::Categorical);
        loaded.push_back(std::move(ls));
    }

    // finest participating resolution defines the analysis lattice; ties
    // keep the first in stack order
    const GeoTransform* finest = nullptr;
    double finest_area = 0;
    for (const LoadedScene& ls : loaded) {
        for (const auto& [role, g] : ls.bands) {
            double area = g.transform().pixel_w * g.transform().pixel_h;
            if (!finest || area < finest_area) {
                finest = &g.transform();
                finest_area = area;
            }
        }
    }

    int aw = 0, ah = 0;
    GeoTransform at = analysis_transform(*finest, req.roi.bbox(), &aw, &ah);

    std::map<std::string, Grid> result;
    for (const std::string& role : req.bands) {
        std::vector<Grid> stack;
        stack.reserve(loaded.size());
        for (LoadedScene& ls : loaded) {
            Grid band = resample_to(ls.bands.at(role), at, aw, ah, ResampleMethod::Bilinear, exec);
            MaskPolicy policy = req.mask.for_sensor(ls.meta->sensor);
            if (policy.mode != MaskPolicy::Mode::None && ls.qa.width() > 0) {
                Grid qa = resample_to(ls.qa, at, aw, ah, ResampleMethod::Nearest, exec);
                band = apply_mask(band, qa, policy, exec);
            }
            stack.push_back(std::move(band));
        }
        Grid combined = composite(stack, req.method, exec);
        result.emplace(role, clip(combined, req.roi, exec));
    }
    return result;
}

} // namespace burnscan

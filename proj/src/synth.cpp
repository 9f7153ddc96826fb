#include "burnscan/synth.hpp"

#include "burnscan/errors.hpp"
#include "burnscan/severity.hpp"
#include "burnscan/tiff_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace burnscan {

using nlohmann::json;
namespace fs = std::filesystem;

double Pcg32::gauss() {
    double u1 = (static_cast<double>(next_u32()) + 1.0) * (1.0 / 4294967296.0); // (0, 1]
    double u2 = uniform();
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Pcg32 stream_for(uint64_t seed, uint64_t purpose) {
    return Pcg32(splitmix64(seed ^ splitmix64(purpose)), purpose);
}

constexpr std::array<std::array<double, 2>, 8> kDefaultScarMeters = {{
    {-950, -739}, {-158, -1109}, {686, -898}, {1162, -158},
    {898, 549},   {317, 1056},   {-581, 898}, {-1109, 158},
}};

// smoothstep-interpolated lattice noise ("value noise"); contiguous blobs
// appear once thresholded
class ValueNoise {
public:
    ValueNoise(Pcg32& rng, int width, int height, double cell) : cell_(cell) {
        nx_ = static_cast<int>(std::floor(width / cell)) + 2;
        ny_ = static_cast<int>(std::floor(height / cell)) + 2;
        lattice_.resize(static_cast<size_t>(nx_) * ny_);
        for (double& v : lattice_) v = rng.uniform();
    }

    double at(int px, int py) const {
        double gx = px / cell_, gy = py / cell_;
        int i0 = static_cast<int>(gx), j0 = static_cast<int>(gy);
        double fx = smooth(gx - i0), fy = smooth(gy - j0);
        double v00 = l(i0, j0), v10 = l(i0 + 1, j0), v01 = l(i0, j0 + 1), v11 = l(i0 + 1, j0 + 1);
        double a = v00 + (v10 - v00) * fx;
        double b = v01 + (v11 - v01) * fx;
        return a + (b - a) * fy;
    }

private:
    static double smooth(double t) { return t * t * (3.0 - 2.0 * t); }
    double l(int i, int j) const {
        i = std::clamp(i, 0, nx_ - 1);
        j = std::clamp(j, 0, ny_ - 1);
        return lattice_[static_cast<size_t>(j) * nx_ + i];
    }
    double cell_;
    int nx_, ny_;
    std::vector<double> lattice_;
};

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

void write_json_file(const json& doc, const fs::path& path) {
    std::ofstream f(path);
    if (!f) fail(Errc::IoError, "cannot create '" + path.string() + "'");
    f << doc.dump(2) << "\n";
}

} // namespace

GeoTransform SynthSpec::grid_transform() const {
    auto [mx, my] = meters_per_degree(center_lat);
    GeoTransform t;
    t.crs = crs;
    t.pixel_w = pixel_m / mx;
    t.pixel_h = pixel_m / my;
    t.origin_x = center_lon - width * t.pixel_w / 2.0;
    t.origin_y = center_lat + height * t.pixel_h / 2.0;
    return t;
}

RoiPolygon SynthSpec::burn_polygon() const {
    auto [mx, my] = meters_per_degree(center_lat);
    const auto& src = burn_polygon_m;
    std::vector<std::array<double, 2>> ring;
    if (src.empty()) {
        for (const auto& v : kDefaultScarMeters)
            ring.push_back({center_lon + v[0] / mx, center_lat + v[1] / my});
    } else {
        for (const auto& v : src) ring.push_back({center_lon + v[0] / mx, center_lat + v[1] / my});
    }
    return RoiPolygon(std::move(ring), crs);
}

void SynthSpec::validate() const {
    if (width < 8 || height < 8) fail(Errc::InvalidSpec, "grid too small");
    if (n_pre_scenes < 1 || n_post_scenes < 1) fail(Errc::InvalidSpec, "need at least one scene per window");
    if (cloud_fraction < 0.0 || cloud_fraction > 1.0) fail(Errc::InvalidSpec, "cloud_fraction outside [0, 1]");
    if (cloud_blob_scale < 2.0) fail(Errc::InvalidSpec, "cloud_blob_scale must be >= 2 pixels");
    if (burn_doy < 1 || burn_doy > (is_leap_year(burn_year) ? 366 : 365))
        fail(Errc::InvalidSpec, "burn_doy outside the burn year");
    if (!pre_window.contains(pre_window.start) || !post_window.contains(post_window.start))
        fail(Errc::InvalidSpec, "degenerate scene windows");
    if (mcd64_pixel_m < pixel_m) fail(Errc::InvalidSpec, "mcd64 pixels should be coarser than the scene grid");

    const ReflectanceModel& m = reflectance;
    for (double v : {m.pre_nir, m.pre_swir2, m.post_nir_burn, m.post_swir2_burn, m.cloud_nir, m.cloud_swir2})
        if (v <= 0.0 || v > 1.0) fail(Errc::InvalidSpec, "reflectance means must lie in (0, 1]");
    if (m.noise_sigma < 0.0 || m.noise_sigma > 0.02)
        fail(Errc::InvalidSpec, "noise_sigma outside [0, 0.02]");

    // separability: burned pixels must clear the top severity break and
    // unburned pixels must stay inside the unburned band
    auto nbr_of = [](double nir, double swir2) { return (nir - swir2) / (nir + swir2); };
    SeverityThresholds defaults;
    double burn_dnbr = nbr_of(m.pre_nir, m.pre_swir2) - nbr_of(m.post_nir_burn, m.post_swir2_burn);
    if (!(burn_dnbr > defaults.breaks().back()))
        fail(Errc::InvalidSpec, "burn model dNBR " + std::to_string(burn_dnbr) +
                                    " does not exceed the highest severity threshold");
}

SynthSpec SynthSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open synth spec '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("synth spec: ") + e.what());
    }

    SynthSpec s;
    try {
        if (doc.contains("seed")) s.seed = doc["seed"].get<uint64_t>();
        if (doc.contains("width")) s.width = doc["width"].get<int>();
        if (doc.contains("height")) s.height = doc["height"].get<int>();
        if (doc.contains("crs")) s.crs = doc["crs"].get<std::string>();
        if (doc.contains("center")) {
            s.center_lon = doc["center"][0].get<double>();
            s.center_lat = doc["center"][1].get<double>();
        }
        if (doc.contains("pixel_m")) s.pixel_m = doc["pixel_m"].get<double>();
        if (doc.contains("burn_polygon_m"))
            for (const auto& v : doc["burn_polygon_m"])
                s.burn_polygon_m.push_back({v[0].get<double>(), v[1].get<double>()});
        if (doc.contains("burn_year")) s.burn_year = doc["burn_year"].get<int>();
        if (doc.contains("burn_doy")) s.burn_doy = doc["burn_doy"].get<int>();
        if (doc.contains("n_pre_scenes")) s.n_pre_scenes = doc["n_pre_scenes"].get<int>();
        if (doc.contains("n_post_scenes")) s.n_post_scenes = doc["n_post_scenes"].get<int>();
        if (doc.contains("cloud_fraction")) s.cloud_fraction = doc["cloud_fraction"].get<double>();
        if (doc.contains("cloud_blob_scale")) s.cloud_blob_scale = doc["cloud_blob_scale"].get<double>();
        if (doc.contains("cloud_windows")) {
            std::string cw = doc["cloud_windows"].get<std::string>();
            if (cw == "both") s.cloud_windows = CloudWindows::Both;
            else if (cw == "pre") s.cloud_windows = CloudWindows::PreOnly;
            else if (cw == "post") s.cloud_windows = CloudWindows::PostOnly;
            else fail(Errc::InvalidSpec, "cloud_windows must be both|pre|post");
        }
        if (doc.contains("cloud_avoid_burn")) s.cloud_avoid_burn = doc["cloud_avoid_burn"].get<bool>();
        if (doc.contains("pre_window"))
            s.pre_window = make_window(parse_date(doc["pre_window"]["start"].get<std::string>()),
                                       parse_date(doc["pre_window"]["end"].get<std::string>()));
        if (doc.contains("post_window"))
            s.post_window = make_window(parse_date(doc["post_window"]["start"].get<std::string>()),
                                        parse_date(doc["post_window"]["end"].get<std::string>()));
        if (doc.contains("reflectance")) {
            const json& r = doc["reflectance"];
            auto opt = [&r](const char* k, double& slot) {
                if (r.contains(k)) slot = r[k].get<double>();
            };
            opt("pre_nir", s.reflectance.pre_nir);
            opt("pre_swir2", s.reflectance.pre_swir2);
            opt("post_nir_burn", s.reflectance.post_nir_burn);
            opt("post_swir2_burn", s.reflectance.post_swir2_burn);
            opt("cloud_nir", s.reflectance.cloud_nir);
            opt("cloud_swir2", s.reflectance.cloud_swir2);
            opt("noise_sigma", s.reflectance.noise_sigma);
        }
        if (doc.contains("n_firms_points")) s.n_firms_points = doc["n_firms_points"].get<int>();
        if (doc.contains("mcd64_pixel_m")) s.mcd64_pixel_m = doc["mcd64_pixel_m"].get<double>();
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string("synth spec: ") + e.what());
    }
    return s;
}

SynthResult generate(const SynthSpec& spec, const std::string& out_dir) {
    spec.validate();

    const GeoTransform tf = spec.grid_transform();
    const RoiPolygon scar = spec.burn_polygon();
    const int w = spec.width, h = spec.height;
    const size_t npx = static_cast<size_t>(w) * h;

    fs::path root(out_dir);
    fs::create_directories(root / "scenes");

    // burn membership at pixel centers, shared by every layer
    std::vector<uint8_t> inside(npx, 0);
    size_t burned_px = 0;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            auto [x, y] = pixel_center(tf, c, r);
            if (scar.contains(x, y)) {
                inside[static_cast<size_t>(r) * w + c] = 1;
                ++burned_px;
            }
        }
    }

    const ReflectanceModel& model = spec.reflectance;
    const int n_total = spec.n_pre_scenes + spec.n_post_scenes;

    json manifests[2];
    for (json& m : manifests) {
        m["crs"] = spec.crs;
        m["scenes"] = json::array();
    }

    std::vector<uint8_t> cloudy(npx);
    std::vector<float> band(npx);
    Bounds ext = grid_bounds(tf, w, h);

    for (int k = 0; k < n_total; ++k) {
        bool is_post = k >= spec.n_pre_scenes;
        int idx_in_window = is_post ? k - spec.n_pre_scenes : k;
        const DateWindow& window = is_post ? spec.post_window : spec.pre_window;
        long long span = to_day_number(window.end) - to_day_number(window.start);
        int n_in_window = is_post ? spec.n_post_scenes : spec.n_pre_scenes;
        Date date = add_days(window.start,
                             static_cast<int>((idx_in_window + 1) * span / (n_in_window + 1)));

        bool wants_clouds = spec.cloud_fraction > 0.0 &&
                            (spec.cloud_windows == CloudWindows::Both ||
                             (is_post ? spec.cloud_windows == CloudWindows::PostOnly
                                      : spec.cloud_windows == CloudWindows::PreOnly));
        std::fill(cloudy.begin(), cloudy.end(), 0);
        if (wants_clouds) {
            if (spec.cloud_fraction >= 1.0) {
                std::fill(cloudy.begin(), cloudy.end(), 1);
            } else {
                Pcg32 rng = stream_for(spec.seed, static_cast<uint64_t>(k) * 8 + 0);
                ValueNoise noise(rng, w, h, spec.cloud_blob_scale);
                std::vector<float> field(npx);
                for (int r = 0; r < h; ++r)
                    for (int c = 0; c < w; ++c)
                        field[static_cast<size_t>(r) * w + c] = static_cast<float>(noise.at(c, r));
                std::vector<float> sorted(field);
                size_t cut = static_cast<size_t>((1.0 - spec.cloud_fraction) * npx);
                cut = std::min(cut, npx - 1);
                std::nth_element(sorted.begin(), sorted.begin() + cut, sorted.end());
                float threshold = sorted[cut];
                for (size_t i = 0; i < npx; ++i) cloudy[i] = field[i] > threshold ? 1 : 0;
            }
            if (spec.cloud_avoid_burn)
                for (size_t i = 0; i < npx; ++i)
                    if (inside[i]) cloudy[i] = 0;
        }
        size_t n_cloudy = 0;
        for (uint8_t c : cloudy) n_cloudy += c;

        char scene_id[32];
        std::snprintf(scene_id, sizeof(scene_id), "%s_%02d", is_post ? "post" : "pre", idx_in_window);

        // reflectance bands: DN = round(reflectance * 10000), int16
        auto emit_band = [&](const char* band_name, uint64_t channel, double clear_mean, double burn_mean,
                             double cloud_mean) {
            Pcg32 rng = stream_for(spec.seed, static_cast<uint64_t>(k) * 8 + channel);
            for (size_t i = 0; i < npx; ++i) {
                double mean = cloudy[i] ? cloud_mean : (is_post && inside[i] ? burn_mean : clear_mean);
                double v = mean + model.noise_sigma * rng.gauss();
                v = std::clamp(v, 0.0001, 1.0);
                band[i] = static_cast<float>(std::lround(v * 10000.0));
            }
            Grid g(w, h, tf, GridKind::Reflectance, std::vector<float>(band));
            fs::path p = root / "scenes" / (std::string(scene_id) + "_" + band_name + ".tif");
            write_geotiff(g, p.string(), TiffEncoding::Int16);
            return std::string("scenes/") + scene_id + "_" + band_name + ".tif";
        };
        std::string b8 = emit_band("B8", 1, model.pre_nir, model.post_nir_burn, model.cloud_nir);
        std::string b12 = emit_band("B12", 2, model.pre_swir2, model.post_swir2_burn, model.cloud_swir2);

        for (size_t i = 0; i < npx; ++i) band[i] = cloudy[i] ? 9.0f : 4.0f; // SCL: cloud-high vs vegetation
        Grid qa(w, h, tf, GridKind::Categorical, std::vector<float>(band));
        fs::path qa_path = root / "scenes" / (std::string(scene_id) + "_SCL.tif");
        write_geotiff(qa, qa_path.string(), TiffEncoding::Int16);

        json entry;
        entry["scene_id"] = scene_id;
        entry["sensor"] = "Sentinel2L2A";
        entry["acq_date"] = to_string(date);
        entry["cloud_percent"] = 100.0 * static_cast<double>(n_cloudy) / static_cast<double>(npx);
        entry["bounds"] = {ext.min_x, ext.min_y, ext.max_x, ext.max_y};
        entry["scale"] = 0.0001;
        entry["bands"] = {{"B8", b8}, {"B12", b12}, {"SCL", std::string("scenes/") + scene_id + "_SCL.tif"}};
        manifests[is_post ? 1 : 0]["scenes"].push_back(entry);
    }

    write_json_file(manifests[0], root / "manifest_pre.json");
    write_json_file(manifests[1], root / "manifest_post.json");

    // ground truth at the analysis grid
    for (size_t i = 0; i < npx; ++i) band[i] = inside[i] ? 1.0f : 0.0f;
    Grid truth(w, h, tf, GridKind::Mask, std::vector<float>(band));
    write_geotiff(truth, (root / "truth_mask.tif").string(), TiffEncoding::Int16);
    double truth_area = mask_area_ha(truth);

    // MCD64A1-style burn dates at the coarse grid
    auto [mx, my] = meters_per_degree(spec.center_lat);
    GeoTransform tf500 = tf;
    tf500.pixel_w = spec.mcd64_pixel_m / mx;
    tf500.pixel_h = spec.mcd64_pixel_m / my;
    int w500 = static_cast<int>(std::ceil((ext.max_x - ext.min_x) / tf500.pixel_w));
    int h500 = static_cast<int>(std::ceil((ext.max_y - ext.min_y) / tf500.pixel_h));
    Grid burn_dates(w500, h500, tf500, GridKind::BurnDate, 0.0f);
    size_t mcd64_burned = 0;
    for (int r = 0; r < h500; ++r) {
        for (int c = 0; c < w500; ++c) {
            auto [x, y] = pixel_center(tf500, c, r);
            if (scar.contains(x, y)) {
                burn_dates.at(c, r) = static_cast<float>(spec.burn_doy);
                ++mcd64_burned;
            }
        }
    }
    write_geotiff(burn_dates, (root / "mcd64_burndate.tif").string(), TiffEncoding::Int16);
    double mcd64_area = static_cast<double>(mcd64_burned) *
                        pixel_area_m2(tf500, burn_dates.center_lat()) / 10000.0;

    // FIRMS hotspots inside the scar, all dated to the burn day
    Date burn_date = date_from_doy(spec.burn_year, spec.burn_doy);
    Bounds scar_bb = scar.bbox();
    {
        std::ofstream csv(root / "firms.csv");
        if (!csv) fail(Errc::IoError, "cannot create firms.csv");
        csv << "latitude,longitude,acq_date,confidence\n";
        Pcg32 rng = stream_for(spec.seed, 1000000);
        for (int i = 0; i < spec.n_firms_points; ++i) {
            double lon = 0, lat = 0;
            do {
                lon = scar_bb.min_x + rng.uniform() * (scar_bb.max_x - scar_bb.min_x);
                lat = scar_bb.min_y + rng.uniform() * (scar_bb.max_y - scar_bb.min_y);
            } while (!scar.contains(lon, lat));
            int conf = 50 + static_cast<int>(rng.uniform() * 51.0);
            csv << fmt_coord(lat) << "," << fmt_coord(lon) << "," << to_string(burn_date) << "," << conf
                << "\n";
        }
    }

    json truth_doc;
    truth_doc["burned_pixels"] = burned_px;
    truth_doc["burned_area_ha"] = truth_area;
    truth_doc["mcd64_burned_pixels"] = mcd64_burned;
    truth_doc["mcd64_area_ha"] = mcd64_area;
    truth_doc["polygon_area_deg2"] = scar.area();
    truth_doc["n_firms_points"] = spec.n_firms_points;
    write_json_file(truth_doc, root / "truth.json");

    // ready-to-run pipeline configuration
    Date month_start{burn_date.year, burn_date.month, 1};
    Date next_month = burn_date.month == 12 ? Date{burn_date.year + 1, 1, 1}
                                            : Date{burn_date.year, burn_date.month + 1, 1};
    json cfg;
    cfg["schema"] = 1;
    cfg["roi"] = {{"crs", spec.crs},
                  {"ring", {{ext.min_x, ext.min_y}, {ext.max_x, ext.min_y}, {ext.max_x, ext.max_y},
                            {ext.min_x, ext.max_y}}}};
    cfg["pre_window"] = {{"start", to_string(spec.pre_window.start)}, {"end", to_string(spec.pre_window.end)}};
    cfg["post_window"] = {{"start", to_string(spec.post_window.start)}, {"end", to_string(spec.post_window.end)}};
    cfg["max_cloud"] = nullptr;
    cfg["manifests"] = {"manifest_pre.json", "manifest_post.json"};
    cfg["composite_method"] = "mosaic";
    cfg["mask_policy"] = "default";
    cfg["mcd64_path"] = "mcd64_burndate.tif";
    cfg["mcd64_window"] = {{"start", to_string(month_start)}, {"end", to_string(next_month)}};
    cfg["firms_path"] = "firms.csv";
    cfg["firms_radius_m"] = 1000.0;
    cfg["min_class"] = "ModerateLowSeverity";
    cfg["output_dir"] = "out";
    write_json_file(cfg, root / "config.json");

    SynthResult res;
    res.out_dir = out_dir;
    res.config_path = (root / "config.json").string();
    res.truth_mask_path = (root / "truth_mask.tif").string();
    res.mcd64_path = (root / "mcd64_burndate.tif").string();
    res.firms_path = (root / "firms.csv").string();
    res.truth_burned_pixels = burned_px;
    res.truth_burned_area_ha = truth_area;
    res.mcd64_burned_pixels = mcd64_burned;
    res.mcd64_area_ha = mcd64_area;
    return res;
}

TruthComparison truth_compare(const Grid& result_mask, const Grid& truth_mask) {
    require_aligned(result_mask, truth_mask, "truth_compare");
    TruthComparison out;
    out.matrix = confusion_masks(result_mask, truth_mask);
    out.dice = metrics(out.matrix).dice;
    out.result_area_ha = mask_area_ha(result_mask);
    out.truth_area_ha = mask_area_ha(truth_mask);
    out.area_delta_fraction = out.truth_area_ha > 0
                                  ? std::abs(out.result_area_ha - out.truth_area_ha) / out.truth_area_ha
                                  : 0.0;
    return out;
}

} // namespace burnscan

#include "burnscan/catalog.hpp"

#include "burnscan/errors.hpp"
#include "burnscan/tiff_io.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

namespace burnscan {

using nlohmann::json;

namespace fs = std::filesystem;

const char* sensor_name(Sensor s) {
    switch (s) {
    case Sensor::Sentinel2L2A: return "Sentinel2L2A";
    case Sensor::Landsat8TOA: return "Landsat8TOA";
    case Sensor::Other: return "Other";
    }
    return "?";
}

Sensor parse_sensor(const std::string& s) {
    if (s == "Sentinel2L2A") return Sensor::Sentinel2L2A;
    if (s == "Landsat8TOA") return Sensor::Landsat8TOA;
    if (s == "Other") return Sensor::Other;
    fail(Errc::InvalidMeta, "unknown sensor '" + s + "'");
}

double SceneMeta::reflectance_scale() const {
    if (scale) return *scale;
    return sensor == Sensor::Sentinel2L2A ? 1.0 / 10000.0 : 1.0;
}

namespace {

json parse_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, std::string("cannot open ") + what + " '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(Errc::ParseError, std::string(what) + " '" + path + "': " + e.what());
    }
}

} // namespace

std::vector<SceneMeta> load_manifest(const std::string& path) {
    json doc = parse_json_file(path, "manifest");
    fs::path base = fs::path(path).parent_path();

    std::vector<SceneMeta> out;
    try {
        std::string crs = doc.at("crs").get<std::string>();
        for (const json& s : doc.at("scenes")) {
            SceneMeta m;
            m.scene_id = s.at("scene_id").get<std::string>();
            m.crs = crs;
            try {
                m.sensor = parse_sensor(s.at("sensor").get<std::string>());
                m.acq_date = parse_date(s.at("acq_date").get<std::string>());
                if (s.contains("cloud_percent") && !s.at("cloud_percent").is_null())
                    m.cloud_percent = s.at("cloud_percent").get<double>();
                auto b = s.at("bounds");
                if (!b.is_array() || b.size() != 4)
                    fail(Errc::InvalidMeta, "bounds must be [minx,miny,maxx,maxy]");
                m.bounds = Bounds{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(), b[3].get<double>()};
                if (s.contains("scale") && !s.at("scale").is_null()) m.scale = s.at("scale").get<double>();
                for (const auto& [name, p] : s.at("bands").items()) {
                    fs::path bp = p.get<std::string>();
                    m.bands[name] = bp.is_absolute() ? bp.string() : (base / bp).string();
                }
                if (m.cloud_percent && (*m.cloud_percent < 0.0 || *m.cloud_percent > 100.0))
                    fail(Errc::InvalidMeta, "cloud_percent " + std::to_string(*m.cloud_percent) +
                                                " outside [0, 100]");
                if (!(m.bounds.min_x < m.bounds.max_x) || !(m.bounds.min_y < m.bounds.max_y))
                    fail(Errc::InvalidMeta, "degenerate bounds");
            } catch (const Error& e) {
                if (e.code() == Errc::ParseError || e.code() == Errc::InvalidMeta)
                    fail(Errc::InvalidMeta, "scene '" + m.scene_id + "': " + e.what());
                throw;
            }
            out.push_back(std::move(m));
        }
    } catch (const json::exception& e) {
        fail(Errc::ParseError, "manifest '" + path + "': " + e.what());
    }
    return out;
}

std::vector<SceneMeta> filter_scenes(const std::vector<SceneMeta>& scenes, const DateWindow& window,
                                     std::optional<double> max_cloud, const RoiPolygon* roi) {
    std::vector<SceneMeta> out;
    std::optional<Bounds> roi_bb;
    if (roi) roi_bb = roi->bbox();
    for (const SceneMeta& s : scenes) {
        if (!window.contains(s.acq_date)) continue;
        // strict <, and scenes lacking the metric pass
        if (max_cloud && s.cloud_percent && !(*s.cloud_percent < *max_cloud)) continue;
        if (roi_bb && !s.bounds.intersects(*roi_bb)) continue;
        out.push_back(s);
    }
    return out;
}

ProductMeta select_burnt_area_product(const std::vector<ProductMeta>& products, const DateWindow& fire_window) {
    for (const ProductMeta& p : products)
        if (p.covers(fire_window)) return p;
    fail(Errc::NoSuitableProduct, "no product covers " + to_string(fire_window.start) + " to " +
                                      to_string(fire_window.end));
}

std::vector<ProductMeta> default_product_registry() {
    return {
        ProductMeta{"FireCCI51 v5.1", Date{2001, 1, 1}, Date{2020, 12, 1}, 250.0},
        ProductMeta{"Globfire Fire Event", Date{2001, 1, 1}, Date{2021, 1, 1}, std::nullopt},
        ProductMeta{"MCD64A1.061", Date{2000, 11, 1}, Date{2022, 12, 1}, 500.0},
    };
}

std::vector<ProductMeta> load_product_registry(const std::string& path) {
    json doc = parse_json_file(path, "product registry");
    std::vector<ProductMeta> out;
    try {
        for (const json& p : doc) {
            ProductMeta m;
            m.name = p.at("name").get<std::string>();
            m.temporal_start = parse_date(p.at("temporal_start").get<std::string>());
            m.temporal_end = parse_date(p.at("temporal_end").get<std::string>());
            const json& res = p.at("resolution_m");
            if (res.is_number()) m.resolution_m = res.get<double>();
            if (!(m.temporal_start <= m.temporal_end))
                fail(Errc::InvalidMeta, "product '" + m.name + "': temporal_start after temporal_end");
            out.push_back(std::move(m));
        }
    } catch (const json::exception& e) {
        fail(Errc::ParseError, "product registry '" + path + "': " + e.what());
    }
    return out;
}

Grid load_band(const SceneMeta& scene, const std::string& band, GridKind kind) {
    auto it = scene.bands.find(band);
    if (it == scene.bands.end())
        fail(Errc::MissingBand, "scene '" + scene.scene_id + "' lists no band '" + band + "'");
    bool integer_encoded = false;
    Grid g = read_geotiff(it->second, kind, &integer_encoded);
    // integer DN encodings carry a scale factor; float files are already
    // physical reflectance
    double s = scene.reflectance_scale();
    if (kind == GridKind::Reflectance && integer_encoded && s != 1.0) {
        for (float& v : g.values())
            if (!Grid::is_nodata(v)) v = static_cast<float>(v * s);
    }
    return g;
}

} // namespace burnscan

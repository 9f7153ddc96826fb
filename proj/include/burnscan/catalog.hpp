#pragma once

#include "burnscan/date.hpp"
#include "burnscan/geo.hpp"
#include "burnscan/grid.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace burnscan {

enum class Sensor { Sentinel2L2A, Landsat8TOA, Other };

const char* sensor_name(Sensor s);
Sensor parse_sensor(const std::string& s); // strict; throws Errc::InvalidMeta

/// One catalog entry of a scene manifest. Band paths are resolved against
/// the manifest's directory at load time.
struct SceneMeta {
    std::string scene_id;
    Sensor sensor = Sensor::Other;
    Date acq_date;
    std::optional<double> cloud_percent; // absent for products without the metric
    Bounds bounds;
    std::string crs;
    std::optional<double> scale; // reflectance scale override
    std::map<std::string, std::string> bands;

    /// Integer DN -> physical reflectance factor: manifest value when given,
    /// otherwise 1/10000 for Sentinel-2 L2A and 1.0 elsewhere.
    double reflectance_scale() const;
};

/// Burnt-area product registry row.
struct ProductMeta {
    std::string name;
    Date temporal_start;
    Date temporal_end;
    std::optional<double> resolution_m; // absent = vector product

    bool covers(const DateWindow& w) const { return temporal_start <= w.start && w.end <= temporal_end; }
};

/// Parse a scene manifest JSON document. Manifest order is preserved; it
/// defines the temporal stacking order used by mosaics.
/// Throws Errc::ParseError on malformed input, Errc::InvalidMeta (naming the
/// scene) on invariant violations.
std::vector<SceneMeta> load_manifest(const std::string& path);

/// Keep scenes with acq_date in [window.start, window.end), cloud_percent
/// strictly below max_cloud (scenes without the metric always pass), and
/// bounds intersecting the ROI bounding box. Relative order is preserved;
/// never throws.
std::vector<SceneMeta> filter_scenes(const std::vector<SceneMeta>& scenes, const DateWindow& window,
                                     std::optional<double> max_cloud = std::nullopt,
                                     const RoiPolygon* roi = nullptr);

/// First product whose temporal coverage fully contains fire_window,
/// deterministic in input order. Throws Errc::NoSuitableProduct.
ProductMeta select_burnt_area_product(const std::vector<ProductMeta>& products, const DateWindow& fire_window);

/// The three registry rows shipped as defaults.
std::vector<ProductMeta> default_product_registry();

/// Load a registry from a JSON list.
std::vector<ProductMeta> load_product_registry(const std::string& path);

/// Load one band of a scene through the GeoTIFF subset reader. Integer
/// reflectance encodings are scaled by the scene's reflectance scale when
/// kind is Reflectance; categorical kinds are loaded verbatim.
Grid load_band(const SceneMeta& scene, const std::string& band, GridKind kind = GridKind::Reflectance);

} // namespace burnscan

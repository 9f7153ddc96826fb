#pragma once

#include "burnscan/assessment.hpp"
#include "burnscan/catalog.hpp"
#include "burnscan/date.hpp"
#include "burnscan/geo.hpp"
#include "burnscan/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace burnscan {

/// PCG32 (pcg_setseq_64_xsh_rr_32). A fixed, portable generator so that the
/// same spec yields the same bytes everywhere; never the platform default
/// source.
class Pcg32 {
public:
    Pcg32(uint64_t initstate, uint64_t initseq) {
        state_ = 0;
        inc_ = (initseq << 1u) | 1u;
        next_u32();
        state_ += initstate;
        next_u32();
    }

    uint32_t next_u32() {
        uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        uint32_t xorshifted = static_cast<uint32_t>(((old >> 18u) ^ old) >> 27u);
        uint32_t rot = static_cast<uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    /// Uniform in [0, 1).
    double uniform() { return next_u32() * (1.0 / 4294967296.0); }

    /// Standard normal via Box-Muller (cosine branch).
    double gauss();

private:
    uint64_t state_ = 0;
    uint64_t inc_ = 0;
};

enum class CloudWindows { Both, PreOnly, PostOnly };

/// Reflectance model: means per band, burn response inside the polygon,
/// cloud response at cloudy pixels, shared gaussian noise sigma.
struct ReflectanceModel {
    double pre_nir = 0.45;
    double pre_swir2 = 0.12;
    double post_nir_burn = 0.12;
    double post_swir2_burn = 0.38;
    double cloud_nir = 0.55;
    double cloud_swir2 = 0.50;
    double noise_sigma = 0.005;
};

/// Deterministic synthetic Rompin-scale fire scenario. Same seed, same
/// bytes.
struct SynthSpec {
    uint64_t seed = 42;
    int width = 2048;
    int height = 2048;
    std::string crs = "EPSG:4326";
    double center_lon = 103.2774;
    double center_lat = 2.9469;
    double pixel_m = 20.0;
    /// burn scar ring as meter offsets from the center (default: ~355 ha
    /// irregular octagon)
    std::vector<std::array<double, 2>> burn_polygon_m;
    int burn_year = 2021;
    int burn_doy = 70; // 2021-03-11
    int n_pre_scenes = 4;
    int n_post_scenes = 4;
    double cloud_fraction = 0.3;
    double cloud_blob_scale = 96.0; // pixels
    CloudWindows cloud_windows = CloudWindows::Both;
    bool cloud_avoid_burn = false;
    DateWindow pre_window{Date{2020, 2, 1}, Date{2021, 2, 1}};
    DateWindow post_window{Date{2021, 3, 1}, Date{2022, 3, 1}};
    ReflectanceModel reflectance;
    int n_firms_points = 12;
    double mcd64_pixel_m = 500.0;

    GeoTransform grid_transform() const;
    RoiPolygon burn_polygon() const; // in grid CRS

    /// Checks the model separability invariants (burn dNBR above the top
    /// severity break, unburned dNBR inside the unburned band) and field
    /// ranges. Throws Errc::InvalidSpec.
    void validate() const;

    static SynthSpec from_json_file(const std::string& path);
};

struct SynthResult {
    std::string out_dir;
    std::string config_path;
    std::string truth_mask_path;
    std::string mcd64_path;
    std::string firms_path;
    size_t truth_burned_pixels = 0;
    double truth_burned_area_ha = 0;
    size_t mcd64_burned_pixels = 0;
    double mcd64_area_ha = 0;
};

/// Emit the full synthetic bundle into out_dir: pre/post scene manifests
/// with NIR/SWIR2/QA GeoTIFFs (clouds as thresholded value-noise blobs,
/// marked in QA and corrupting reflectance), truth_mask.tif at the analysis
/// grid, an MCD64A1-style burn-date grid at mcd64_pixel_m, a FIRMS CSV of
/// in-polygon points dated to the burn day, truth.json, and a ready-to-run
/// pipeline config.json.
SynthResult generate(const SynthSpec& spec, const std::string& out_dir);

struct TruthComparison {
    ConfusionMatrix matrix;
    double dice = 0;
    double result_area_ha = 0;
    double truth_area_ha = 0;
    double area_delta_fraction = 0; // |result - truth| / truth
};

/// Score a result mask against the generator truth mask.
TruthComparison truth_compare(const Grid& result_mask, const Grid& truth_mask);

} // namespace burnscan

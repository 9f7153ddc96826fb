#pragma once

#include "burnscan/catalog.hpp"
#include "burnscan/exec.hpp"
#include "burnscan/grid.hpp"

#include <map>
#include <vector>

namespace burnscan {

/// Per-sensor cloud masking rule. Sentinel-2 L2A masks by scene
/// classification codes; Landsat-style products mask by QA bit positions.
struct MaskPolicy {
    enum class Mode { None, SclClasses, QaBits };

    Mode mode = Mode::None;
    std::vector<int> scl_codes; // class codes in 0..11
    std::vector<int> qa_bits;   // bit positions in 0..15

    /// Defaults: Sentinel-2 masks SCL {3 cloud-shadow, 8 cloud-medium,
    /// 9 cloud-high, 10 cirrus}; Landsat-8 masks QA bits
    /// {2 cirrus, 3 cloud, 4 cloud-shadow} when a QA band is present.
    static MaskPolicy defaults(Sensor sensor);
    static MaskPolicy none() { return MaskPolicy{}; }
    static MaskPolicy scl(std::vector<int> codes);
    static MaskPolicy bits(std::vector<int> positions);

    bool masks(float qa_sample) const;
};

enum class CompositeMethod { Mosaic, Median };

CompositeMethod parse_composite_method(const std::string& s);
const char* composite_method_name(CompositeMethod m);

/// Replace band pixels whose QA sample matches the policy with nodata;
/// everything else is passed through untouched. QA nodata is treated as
/// masked. Policy None returns the band unchanged.
Grid apply_mask(const Grid& band, const Grid& qa, const MaskPolicy& policy, const ExecPolicy& exec = {});

/// Reduce an ordered stack of aligned, already-masked grids to one grid.
/// Mosaic: the last non-nodata value in stack order wins (later scenes
/// paint over earlier). Median: per-pixel median of the non-nodata values,
/// mean of the two middle values for even counts. All-nodata stacks yield
/// nodata.
Grid composite(const std::vector<Grid>& scenes, CompositeMethod method, const ExecPolicy& exec = {});
Grid composite(const std::vector<const Grid*>& scenes, CompositeMethod method, const ExecPolicy& exec = {});

/// How band roles map to band names per sensor. qa is empty when the
/// sensor ships no QA band.
struct SensorBands {
    std::string nir;
    std::string swir2;
    std::string qa;
};

using BandMap = std::map<Sensor, SensorBands>;

BandMap default_band_map(); // Sentinel-2 B8/B12/SCL, Landsat-8 B5/B7

/// Cloud-mask configuration for a whole run.
struct MaskSetting {
    enum class Kind { Default, None, Custom } kind = Kind::Default;
    MaskPolicy custom;

    MaskPolicy for_sensor(Sensor s) const;
};

struct CompositeRequest {
    DateWindow window;
    std::optional<double> max_cloud;
    RoiPolygon roi;
    std::vector<std::string> bands; // role names understood by band_map ("nir", "swir2")
    BandMap band_map = default_band_map();
    MaskSetting mask;
    CompositeMethod method = CompositeMethod::Mosaic;
};

/// Filter scenes to the window, load each requested band, resample all
/// inputs onto the common analysis grid (finest participating resolution
/// snapped to the ROI bounding box; Nearest for QA, Bilinear for
/// reflectance), apply the cloud mask, composite in stack order, and clip
/// to the ROI. Throws Errc::NoScenesInWindow when the filter leaves nothing.
std::map<std::string, Grid> build_composite(const std::vector<SceneMeta>& scenes, const CompositeRequest& req,
                                            const ExecPolicy& exec = {});

/// The shared analysis grid for a set of scenes: ROI bounding box snapped
/// outward to the pixel lattice of the finest participating scene grid.
GeoTransform analysis_transform(const GeoTransform& finest, const Bounds& roi_bbox, int* out_w, int* out_h);

} // namespace burnscan

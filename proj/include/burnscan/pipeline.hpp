#pragma once

#include "burnscan/assessment.hpp"
#include "burnscan/catalog.hpp"
#include "burnscan/preprocess.hpp"
#include "burnscan/reference.hpp"
#include "burnscan/severity.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace burnscan {

/// Full run configuration. Defaults reproduce the Rompin case study
/// parameters; a config file overrides field by field. Relative paths are
/// resolved against the config file's directory.
struct PipelineConfig {
    RoiPolygon roi;
    DateWindow pre_window{Date{2020, 2, 1}, Date{2021, 2, 1}};
    DateWindow post_window{Date{2021, 3, 1}, Date{2022, 3, 1}};
    std::optional<double> max_cloud = 25.0;
    std::vector<std::string> manifests;
    BandMap band_map = default_band_map();
    CompositeMethod composite_method = CompositeMethod::Mosaic;
    SeverityThresholds thresholds;
    MaskSetting mask;
    std::optional<std::string> mcd64_path;
    DateWindow mcd64_window{Date{2021, 3, 1}, Date{2021, 4, 1}};
    std::optional<std::string> firms_path;
    double firms_radius_m = 1000.0;
    SeverityClass min_class = SeverityClass::ModerateLowSeverity;
    bool sort_by_date = false;
    std::string output_dir = "out";

    /// Echo of the config file content, embedded verbatim in the report.
    nlohmann::json echo;

    PipelineConfig();

    /// Parse and validate. Throws Errc::ConfigError / Errc::ParseError.
    static PipelineConfig from_json_file(const std::string& path);
};

struct RunResult {
    nlohmann::json report;
    int scenes_pre = 0;
    int scenes_post = 0;
};

/// Execute the full workflow: filter -> composite(pre, post) -> nbr -> dnbr
/// -> classify -> reference masks -> agreement. Writes composites, index
/// grids, severity, reference masks (GeoTIFF), quicklook PNGs and
/// report.json into config.output_dir.
RunResult run_pipeline(const PipelineConfig& config, const ExecPolicy& exec, bool quiet = false);

/// Structural check of a run report against the stable schema
/// (required keys, types, value ranges). Throws Errc::InvalidSpec.
void validate_report(const nlohmann::json& report);

/// Decode a burn-date grid over a calendar window, splitting cross-year
/// windows into per-year DOY windows and OR-ing the masks.
Grid burned_mask_for_window(const Grid& burn_dates, const DateWindow& window, const ExecPolicy& exec = {});

} // namespace burnscan

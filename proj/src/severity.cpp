#include "burnscan/severity.hpp"

#include "burnscan/errors.hpp"

#include <cmath>
#include <functional>

namespace burnscan {

namespace {
constexpr const char* kSeverityNames[7] = {
    "RegrowthHigh",         "RegrowthLow",          "Unburned",    "LowSeverity",
    "ModerateLowSeverity",  "ModerateHighSeverity", "HighSeverity",
};
}

const char* severity_name(SeverityClass c) { return kSeverityNames[static_cast<int>(c)]; }

SeverityClass parse_severity(const std::string& name) {
    for (int i = 0; i < 7; ++i)
        if (name == kSeverityNames[i]) return static_cast<SeverityClass>(i);
    fail(Errc::ConfigError, "unknown severity class '" + name + "'");
}

SeverityThresholds::SeverityThresholds(const std::array<double, 6>& breaks) : breaks_(breaks) {
    for (int i = 1; i < 6; ++i)
        if (!(breaks_[i - 1] < breaks_[i]))
            fail(Errc::ConfigError, "severity thresholds must be strictly ascending");
}

Grid nbr(const Grid& nir, const Grid& swir2, const ExecPolicy& exec) {
    require_aligned(nir, swir2, "nbr");
    return map_tiled(GridKind::Index, exec,
                     [](float n, float s) {
                         if (Grid::is_nodata(n) || Grid::is_nodata(s)) return Grid::kNoData;
                         float denom = n + s;
                         if (denom == 0.0f) return Grid::kNoData; // no signal, not "unchanged"
                         return (n - s) / denom;
                     },
                     nir, swir2);
}

Grid nbr(const BandPair& pair, const ExecPolicy& exec) { return nbr(pair.nir, pair.swir2, exec); }

Grid dnbr(const Grid& pre_nbr, const Grid& post_nbr, const ExecPolicy& exec) {
    require_aligned(pre_nbr, post_nbr, "dnbr");
    return map_tiled(GridKind::Index, exec,
                     [](float pre, float post) {
                         if (Grid::is_nodata(pre) || Grid::is_nodata(post)) return Grid::kNoData;
                         return pre - post;
                     },
                     pre_nbr, post_nbr);
}

Grid classify(const Grid& dnbr_grid, const SeverityThresholds& thresholds, const ExecPolicy& exec) {
    return map_tiled(GridKind::Categorical, exec,
                     [&thresholds](float v) {
                         if (Grid::is_nodata(v)) return Grid::kNoData;
                         return static_cast<float>(static_cast<int>(thresholds.classify_value(v)));
                     },
                     dnbr_grid);
}

namespace {

double count_area_ha(const Grid& g, const std::function<bool(float)>& pred) {
    double px_area = pixel_area_m2(g.transform(), g.center_lat());
    size_t count = 0;
    for (float v : g.values())
        if (!Grid::is_nodata(v) && pred(v)) ++count;
    return static_cast<double>(count) * px_area / 10000.0;
}

} // namespace

double burned_area_ha(const Grid& classes, SeverityClass min_class) {
    int min_rank = static_cast<int>(min_class);
    return count_area_ha(classes, [min_rank](float v) { return std::lround(v) >= min_rank; });
}

double mask_area_ha(const Grid& mask) {
    return count_area_ha(mask, [](float v) { return std::lround(v) == 1; });
}

} // namespace burnscan

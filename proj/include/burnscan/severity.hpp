#pragma once

#include "burnscan/exec.hpp"
#include "burnscan/grid.hpp"

#include <array>
#include <string>

namespace burnscan {

/// Seven-level burn-severity classification, ordered by increasing impact.
enum class SeverityClass : int {
    RegrowthHigh = 0,
    RegrowthLow = 1,
    Unburned = 2,
    LowSeverity = 3,
    ModerateLowSeverity = 4,
    ModerateHighSeverity = 5,
    HighSeverity = 6,
};

const char* severity_name(SeverityClass c);
SeverityClass parse_severity(const std::string& name); // throws Errc::ConfigError

/// Six strictly ascending dNBR breakpoints delimiting the seven classes.
/// Intervals are half-open lower-inclusive: class k covers [b(k-1), b(k)).
class SeverityThresholds {
public:
    SeverityThresholds() : breaks_{-0.25, -0.10, 0.10, 0.27, 0.44, 0.66} {}
    explicit SeverityThresholds(const std::array<double, 6>& breaks);

    const std::array<double, 6>& breaks() const { return breaks_; }

    SeverityClass classify_value(double dnbr) const {
        int rank = 0;
        for (double b : breaks_)
            if (dnbr >= b) ++rank;
        return static_cast<SeverityClass>(rank);
    }

private:
    std::array<double, 6> breaks_;
};

/// Aligned NIR + SWIR2 reflectance pair.
struct BandPair {
    Grid nir;
    Grid swir2;
};

/// Normalized burn ratio (NIR - SWIR2) / (NIR + SWIR2). Either input
/// nodata, or a zero denominator, yields nodata.
Grid nbr(const BandPair& pair, const ExecPolicy& exec = {});
Grid nbr(const Grid& nir, const Grid& swir2, const ExecPolicy& exec = {});

/// Differenced NBR: pre-fire minus post-fire, nodata-propagating.
Grid dnbr(const Grid& pre_nbr, const Grid& post_nbr, const ExecPolicy& exec = {});

/// Map a dNBR grid onto severity class ranks (Categorical grid).
Grid classify(const Grid& dnbr_grid, const SeverityThresholds& thresholds = {}, const ExecPolicy& exec = {});

/// Total ground area in hectares of pixels classified at or above
/// min_class. Throws Errc::UnknownUnits when the CRS units are unresolvable.
double burned_area_ha(const Grid& classes, SeverityClass min_class);

/// Area in hectares of mask == 1 pixels (same area arithmetic).
double mask_area_ha(const Grid& mask);

} // namespace burnscan

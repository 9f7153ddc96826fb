#pragma once

#include "burnscan/date.hpp"
#include "burnscan/exec.hpp"
#include "burnscan/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace burnscan {

/// Inclusive ordinal-day window within one calendar year.
struct DoyWindow {
    int year = 0;
    int start_doy = 1;
    int end_doy = 1;
};

/// Convert an inclusive calendar interval to a day-of-year window.
/// Throws Errc::CrossYearWindow when the dates span a year boundary; the
/// caller splits and ORs the per-year masks.
DoyWindow doy_window(const Date& start, const Date& end);

/// Decode an MCD64A1-style burn-date grid (0 unburned, 1..366 burn DOY,
/// negative special codes) into a binary mask: 1 for burn dates inside the
/// window, 0 for unburned or out-of-window dates, nodata for special codes
/// and nodata samples.
Grid burned_mask(const Grid& burn_dates, const DoyWindow& window, const ExecPolicy& exec = {});

/// FIRMS-style active-fire detection.
struct Hotspot {
    double latitude = 0;
    double longitude = 0;
    Date acq_date;
    std::string confidence; // numeric or categorical, kept verbatim
};

/// Parse a FIRMS CSV (header-addressed columns latitude, longitude,
/// acq_date; extra columns ignored). Rows violating the coordinate
/// invariants raise Errc::InvalidCoordinate with the row number; malformed
/// rows raise Errc::ParseError.
std::vector<Hotspot> load_firms_csv(const std::string& path);

/// Mark every pixel whose center lies within radius_m of an in-window
/// hotspot. Distances use the same fixed meters-per-degree approximation as
/// the area computation; the template grid must be geographic (hotspots are
/// lat/lon — Errc::CrsMismatch for projected grids, Errc::UnknownUnits when
/// units are unresolvable).
Grid rasterize_hotspots(const std::vector<Hotspot>& points, const Grid& tmpl, double radius_m,
                        const DateWindow& window);

} // namespace burnscan

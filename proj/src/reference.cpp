#include "burnscan/reference.hpp"

#include "burnscan/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace burnscan {

DoyWindow doy_window(const Date& start, const Date& end) {
    if (!(start <= end)) fail(Errc::InvalidSpec, "window start after end");
    if (start.year != end.year)
        fail(Errc::CrossYearWindow, to_string(start) + " to " + to_string(end) +
                                        " spans a year boundary; split into per-year windows");
    return DoyWindow{start.year, day_of_year(start), day_of_year(end)};
}

Grid burned_mask(const Grid& burn_dates, const DoyWindow& window, const ExecPolicy& exec) {
    return map_tiled(GridKind::Mask, exec,
                     [&window](float v) {
                         if (Grid::is_nodata(v)) return Grid::kNoData;
                         long code = std::lround(v);
                         if (code < 0) return Grid::kNoData; // water / unmapped
                         bool burned = code >= window.start_doy && code <= window.end_doy;
                         return burned ? 1.0f : 0.0f;
                     },
                     burn_dates);
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        size_t b = field.find_first_not_of(' ');
        out.push_back(b == std::string::npos ? "" : field.substr(b));
    }
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

} // namespace

std::vector<Hotspot> load_firms_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::IoError, "cannot open FIRMS CSV '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) fail(Errc::ParseError, "FIRMS CSV '" + path + "' has no header row");
    std::vector<std::string> header = split_csv_row(line);
    auto col_of = [&](const std::string& name) -> int {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };
    int lat_col = col_of("latitude");
    int lon_col = col_of("longitude");
    int date_col = col_of("acq_date");
    int conf_col = col_of("confidence");
    if (lat_col < 0 || lon_col < 0 || date_col < 0)
        fail(Errc::ParseError, "FIRMS CSV '" + path + "' is missing latitude/longitude/acq_date columns");

    std::vector<Hotspot> out;
    int row = 1; // header is row 1
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        std::vector<std::string> fields = split_csv_row(line);
        int needed = std::max({lat_col, lon_col, date_col});
        if (static_cast<int>(fields.size()) <= needed)
            fail(Errc::ParseError, "row " + std::to_string(row) + ": too few columns");
        Hotspot h;
        try {
            size_t pos = 0;
            h.latitude = std::stod(fields[static_cast<size_t>(lat_col)], &pos);
            h.longitude = std::stod(fields[static_cast<size_t>(lon_col)], &pos);
        } catch (const std::exception&) {
            fail(Errc::ParseError, "row " + std::to_string(row) + ": non-numeric coordinate");
        }
        try {
            h.acq_date = parse_date(fields[static_cast<size_t>(date_col)]);
        } catch (const Error& e) {
            fail(Errc::ParseError, "row " + std::to_string(row) + ": " + e.what());
        }
        if (h.latitude < -90.0 || h.latitude > 90.0 || h.longitude < -180.0 || h.longitude > 180.0)
            fail(Errc::InvalidCoordinate, "row " + std::to_string(row) + ": (" + std::to_string(h.latitude) +
                                              ", " + std::to_string(h.longitude) + ") outside valid range");
        if (conf_col >= 0 && static_cast<size_t>(conf_col) < fields.size())
            h.confidence = fields[static_cast<size_t>(conf_col)];
        out.push_back(std::move(h));
    }
    return out;
}

Grid rasterize_hotspots(const std::vector<Hotspot>& points, const Grid& tmpl, double radius_m,
                        const DateWindow& window) {
    const GeoTransform& tf = tmpl.transform();
    CrsUnits units = crs_units(tf.crs);
    if (units == CrsUnits::Unknown)
        fail(Errc::UnknownUnits, "template CRS '" + tf.crs + "' resolves to neither meters nor degrees");
    if (units == CrsUnits::Meters)
        fail(Errc::CrsMismatch, "hotspots are geographic lat/lon; pre-align them to the projected template");

    auto [mx, my] = meters_per_degree(tmpl.center_lat());

    Grid out(tmpl.width(), tmpl.height(), tf, GridKind::Mask, 0.0f);
    for (const Hotspot& h : points) {
        if (!window.contains(h.acq_date)) continue;
        // candidate pixel window around the point, one pixel of margin
        double rx_deg = radius_m / mx, ry_deg = radius_m / my;
        auto [c0, r0] = pixel_of(tf, h.longitude - rx_deg, h.latitude + ry_deg);
        auto [c1, r1] = pixel_of(tf, h.longitude + rx_deg, h.latitude - ry_deg);
        c0 = std::max(0, c0 - 1);
        r0 = std::max(0, r0 - 1);
        c1 = std::min(tmpl.width() - 1, c1 + 1);
        r1 = std::min(tmpl.height() - 1, r1 + 1);
        for (int r = r0; r <= r1; ++r) {
            for (int c = c0; c <= c1; ++c) {
                auto [x, y] = pixel_center(tf, c, r);
                double dx = (x - h.longitude) * mx;
                double dy = (y - h.latitude) * my;
                if (dx * dx + dy * dy <= radius_m * radius_m) out.at(c, r) = 1.0f;
            }
        }
    }
    return out;
}

} // namespace burnscan

#include "burnscan/geo.hpp"

#include "burnscan/errors.hpp"

#include <algorithm>
#include <cmath>

namespace burnscan {

std::array<int, 2> pixel_of(const GeoTransform& t, double x, double y) {
    int col = static_cast<int>(std::floor((x - t.origin_x) / t.pixel_w));
    int row = static_cast<int>(std::floor((t.origin_y - y) / t.pixel_h));
    return {col, row};
}

std::array<double, 2> pixel_center(const GeoTransform& t, int col, int row) {
    return {t.origin_x + (col + 0.5) * t.pixel_w, t.origin_y - (row + 0.5) * t.pixel_h};
}

Bounds grid_bounds(const GeoTransform& t, int width, int height) {
    return Bounds{t.origin_x, t.origin_y - height * t.pixel_h, t.origin_x + width * t.pixel_w, t.origin_y};
}

CrsUnits crs_units(const std::string& crs) {
    std::string s = crs;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    if (s.rfind("EPSG:", 0) != 0) return CrsUnits::Unknown;
    int code = 0;
    try {
        size_t pos = 0;
        code = std::stoi(s.substr(5), &pos);
        if (pos != s.size() - 5) return CrsUnits::Unknown;
    } catch (...) {
        return CrsUnits::Unknown;
    }
    // EPSG reserves 4000-4999 for geographic 2D systems (4326 etc.); the
    // projected systems used here (UTM 326xx/327xx, 3857, ...) are metric.
    if (code >= 4000 && code < 5000) return CrsUnits::Degrees;
    return CrsUnits::Meters;
}

std::array<double, 2> meters_per_degree(double lat) {
    constexpr double kPi = 3.14159265358979323846;
    return {111320.0 * std::cos(lat * kPi / 180.0), 110540.0};
}

double pixel_area_m2(const GeoTransform& t, double lat_center) {
    switch (crs_units(t.crs)) {
    case CrsUnits::Meters:
        return t.pixel_w * t.pixel_h;
    case CrsUnits::Degrees: {
        auto [mx, my] = meters_per_degree(lat_center);
        return t.pixel_w * mx * t.pixel_h * my;
    }
    default:
        fail(Errc::UnknownUnits, "CRS '" + t.crs + "' resolves to neither meters nor degrees");
    }
}

namespace {

int orient(const std::array<double, 2>& a, const std::array<double, 2>& b, const std::array<double, 2>& c) {
    double v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

bool on_segment(const std::array<double, 2>& a, const std::array<double, 2>& b, const std::array<double, 2>& p) {
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
           p[1] <= std::max(a[1], b[1]);
}

bool segments_intersect(const std::array<double, 2>& p1, const std::array<double, 2>& p2,
                        const std::array<double, 2>& q1, const std::array<double, 2>& q2) {
    int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
    int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(p1, p2, q1)) return true;
    if (o2 == 0 && on_segment(p1, p2, q2)) return true;
    if (o3 == 0 && on_segment(q1, q2, p1)) return true;
    if (o4 == 0 && on_segment(q1, q2, p2)) return true;
    return false;
}

} // namespace

RoiPolygon::RoiPolygon(std::vector<std::array<double, 2>> ring, std::string crs)
    : ring_(std::move(ring)), crs_(std::move(crs)) {
    if (ring_.size() >= 2 && ring_.front() == ring_.back()) ring_.pop_back();
    if (ring_.size() < 3) fail(Errc::InvalidSpec, "polygon ring needs at least 3 distinct vertices");
    size_t n = ring_.size();
    for (size_t i = 0; i < n; ++i) {
        size_t inext = (i + 1) % n;
        if (ring_[i] == ring_[inext]) fail(Errc::InvalidSpec, "polygon ring has a zero-length edge");
        for (size_t j = i + 1; j < n; ++j) {
            size_t jnext = (j + 1) % n;
            // skip edges sharing a vertex
            if (inext == j || jnext == i || i == j) continue;
            if (segments_intersect(ring_[i], ring_[inext], ring_[j], ring_[jnext]))
                fail(Errc::InvalidSpec, "polygon ring is self-intersecting");
        }
    }
}

Bounds RoiPolygon::bbox() const {
    Bounds b{ring_[0][0], ring_[0][1], ring_[0][0], ring_[0][1]};
    for (const auto& v : ring_) {
        b.min_x = std::min(b.min_x, v[0]);
        b.min_y = std::min(b.min_y, v[1]);
        b.max_x = std::max(b.max_x, v[0]);
        b.max_y = std::max(b.max_y, v[1]);
    }
    return b;
}

bool RoiPolygon::contains(double x, double y) const {
    bool inside = false;
    size_t n = ring_.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        double xi = ring_[i][0], yi = ring_[i][1];
        double xj = ring_[j][0], yj = ring_[j][1];
        if ((yi > y) != (yj > y)) {
            double x_cross = xi + (y - yi) / (yj - yi) * (xj - xi);
            if (x < x_cross) inside = !inside;
        }
    }
    return inside;
}

double RoiPolygon::area() const {
    double s = 0;
    size_t n = ring_.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++)
        s += ring_[j][0] * ring_[i][1] - ring_[i][0] * ring_[j][1];
    return std::abs(s) / 2.0;
}

RoiPolygon rect_polygon(const Bounds& b, const std::string& crs) {
    return RoiPolygon({{b.min_x, b.min_y}, {b.max_x, b.min_y}, {b.max_x, b.max_y}, {b.min_x, b.max_y}}, crs);
}

} // namespace burnscan

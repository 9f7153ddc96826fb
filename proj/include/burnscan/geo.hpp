#pragma once

#include <array>
#include <string>
#include <vector>

namespace burnscan {

/// North-up affine mapping from pixel indices to map coordinates.
/// (origin_x, origin_y) is the outer corner of pixel (0, 0); pixel_h is a
/// positive magnitude applied southward. Rotated/sheared transforms are
/// unsupported by construction.
struct GeoTransform {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double pixel_w = 1.0;
    double pixel_h = 1.0;
    std::string crs; // opaque identifier, e.g. "EPSG:4326"

    bool operator==(const GeoTransform&) const = default;
};

/// Rectangular pixel region, offsets relative to a parent grid.
struct Window {
    int col_off = 0;
    int row_off = 0;
    int width = 0;
    int height = 0;
};

struct Bounds {
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;

    bool intersects(const Bounds& o) const {
        return min_x < o.max_x && o.min_x < max_x && min_y < o.max_y && o.min_y < max_y;
    }
};

/// Map point -> containing pixel (floor convention). May be out of bounds;
/// the caller range-checks.
std::array<int, 2> pixel_of(const GeoTransform& t, double x, double y);

/// Map coordinates of the center of pixel (col, row).
std::array<double, 2> pixel_center(const GeoTransform& t, int col, int row);

/// Extent rectangle covered by a w x h grid under t.
Bounds grid_bounds(const GeoTransform& t, int width, int height);

enum class CrsUnits { Meters, Degrees, Unknown };

/// Resolve the linear unit of an opaque CRS tag. "EPSG:n" with n in
/// [4000, 5000) is treated as geographic (degrees), any other EPSG code as
/// projected (meters); everything else is Unknown.
CrsUnits crs_units(const std::string& crs);

/// Meters per degree of longitude/latitude at the given latitude, the fixed
/// small-area approximation used for burned-area and hotspot-distance math.
std::array<double, 2> meters_per_degree(double lat);

/// Ground area of one pixel in square meters. Throws Errc::UnknownUnits when
/// the CRS resolves to neither meters nor degrees. For geographic grids
/// lat_center is the latitude at which the longitude scale is evaluated.
double pixel_area_m2(const GeoTransform& t, double lat_center);

/// Single exterior ring in map units. Vertices are stored without the
/// closing duplicate; the ring is implicitly closed.
class RoiPolygon {
public:
    RoiPolygon() = default;

    /// Validates: >= 3 distinct vertices (a closing duplicate of the first
    /// vertex is accepted and dropped), no self-intersection.
    /// Throws Errc::InvalidSpec on violation.
    RoiPolygon(std::vector<std::array<double, 2>> ring, std::string crs);

    const std::vector<std::array<double, 2>>& ring() const { return ring_; }
    const std::string& crs() const { return crs_; }

    Bounds bbox() const;

    /// Even-odd rule point-in-polygon test; points exactly on the boundary
    /// follow the crossing convention (deterministic, not specified).
    bool contains(double x, double y) const;

    /// Shoelace area in squared map units.
    double area() const;

private:
    std::vector<std::array<double, 2>> ring_;
    std::string crs_;
};

/// Axis-aligned rectangle ring helper (counter-clockwise).
RoiPolygon rect_polygon(const Bounds& b, const std::string& crs);

} // namespace burnscan

#include "burnscan/grid.hpp"

#include "burnscan/errors.hpp"

#include <string>

namespace burnscan {

const char* kind_name(GridKind k) {
    switch (k) {
    case GridKind::Reflectance: return "Reflectance";
    case GridKind::Index: return "Index";
    case GridKind::Categorical: return "Categorical";
    case GridKind::BurnDate: return "BurnDate";
    case GridKind::Mask: return "Mask";
    }
    return "?";
}

bool kind_is_integer(GridKind k) {
    return k == GridKind::Categorical || k == GridKind::BurnDate || k == GridKind::Mask;
}

Grid::Grid(int width, int height, GeoTransform transform, GridKind kind, float fill)
    : width_(width), height_(height), tf_(std::move(transform)), kind_(kind),
      values_(static_cast<size_t>(width) * height, fill) {
    if (width <= 0 || height <= 0) fail(Errc::InvalidSpec, "grid dimensions must be positive");
    if (tf_.pixel_w <= 0 || tf_.pixel_h <= 0) fail(Errc::InvalidSpec, "pixel sizes must be positive");
}

Grid::Grid(int width, int height, GeoTransform transform, GridKind kind, std::vector<float> values)
    : width_(width), height_(height), tf_(std::move(transform)), kind_(kind), values_(std::move(values)) {
    if (width <= 0 || height <= 0) fail(Errc::InvalidSpec, "grid dimensions must be positive");
    if (tf_.pixel_w <= 0 || tf_.pixel_h <= 0) fail(Errc::InvalidSpec, "pixel sizes must be positive");
    if (values_.size() != static_cast<size_t>(width) * height)
        fail(Errc::InvalidSpec, "value count does not match width x height");
}

void Grid::validate() const {
    bool integral = kind_is_integer(kind_);
    for (size_t i = 0; i < values_.size(); ++i) {
        float v = values_[i];
        if (is_nodata(v)) continue;
        if (!std::isfinite(v))
            fail(Errc::InvalidSpec, "non-finite sample at index " + std::to_string(i));
        if (integral && v != std::floor(v))
            fail(Errc::InvalidSpec, std::string(kind_name(kind_)) + " grid holds non-integer sample at index " +
                                        std::to_string(i));
    }
}

size_t Grid::count_nodata() const {
    size_t n = 0;
    for (float v : values_)
        if (is_nodata(v)) ++n;
    return n;
}

void require_aligned(const Grid& a, const Grid& b, const char* what) {
    if (!a.same_shape(b)) {
        if (a.transform().crs != b.transform().crs)
            fail(Errc::CrsMismatch, std::string(what) + ": CRS '" + a.transform().crs + "' vs '" +
                                        b.transform().crs + "'");
        fail(Errc::AlignmentMismatch, std::string(what) + ": grids differ in size or transform");
    }
}

} // namespace burnscan

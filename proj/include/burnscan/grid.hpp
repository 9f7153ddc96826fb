#pragma once

#include "burnscan/geo.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace burnscan {

enum class GridKind : uint8_t { Reflectance, Index, Categorical, BurnDate, Mask };

const char* kind_name(GridKind k);
bool kind_is_integer(GridKind k); // Categorical/BurnDate/Mask hold integer samples

/// Single-band georeferenced raster. Samples are stored as 32-bit floats
/// regardless of the file encoding; missing data is the quiet NaN sentinel
/// (file-level nodata values are translated at the I/O boundary).
///
/// Grids are immutable after construction in pipeline code and safe to read
/// from any number of threads; mutation is reserved for the producing step.
class Grid {
public:
    static constexpr float kNoData = std::numeric_limits<float>::quiet_NaN();

    static bool is_nodata(float v) { return std::isnan(v); }

    Grid() = default;
    Grid(int width, int height, GeoTransform transform, GridKind kind, float fill = kNoData);
    Grid(int width, int height, GeoTransform transform, GridKind kind, std::vector<float> values);

    int width() const { return width_; }
    int height() const { return height_; }
    size_t size() const { return values_.size(); }
    const GeoTransform& transform() const { return tf_; }
    GridKind kind() const { return kind_; }

    float at(int col, int row) const { return values_[static_cast<size_t>(row) * width_ + col]; }
    float& at(int col, int row) { return values_[static_cast<size_t>(row) * width_ + col]; }
    std::span<const float> values() const { return values_; }
    std::span<float> values() { return values_; }

    /// Latitude (y map coordinate) of the grid center, used by the
    /// geographic area approximation.
    double center_lat() const { return tf_.origin_y - height_ * tf_.pixel_h / 2.0; }

    Bounds bounds() const { return grid_bounds(tf_, width_, height_); }

    bool same_shape(const Grid& o) const {
        return width_ == o.width_ && height_ == o.height_ && tf_ == o.tf_;
    }

    /// Enforces the type invariants (finite-or-nodata, integer samples for
    /// categorical kinds). Throws Errc::InvalidSpec; used at ingest.
    void validate() const;

    size_t count_nodata() const;

private:
    int width_ = 0;
    int height_ = 0;
    GeoTransform tf_;
    GridKind kind_ = GridKind::Reflectance;
    std::vector<float> values_;
};

/// Throws Errc::AlignmentMismatch unless both grids share width/height/transform.
void require_aligned(const Grid& a, const Grid& b, const char* what);

} // namespace burnscan

#pragma once

#include "burnscan/grid.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace burnscan {

/// Minimal RGBA8 PNG writer (8-bit, no filtering); output is deterministic.
void write_png_rgba(const std::string& path, int width, int height, const std::vector<uint8_t>& rgba);

/// Fixed severity quicklook palette, class rank 0..6; nodata renders
/// transparent.
std::array<uint8_t, 3> severity_color(int rank);

/// Severity classes -> paletted quicklook.
void write_severity_png(const Grid& classes, const std::string& path);

/// Post-fire backdrop (grayscale reflectance stretch) with the reference
/// burned mask blended semi-transparent red and hotspot-mask outlines drawn
/// on top. Grids must be aligned; pass width-0 grids to skip a layer.
void write_overlay_png(const Grid& backdrop, const Grid& ref_mask, const Grid& hotspot_mask,
                       const std::string& path);

} // namespace burnscan

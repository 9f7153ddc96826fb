#pragma once

#include "burnscan/exec.hpp"
#include "burnscan/grid.hpp"

namespace burnscan {

enum class ResampleMethod { Nearest, Bilinear };

/// Sample src at the center of every output pixel under the target
/// transform. Points outside src coverage map to nodata. Bilinear skips
/// nodata neighbors by renormalizing the remaining weights and requires a
/// non-categorical grid kind (Errc::MethodKindMismatch otherwise).
/// src and target must carry the same CRS tag (Errc::CrsMismatch).
/// An exact-identity target returns a bitwise copy for both methods.
Grid resample_to(const Grid& src, const GeoTransform& target, int target_w, int target_h,
                 ResampleMethod method, const ExecPolicy& exec = {});

/// Cut src down to the ROI bounding box snapped to src's pixel lattice
/// (clamped to src coverage). Pixels whose centers fall outside the polygon
/// become nodata. Throws Errc::EmptyIntersection when the ROI is disjoint
/// from the grid and Errc::CrsMismatch on differing CRS tags.
Grid clip(const Grid& src, const RoiPolygon& roi, const ExecPolicy& exec = {});

} // namespace burnscan

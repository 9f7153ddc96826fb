#pragma once

#include "burnscan/grid.hpp"

#include <optional>
#include <string>

namespace burnscan {

/// Sample encodings supported by the writer. The reader additionally
/// accepts uint16.
enum class TiffEncoding { Float32, Int16 };

/// Read a single-band GeoTIFF from the supported subset: little-endian
/// classic TIFF, uint16/int16/float32 samples, strip or tile layout, no or
/// deflate compression, geotransform from ModelPixelScale + ModelTiepoint,
/// nodata from the GDAL_NODATA ASCII tag. Anything else raises
/// Errc::UnsupportedTiff. File nodata samples become the NaN sentinel.
/// integer_encoded, when given, reports whether the file stored integer
/// samples (uint16/int16).
Grid read_geotiff(const std::string& path, GridKind kind, bool* integer_encoded = nullptr);

/// Write grid as a tiled (256 x 256) deflate-compressed GeoTIFF with the
/// GDAL_NODATA tag set. Int16 encoding requires integer-valued samples in
/// range; NaN samples are stored as file_nodata (ignored for Float32, which
/// keeps NaN and declares "nan"). Output bytes are deterministic.
void write_geotiff(const Grid& grid, const std::string& path, TiffEncoding enc,
                   int16_t file_nodata = -32768);

} // namespace burnscan

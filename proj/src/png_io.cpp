#include "burnscan/png_io.hpp"

#include "burnscan/errors.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

namespace burnscan {

namespace {

void put_u32_be(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void put_chunk(std::vector<uint8_t>& out, const char type[4], const std::vector<uint8_t>& data) {
    put_u32_be(out, static_cast<uint32_t>(data.size()));
    size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    uint32_t crc = static_cast<uint32_t>(
        crc32(0, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start)));
    put_u32_be(out, crc);
}

} // namespace

void write_png_rgba(const std::string& path, int width, int height, const std::vector<uint8_t>& rgba) {
    if (rgba.size() != static_cast<size_t>(width) * height * 4)
        fail(Errc::InvalidSpec, "rgba buffer does not match width x height");

    // raw scanlines, filter byte 0 per row
    std::vector<uint8_t> raw;
    raw.reserve(static_cast<size_t>(height) * (static_cast<size_t>(width) * 4 + 1));
    for (int r = 0; r < height; ++r) {
        raw.push_back(0);
        const uint8_t* row = rgba.data() + static_cast<size_t>(r) * width * 4;
        raw.insert(raw.end(), row, row + static_cast<size_t>(width) * 4);
    }
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<uint8_t> idat(bound);
    if (compress2(idat.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        fail(Errc::IoError, "PNG deflate failed");
    idat.resize(bound);

    std::vector<uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<uint8_t> ihdr;
    put_u32_be(ihdr, static_cast<uint32_t>(width));
    put_u32_be(ihdr, static_cast<uint32_t>(height));
    ihdr.insert(ihdr.end(), {8 /*depth*/, 6 /*rgba*/, 0, 0, 0});
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", idat);
    put_chunk(out, "IEND", {});

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) fail(Errc::IoError, "cannot create '" + path + "'");
    f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (!f.good()) fail(Errc::IoError, "write failed for '" + path + "'");
}

std::array<uint8_t, 3> severity_color(int rank) {
    static constexpr std::array<std::array<uint8_t, 3>, 7> kPalette = {{
        {0x7A, 0x87, 0x37}, // regrowth high
        {0xAC, 0xBE, 0x4D}, // regrowth low
        {0x0A, 0xE0, 0x42}, // unburned
        {0xFF, 0xF7, 0x0B}, // low
        {0xFF, 0xAF, 0x38}, // moderate-low
        {0xFF, 0x64, 0x1B}, // moderate-high
        {0xA4, 0x1F, 0xD6}, // high
    }};
    return kPalette[static_cast<size_t>(std::clamp(rank, 0, 6))];
}

void write_severity_png(const Grid& classes, const std::string& path) {
    const int w = classes.width(), h = classes.height();
    std::vector<uint8_t> rgba(static_cast<size_t>(w) * h * 4, 0);
    for (size_t i = 0; i < classes.size(); ++i) {
        float v = classes.values()[i];
        if (Grid::is_nodata(v)) continue; // transparent
        auto c = severity_color(static_cast<int>(std::lround(v)));
        rgba[i * 4 + 0] = c[0];
        rgba[i * 4 + 1] = c[1];
        rgba[i * 4 + 2] = c[2];
        rgba[i * 4 + 3] = 0xFF;
    }
    write_png_rgba(path, w, h, rgba);
}

void write_overlay_png(const Grid& backdrop, const Grid& ref_mask, const Grid& hotspot_mask,
                       const std::string& path) {
    const int w = backdrop.width(), h = backdrop.height();
    std::vector<uint8_t> rgba(static_cast<size_t>(w) * h * 4, 0);

    // grayscale stretch: reflectance 0..0.6 -> 0..255
    for (size_t i = 0; i < backdrop.size(); ++i) {
        float v = backdrop.values()[i];
        if (Grid::is_nodata(v)) continue;
        int g = static_cast<int>(std::clamp(v / 0.6f, 0.0f, 1.0f) * 255.0f);
        rgba[i * 4 + 0] = rgba[i * 4 + 1] = rgba[i * 4 + 2] = static_cast<uint8_t>(g);
        rgba[i * 4 + 3] = 0xFF;
    }

    if (ref_mask.width() == w && ref_mask.height() == h) {
        for (size_t i = 0; i < ref_mask.size(); ++i) {
            float v = ref_mask.values()[i];
            if (Grid::is_nodata(v) || std::lround(v) != 1) continue;
            // 50 % red blend
            rgba[i * 4 + 0] = static_cast<uint8_t>((rgba[i * 4 + 0] + 255) / 2);
            rgba[i * 4 + 1] = static_cast<uint8_t>(rgba[i * 4 + 1] / 2);
            rgba[i * 4 + 2] = static_cast<uint8_t>(rgba[i * 4 + 2] / 2);
            rgba[i * 4 + 3] = 0xFF;
        }
    }

    if (hotspot_mask.width() == w && hotspot_mask.height() == h) {
        auto is_set = [&](int c, int r) {
            if (c < 0 || c >= w || r < 0 || r >= h) return false;
            float v = hotspot_mask.at(c, r);
            return !Grid::is_nodata(v) && std::lround(v) == 1;
        };
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                if (!is_set(c, r)) continue;
                bool edge = !is_set(c - 1, r) || !is_set(c + 1, r) || !is_set(c, r - 1) || !is_set(c, r + 1);
                if (!edge) continue;
                size_t i = static_cast<size_t>(r) * w + c;
                rgba[i * 4 + 0] = 0xFF;
                rgba[i * 4 + 1] = 0xE0;
                rgba[i * 4 + 2] = 0x00;
                rgba[i * 4 + 3] = 0xFF;
            }
        }
    }

    write_png_rgba(path, w, h, rgba);
}

} // namespace burnscan

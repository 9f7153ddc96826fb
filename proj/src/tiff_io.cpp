#include "burnscan/tiff_io.hpp"

#include "burnscan/errors.hpp"

#include <zlib.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <vector>

static_assert(std::endian::native == std::endian::little, "little-endian host required");

namespace burnscan {

namespace {

// tag ids of the supported subset
enum : uint16_t {
    kTagWidth = 256,
    kTagHeight = 257,
    kTagBitsPerSample = 258,
    kTagCompression = 259,
    kTagPhotometric = 262,
    kTagStripOffsets = 273,
    kTagSamplesPerPixel = 277,
    kTagRowsPerStrip = 278,
    kTagStripByteCounts = 279,
    kTagPlanarConfig = 284,
    kTagPredictor = 317,
    kTagTileWidth = 322,
    kTagTileLength = 323,
    kTagTileOffsets = 324,
    kTagTileByteCounts = 325,
    kTagSampleFormat = 339,
    kTagModelPixelScale = 33550,
    kTagModelTiepoint = 33922,
    kTagModelTransformation = 34264,
    kTagGeoKeyDirectory = 34735,
    kTagGeoAsciiParams = 34737,
    kTagGdalNodata = 42113,
};

enum : uint16_t {
    kTypeByte = 1,
    kTypeAscii = 2,
    kTypeShort = 3,
    kTypeLong = 4,
    kTypeFloat = 11,
    kTypeDouble = 12,
};

size_t type_size(uint16_t type) {
    switch (type) {
    case kTypeByte:
    case kTypeAscii: return 1;
    case kTypeShort: return 2;
    case kTypeLong:
    case kTypeFloat: return 4;
    case kTypeDouble: return 8;
    default: return 0;
    }
}

std::vector<uint8_t> zlib_inflate(const uint8_t* data, size_t n, size_t expected) {
    std::vector<uint8_t> out(expected);
    uLongf dst_len = static_cast<uLongf>(expected);
    int rc = uncompress(out.data(), &dst_len, data, static_cast<uLong>(n));
    if (rc != Z_OK) fail(Errc::UnsupportedTiff, "deflate stream failed to decompress");
    out.resize(dst_len);
    return out;
}

std::vector<uint8_t> zlib_deflate(const uint8_t* data, size_t n) {
    // level 1: compositing outputs are written often and read back once
    uLongf bound = compressBound(static_cast<uLong>(n));
    std::vector<uint8_t> out(bound);
    int rc = compress2(out.data(), &bound, data, static_cast<uLong>(n), 1);
    if (rc != Z_OK) fail(Errc::IoError, "deflate compression failed");
    out.resize(bound);
    return out;
}

struct IfdEntry {
    uint16_t type = 0;
    uint32_t count = 0;
    uint32_t value = 0; // inline value or offset
};

class TiffParser {
public:
    TiffParser(std::vector<uint8_t> bytes, std::string path) : buf_(std::move(bytes)), path_(std::move(path)) {
        if (buf_.size() < 8) unsupported("file too small for a TIFF header");
        if (buf_[0] == 'M' && buf_[1] == 'M') unsupported("big-endian TIFF is outside the supported subset");
        if (buf_[0] != 'I' || buf_[1] != 'I') unsupported("not a TIFF file");
        if (u16(2) == 43) unsupported("BigTIFF is outside the supported subset");
        if (u16(2) != 42) unsupported("bad TIFF magic");
        uint32_t ifd = u32(4);
        if (ifd + 2 > buf_.size()) unsupported("IFD offset out of range");
        uint16_t n = u16(ifd);
        for (uint16_t i = 0; i < n; ++i) {
            size_t e = ifd + 2 + i * 12u;
            if (e + 12 > buf_.size()) unsupported("truncated IFD");
            uint16_t tag = u16(e);
            IfdEntry ent;
            ent.type = u16(e + 2);
            ent.count = u32(e + 4);
            ent.value = u32(e + 8);
            entries_[tag] = ent;
        }
    }

    bool has(uint16_t tag) const { return entries_.count(tag) != 0; }

    uint64_t uint_scalar(uint16_t tag, uint64_t fallback) const {
        auto v = uints(tag);
        if (v.empty()) return fallback;
        return v[0];
    }

    std::vector<uint64_t> uints(uint16_t tag) const {
        auto it = entries_.find(tag);
        if (it == entries_.end()) return {};
        const IfdEntry& e = it->second;
        if (e.type != kTypeShort && e.type != kTypeLong) unsupported("unexpected integer tag type");
        std::vector<uint64_t> out(e.count);
        size_t off = value_offset(e);
        for (uint32_t i = 0; i < e.count; ++i)
            out[i] = e.type == kTypeShort ? u16(off + 2u * i) : u32(off + 4u * i);
        return out;
    }

    std::vector<double> doubles(uint16_t tag) const {
        auto it = entries_.find(tag);
        if (it == entries_.end()) return {};
        const IfdEntry& e = it->second;
        if (e.type != kTypeDouble) unsupported("expected DOUBLE tag type");
        std::vector<double> out(e.count);
        size_t off = value_offset(e);
        for (uint32_t i = 0; i < e.count; ++i) {
            double d;
            check_range(off + 8u * i, 8);
            std::memcpy(&d, buf_.data() + off + 8u * i, 8);
            out[i] = d;
        }
        return out;
    }

    std::string ascii(uint16_t tag) const {
        auto it = entries_.find(tag);
        if (it == entries_.end()) return {};
        const IfdEntry& e = it->second;
        if (e.type != kTypeAscii) unsupported("expected ASCII tag type");
        size_t off = value_offset(e);
        check_range(off, e.count);
        std::string s(reinterpret_cast<const char*>(data_at(off)), e.count);
        while (!s.empty() && (s.back() == '\0' || s.back() == ' ')) s.pop_back();
        return s;
    }

    const uint8_t* chunk(uint64_t offset, uint64_t nbytes) const {
        check_range(offset, nbytes);
        return buf_.data() + offset;
    }

    [[noreturn]] void unsupported(const std::string& why) const {
        fail(Errc::UnsupportedTiff, path_ + ": " + why);
    }

private:
    // Values of 4 bytes or fewer live inside the IFD entry; copy them into
    // a scratch area addressed past kScratchBase so all readers share one
    // offset-based accessor.
    size_t value_offset(const IfdEntry& e) const {
        size_t total = type_size(e.type) * e.count;
        if (total == 0) unsupported("bad tag type");
        if (total <= 4) {
            scratch_.resize(scratch_.size() + 4);
            std::memcpy(scratch_.data() + scratch_.size() - 4, &e.value, 4);
            return kScratchBase + scratch_.size() - 4;
        }
        check_range(e.value, total);
        return e.value;
    }

    uint16_t u16(size_t off) const {
        check_range(off, 2);
        uint16_t v;
        std::memcpy(&v, data_at(off), 2);
        return v;
    }
    uint32_t u32(size_t off) const {
        check_range(off, 4);
        uint32_t v;
        std::memcpy(&v, data_at(off), 4);
        return v;
    }

    static constexpr size_t kScratchBase = 1ull << 48;

    const uint8_t* data_at(size_t off) const {
        if (off >= kScratchBase) return scratch_.data() + (off - kScratchBase);
        return buf_.data() + off;
    }

    void check_range(size_t off, size_t n) const {
        if (off >= kScratchBase) {
            if (off - kScratchBase + n > scratch_.size()) unsupported("tag data out of range");
            return;
        }
        if (off + n > buf_.size()) unsupported("tag data out of range");
    }

    std::vector<uint8_t> buf_;
    mutable std::vector<uint8_t> scratch_;
    std::string path_;
    std::map<uint16_t, IfdEntry> entries_;
};

std::string crs_from_geokeys(const TiffParser& p) {
    auto dir = p.uints(kTagGeoKeyDirectory);
    if (dir.size() < 4) return {};
    std::string ascii = p.ascii(kTagGeoAsciiParams);
    uint64_t nkeys = dir[3];
    int projected = 0, geographic = 0;
    std::string citation;
    for (uint64_t k = 0; k < nkeys && 4 + 4 * k + 3 < dir.size(); ++k) {
        uint64_t key = dir[4 + 4 * k];
        uint64_t loc = dir[4 + 4 * k + 1];
        uint64_t count = dir[4 + 4 * k + 2];
        uint64_t value = dir[4 + 4 * k + 3];
        if (key == 3072 && loc == 0 && value != 0 && value != 32767) projected = static_cast<int>(value);
        if (key == 2048 && loc == 0 && value != 0 && value != 32767) geographic = static_cast<int>(value);
        if (key == 1026 && loc == kTagGeoAsciiParams && value + count <= ascii.size() + 1) {
            citation = ascii.substr(value, std::min<uint64_t>(count, ascii.size() - value));
            while (!citation.empty() && (citation.back() == '|' || citation.back() == '\0')) citation.pop_back();
        }
    }
    if (projected) return "EPSG:" + std::to_string(projected);
    if (geographic) return "EPSG:" + std::to_string(geographic);
    return citation;
}

} // namespace

Grid read_geotiff(const std::string& path, GridKind kind, bool* integer_encoded) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::IoError, "cannot open '" + path + "'");
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!in.good() && !in.eof()) fail(Errc::IoError, "read failed for '" + path + "'");

    TiffParser p(std::move(bytes), path);

    if (p.uint_scalar(kTagSamplesPerPixel, 1) != 1) p.unsupported("multi-band images are outside the subset");
    if (p.uint_scalar(kTagPlanarConfig, 1) != 1) p.unsupported("planar configuration 2 is outside the subset");
    if (p.uint_scalar(kTagPredictor, 1) != 1) p.unsupported("predictor is outside the subset");
    if (p.has(kTagModelTransformation))
        p.unsupported("ModelTransformation (rotated/sheared geotransform) is unsupported");

    uint64_t compression = p.uint_scalar(kTagCompression, 1);
    if (compression != 1 && compression != 8 && compression != 32946)
        p.unsupported("compression " + std::to_string(compression) + " (only none/deflate)");
    bool deflated = compression != 1;

    uint64_t width = p.uint_scalar(kTagWidth, 0);
    uint64_t height = p.uint_scalar(kTagHeight, 0);
    if (width == 0 || height == 0 || width > (1u << 24) || height > (1u << 24))
        p.unsupported("bad image dimensions");

    uint64_t bits = p.uint_scalar(kTagBitsPerSample, 1);
    uint64_t fmt = p.uint_scalar(kTagSampleFormat, 1);
    enum class Sample { U16, I16, F32 } sample;
    if (bits == 16 && fmt == 1) sample = Sample::U16;
    else if (bits == 16 && fmt == 2) sample = Sample::I16;
    else if (bits == 32 && fmt == 3) sample = Sample::F32;
    else p.unsupported("sample format " + std::to_string(fmt) + "/" + std::to_string(bits) +
                       " bits (only uint16/int16/float32)");
    size_t bpp = bits / 8;
    if (integer_encoded) *integer_encoded = sample != Sample::F32;

    auto pixel_scale = p.doubles(kTagModelPixelScale);
    auto tiepoint = p.doubles(kTagModelTiepoint);
    if (pixel_scale.size() < 2 || tiepoint.size() < 6)
        p.unsupported("missing ModelPixelScale/ModelTiepoint georeferencing");
    if (!(pixel_scale[0] > 0) || !(pixel_scale[1] > 0)) p.unsupported("non-positive pixel scale");

    GeoTransform tf;
    tf.pixel_w = pixel_scale[0];
    tf.pixel_h = pixel_scale[1];
    tf.origin_x = tiepoint[3] - tiepoint[0] * tf.pixel_w;
    tf.origin_y = tiepoint[4] + tiepoint[1] * tf.pixel_h;
    tf.crs = crs_from_geokeys(p);

    double nodata = std::numeric_limits<double>::quiet_NaN();
    bool have_nodata = false;
    std::string nd = p.ascii(kTagGdalNodata);
    if (!nd.empty()) {
        nodata = std::strtod(nd.c_str(), nullptr);
        have_nodata = true;
    }

    const int w = static_cast<int>(width), h = static_cast<int>(height);
    std::vector<uint8_t> raster(static_cast<size_t>(w) * h * bpp);

    auto place = [&](const std::vector<uint8_t>& data, int col0, int row0, int cw, int ch, int chunk_w) {
        for (int r = 0; r < ch; ++r) {
            if (row0 + r >= h) break;
            size_t src_off = static_cast<size_t>(r) * chunk_w * bpp;
            size_t dst_off = (static_cast<size_t>(row0 + r) * w + col0) * bpp;
            size_t copy_w = std::min<size_t>(cw, static_cast<size_t>(w - col0));
            std::memcpy(raster.data() + dst_off, data.data() + src_off, copy_w * bpp);
        }
    };

    if (p.has(kTagTileOffsets)) {
        uint64_t tw = p.uint_scalar(kTagTileWidth, 0);
        uint64_t th = p.uint_scalar(kTagTileLength, 0);
        if (tw == 0 || th == 0) p.unsupported("bad tile dimensions");
        auto offsets = p.uints(kTagTileOffsets);
        auto counts = p.uints(kTagTileByteCounts);
        uint64_t across = (width + tw - 1) / tw;
        uint64_t down = (height + th - 1) / th;
        if (offsets.size() < across * down || counts.size() < across * down)
            p.unsupported("tile offset table shorter than the tile grid");
        size_t tile_bytes = static_cast<size_t>(tw) * th * bpp;
        for (uint64_t t = 0; t < across * down; ++t) {
            const uint8_t* src = p.chunk(offsets[t], counts[t]);
            std::vector<uint8_t> data;
            if (deflated) {
                data = zlib_inflate(src, counts[t], tile_bytes);
            } else {
                data.assign(src, src + counts[t]);
            }
            if (data.size() < tile_bytes) p.unsupported("short tile data");
            place(data, static_cast<int>((t % across) * tw), static_cast<int>((t / across) * th),
                  static_cast<int>(tw), static_cast<int>(th), static_cast<int>(tw));
        }
    } else if (p.has(kTagStripOffsets)) {
        auto offsets = p.uints(kTagStripOffsets);
        auto counts = p.uints(kTagStripByteCounts);
        uint64_t rps = p.uint_scalar(kTagRowsPerStrip, height);
        if (rps == 0) p.unsupported("bad rows-per-strip");
        uint64_t nstrips = (height + rps - 1) / rps;
        if (offsets.size() < nstrips || counts.size() < nstrips)
            p.unsupported("strip offset table shorter than the strip count");
        for (uint64_t s = 0; s < nstrips; ++s) {
            uint64_t rows = std::min(rps, height - s * rps);
            size_t strip_bytes = static_cast<size_t>(rows) * width * bpp;
            const uint8_t* src = p.chunk(offsets[s], counts[s]);
            std::vector<uint8_t> data;
            if (deflated) {
                data = zlib_inflate(src, counts[s], strip_bytes);
            } else {
                data.assign(src, src + counts[s]);
            }
            if (data.size() < strip_bytes) p.unsupported("short strip data");
            place(data, 0, static_cast<int>(s * rps), w, static_cast<int>(rows), w);
        }
    } else {
        p.unsupported("neither strip nor tile layout present");
    }

    std::vector<float> values(static_cast<size_t>(w) * h);
    for (size_t i = 0; i < values.size(); ++i) {
        float v;
        switch (sample) {
        case Sample::U16: {
            uint16_t raw;
            std::memcpy(&raw, raster.data() + i * 2, 2);
            v = static_cast<float>(raw);
            break;
        }
        case Sample::I16: {
            int16_t raw;
            std::memcpy(&raw, raster.data() + i * 2, 2);
            v = static_cast<float>(raw);
            break;
        }
        default: {
            std::memcpy(&v, raster.data() + i * 4, 4);
            break;
        }
        }
        if (have_nodata && (v == static_cast<float>(nodata) || (std::isnan(v) && std::isnan(nodata))))
            v = Grid::kNoData;
        else if (!std::isfinite(v))
            v = Grid::kNoData;
        values[i] = v;
    }

    Grid g(w, h, tf, kind, std::move(values));
    g.validate();
    return g;
}

namespace {

class ByteSink {
public:
    size_t size() const { return buf_.size(); }
    void pad_to(size_t align) {
        while (buf_.size() % align) buf_.push_back(0);
    }
    size_t append(const void* data, size_t n) {
        size_t off = buf_.size();
        const uint8_t* p = static_cast<const uint8_t*>(data);
        buf_.insert(buf_.end(), p, p + n);
        return off;
    }
    template <class T>
    size_t append_value(T v) {
        return append(&v, sizeof(T));
    }
    void patch_u32(size_t off, uint32_t v) { std::memcpy(buf_.data() + off, &v, 4); }
    const std::vector<uint8_t>& bytes() const { return buf_; }

private:
    std::vector<uint8_t> buf_;
};

struct TagRecord {
    uint16_t tag;
    uint16_t type;
    uint32_t count;
    uint32_t value;
};

} // namespace

void write_geotiff(const Grid& grid, const std::string& path, TiffEncoding enc, int16_t file_nodata) {
    const int w = grid.width(), h = grid.height();
    constexpr int kTile = 256;
    const int across = (w + kTile - 1) / kTile;
    const int down = (h + kTile - 1) / kTile;
    const size_t bpp = enc == TiffEncoding::Float32 ? 4 : 2;

    ByteSink out;
    out.append("II", 2);
    out.append_value<uint16_t>(42);
    size_t ifd_ptr_at = out.append_value<uint32_t>(0);

    // tile payloads first, IFD and out-of-line arrays after
    std::vector<uint32_t> tile_offsets, tile_counts;
    std::vector<uint8_t> tile_raw(static_cast<size_t>(kTile) * kTile * bpp);
    for (int tr = 0; tr < down; ++tr) {
        for (int tc = 0; tc < across; ++tc) {
            std::fill(tile_raw.begin(), tile_raw.end(), 0);
            for (int r = 0; r < kTile; ++r) {
                int gr = tr * kTile + r;
                if (gr >= h) break;
                for (int c = 0; c < kTile; ++c) {
                    int gc = tc * kTile + c;
                    if (gc >= w) break;
                    float v = grid.at(gc, gr);
                    size_t at = (static_cast<size_t>(r) * kTile + c) * bpp;
                    if (enc == TiffEncoding::Float32) {
                        std::memcpy(tile_raw.data() + at, &v, 4);
                    } else {
                        int16_t iv;
                        if (Grid::is_nodata(v)) {
                            iv = file_nodata;
                        } else {
                            double rounded = std::nearbyint(v);
                            if (rounded != v || rounded < -32768.0 || rounded > 32767.0)
                                fail(Errc::IoError, "sample " + std::to_string(v) +
                                                        " does not fit the int16 encoding for '" + path + "'");
                            iv = static_cast<int16_t>(rounded);
                        }
                        std::memcpy(tile_raw.data() + at, &iv, 2);
                    }
                }
            }
            std::vector<uint8_t> packed = zlib_deflate(tile_raw.data(), tile_raw.size());
            out.pad_to(2);
            tile_offsets.push_back(static_cast<uint32_t>(out.size()));
            tile_counts.push_back(static_cast<uint32_t>(packed.size()));
            out.append(packed.data(), packed.size());
        }
    }

    out.pad_to(2);

    // out-of-line tag payloads
    auto put_u32_array = [&](const std::vector<uint32_t>& v) {
        out.pad_to(4);
        size_t off = out.size();
        out.append(v.data(), v.size() * 4);
        return static_cast<uint32_t>(off);
    };
    auto put_doubles = [&](const std::vector<double>& v) {
        out.pad_to(4);
        size_t off = out.size();
        out.append(v.data(), v.size() * 8);
        return static_cast<uint32_t>(off);
    };
    auto put_ascii = [&](const std::string& s) {
        out.pad_to(2);
        size_t off = out.size();
        out.append(s.data(), s.size());
        out.append_value<char>('\0');
        return static_cast<uint32_t>(off);
    };

    const GeoTransform& tf = grid.transform();
    uint32_t scale_off = put_doubles({tf.pixel_w, tf.pixel_h, 0.0});
    uint32_t tiepoint_off = put_doubles({0, 0, 0, tf.origin_x, tf.origin_y, 0});

    // GeoTIFF keys: EPSG codes go into the model/type keys, anything else
    // into the citation string
    std::vector<uint16_t> geokeys;
    std::string geo_ascii;
    {
        int epsg = 0;
        const std::string& crs = tf.crs;
        if (crs.rfind("EPSG:", 0) == 0) {
            try {
                size_t pos = 0;
                epsg = std::stoi(crs.substr(5), &pos);
                if (pos != crs.size() - 5) epsg = 0;
            } catch (...) {
                epsg = 0;
            }
        }
        std::vector<std::array<uint16_t, 4>> keys;
        if (epsg > 0 && epsg <= 65534) {
            bool geographic = crs_units(crs) == CrsUnits::Degrees;
            keys.push_back({1024, 0, 1, static_cast<uint16_t>(geographic ? 2 : 1)});
            keys.push_back({1025, 0, 1, 1}); // RasterPixelIsArea
            if (geographic)
                keys.push_back({2048, 0, 1, static_cast<uint16_t>(epsg)});
            else
                keys.push_back({3072, 0, 1, static_cast<uint16_t>(epsg)});
        } else if (!crs.empty()) {
            geo_ascii = crs + "|";
            keys.push_back({1024, 0, 1, 0});
            keys.push_back({1025, 0, 1, 1});
            keys.push_back({1026, kTagGeoAsciiParams, static_cast<uint16_t>(geo_ascii.size()), 0});
        }
        if (!keys.empty()) {
            geokeys = {1, 1, 0, static_cast<uint16_t>(keys.size())};
            for (auto& k : keys) geokeys.insert(geokeys.end(), k.begin(), k.end());
        }
    }
    uint32_t geokeys_off = 0;
    if (!geokeys.empty()) {
        out.pad_to(4);
        geokeys_off = static_cast<uint32_t>(out.size());
        out.append(geokeys.data(), geokeys.size() * 2);
    }
    uint32_t geo_ascii_off = geo_ascii.empty() ? 0 : put_ascii(geo_ascii);

    std::string nodata_text = enc == TiffEncoding::Float32 ? "nan" : std::to_string(file_nodata);
    uint32_t nodata_off = put_ascii(nodata_text);

    uint32_t tile_offsets_off = 0, tile_counts_off = 0;
    if (tile_offsets.size() > 1) {
        tile_offsets_off = put_u32_array(tile_offsets);
        tile_counts_off = put_u32_array(tile_counts);
    }

    std::vector<TagRecord> tags;
    auto add = [&](uint16_t tag, uint16_t type, uint32_t count, uint32_t value) {
        tags.push_back({tag, type, count, value});
    };
    add(kTagWidth, kTypeLong, 1, static_cast<uint32_t>(w));
    add(kTagHeight, kTypeLong, 1, static_cast<uint32_t>(h));
    add(kTagBitsPerSample, kTypeShort, 1, enc == TiffEncoding::Float32 ? 32 : 16);
    add(kTagCompression, kTypeShort, 1, 8);
    add(kTagPhotometric, kTypeShort, 1, 1);
    add(kTagSamplesPerPixel, kTypeShort, 1, 1);
    add(kTagTileWidth, kTypeShort, 1, kTile);
    add(kTagTileLength, kTypeShort, 1, kTile);
    if (tile_offsets.size() == 1) {
        add(kTagTileOffsets, kTypeLong, 1, tile_offsets[0]);
        add(kTagTileByteCounts, kTypeLong, 1, tile_counts[0]);
    } else {
        add(kTagTileOffsets, kTypeLong, static_cast<uint32_t>(tile_offsets.size()), tile_offsets_off);
        add(kTagTileByteCounts, kTypeLong, static_cast<uint32_t>(tile_counts.size()), tile_counts_off);
    }
    add(kTagSampleFormat, kTypeShort, 1, enc == TiffEncoding::Float32 ? 3 : 2);
    add(kTagModelPixelScale, kTypeDouble, 3, scale_off);
    add(kTagModelTiepoint, kTypeDouble, 6, tiepoint_off);
    if (geokeys_off) add(kTagGeoKeyDirectory, kTypeShort, static_cast<uint32_t>(geokeys.size()), geokeys_off);
    if (geo_ascii_off) add(kTagGeoAsciiParams, kTypeAscii, static_cast<uint32_t>(geo_ascii.size() + 1), geo_ascii_off);
    add(kTagGdalNodata, kTypeAscii, static_cast<uint32_t>(nodata_text.size() + 1), nodata_off);

    out.pad_to(2);
    uint32_t ifd_off = static_cast<uint32_t>(out.size());
    out.append_value<uint16_t>(static_cast<uint16_t>(tags.size()));
    for (const TagRecord& t : tags) {
        out.append_value<uint16_t>(t.tag);
        out.append_value<uint16_t>(t.type);
        out.append_value<uint32_t>(t.count);
        out.append_value<uint32_t>(t.value);
    }
    out.append_value<uint32_t>(0); // no next IFD
    out.patch_u32(ifd_ptr_at, ifd_off);

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) fail(Errc::IoError, "cannot create '" + path + "'");
    f.write(reinterpret_cast<const char*>(out.bytes().data()), static_cast<std::streamsize>(out.size()));
    if (!f.good()) fail(Errc::IoError, "write failed for '" + path + "'");
}

} // namespace burnscan

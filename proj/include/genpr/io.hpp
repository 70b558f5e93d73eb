#ifndef GENPR_IO_HPP
#define GENPR_IO_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "point_cloud.hpp"
#include "transforms.hpp"

/**
 * @file io.hpp
 *
 * Binary formats (all integers little-endian):
 *
 *   FV32  "FV32" | u32 version=1 | u64 count | u32 dim | count*dim f32, row-major
 *   IMU8  "IMU8" | u32 version=1 | u64 count | u32 height | u32 width | u32 channels
 *         | count*height*width*channels u8, row-major (channels last)
 *
 * Decoders reject bad magic, unknown versions, zero sizes, truncation,
 * trailing bytes and non-finite features with a FormatError carrying the
 * byte offset of the problem.
 */

namespace genpr {

inline constexpr std::uint32_t format_version = 1;

namespace detail {

template <class UInt>
void put_le(std::string& buf, UInt v) {
    for (std::size_t b = 0; b < sizeof(UInt); ++b) {
        buf.push_back(static_cast<char>((v >> (8 * b)) & 0xFF));
    }
}

class ByteReader {
public:
    ByteReader(const std::vector<unsigned char>& bytes, std::string context)
        : bytes_(bytes), context_(std::move(context)) {}

    std::uint64_t offset() const noexcept { return pos_; }
    std::uint64_t remaining() const noexcept { return bytes_.size() - pos_; }

    [[noreturn]] void fail(const std::string& what, std::uint64_t at) const {
        throw FormatError(context_ + ": " + what, at);
    }

    void expect_magic(std::string_view magic) {
        need(magic.size(), "truncated header");
        if (std::memcmp(bytes_.data(), magic.data(), magic.size()) != 0) {
            fail("bad magic, expected '" + std::string(magic) + "'", 0);
        }
        pos_ += magic.size();
    }

    template <class UInt>
    UInt get() {
        need(sizeof(UInt), "truncated header");
        UInt v = 0;
        for (std::size_t b = 0; b < sizeof(UInt); ++b) {
            v |= static_cast<UInt>(bytes_[pos_ + b]) << (8 * b);
        }
        pos_ += sizeof(UInt);
        return v;
    }

    const unsigned char* take(std::uint64_t count) {
        need(count, "truncated payload: expected " + std::to_string(count) + " bytes, found " +
                        std::to_string(remaining()));
        const unsigned char* p = bytes_.data() + pos_;
        pos_ += count;
        return p;
    }

    void expect_end() const {
        if (pos_ != bytes_.size()) {
            fail(std::to_string(bytes_.size() - pos_) + " trailing bytes after payload", pos_);
        }
    }

private:
    void need(std::uint64_t count, const std::string& what) const {
        if (remaining() < count) {
            fail(what, bytes_.size());
        }
    }

    const std::vector<unsigned char>& bytes_;
    std::string context_;
    std::uint64_t pos_ = 0;
};

inline std::vector<unsigned char> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("error while reading '" + path + "'");
    }
    return bytes;
}

inline void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("error while writing '" + path + "'");
    }
}

inline void check_payload_size(const ByteReader& r, std::uint64_t count, std::uint64_t per_item,
                               std::uint64_t count_offset) {
    if (per_item != 0 && count > std::numeric_limits<std::uint64_t>::max() / per_item) {
        r.fail("dimension overflow: count * item size exceeds 64 bits", count_offset);
    }
}

} // namespace detail

/// Encodes a cloud as FV32. Coordinates are narrowed to single precision.
template <class T>
std::string encode_features(const BasicPointCloud<T>& cloud) {
    if (cloud.d() > std::numeric_limits<std::uint32_t>::max()) {
        throw DomainError("FV32: dimension does not fit in u32");
    }
    std::string buf = "FV32";
    detail::put_le<std::uint32_t>(buf, format_version);
    detail::put_le<std::uint64_t>(buf, cloud.n());
    detail::put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(cloud.d()));
    buf.reserve(buf.size() + 4 * cloud.values().size());
    for (const T v : cloud.values()) {
        const auto f = static_cast<float>(v);
        if (!std::isfinite(f)) {
            throw DomainError("FV32: value " + std::to_string(static_cast<double>(v)) + " overflows float");
        }
        detail::put_le<std::uint32_t>(buf, std::bit_cast<std::uint32_t>(f));
    }
    return buf;
}

inline PointCloudF decode_features(const std::vector<unsigned char>& bytes, const std::string& context = "FV32") {
    detail::ByteReader r(bytes, context);
    r.expect_magic("FV32");
    if (const auto version = r.get<std::uint32_t>(); version != format_version) {
        r.fail("unsupported version " + std::to_string(version), 4);
    }
    const auto count = r.get<std::uint64_t>();
    const auto dim = r.get<std::uint32_t>();
    if (count == 0) {
        r.fail("point count must be at least 1", 8);
    }
    if (dim == 0) {
        r.fail("dimension must be at least 1", 16);
    }
    detail::check_payload_size(r, count, std::uint64_t{dim} * 4, 8);
    const std::uint64_t payload = count * dim * 4;
    if (payload > r.remaining()) {
        r.fail("truncated payload: expected " + std::to_string(payload) + " bytes, found " +
                   std::to_string(r.remaining()),
               bytes.size());
    }
    const std::uint64_t start = r.offset();
    const unsigned char* p = r.take(payload);
    r.expect_end();

    std::vector<float> values(count * dim);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint32_t u = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            u |= static_cast<std::uint32_t>(p[4 * i + b]) << (8 * b);
        }
        values[i] = std::bit_cast<float>(u);
        if (!std::isfinite(values[i])) {
            r.fail("non-finite feature value", start + 4 * i);
        }
    }
    return PointCloudF(count, dim, std::move(values));
}

template <class T>
void write_features(const BasicPointCloud<T>& cloud, const std::string& path) {
    detail::write_file(path, encode_features(cloud));
}

inline PointCloudF read_features(const std::string& path) {
    return decode_features(detail::read_file(path), path);
}

inline std::string encode_images(const ImageTensor& images) {
    images.validate();
    constexpr auto u32_max = std::numeric_limits<std::uint32_t>::max();
    if (images.height > u32_max || images.width > u32_max) {
        throw DomainError("IMU8: image dimensions do not fit in u32");
    }
    std::string buf = "IMU8";
    detail::put_le<std::uint32_t>(buf, format_version);
    detail::put_le<std::uint64_t>(buf, images.count);
    detail::put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(images.height));
    detail::put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(images.width));
    detail::put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(images.channels));
    buf.append(reinterpret_cast<const char*>(images.pixels.data()), images.pixels.size());
    return buf;
}

inline ImageTensor decode_images(const std::vector<unsigned char>& bytes, const std::string& context = "IMU8") {
    detail::ByteReader r(bytes, context);
    r.expect_magic("IMU8");
    if (const auto version = r.get<std::uint32_t>(); version != format_version) {
        r.fail("unsupported version " + std::to_string(version), 4);
    }
    ImageTensor t;
    t.count = r.get<std::uint64_t>();
    t.height = r.get<std::uint32_t>();
    t.width = r.get<std::uint32_t>();
    t.channels = r.get<std::uint32_t>();
    if (t.count == 0) {
        r.fail("image count must be at least 1", 8);
    }
    if (t.height == 0 || t.width == 0) {
        r.fail("image height and width must be at least 1", 16);
    }
    if (t.channels != 1 && t.channels != 3) {
        r.fail("channels must be 1 or 3, got " + std::to_string(t.channels), 24);
    }
    const std::uint64_t per_image = std::uint64_t{t.height} * t.width * t.channels;
    detail::check_payload_size(r, t.count, per_image, 8);
    const std::uint64_t payload = t.count * per_image;
    const unsigned char* p = r.take(payload);
    r.expect_end();
    t.pixels.assign(p, p + payload);
    return t;
}

inline void write_images(const ImageTensor& images, const std::string& path) {
    detail::write_file(path, encode_images(images));
}

inline ImageTensor read_images(const std::string& path) { return decode_images(detail::read_file(path), path); }

} // namespace genpr

#endif

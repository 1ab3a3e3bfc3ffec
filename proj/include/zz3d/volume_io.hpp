#pragma once

// Volume and trace serialization.
//
// ZZV1 volume file (little-endian):
//   offset 0   magic "ZZV1" (5A 5A 56 31)
//   offset 4   rows  u32
//   offset 8   cols  u32
//   offset 12  bands u32
//   offset 16  rows * cols * bands samples, band-major then row-major
//
// PGM sequences use binary P5 frames with maxval 255; frame i is band i.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zz3d/bytes.hpp"
#include "zz3d/error.hpp"
#include "zz3d/grid.hpp"
#include "zz3d/volume.hpp"

namespace zz3d {

inline constexpr std::array<std::uint8_t, 4> vol_magic{0x5A, 0x5A, 0x56, 0x31};
inline constexpr std::size_t vol_header_size = 16;

struct vol_header {
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::uint32_t bands = 0;
};

inline bool has_vol_magic(std::span<const std::uint8_t> bytes) noexcept {
    return bytes.size() >= vol_magic.size() && std::equal(vol_magic.begin(), vol_magic.end(), bytes.begin());
}

inline vol_header parse_vol_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < vol_header_size)
        fail(errc::format, "ZZV1 header truncated");
    if (!has_vol_magic(bytes))
        fail(errc::format, "bad ZZV1 magic");
    vol_header h;
    h.rows = static_cast<std::uint32_t>(detail::get_le(bytes, 4, 4));
    h.cols = static_cast<std::uint32_t>(detail::get_le(bytes, 8, 4));
    h.bands = static_cast<std::uint32_t>(detail::get_le(bytes, 12, 4));
    if (h.rows == 0 || h.cols == 0 || h.bands == 0)
        fail(errc::format, "ZZV1 header has a zero extent");
    return h;
}

inline byte_buffer write_vol(const volume& v) {
    if (v.empty())
        fail(errc::invalid_dimension, "cannot write an empty volume");
    byte_buffer out(vol_magic.begin(), vol_magic.end());
    out.reserve(vol_header_size + v.size());
    detail::put_le(out, v.rows(), 4);
    detail::put_le(out, v.cols(), 4);
    detail::put_le(out, v.bands(), 4);
    out.insert(out.end(), v.values().begin(), v.values().end());
    return out;
}

inline volume read_vol(std::span<const std::uint8_t> bytes) {
    const vol_header h = parse_vol_header(bytes);
    const std::size_t payload = bytes.size() - vol_header_size;
    // compare without forming the (possibly overflowing) product first
    const std::size_t plane = std::size_t{h.rows} * h.cols;
    if (payload % plane != 0 || payload / plane != h.bands)
        fail(errc::format, "ZZV1 payload size does not match header extents");
    return volume(h.rows, h.cols, h.bands,
                  std::vector<std::uint8_t>(bytes.begin() + vol_header_size, bytes.end()));
}

// PGM

namespace detail {

class pgm_cursor {
public:
    pgm_cursor(std::span<const std::uint8_t> bytes, const std::string& name) : bytes_(bytes), name_(name) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const auto ch = bytes_[pos_];
            if (ch == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
                    ++pos_;
            } else if (is_space(ch)) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::size_t number(const char* field) {
        skip_space_and_comments();
        const char* first = reinterpret_cast<const char*>(bytes_.data()) + pos_;
        const char* last = reinterpret_cast<const char*>(bytes_.data()) + bytes_.size();
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr == first)
            fail(errc::format, name_ + ": bad PGM " + field);
        pos_ += static_cast<std::size_t>(ptr - first);
        return value;
    }

    void single_space() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_]))
            fail(errc::format, name_ + ": PGM header not followed by whitespace");
        ++pos_;
    }

    std::size_t pos() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }

private:
    static bool is_space(std::uint8_t ch) noexcept {
        return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '\v' || ch == '\f';
    }

    std::span<const std::uint8_t> bytes_;
    std::string name_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses one binary P5 frame with maxval 255. `name` labels errors.
inline grid2<std::uint8_t> parse_pgm(std::span<const std::uint8_t> bytes, const std::string& name = "pgm") {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        fail(errc::format, name + ": not a binary PGM (P5) file");
    detail::pgm_cursor cur(bytes, name);
    cur.advance(2);
    const std::size_t width = cur.number("width");
    const std::size_t height = cur.number("height");
    const std::size_t maxval = cur.number("maxval");
    if (width == 0 || height == 0)
        fail(errc::format, name + ": PGM has a zero extent");
    if (maxval != 255)
        fail(errc::format, name + ": PGM maxval must be 255, got " + std::to_string(maxval));
    cur.single_space();
    const std::size_t remaining = bytes.size() - cur.pos();
    if (remaining / width < height || remaining != width * height)
        fail(errc::format, name + ": PGM pixel data size does not match header");
    auto first = bytes.begin() + static_cast<std::ptrdiff_t>(cur.pos());
    return grid2<std::uint8_t>(height, width, std::vector<std::uint8_t>(first, bytes.end()));
}

inline byte_buffer encode_pgm(const grid2<std::uint8_t>& frame) {
    const std::string header =
        "P5\n" + std::to_string(frame.cols()) + " " + std::to_string(frame.rows()) + "\n255\n";
    byte_buffer out(header.begin(), header.end());
    out.insert(out.end(), frame.values().begin(), frame.values().end());
    return out;
}

/// Stacks equally sized frames into bands. `names` (optional) label errors.
inline volume stack_frames(std::span<const grid2<std::uint8_t>> frames,
                           std::span<const std::string> names = {}) {
    if (frames.empty())
        fail(errc::format, "no frames given");
    const std::size_t rows = frames[0].rows(), cols = frames[0].cols();
    std::vector<std::uint8_t> samples;
    samples.reserve(rows * cols * frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].rows() != rows || frames[i].cols() != cols) {
            const std::string label = i < names.size() ? names[i] : "frame " + std::to_string(i);
            fail(errc::format, label + ": frame dimensions differ from the first frame");
        }
        samples.insert(samples.end(), frames[i].values().begin(), frames[i].values().end());
    }
    return volume(rows, cols, frames.size(), std::move(samples));
}

inline grid2<std::uint8_t> extract_band(const volume& v, std::size_t band) {
    const auto plane = static_cast<std::ptrdiff_t>(v.rows() * v.cols());
    auto first = v.values().begin() + static_cast<std::ptrdiff_t>(band) * plane;
    return grid2<std::uint8_t>(v.rows(), v.cols(), std::vector<std::uint8_t>(first, first + plane));
}

inline volume read_pgm_sequence(std::span<const std::filesystem::path> files) {
    std::vector<grid2<std::uint8_t>> frames;
    std::vector<std::string> names;
    for (const auto& f : files) {
        names.push_back(f.string());
        frames.push_back(parse_pgm(read_file(f), names.back()));
    }
    return stack_frames(frames, names);
}

/// Writes band i to dir/<stem>_<i, 4 digits>.pgm and returns the paths in band order.
inline std::vector<std::filesystem::path> write_pgm_sequence(const volume& v, const std::filesystem::path& dir,
                                                             std::string_view stem = "frame") {
    if (v.empty())
        fail(errc::invalid_dimension, "cannot write an empty volume");
    std::vector<std::filesystem::path> paths;
    for (std::size_t b = 0; b < v.bands(); ++b) {
        std::string index = std::to_string(b);
        if (index.size() < 4)
            index.insert(0, 4 - index.size(), '0');
        paths.push_back(dir / (std::string(stem) + "_" + index + ".pgm"));
        write_file(paths.back(), encode_pgm(extract_band(v, b)));
    }
    return paths;
}

// Spectrum traces

struct spectrum_trace {
    std::vector<double> values;
    std::string label;
};

/// CSV with header "index,coefficient". Coefficients use the shortest decimal
/// form that round-trips to the same double.
inline std::string write_csv_spectrum(const spectrum_trace& t) {
    if (t.values.empty())
        fail(errc::invalid_dimension, "empty spectrum trace");
    std::string out = "index,coefficient\n";
    out.reserve(out.size() + t.values.size() * 24);
    std::array<char, 64> buf{};
    for (std::size_t i = 0; i < t.values.size(); ++i) {
        out += std::to_string(i);
        out += ',';
        auto res = std::to_chars(buf.data(), buf.data() + buf.size(), t.values[i]);
        out.append(buf.data(), res.ptr);
        out += '\n';
    }
    return out;
}

}  // namespace zz3d

#pragma once

// Volumetric block codec: partition -> level shift -> 3D DCT -> uniform
// quantization -> scan -> run-length -> Exp-Golomb.
//
// ZZC1 stream (multi-byte integers little-endian):
//   offset 0   magic "ZZC1" (5A 5A 43 31)
//   offset 4   version     u8 = 1
//   offset 5   scan_id     u8 (0 raster3d, 1 zigzag3d, 2 zigzag2d_per_band)
//   offset 6   block_size  u8 (2, 4, 8 or 16)
//   offset 7   reserved    u8 = 0
//   offset 8   quant_step  u16
//   offset 10  rows        u32
//   offset 14  cols        u32
//   offset 18  bands       u32
//   offset 22  payload, MSB-first bits, zero-padded to a byte at the end
//
// Payload, per block in block raster order (band-block slowest):
//   ue(K), then K x (ue(run), se(level))
// Zeros after the last nonzero coefficient are implicit.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zz3d/bitstream.hpp"
#include "zz3d/bytes.hpp"
#include "zz3d/error.hpp"
#include "zz3d/grid.hpp"
#include "zz3d/scan_orders.hpp"
#include "zz3d/transforms.hpp"
#include "zz3d/volume.hpp"

namespace zz3d {

enum class scan_id : std::uint8_t { raster3d = 0, zigzag3d = 1, zigzag2d_per_band = 2 };

inline constexpr std::array<scan_id, 3> all_scan_ids{scan_id::raster3d, scan_id::zigzag3d,
                                                     scan_id::zigzag2d_per_band};

inline std::string_view to_string(scan_id id) noexcept {
    switch (id) {
    case scan_id::raster3d: return "raster3d";
    case scan_id::zigzag3d: return "zigzag3d";
    case scan_id::zigzag2d_per_band: return "zigzag2d_per_band";
    }
    return "unknown";
}

inline std::optional<scan_id> parse_scan_id(std::string_view name) noexcept {
    for (scan_id id : all_scan_ids)
        if (to_string(id) == name)
            return id;
    return std::nullopt;
}

inline scan_order_3d make_block_scan(scan_id id, std::size_t block_size) {
    switch (id) {
    case scan_id::raster3d: return raster_order_3d(block_size);
    case scan_id::zigzag3d: return cubic_zigzag_order(block_size);
    case scan_id::zigzag2d_per_band: return per_band_zigzag_order(block_size);
    }
    fail(errc::invalid_config, "unknown scan id");
}

inline bool valid_block_size(std::size_t n) noexcept { return n == 2 || n == 4 || n == 8 || n == 16; }

struct codec_config {
    std::size_t block_size = 8;
    std::uint32_t quant_step = 8;
    scan_id scan = scan_id::zigzag3d;

    void validate() const {
        if (!valid_block_size(block_size))
            fail(errc::invalid_config, "block size must be 2, 4, 8 or 16, got " + std::to_string(block_size));
        if (quant_step < 1 || quant_step > 65535)
            fail(errc::invalid_config, "quant step must be in [1, 65535], got " + std::to_string(quant_step));
        if (static_cast<std::uint8_t>(scan) > 2)
            fail(errc::invalid_config, "unknown scan id");
    }
};

// Partitioning

struct block_geometry {
    std::size_t rows = 0, cols = 0, bands = 0;  // true volume extents
    std::size_t block_size = 0;
    std::size_t blocks_down = 0, blocks_across = 0, blocks_deep = 0;

    static block_geometry of(std::size_t rows, std::size_t cols, std::size_t bands, std::size_t block_size) {
        auto up = [&](std::size_t n) { return n / block_size + (n % block_size != 0); };
        return {rows, cols, bands, block_size, up(rows), up(cols), up(bands)};
    }

    std::size_t block_count() const noexcept { return blocks_down * blocks_across * blocks_deep; }
    std::size_t block_volume() const noexcept { return block_size * block_size * block_size; }
};

struct partitioned_volume {
    block_geometry geometry;
    std::vector<cube> blocks;
};

/// Splits `v` into block_size^3 cubes in block raster order (block columns
/// fastest, band-blocks slowest). Partial blocks are filled by replicating the
/// last row / col / band.
inline partitioned_volume partition_blocks(const volume& v, std::size_t block_size) {
    if (v.empty())
        fail(errc::invalid_dimension, "cannot partition an empty volume");
    if (!valid_block_size(block_size))
        fail(errc::invalid_config, "block size must be 2, 4, 8 or 16");
    partitioned_volume out{block_geometry::of(v.rows(), v.cols(), v.bands(), block_size), {}};
    const auto& g = out.geometry;
    out.blocks.reserve(g.block_count());
    const std::size_t n = block_size;
    for (std::size_t bb = 0; bb < g.blocks_deep; ++bb)
        for (std::size_t rb = 0; rb < g.blocks_down; ++rb)
            for (std::size_t cb = 0; cb < g.blocks_across; ++cb) {
                cube blk(n, n, n);
                for (std::size_t b = 0; b < n; ++b) {
                    const std::size_t sb = std::min(bb * n + b, v.bands() - 1);
                    for (std::size_t r = 0; r < n; ++r) {
                        const std::size_t sr = std::min(rb * n + r, v.rows() - 1);
                        for (std::size_t c = 0; c < n; ++c) {
                            const std::size_t sc = std::min(cb * n + c, v.cols() - 1);
                            blk(r, c, b) = v(sr, sc, sb);
                        }
                    }
                }
                out.blocks.push_back(std::move(blk));
            }
    return out;
}

/// Inverse of partition_blocks: writes block samples back, dropping padding.
inline volume assemble_blocks(std::span<const grid3<std::uint8_t>> blocks, const block_geometry& g) {
    if (blocks.size() != g.block_count())
        fail(errc::shape_mismatch, "block count does not match geometry");
    volume v(g.rows, g.cols, g.bands);
    const std::size_t n = g.block_size;
    std::size_t i = 0;
    for (std::size_t bb = 0; bb < g.blocks_deep; ++bb)
        for (std::size_t rb = 0; rb < g.blocks_down; ++rb)
            for (std::size_t cb = 0; cb < g.blocks_across; ++cb, ++i) {
                const auto& blk = blocks[i];
                for (std::size_t b = 0; b < n && bb * n + b < g.bands; ++b)
                    for (std::size_t r = 0; r < n && rb * n + r < g.rows; ++r)
                        for (std::size_t c = 0; c < n && cb * n + c < g.cols; ++c)
                            v(rb * n + r, cb * n + c, bb * n + b) = blk(r, c, b);
            }
    return v;
}

// Sample and coefficient mapping

enum class shift_direction { forward, inverse };

/// Round half away from zero.
inline double round_half_away(double x) noexcept { return std::round(x); }

/// forward: x - 128. inverse: clamp(round(x + 128), 0, 255).
inline double level_shift(double x, shift_direction dir) noexcept {
    if (dir == shift_direction::forward)
        return x - 128.0;
    return std::clamp(round_half_away(x + 128.0), 0.0, 255.0);
}

inline cube level_shift(cube block, shift_direction dir) {
    for (double& x : block.data())
        x = level_shift(x, dir);
    return block;
}

inline std::int32_t quantize(double coeff, std::uint32_t step) {
    const double q = round_half_away(coeff / static_cast<double>(step));
    if (!(std::fabs(q) <= static_cast<double>(max_se_magnitude)))
        fail(errc::domain, "quantized coefficient out of range");
    return static_cast<std::int32_t>(q);
}

inline grid3<std::int32_t> quantize(const cube& c, std::uint32_t step) {
    if (step < 1)
        fail(errc::invalid_config, "quant step must be at least 1");
    grid3<std::int32_t> out(c.rows(), c.cols(), c.bands());
    for (std::size_t i = 0; i < c.size(); ++i)
        out.data()[i] = quantize(c.data()[i], step);
    return out;
}

inline cube dequantize(const grid3<std::int32_t>& q, std::uint32_t step) {
    cube out(q.rows(), q.cols(), q.bands());
    for (std::size_t i = 0; i < q.size(); ++i)
        out.data()[i] = static_cast<double>(q.data()[i]) * static_cast<double>(step);
    return out;
}

// Run-length symbols

struct rle_symbol {
    std::uint32_t run = 0;  // zeros preceding the level
    std::int32_t level = 0;  // never zero

    friend bool operator==(const rle_symbol&, const rle_symbol&) = default;
};

struct encoded_block {
    std::vector<rle_symbol> symbols;

    friend bool operator==(const encoded_block&, const encoded_block&) = default;
};

inline encoded_block rle_encode(std::span<const std::int32_t> coeffs) {
    encoded_block out;
    std::uint32_t run = 0;
    for (std::int32_t v : coeffs) {
        if (v == 0) {
            ++run;
        } else {
            out.symbols.push_back({run, v});
            run = 0;
        }
    }
    return out;
}

inline std::vector<std::int32_t> rle_decode(const encoded_block& e, std::size_t length) {
    std::vector<std::int32_t> out(length, 0);
    std::size_t pos = 0;
    for (const rle_symbol& s : e.symbols) {
        if (s.level == 0)
            fail(errc::corrupt_stream, "run-length symbol with zero level");
        if (pos >= length || s.run >= length - pos)
            fail(errc::corrupt_stream, "run-length symbols overflow the block");
        pos += s.run;
        out[pos++] = s.level;
    }
    return out;
}

inline void write_symbols(std::span<const encoded_block> blocks, bit_writer& out) {
    for (const encoded_block& blk : blocks) {
        if (blk.symbols.size() > max_ue_value)
            fail(errc::domain, "too many symbols in one block");
        out.put_ue(static_cast<std::uint32_t>(blk.symbols.size()));
        for (const rle_symbol& s : blk.symbols) {
            if (s.level == 0)
                fail(errc::domain, "run-length symbol with zero level");
            out.put_ue(s.run);
            out.put_se(s.level);
        }
    }
}

inline bit_writer write_symbols(std::span<const encoded_block> blocks) {
    bit_writer out;
    write_symbols(blocks, out);
    return out;
}

inline std::vector<encoded_block> read_symbols(bit_reader& in, std::size_t block_count) {
    std::vector<encoded_block> blocks;
    blocks.reserve(std::min(block_count, in.remaining()));
    for (std::size_t i = 0; i < block_count; ++i) {
        const std::uint32_t count = in.get_ue();
        // each symbol takes at least two bits
        if (count > in.remaining() / 2)
            fail(errc::corrupt_stream, "block " + std::to_string(i) + " symbol count exceeds stream");
        encoded_block blk;
        blk.symbols.reserve(count);
        for (std::uint32_t k = 0; k < count; ++k) {
            rle_symbol s;
            s.run = in.get_ue();
            s.level = in.get_se();
            if (s.level == 0)
                fail(errc::corrupt_stream, "block " + std::to_string(i) + " has a zero level");
            blk.symbols.push_back(s);
        }
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

// Stream header

inline constexpr std::array<std::uint8_t, 4> stream_magic{0x5A, 0x5A, 0x43, 0x31};
inline constexpr std::uint8_t stream_version = 1;
inline constexpr std::size_t stream_header_size = 22;

struct stream_header {
    scan_id scan = scan_id::zigzag3d;
    std::uint8_t block_size = 8;
    std::uint16_t quant_step = 1;
    std::uint32_t rows = 0, cols = 0, bands = 0;

    friend bool operator==(const stream_header&, const stream_header&) = default;
};

inline bool has_stream_magic(std::span<const std::uint8_t> bytes) noexcept {
    return bytes.size() >= stream_magic.size() &&
           std::equal(stream_magic.begin(), stream_magic.end(), bytes.begin());
}

inline void write_stream_header(byte_buffer& out, const stream_header& h) {
    out.insert(out.end(), stream_magic.begin(), stream_magic.end());
    out.push_back(stream_version);
    out.push_back(static_cast<std::uint8_t>(h.scan));
    out.push_back(h.block_size);
    out.push_back(0);
    detail::put_le(out, h.quant_step, 2);
    detail::put_le(out, h.rows, 4);
    detail::put_le(out, h.cols, 4);
    detail::put_le(out, h.bands, 4);
}

inline stream_header parse_stream_header(std::span<const std::uint8_t> bytes) {
    if (!has_stream_magic(bytes))
        fail(errc::corrupt_stream, "header: bad magic");
    if (bytes.size() < stream_header_size)
        fail(errc::corrupt_stream, "header: truncated");
    if (bytes[4] != stream_version)
        fail(errc::corrupt_stream, "header: unsupported version " + std::to_string(bytes[4]));
    if (bytes[5] > 2)
        fail(errc::corrupt_stream, "header: unknown scan id " + std::to_string(bytes[5]));
    if (!valid_block_size(bytes[6]))
        fail(errc::corrupt_stream, "header: invalid block size " + std::to_string(bytes[6]));
    if (bytes[7] != 0)
        fail(errc::corrupt_stream, "header: reserved byte is not zero");
    stream_header h;
    h.scan = static_cast<scan_id>(bytes[5]);
    h.block_size = bytes[6];
    h.quant_step = static_cast<std::uint16_t>(detail::get_le(bytes, 8, 2));
    h.rows = static_cast<std::uint32_t>(detail::get_le(bytes, 10, 4));
    h.cols = static_cast<std::uint32_t>(detail::get_le(bytes, 14, 4));
    h.bands = static_cast<std::uint32_t>(detail::get_le(bytes, 18, 4));
    if (h.quant_step == 0)
        fail(errc::corrupt_stream, "header: quant step is zero");
    if (h.rows == 0 || h.cols == 0 || h.bands == 0)
        fail(errc::corrupt_stream, "header: zero extent");
    return h;
}

// Pipeline

inline encoded_block encode_block(const cube& samples, std::uint32_t quant_step, const scan_order_3d& scan) {
    const cube coeffs = dct3d(level_shift(samples, shift_direction::forward));
    const std::vector<std::int32_t> scanned = apply_scan(quantize(coeffs, quant_step), scan);
    return rle_encode(scanned);
}

inline grid3<std::uint8_t> decode_block(const encoded_block& e, std::uint32_t quant_step, const scan_order_3d& scan) {
    const std::vector<std::int32_t> scanned = rle_decode(e, scan.size());
    const cube samples = level_shift(idct3d(dequantize(invert_scan(scanned, scan), quant_step)),
                                     shift_direction::inverse);
    grid3<std::uint8_t> out(samples.rows(), samples.cols(), samples.bands());
    for (std::size_t i = 0; i < samples.size(); ++i)
        out.data()[i] = static_cast<std::uint8_t>(samples.data()[i]);
    return out;
}

inline byte_buffer encode_volume(const volume& v, const codec_config& cfg) {
    cfg.validate();
    if (v.empty())
        fail(errc::invalid_dimension, "cannot encode an empty volume");
    if (v.rows() > 0xFFFFFFFFu || v.cols() > 0xFFFFFFFFu || v.bands() > 0xFFFFFFFFu)
        fail(errc::invalid_dimension, "volume extent does not fit the header");

    const partitioned_volume parts = partition_blocks(v, cfg.block_size);
    const scan_order_3d scan = make_block_scan(cfg.scan, cfg.block_size);
    std::vector<encoded_block> blocks;
    blocks.reserve(parts.blocks.size());
    for (const cube& blk : parts.blocks)
        blocks.push_back(encode_block(blk, cfg.quant_step, scan));

    byte_buffer out;
    write_stream_header(out, {cfg.scan, static_cast<std::uint8_t>(cfg.block_size),
                              static_cast<std::uint16_t>(cfg.quant_step), static_cast<std::uint32_t>(v.rows()),
                              static_cast<std::uint32_t>(v.cols()), static_cast<std::uint32_t>(v.bands())});
    const bit_writer bits = write_symbols(blocks);
    out.insert(out.end(), bits.bytes().begin(), bits.bytes().end());
    return out;
}

/// Upper bound on padded samples a stream may declare.
inline constexpr std::size_t max_decoded_samples = std::size_t{1} << 31;

inline volume decode_volume(std::span<const std::uint8_t> bytes) {
    const stream_header h = parse_stream_header(bytes);
    const block_geometry g = block_geometry::of(h.rows, h.cols, h.bands, h.block_size);
    const std::span<const std::uint8_t> payload = bytes.subspan(stream_header_size);

    const std::size_t bv = g.block_volume();
    if (g.blocks_down > max_decoded_samples / bv / g.blocks_across / g.blocks_deep)
        fail(errc::corrupt_stream, "header: declared volume too large");
    // every block needs at least one bit
    if (g.block_count() > payload.size() * 8)
        fail(errc::corrupt_stream, "payload: truncated before block " + std::to_string(payload.size() * 8));

    bit_reader in(payload);
    std::vector<encoded_block> symbols;
    try {
        symbols = read_symbols(in, g.block_count());
    } catch (const error& e) {
        fail(e.code(), "payload: " + e.message());
    }
    const std::size_t used = (in.position() + 7) / 8;
    if (used != payload.size())
        fail(errc::corrupt_stream, "payload: trailing bytes after the last block");
    while (in.remaining() > 0)
        if (in.get_bit())
            fail(errc::corrupt_stream, "payload: nonzero padding bits");

    const scan_order_3d scan = make_block_scan(h.scan, h.block_size);
    std::vector<grid3<std::uint8_t>> blocks;
    blocks.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        try {
            blocks.push_back(decode_block(symbols[i], h.quant_step, scan));
        } catch (const error& e) {
            fail(e.code(), "block " + std::to_string(i) + ": " + e.message());
        }
    }
    return assemble_blocks(blocks, g);
}

// Metrics

/// PSNR in dB for 8-bit samples; +infinity when the volumes are identical.
inline double psnr(const volume& a, const volume& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.bands() != b.bands())
        fail(errc::shape_mismatch, "psnr of volumes with different extents");
    if (a.empty())
        fail(errc::invalid_dimension, "psnr of empty volumes");
    double sse = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = static_cast<double>(a.data()[i]) - static_cast<double>(b.data()[i]);
        sse += d * d;
    }
    if (sse == 0.0)
        return std::numeric_limits<double>::infinity();
    const double mse = sse / static_cast<double>(a.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

struct quality_report {
    scan_id scan = scan_id::zigzag3d;
    std::size_t compressed_bytes = 0;
    double psnr_db = 0.0;
};

/// Encodes `v` once per scan id with the same block size and quant step.
inline std::vector<quality_report> compare_scan_orders(const volume& v, std::size_t block_size,
                                                       std::uint32_t quant_step) {
    std::vector<quality_report> out;
    for (scan_id id : all_scan_ids) {
        const byte_buffer stream = encode_volume(v, {block_size, quant_step, id});
        out.push_back({id, stream.size(), psnr(v, decode_volume(stream))});
    }
    return out;
}

}  // namespace zz3d

#pragma once

// MSB-first bit packing and Exp-Golomb codes.
//
//   ue(v): z zero bits, then the (z + 1)-bit binary form of v + 1
//   se(x): ue(2x - 1) for x > 0, ue(-2x) otherwise

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zz3d/error.hpp"

namespace zz3d {

/// Largest value ue() accepts; keeps v + 1 within 32 bits.
inline constexpr std::uint32_t max_ue_value = 0xFFFFFFFEu;
/// Largest magnitude se() accepts.
inline constexpr std::int32_t max_se_magnitude = 0x7FFFFFFF;

inline constexpr std::uint32_t signed_to_code_num(std::int32_t x) noexcept {
    return x > 0 ? 2u * static_cast<std::uint32_t>(x) - 1u : 2u * static_cast<std::uint32_t>(-static_cast<std::int64_t>(x));
}

inline constexpr std::int32_t code_num_to_signed(std::uint32_t k) noexcept {
    return (k & 1u) ? static_cast<std::int32_t>((k + 1u) / 2u) : -static_cast<std::int32_t>(k / 2u);
}

class bit_writer {
public:
    void put_bit(bool bit) {
        if (bits_ % 8 == 0)
            bytes_.push_back(0);
        if (bit)
            bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
        ++bits_;
    }

    /// Writes the low `count` bits of `value`, most significant first.
    void put_bits(std::uint64_t value, unsigned count) {
        for (unsigned i = count; i-- > 0;)
            put_bit((value >> i) & 1u);
    }

    void put_ue(std::uint32_t value) {
        if (value > max_ue_value)
            fail(errc::domain, "Exp-Golomb value out of range");
        const std::uint64_t code = std::uint64_t{value} + 1;
        const unsigned width = static_cast<unsigned>(std::bit_width(code));
        put_bits(0, width - 1);
        put_bits(code, width);
    }

    void put_se(std::int32_t value) {
        if (value < -max_se_magnitude)
            fail(errc::domain, "signed Exp-Golomb value out of range");
        put_ue(signed_to_code_num(value));
    }

    std::size_t bit_count() const noexcept { return bits_; }

    /// Packed bytes; unused bits of the final byte are zero.
    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
    std::vector<std::uint8_t> take() && { return std::move(bytes_); }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < bits_; ++i)
            s += (bytes_[i / 8] & (0x80u >> (i % 8))) ? '1' : '0';
        return s;
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t bits_ = 0;
};

class bit_reader {
public:
    explicit bit_reader(std::span<const std::uint8_t> bytes) noexcept
        : bytes_(bytes), limit_(bytes.size() * 8) {}

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return limit_ - pos_; }

    bool get_bit() {
        if (pos_ >= limit_)
            fail(errc::corrupt_stream, "bitstream truncated at bit " + std::to_string(pos_));
        const bool bit = bytes_[pos_ / 8] & (0x80u >> (pos_ % 8));
        ++pos_;
        return bit;
    }

    std::uint64_t get_bits(unsigned count) {
        std::uint64_t v = 0;
        for (unsigned i = 0; i < count; ++i)
            v = (v << 1) | (get_bit() ? 1u : 0u);
        return v;
    }

    std::uint32_t get_ue() {
        unsigned zeros = 0;
        while (!get_bit()) {
            if (++zeros > 31)
                fail(errc::corrupt_stream, "invalid Exp-Golomb prefix at bit " + std::to_string(pos_));
        }
        const std::uint64_t code = (std::uint64_t{1} << zeros) | get_bits(zeros);
        if (code - 1 > max_ue_value)
            fail(errc::corrupt_stream, "Exp-Golomb value out of range");
        return static_cast<std::uint32_t>(code - 1);
    }

    std::int32_t get_se() { return code_num_to_signed(get_ue()); }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t limit_;
    std::size_t pos_ = 0;
};

}  // namespace zz3d

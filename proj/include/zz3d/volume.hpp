#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>

#include "zz3d/error.hpp"
#include "zz3d/grid.hpp"
#include "zz3d/rng.hpp"

namespace zz3d {

/// 8-bit samples, band-major then row-major. Band is the frame / slice /
/// spectral channel axis.
using volume = grid3<std::uint8_t>;

enum class synth_kind { uniform_random, smooth };

/// Deterministic test volumes.
///
/// uniform_random: round(255 * u) with u drawn from SplitMix64(seed), cells
/// filled in storage order. smooth ignores the seed:
///   clamp(round(128 + 60 sin(2 pi r / rows) cos(2 pi c / cols) + 40 cos(2 pi b / bands)))
inline volume synth_volume(synth_kind kind, std::size_t rows, std::size_t cols, std::size_t bands,
                           std::uint64_t seed = 0) {
    if (rows == 0 || cols == 0 || bands == 0)
        fail(errc::invalid_dimension, "volume extents must be positive");
    volume v(rows, cols, bands);
    if (kind == synth_kind::uniform_random) {
        splitmix64 rng(seed);
        for (auto& s : v.data())
            s = static_cast<std::uint8_t>(std::round(255.0 * rng.next_unit()));
        return v;
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t b = 0; b < bands; ++b) {
        const double wb = 40.0 * std::cos(two_pi * static_cast<double>(b) / static_cast<double>(bands));
        for (std::size_t r = 0; r < rows; ++r) {
            const double wr = std::sin(two_pi * static_cast<double>(r) / static_cast<double>(rows));
            for (std::size_t c = 0; c < cols; ++c) {
                const double wc = std::cos(two_pi * static_cast<double>(c) / static_cast<double>(cols));
                const double x = std::round(128.0 + 60.0 * wr * wc + wb);
                v(r, c, b) = static_cast<std::uint8_t>(std::clamp(x, 0.0, 255.0));
            }
        }
    }
    return v;
}

}  // namespace zz3d

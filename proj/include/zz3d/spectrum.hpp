#pragma once

// Zigzag-ordered DCT spectra of uniform random blocks: an n x n matrix under
// the 2D transform and square zigzag, or an n^3 cube under the 3D transform
// and cubic zigzag.

#include <cstddef>
#include <cstdint>
#include <string>

#include "zz3d/error.hpp"
#include "zz3d/grid.hpp"
#include "zz3d/scan_orders.hpp"
#include "zz3d/transforms.hpp"
#include "zz3d/volume.hpp"
#include "zz3d/volume_io.hpp"

namespace zz3d {

enum class spectrum_mode { planar, volumetric };

/// Source samples for a spectrum: n x n x 1 (planar) or n x n x n.
inline volume spectrum_source(std::size_t n, spectrum_mode mode, std::uint64_t seed) {
    return synth_volume(synth_kind::uniform_random, n, n, mode == spectrum_mode::planar ? 1 : n, seed);
}

inline spectrum_trace make_spectrum(std::size_t n, spectrum_mode mode, std::uint64_t seed) {
    if (n == 0)
        fail(errc::invalid_dimension, "spectrum size must be positive");
    const volume src = spectrum_source(n, mode, seed);
    spectrum_trace t;
    if (mode == spectrum_mode::planar) {
        const matrix m(n, n, std::vector<double>(src.values().begin(), src.values().end()));
        t.values = apply_scan(dct2d(m), square_zigzag_order(n));
        t.label = "zigzag2d(dct2d) n=" + std::to_string(n) + " seed=" + std::to_string(seed);
    } else {
        t.values = apply_scan(dct3d(grid_cast<double>(src)), cubic_zigzag_order(n));
        t.label = "zigzag3d(dct3d) n=" + std::to_string(n) + " seed=" + std::to_string(seed);
    }
    return t;
}

}  // namespace zz3d

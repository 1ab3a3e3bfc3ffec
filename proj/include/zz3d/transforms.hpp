#pragma once

// Orthonormal DCT-II and its inverse (DCT-III) in one, two and three
// dimensions. Each axis is transformed directly with an N x N basis, which is
// adequate for the block sizes used here (N <= 64).
//
//   X[u] = a(u) * sum_m x[m] * cos(pi * (2m + 1) * u / (2N))
//   a(0) = sqrt(1/N), a(u > 0) = sqrt(2/N)

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "zz3d/error.hpp"
#include "zz3d/grid.hpp"

namespace zz3d {

namespace detail {

/// basis[u * n + m] = a(u) * cos(pi * (2m + 1) * u / (2n)).
inline std::vector<double> dct_basis(std::size_t n) {
    std::vector<double> basis(n * n);
    const double dc = std::sqrt(1.0 / static_cast<double>(n));
    const double ac = std::sqrt(2.0 / static_cast<double>(n));
    const std::size_t period = 4 * n;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t m = 0; m < n; ++m) {
            // reduce the angle modulo 2*pi before calling cos
            const std::size_t k = ((2 * m + 1) * u) % period;
            const double angle = std::numbers::pi * static_cast<double>(k) / static_cast<double>(2 * n);
            basis[u * n + m] = (u == 0 ? dc : ac) * std::cos(angle);
        }
    }
    return basis;
}

enum class dct_dir { forward, inverse };

/// Transforms `count` lines of length n in place. Line i starts at
/// offsets[i] and advances by `stride`.
inline void dct_lines(std::span<double> data, std::size_t n, std::size_t stride,
                      std::span<const std::size_t> offsets, dct_dir dir) {
    if (n == 1)
        return;
    const std::vector<double> basis = dct_basis(n);
    std::vector<double> in(n), out(n);
    for (std::size_t start : offsets) {
        for (std::size_t m = 0; m < n; ++m)
            in[m] = data[start + m * stride];
        if (dir == dct_dir::forward) {
            for (std::size_t u = 0; u < n; ++u) {
                double acc = 0.0;
                for (std::size_t m = 0; m < n; ++m)
                    acc += basis[u * n + m] * in[m];
                out[u] = acc;
            }
        } else {
            for (std::size_t m = 0; m < n; ++m) {
                double acc = 0.0;
                for (std::size_t u = 0; u < n; ++u)
                    acc += basis[u * n + m] * in[u];
                out[m] = acc;
            }
        }
        for (std::size_t m = 0; m < n; ++m)
            data[start + m * stride] = out[m];
    }
}

inline void require_finite(std::span<const double> values) {
    for (double v : values)
        if (!std::isfinite(v))
            fail(errc::domain, "transform input contains a non-finite value");
}

enum class axis { rows, cols, bands };

/// Transforms every line of `g` along one axis.
inline void dct_axis(cube& g, axis ax, dct_dir dir) {
    const std::size_t rows = g.rows(), cols = g.cols(), bands = g.bands();
    std::vector<std::size_t> offsets;
    std::size_t n = 0, stride = 0;
    switch (ax) {
    case axis::cols:  // lines along a row, varying col
        n = cols;
        stride = 1;
        for (std::size_t b = 0; b < bands; ++b)
            for (std::size_t r = 0; r < rows; ++r)
                offsets.push_back(g.index(r, 0, b));
        break;
    case axis::rows:
        n = rows;
        stride = cols;
        for (std::size_t b = 0; b < bands; ++b)
            for (std::size_t c = 0; c < cols; ++c)
                offsets.push_back(g.index(0, c, b));
        break;
    case axis::bands:
        n = bands;
        stride = rows * cols;
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                offsets.push_back(g.index(r, c, 0));
        break;
    }
    dct_lines(g.data(), n, stride, offsets, dir);
}

inline cube transform3(const cube& in, dct_dir dir) {
    if (in.empty())
        fail(errc::invalid_dimension, "cannot transform an empty cube");
    require_finite(in.data());
    cube out = in;
    dct_axis(out, axis::rows, dir);
    dct_axis(out, axis::cols, dir);
    dct_axis(out, axis::bands, dir);
    return out;
}

inline matrix transform2(const matrix& in, dct_dir dir) {
    if (in.empty())
        fail(errc::invalid_dimension, "cannot transform an empty matrix");
    cube tmp(in.rows(), in.cols(), 1, in.values());
    tmp = transform3(tmp, dir);
    return matrix(in.rows(), in.cols(), tmp.values());
}

inline std::vector<double> transform1(std::span<const double> signal, dct_dir dir) {
    if (signal.empty())
        fail(errc::invalid_dimension, "cannot transform an empty signal");
    require_finite(signal);
    std::vector<double> out(signal.begin(), signal.end());
    const std::size_t offset = 0;
    dct_lines(out, out.size(), 1, std::span<const std::size_t>(&offset, 1), dir);
    return out;
}

}  // namespace detail

inline std::vector<double> dct1(std::span<const double> signal) {
    return detail::transform1(signal, detail::dct_dir::forward);
}

inline std::vector<double> idct1(std::span<const double> coeffs) {
    return detail::transform1(coeffs, detail::dct_dir::inverse);
}

inline matrix dct2d(const matrix& m) { return detail::transform2(m, detail::dct_dir::forward); }
inline matrix idct2d(const matrix& m) { return detail::transform2(m, detail::dct_dir::inverse); }

/// Separable 3D DCT-II. Axis order does not matter; this is the same as a 2D
/// transform of every band followed by a 1D transform along the bands.
inline cube dct3d(const cube& c) { return detail::transform3(c, detail::dct_dir::forward); }
inline cube idct3d(const cube& c) { return detail::transform3(c, detail::dct_dir::inverse); }

}  // namespace zz3d

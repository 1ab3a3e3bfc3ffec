#pragma once

// Zigzag scan orders over 2D grids and cubes, stored as explicit permutations.
//
// All indices are 0-based. A scan order maps a scan position p to a grid
// coordinate (forward) and a coordinate back to its position (inverse).
// Linear grid indices follow the grid2/grid3 layouts: row-major in 2D, and
// band-major then row-major in 3D.
//
// Note: the square 2D zigzag visits (1,0) before (0,1). It is the transpose
// of the ISO JPEG zigzag table.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "zz3d/error.hpp"
#include "zz3d/grid.hpp"

namespace zz3d {

struct coord2 {
    std::uint32_t row = 0;
    std::uint32_t col = 0;

    friend auto operator<=>(const coord2&, const coord2&) = default;
};

struct coord3 {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    std::uint32_t band = 0;

    friend auto operator<=>(const coord3&, const coord3&) = default;
};

inline std::size_t coord_sum(const coord2& c) noexcept { return std::size_t{c.row} + c.col; }
inline std::size_t coord_sum(const coord3& c) noexcept { return std::size_t{c.row} + c.col + c.band; }

/// One anti-diagonal (2D) or diagonal plane (3D): ordinal plus the inclusive
/// range of the slicing coordinate (the row) that intersects the grid.
struct scan_diag {
    std::size_t index = 0;
    std::size_t lo = 0;
    std::size_t hi = 0;

    std::size_t span() const noexcept { return hi - lo + 1; }
};

/// Row range of anti-diagonal `index` (row + col == index) on a rows x cols grid.
inline scan_diag anti_diagonal(std::size_t index, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0 || index > rows + cols - 2)
        fail(errc::invalid_dimension, "anti-diagonal outside grid");
    const std::size_t lo = index + 1 > cols ? index + 1 - cols : 0;
    return {index, lo, std::min(index, rows - 1)};
}

/// Row range of plane `index` (row + col + band == index) in an n^3 cube.
inline scan_diag diagonal_plane(std::size_t index, std::size_t n) {
    if (n == 0 || index > 3 * (n - 1))
        fail(errc::invalid_dimension, "diagonal plane outside cube");
    const std::size_t lo = index > 2 * (n - 1) ? index - 2 * (n - 1) : 0;
    return {index, lo, std::min(index, n - 1)};
}

namespace detail {

template <class Coord>
struct coord_traits;

template <>
struct coord_traits<coord2> {
    static constexpr std::size_t rank = 2;
    using extents = std::array<std::size_t, 2>;

    static bool in_bounds(const coord2& c, const extents& e) noexcept {
        return c.row < e[0] && c.col < e[1];
    }
    static std::size_t linear(const coord2& c, const extents& e) noexcept {
        return std::size_t{c.row} * e[1] + c.col;
    }
};

template <>
struct coord_traits<coord3> {
    static constexpr std::size_t rank = 3;
    using extents = std::array<std::size_t, 3>;

    static bool in_bounds(const coord3& c, const extents& e) noexcept {
        return c.row < e[0] && c.col < e[1] && c.band < e[2];
    }
    static std::size_t linear(const coord3& c, const extents& e) noexcept {
        return (std::size_t{c.band} * e[0] + c.row) * e[1] + c.col;
    }
};

inline void require_extent(std::size_t n, const char* what) {
    if (n == 0)
        fail(errc::invalid_dimension, std::string(what) + " must be positive");
    if (n > std::numeric_limits<std::uint32_t>::max())
        fail(errc::invalid_dimension, std::string(what) + " too large");
}

/// Product of the extents; scan positions are stored as 32-bit values.
inline std::size_t require_volume(std::initializer_list<std::size_t> extents) {
    std::size_t volume = 1;
    for (std::size_t e : extents) {
        require_extent(e, "scan extent");
        if (volume > std::numeric_limits<std::uint32_t>::max() / e)
            fail(errc::invalid_dimension, "scan volume too large");
        volume *= e;
    }
    return volume;
}

}  // namespace detail

/// Immutable bijection between scan positions and grid coordinates.
template <class Coord>
class scan_order {
    using traits = detail::coord_traits<Coord>;

public:
    using coord_type = Coord;
    using extents_type = typename traits::extents;
    static constexpr std::size_t rank = traits::rank;

    /// Takes ownership of `forward`; rejects anything that is not a permutation
    /// of the grid described by `dims`.
    scan_order(extents_type dims, std::vector<Coord> forward)
        : dims_(dims), forward_(std::move(forward)) {
        std::size_t volume = 1;
        for (std::size_t d : dims_)
            volume = detail::require_volume({volume, d});
        if (forward_.size() != volume)
            fail(errc::shape_mismatch, "scan length does not match grid volume");

        constexpr auto unset = std::numeric_limits<std::uint32_t>::max();
        inverse_.assign(volume, unset);
        for (std::size_t p = 0; p < forward_.size(); ++p) {
            const Coord& c = forward_[p];
            if (!traits::in_bounds(c, dims_))
                fail(errc::shape_mismatch, "scan coordinate outside grid");
            auto& slot = inverse_[traits::linear(c, dims_)];
            if (slot != unset)
                fail(errc::shape_mismatch, "scan visits a coordinate twice");
            slot = static_cast<std::uint32_t>(p);
        }
    }

    const extents_type& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return forward_.size(); }

    const Coord& at(std::size_t position) const { return forward_.at(position); }
    const Coord& operator[](std::size_t position) const noexcept { return forward_[position]; }

    std::size_t position(const Coord& c) const {
        if (!traits::in_bounds(c, dims_))
            fail(errc::shape_mismatch, "coordinate outside grid");
        return inverse_[traits::linear(c, dims_)];
    }

    /// Position of the cell stored at `linear_index` in the grid layout.
    std::size_t position_of_index(std::size_t linear_index) const noexcept { return inverse_[linear_index]; }
    std::size_t index_at(std::size_t position) const noexcept { return traits::linear(forward_[position], dims_); }

    std::span<const Coord> forward() const noexcept { return forward_; }
    auto begin() const noexcept { return forward_.begin(); }
    auto end() const noexcept { return forward_.end(); }

    friend bool operator==(const scan_order& a, const scan_order& b) {
        return a.dims_ == b.dims_ && a.forward_ == b.forward_;
    }

private:
    extents_type dims_;
    std::vector<Coord> forward_;
    std::vector<std::uint32_t> inverse_;
};

using scan_order_2d = scan_order<coord2>;
using scan_order_3d = scan_order<coord3>;

namespace detail {

inline void push_diagonal(std::vector<coord2>& out, const scan_diag& d, bool rows_ascending) {
    for (std::size_t k = 0; k < d.span(); ++k) {
        const std::size_t r = rows_ascending ? d.lo + k : d.hi - k;
        out.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(d.index - r)});
    }
}

}  // namespace detail

/// Square zigzag: even anti-diagonals run down-left (row ascending), odd ones up-right.
inline scan_order_2d square_zigzag_order(std::size_t n) {
    std::vector<coord2> out;
    out.reserve(detail::require_volume({n, n}));
    for (std::size_t d = 0; d + 1 < 2 * n; ++d)
        detail::push_diagonal(out, anti_diagonal(d, n, n), d % 2 == 0);
    return {{n, n}, std::move(out)};
}

/// Rectangular zigzag. For cols >= rows the direction rule matches the square
/// scan; for rows > cols the parity is swapped.
inline scan_order_2d rect_zigzag_order(std::size_t rows, std::size_t cols) {
    std::vector<coord2> out;
    out.reserve(detail::require_volume({rows, cols}));
    const std::size_t even_parity = cols >= rows ? 0 : 1;
    for (std::size_t d = 0; d + 1 < rows + cols; ++d)
        detail::push_diagonal(out, anti_diagonal(d, rows, cols), d % 2 == even_parity);
    return {{rows, cols}, std::move(out)};
}

/// 3D zigzag over an n^3 cube, plane by plane (row + col + band = s).
///
/// Even planes: rows descending, and within a row cols descending (band
/// ascending). Odd planes: rows ascending, cols ascending (band descending).
inline scan_order_3d cubic_zigzag_order(std::size_t n) {
    std::vector<coord3> out;
    out.reserve(detail::require_volume({n, n, n}));
    for (std::size_t s = 0; s + 2 < 3 * n; ++s) {
        const scan_diag plane = diagonal_plane(s, n);
        const bool ascending = s % 2 == 1;
        for (std::size_t k = 0; k < plane.span(); ++k) {
            const std::size_t r = ascending ? plane.lo + k : plane.hi - k;
            const scan_diag line = anti_diagonal(s - r, n, n);
            for (std::size_t j = 0; j < line.span(); ++j) {
                const std::size_t c = ascending ? line.lo + j : line.hi - j;
                out.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                               static_cast<std::uint32_t>(s - r - c)});
            }
        }
    }
    return {{n, n, n}, std::move(out)};
}

/// Lexicographic (band, row, col), band slowest.
inline scan_order_3d raster_order_3d(std::size_t n) {
    std::vector<coord3> out;
    out.reserve(detail::require_volume({n, n, n}));
    for (std::uint32_t b = 0; b < n; ++b)
        for (std::uint32_t r = 0; r < n; ++r)
            for (std::uint32_t c = 0; c < n; ++c)
                out.push_back({r, c, b});
    return {{n, n, n}, std::move(out)};
}

/// Square zigzag applied to each band of an n^3 cube, bands ascending.
inline scan_order_3d per_band_zigzag_order(std::size_t n) {
    std::vector<coord3> out;
    out.reserve(detail::require_volume({n, n, n}));
    const scan_order_2d plane = square_zigzag_order(n);
    for (std::uint32_t b = 0; b < n; ++b)
        for (const coord2& c : plane)
            out.push_back({c.row, c.col, b});
    return {{n, n, n}, std::move(out)};
}

template <class T>
std::vector<T> apply_scan(const grid2<T>& values, const scan_order_2d& order) {
    if (values.rows() != order.dims()[0] || values.cols() != order.dims()[1])
        fail(errc::shape_mismatch, "grid extents differ from scan extents");
    std::vector<T> out(order.size());
    for (std::size_t p = 0; p < out.size(); ++p)
        out[p] = values.data()[order.index_at(p)];
    return out;
}

template <class T>
std::vector<T> apply_scan(const grid3<T>& values, const scan_order_3d& order) {
    if (values.rows() != order.dims()[0] || values.cols() != order.dims()[1] ||
        values.bands() != order.dims()[2])
        fail(errc::shape_mismatch, "cube extents differ from scan extents");
    std::vector<T> out(order.size());
    for (std::size_t p = 0; p < out.size(); ++p)
        out[p] = values.data()[order.index_at(p)];
    return out;
}

template <class T>
grid2<T> invert_scan(std::span<const T> values, const scan_order_2d& order) {
    if (values.size() != order.size())
        fail(errc::shape_mismatch, "sequence length differs from scan length");
    grid2<T> out(order.dims()[0], order.dims()[1]);
    for (std::size_t p = 0; p < values.size(); ++p)
        out.data()[order.index_at(p)] = values[p];
    return out;
}

template <class T>
grid3<T> invert_scan(std::span<const T> values, const scan_order_3d& order) {
    if (values.size() != order.size())
        fail(errc::shape_mismatch, "sequence length differs from scan length");
    grid3<T> out(order.dims()[0], order.dims()[1], order.dims()[2]);
    for (std::size_t p = 0; p < values.size(); ++p)
        out.data()[order.index_at(p)] = values[p];
    return out;
}

template <class T>
grid2<T> invert_scan(const std::vector<T>& values, const scan_order_2d& order) {
    return invert_scan(std::span<const T>(values), order);
}

template <class T>
grid3<T> invert_scan(const std::vector<T>& values, const scan_order_3d& order) {
    return invert_scan(std::span<const T>(values), order);
}

}  // namespace zz3d

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "zz3d/error.hpp"

namespace zz3d {

/// Dense row-major 2D grid.
template <class T>
class grid2 {
public:
    using value_type = T;

    grid2() = default;
    grid2(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    grid2(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            fail(errc::shape_mismatch, "grid2 data length does not match extents");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::size_t index(std::size_t r, std::size_t c) const noexcept { return r * cols_ + c; }

    T& operator()(std::size_t r, std::size_t c) noexcept { return data_[index(r, c)]; }
    const T& operator()(std::size_t r, std::size_t c) const noexcept { return data_[index(r, c)]; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }
    const std::vector<T>& values() const noexcept { return data_; }

    friend bool operator==(const grid2&, const grid2&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Dense 3D grid laid out band-major, then row-major within a band.
template <class T>
class grid3 {
public:
    using value_type = T;

    grid3() = default;
    grid3(std::size_t rows, std::size_t cols, std::size_t bands, T fill = T{})
        : rows_(rows), cols_(cols), bands_(bands), data_(rows * cols * bands, fill) {}
    grid3(std::size_t rows, std::size_t cols, std::size_t bands, std::vector<T> data)
        : rows_(rows), cols_(cols), bands_(bands), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_ * bands_)
            fail(errc::shape_mismatch, "grid3 data length does not match extents");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t bands() const noexcept { return bands_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    std::size_t index(std::size_t r, std::size_t c, std::size_t b) const noexcept {
        return (b * rows_ + r) * cols_ + c;
    }

    T& operator()(std::size_t r, std::size_t c, std::size_t b) noexcept { return data_[index(r, c, b)]; }
    const T& operator()(std::size_t r, std::size_t c, std::size_t b) const noexcept {
        return data_[index(r, c, b)];
    }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }
    const std::vector<T>& values() const noexcept { return data_; }

    friend bool operator==(const grid3&, const grid3&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t bands_ = 0;
    std::vector<T> data_;
};

using matrix = grid2<double>;
using cube = grid3<double>;

template <class To, class From>
grid3<To> grid_cast(const grid3<From>& g) {
    std::vector<To> out(g.values().begin(), g.values().end());
    return grid3<To>(g.rows(), g.cols(), g.bands(), std::move(out));
}

template <class To, class From>
grid2<To> grid_cast(const grid2<From>& g) {
    std::vector<To> out(g.values().begin(), g.values().end());
    return grid2<To>(g.rows(), g.cols(), std::move(out));
}

}  // namespace zz3d

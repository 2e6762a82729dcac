// Periodic grid description for the spectral fields.
//
// The default domain is the torus [0, 2*pi]^d sampled on a uniform grid
// with an even number of points per axis. Real data is stored row-major
// (last axis fastest); spectra use the real-to-complex layout where the
// last axis is halved to n/2 + 1 entries.
#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace mhdlab {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

class GridSpec {
public:
    GridSpec() = default;

    GridSpec(int dim, std::vector<int> points, std::vector<double> lengths)
        : dim_(dim), n_(std::move(points)), len_(std::move(lengths)) {
        validate();
    }

    // Cubic torus helper: n points per axis, side length 2*pi.
    static GridSpec torus(int dim, int n) {
        return GridSpec(dim, std::vector<int>(dim, n), std::vector<double>(dim, two_pi));
    }

    int dim() const { return dim_; }
    int extent(int axis) const { return n_[axis]; }
    double length(int axis) const { return len_[axis]; }
    double spacing(int axis) const { return len_[axis] / n_[axis]; }
    const std::vector<int>& extents() const { return n_; }

    std::size_t size() const {
        std::size_t t = 1;
        for (int e : n_) t *= static_cast<std::size_t>(e);
        return t;
    }

    // Number of stored complex coefficients (last axis halved).
    std::size_t spectral_size() const {
        std::size_t t = 1;
        for (int a = 0; a + 1 < dim_; ++a) t *= static_cast<std::size_t>(n_[a]);
        return t * static_cast<std::size_t>(n_[dim_ - 1] / 2 + 1);
    }

    double volume() const {
        double v = 1.0;
        for (double l : len_) v *= l;
        return v;
    }

    double cell_volume() const { return volume() / static_cast<double>(size()); }

    // Signed wavenumber for index j on an axis, FFT ordering.
    double wavenumber(int axis, int index) const {
        const int n = n_[axis];
        const int j = (index <= n / 2) ? index : index - n;
        return two_pi / len_[axis] * static_cast<double>(j);
    }

    bool is_nyquist(int axis, int index) const { return index == n_[axis] / 2; }

    bool operator==(const GridSpec& o) const {
        return dim_ == o.dim_ && n_ == o.n_ && len_ == o.len_;
    }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }

private:
    void validate() const {
        if (dim_ < 1 || dim_ > 3)
            throw std::invalid_argument("GridSpec: dim must be 1, 2 or 3");
        if (static_cast<int>(n_.size()) != dim_ || static_cast<int>(len_.size()) != dim_)
            throw std::invalid_argument("GridSpec: points/lengths arity must match dim");
        for (int a = 0; a < dim_; ++a) {
            if (n_[a] <= 0 || n_[a] % 2 != 0)
                throw std::invalid_argument("GridSpec: points_per_axis must be positive and even");
            if (!(len_[a] > 0.0))
                throw std::invalid_argument("GridSpec: lengths must be positive");
        }
    }

    int dim_ = 0;
    std::vector<int> n_;
    std::vector<double> len_;
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
    if (a != b) throw std::invalid_argument(std::string(where) + ": mismatched grids");
}

} // namespace mhdlab

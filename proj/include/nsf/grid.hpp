#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace nsf {

using Field = std::vector<double>;

// Uniform periodic grid on a box, 1 to 3 dimensions. Storage is row-major
// with axis 0 slowest and the last axis contiguous.
struct Grid {
    int dim = 1;
    std::array<int, 3> n{1, 1, 1};
    std::array<double, 3> length{1.0, 1.0, 1.0};
    std::array<double, 3> h{1.0, 1.0, 1.0};

    std::size_t points() const {
        std::size_t p = 1;
        for (int a = 0; a < dim; ++a) p *= static_cast<std::size_t>(n[a]);
        return p;
    }

    std::size_t stride(int axis) const {
        std::size_t s = 1;
        for (int a = axis + 1; a < dim; ++a) s *= static_cast<std::size_t>(n[a]);
        return s;
    }

    double min_h() const {
        double m = h[0];
        for (int a = 1; a < dim; ++a) m = m < h[a] ? m : h[a];
        return m;
    }

    // Physical coordinate of a point along an axis.
    double coord(int axis, int index) const { return h[axis] * index; }

    void decode(std::size_t flat, std::array<int, 3>& idx) const {
        for (int a = dim - 1; a >= 0; --a) {
            idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n[a]));
            flat /= static_cast<std::size_t>(n[a]);
        }
        for (int a = dim; a < 3; ++a) idx[a] = 0;
    }
};

// Validates extents (at least 4 points per axis, positive lengths).
Grid make_grid(int dim, std::span<const int> n, std::span<const double> length);

// Periodic central difference along one axis, 2nd or 4th order.
void derivative(const Grid& grid, int axis, int order, std::span<const double> f,
                std::span<double> df);

// All axis derivatives of a scalar field; out[a] is resized to the grid.
void gradient(const Grid& grid, int order, std::span<const double> f,
              std::array<Field, 3>& out);

// Divergence of a vector field given per-axis components.
void divergence(const Grid& grid, int order, const std::array<Field, 3>& v, Field& out);

}  // namespace nsf

#include "nsf/grid.hpp"

#include <stdexcept>

#include "nsf/util.hpp"

namespace nsf {

Grid make_grid(int dim, std::span<const int> n, std::span<const double> length) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("dim must be 1, 2, or 3");
    if (n.size() != static_cast<std::size_t>(dim) || length.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("grid extents must list one entry per axis");
    Grid g;
    g.dim = dim;
    for (int a = 0; a < dim; ++a) {
        if (n[a] < 4) throw std::invalid_argument("points per axis must be >= 4");
        if (!(length[a] > 0.0)) throw std::invalid_argument("box_length must be positive");
        g.n[a] = n[a];
        g.length[a] = length[a];
        g.h[a] = length[a] / n[a];
    }
    return g;
}

namespace {

// One periodic line of a field: points base, base + s, ..., base + (n-1)*s.
template <int Order>
void line_derivative(const double* f, double* df, std::size_t base, std::size_t s, int n,
                     double h) {
    if constexpr (Order == 2) {
        const double c = 1.0 / (2.0 * h);
        df[base] = (f[base + s] - f[base + static_cast<std::size_t>(n - 1) * s]) * c;
        for (int j = 1; j < n - 1; ++j) {
            const std::size_t i = base + static_cast<std::size_t>(j) * s;
            df[i] = (f[i + s] - f[i - s]) * c;
        }
        const std::size_t last = base + static_cast<std::size_t>(n - 1) * s;
        df[last] = (f[base] - f[last - s]) * c;
    } else {
        const double c = 1.0 / (12.0 * h);
        auto at = [&](int j) { return f[base + static_cast<std::size_t>((j + n) % n) * s]; };
        for (int j = 0; j < 2; ++j)
            df[base + static_cast<std::size_t>(j) * s] =
                (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) * c;
        for (int j = 2; j < n - 2; ++j) {
            const std::size_t i = base + static_cast<std::size_t>(j) * s;
            df[i] = (-f[i + 2 * s] + 8.0 * f[i + s] - 8.0 * f[i - s] + f[i - 2 * s]) * c;
        }
        for (int j = n - 2; j < n; ++j)
            df[base + static_cast<std::size_t>(j) * s] =
                (-at(j + 2) + 8.0 * at(j + 1) - 8.0 * at(j - 1) + at(j - 2)) * c;
    }
}

}  // namespace

void derivative(const Grid& grid, int axis, int order, std::span<const double> f,
                std::span<double> df) {
    if (axis < 0 || axis >= grid.dim) throw std::invalid_argument("derivative: bad axis");
    if (order != 2 && order != 4) throw std::invalid_argument("derivative: order must be 2 or 4");
    const std::size_t points = grid.points();
    if (f.size() != points || df.size() != points)
        throw std::invalid_argument("derivative: field size does not match grid");
    const int n = grid.n[axis];
    if (order == 4 && n < 5) throw std::invalid_argument("derivative: 4th order needs >= 5 points");

    const std::size_t s = grid.stride(axis);
    const std::size_t block = static_cast<std::size_t>(n) * s;
    const std::size_t nlines = points / static_cast<std::size_t>(n);
    const double h = grid.h[axis];
    const double* fp = f.data();
    double* dp = df.data();

    parallel_for(nlines, [=](std::size_t lo, std::size_t hi) {
        for (std::size_t line = lo; line < hi; ++line) {
            const std::size_t outer = line / s;
            const std::size_t inner = line % s;
            const std::size_t base = outer * block + inner;
            if (order == 2)
                line_derivative<2>(fp, dp, base, s, n, h);
            else
                line_derivative<4>(fp, dp, base, s, n, h);
        }
    });
}

void gradient(const Grid& grid, int order, std::span<const double> f, std::array<Field, 3>& out) {
    for (int a = 0; a < grid.dim; ++a) {
        out[a].resize(grid.points());
        derivative(grid, a, order, f, out[a]);
    }
}

void divergence(const Grid& grid, int order, const std::array<Field, 3>& v, Field& out) {
    const std::size_t points = grid.points();
    out.assign(points, 0.0);
    Field scratch(points);
    for (int a = 0; a < grid.dim; ++a) {
        derivative(grid, a, order, v[a], scratch);
        for (std::size_t i = 0; i < points; ++i) out[i] += scratch[i];
    }
}

}  // namespace nsf

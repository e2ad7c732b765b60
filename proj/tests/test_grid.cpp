#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "nsf/fields.hpp"
#include "nsf/grid.hpp"

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

nsf::Grid grid1d(int n, double length = 1.0) {
    const std::array<int, 1> npts{n};
    const std::array<double, 1> len{length};
    return nsf::make_grid(1, npts, len);
}

}  // namespace

TEST_CASE("grid construction and validation") {
    const nsf::Grid g = grid1d(8, 2.0);
    CHECK(g.points() == 8);
    CHECK(g.h[0] == doctest::Approx(0.25));
    CHECK(g.coord(0, 4) == doctest::Approx(1.0));

    const std::array<int, 2> npts{8, 3};
    const std::array<double, 2> len{1.0, 1.0};
    CHECK_THROWS_AS(nsf::make_grid(2, npts, len), std::invalid_argument);
    const std::array<double, 1> bad_len{-1.0};
    const std::array<int, 1> four{4};
    CHECK_THROWS_AS(nsf::make_grid(1, four, bad_len), std::invalid_argument);
}

TEST_CASE("central differences match the discrete symbol exactly") {
    // For f_j = sin(k x_j) the 2nd-order stencil gives exactly
    // (sin(k h)/h) cos(k x_j) and the 4th-order one
    // ((8 sin(k h) - sin(2 k h))/(6 h)) cos(k x_j); checking against these
    // closed forms pins the stencil coefficients, not just the order.
    const nsf::Grid g = grid1d(32);
    const double k = 2.0 * kTwoPi;  // two full waves
    std::vector<double> f(g.points()), df(g.points());
    for (std::size_t j = 0; j < g.points(); ++j) f[j] = std::sin(k * g.coord(0, (int)j));

    nsf::derivative(g, 0, 2, f, df);
    const double sym2 = std::sin(k * g.h[0]) / g.h[0];
    for (std::size_t j = 0; j < g.points(); ++j)
        CHECK(df[j] == doctest::Approx(sym2 * std::cos(k * g.coord(0, (int)j))).epsilon(1e-12));

    nsf::derivative(g, 0, 4, f, df);
    const double sym4 =
        (8.0 * std::sin(k * g.h[0]) - std::sin(2.0 * k * g.h[0])) / (6.0 * g.h[0]);
    for (std::size_t j = 0; j < g.points(); ++j)
        CHECK(df[j] == doctest::Approx(sym4 * std::cos(k * g.coord(0, (int)j))).epsilon(1e-12));
}

TEST_CASE("derivative converges at the stencil order") {
    const double k = kTwoPi;
    auto worst_error = [&](int n, int order) {
        const nsf::Grid g = grid1d(n);
        std::vector<double> f(g.points()), df(g.points());
        for (std::size_t j = 0; j < g.points(); ++j) f[j] = std::sin(k * g.coord(0, (int)j));
        nsf::derivative(g, 0, order, f, df);
        double worst = 0.0;
        for (std::size_t j = 0; j < g.points(); ++j)
            worst = std::max(worst, std::abs(df[j] - k * std::cos(k * g.coord(0, (int)j))));
        return worst;
    };
    CHECK(std::log2(worst_error(32, 2) / worst_error(64, 2)) == doctest::Approx(2.0).epsilon(0.05));
    CHECK(std::log2(worst_error(32, 4) / worst_error(64, 4)) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("periodic sums of derivatives telescope") {
    // This cancellation is what makes the conservative update exact.
    const nsf::Grid g = grid1d(64);
    std::vector<double> f(g.points()), df(g.points());
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (auto& v : f) v = unit(rng);
    for (int order : {2, 4}) {
        nsf::derivative(g, 0, order, f, df);
        double sum = 0.0;
        for (double v : df) sum += v;
        CHECK(std::abs(sum) <= 1e-12 / g.h[0]);
    }
}

TEST_CASE("gradient and divergence in 2d") {
    const std::array<int, 2> npts{24, 16};
    const std::array<double, 2> len{1.0, 2.0};
    const nsf::Grid g = nsf::make_grid(2, npts, len);

    std::vector<double> f(g.points());
    std::array<int, 3> idx{};
    for (std::size_t j = 0; j < g.points(); ++j) {
        g.decode(j, idx);
        f[j] = std::sin(kTwoPi * g.coord(0, idx[0])) * std::cos(kTwoPi * g.coord(1, idx[1]) / 2.0);
    }
    std::array<nsf::Field, 3> grad;
    nsf::gradient(g, 2, f, grad);
    CHECK(grad[0].size() == g.points());
    CHECK(grad[1].size() == g.points());

    // div(grad f) summed over the box telescopes to zero as well.
    nsf::Field div;
    nsf::divergence(g, 2, grad, div);
    double sum = 0.0;
    for (double v : div) sum += v;
    CHECK(std::abs(sum) <= 1e-10);
}

TEST_CASE("field set shape and axpy") {
    const nsf::Grid g = grid1d(8);
    nsf::FieldSet a = nsf::FieldSet::zeros(g, 3);
    CHECK(a.rho.size() == 8);
    CHECK(a.rhok.size() == 3);

    int components = 0;
    a.for_each_component([&components](nsf::Field& f) {
        ++components;
        f.assign(f.size(), 1.0);
    });
    CHECK(components == 2 + g.dim + 3);  // rho, rhoE, mom[dim], rhok[n]

    nsf::FieldSet b = nsf::FieldSet::like(a);
    b.fill(2.0);
    nsf::axpy(0.5, a, b);
    CHECK(b.rho[0] == doctest::Approx(2.5));
    CHECK(b.rhok[2][7] == doctest::Approx(2.5));
}

TEST_CASE("primitive recovery round trip") {
    const nsf::Grid g = grid1d(8);
    nsf::MixtureSpec mix;
    mix.n = 2;
    mix.molar_mass = {1.0, 2.0};
    mix.formation_energy = {0.3, -0.1};
    mix.formation_entropy = {0.0, 0.0};
    mix.validate();

    const double rho = 1.4, theta = 0.9, u = 0.35;
    const std::array<double, 2> Y{0.25, 0.75};
    nsf::FieldSet fs = nsf::FieldSet::zeros(g, 2);
    for (std::size_t j = 0; j < g.points(); ++j) {
        fs.rho[j] = rho;
        fs.mom[0][j] = rho * u;
        double e = mix.c_v * theta + nsf::cold_energy(rho, mix.cold);
        for (int k = 0; k < 2; ++k) e += Y[(std::size_t)k] * mix.formation_energy[(std::size_t)k];
        fs.rhoE[j] = rho * (e + 0.5 * u * u);
        for (int k = 0; k < 2; ++k) fs.rhok[(std::size_t)k][j] = rho * Y[(std::size_t)k];
    }

    nsf::Primitives prim;
    nsf::recover_primitives(fs, mix, 1e-10, prim);
    CHECK(prim.theta[3] == doctest::Approx(theta).epsilon(1e-14));
    CHECK(prim.u[0][3] == doctest::Approx(u).epsilon(1e-14));
    CHECK(prim.Y[1][3] == doctest::Approx(0.75).epsilon(1e-14));

    // Temperature recovery is exact inversion, so a negative thermal energy
    // surfaces as a positivity error with the offending location.
    fs.rhoE[5] = 0.0;
    CHECK_THROWS_AS(nsf::recover_primitives(fs, mix, 1e-10, prim), nsf::PositivityError);
    try {
        nsf::recover_primitives(fs, mix, 1e-10, prim);
    } catch (const nsf::PositivityError& err) {
        CHECK(err.flat_index == 5);
        CHECK(err.what_failed == nsf::PositivityError::What::nonpositive_temperature);
    }
}

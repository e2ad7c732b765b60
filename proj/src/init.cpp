#include "nsf/init.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsf/mms.hpp"

namespace nsf {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Primitive fields on the grid; converted to conservative form once all
// pointwise admissibility checks have passed.
struct PrimitiveFields {
    Field rho;
    std::array<Field, 3> u;
    Field theta;
    std::vector<Field> Y;
};

PrimitiveFields uniform_primitives(const RunConfig& cfg, const Grid& grid) {
    const std::size_t total = grid.points();
    PrimitiveFields prim;
    prim.rho.assign(total, cfg.rho0);
    prim.theta.assign(total, cfg.theta0);
    for (int a = 0; a < grid.dim; ++a) prim.u[a].assign(total, cfg.u0[a]);
    prim.Y.resize(static_cast<std::size_t>(cfg.species));
    for (int k = 0; k < cfg.species; ++k) prim.Y[k].assign(total, cfg.Y0[k]);
    return prim;
}

// One smooth periodic bump per axis, averaged, so amplitude means the same
// thing in every dimension.
double phase_sum(const Grid& grid, std::size_t flat, const std::array<double, 3>& phases) {
    std::array<int, 3> idx{};
    grid.decode(flat, idx);
    double s = 0.0;
    for (int a = 0; a < grid.dim; ++a)
        s += std::sin(kTwoPi * grid.coord(a, idx[a]) / grid.length[a] + phases[a]);
    return s / grid.dim;
}

// Seeded phases keep repeated runs bitwise identical. Draw order is fixed:
// density, temperature, each velocity component, then the species wave.
void perturb(const RunConfig& cfg, const Grid& grid, PrimitiveFields& prim) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, kTwoPi);
    auto draw_phases = [&rng, &unit, &grid] {
        std::array<double, 3> phases{};
        for (int a = 0; a < grid.dim; ++a) phases[a] = unit(rng);
        return phases;
    };
    const auto rho_ph = draw_phases();
    const auto theta_ph = draw_phases();
    std::array<std::array<double, 3>, 3> u_ph{};
    for (int a = 0; a < grid.dim; ++a) u_ph[a] = draw_phases();
    const auto y_ph = draw_phases();

    const std::size_t total = grid.points();
    const double amp = cfg.perturbation_amplitude;
    const double yamp = cfg.species >= 2 ? cfg.y_amplitude : 0.0;
    for (std::size_t i = 0; i < total; ++i) {
        prim.rho[i] *= 1.0 + amp * phase_sum(grid, i, rho_ph);
        prim.theta[i] *= 1.0 + amp * phase_sum(grid, i, theta_ph);
        for (int a = 0; a < grid.dim; ++a) prim.u[a][i] += amp * phase_sum(grid, i, u_ph[a]);
        if (yamp > 0.0) {
            const double dy = yamp * phase_sum(grid, i, y_ph);
            prim.Y[0][i] += dy;
            prim.Y[1][i] -= dy;
        }
    }
}

// Smooth periodic interface: cos through tanh keeps Y1 periodic and C^inf,
// with two transition zones per period.
void mixing_layer(const RunConfig& cfg, const Grid& grid, PrimitiveFields& prim) {
    const std::size_t total = grid.points();
    std::array<int, 3> idx{};
    for (std::size_t i = 0; i < total; ++i) {
        grid.decode(i, idx);
        const double x = grid.coord(0, idx[0]);
        const double y1 =
            cfg.mixing_y_mid +
            cfg.mixing_y_amplitude * std::tanh(std::cos(kTwoPi * x / grid.length[0]) / cfg.mixing_width);
        prim.Y[0][i] = y1;
        prim.Y[1][i] = 1.0 - y1;
    }
}

void check_admissible(const PrimitiveFields& prim, int species) {
    for (double r : prim.rho)
        if (!(r > 0.0)) throw std::invalid_argument("initial condition: density must stay positive");
    for (double th : prim.theta)
        if (!(th > 0.0))
            throw std::invalid_argument("initial condition: temperature must stay positive");
    for (int k = 0; k < species; ++k)
        for (double y : prim.Y[static_cast<std::size_t>(k)])
            if (!(y >= 0.0 && y <= 1.0))
                throw std::invalid_argument("initial condition: mass fraction " +
                                            std::to_string(k) + " left [0, 1]");
}

FieldSet conservative_from(const PrimitiveFields& prim, const Grid& grid,
                           const MixtureSpec& mix) {
    FieldSet fs = FieldSet::zeros(grid, mix.n);
    const std::size_t total = grid.points();
    for (std::size_t i = 0; i < total; ++i) {
        const double rho = prim.rho[i];
        double ke = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            fs.mom[a][i] = rho * prim.u[a][i];
            ke += prim.u[a][i] * prim.u[a][i];
        }
        double e = mix.c_v * prim.theta[i] + cold_energy(rho, mix.cold);
        for (int k = 0; k < mix.n; ++k) {
            e += prim.Y[static_cast<std::size_t>(k)][i] * mix.formation_energy[k];
            fs.rhok[k][i] = rho * prim.Y[static_cast<std::size_t>(k)][i];
        }
        fs.rho[i] = rho;
        fs.rhoE[i] = rho * (e + 0.5 * ke);
    }
    return fs;
}

}  // namespace

FieldSet make_initial_condition(const RunConfig& cfg, InitialConditionReport* report) {
    const Grid grid = cfg.make_run_grid();
    const MixtureSpec mix = cfg.mixture();

    FieldSet fs = FieldSet::zeros(grid, mix.n);
    if (cfg.initial_condition == "manufactured") {
        mms_exact(grid, mix, mms_params_from(cfg), 0.0, fs);
    } else {
        PrimitiveFields prim = uniform_primitives(cfg, grid);
        if (cfg.initial_condition == "uniform_perturbation") {
            perturb(cfg, grid, prim);
        } else if (cfg.initial_condition == "mixing_layer") {
            mixing_layer(cfg, grid, prim);
        } else {
            throw std::invalid_argument("unknown initial condition '" + cfg.initial_condition +
                                        "'");
        }
        check_admissible(prim, cfg.species);
        fs = conservative_from(prim, grid, mix);
    }

    const PositivityReport pos = positivity_report(fs, mix);
    if (!(pos.min_rho > 0.0) || !(pos.min_theta > 0.0) || pos.min_rhok < 0.0)
        throw std::invalid_argument("initial condition: recovered state is not admissible");

    if (report) {
        const ConservedTotals totals = conserved_totals(fs, mix);
        report->total_mass = totals.mass;
        report->total_energy = totals.energy;
        report->bd_functional = bd_functional(fs, cfg.transport_spec(), cfg.stencil_order,
                                              cfg.rho_floor);
        report->positivity = pos;
    }
    return fs;
}

}  // namespace nsf

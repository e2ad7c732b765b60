#include "nsf/pde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsf {

void stress_tensor(int dim, std::span<const double> grad_u, double mu, double nu,
                   std::span<double> S) {
    const auto sz = static_cast<std::size_t>(dim) * dim;
    if (grad_u.size() != sz || S.size() != sz)
        throw std::invalid_argument("stress_tensor: tensor spans must be dim*dim");
    double div = 0.0;
    for (int i = 0; i < dim; ++i) div += grad_u[i * dim + i];
    for (int i = 0; i < dim; ++i)
        for (int a = 0; a < dim; ++a) {
            double s = mu * (grad_u[i * dim + a] + grad_u[a * dim + i]);
            if (i == a) s += nu * div;
            S[i * dim + a] = s;
        }
}

double cfl_dt(const FieldSet& fs, const MixtureSpec& mix, const TransportSpec& transport,
              double cfl, double rho_floor) {
    if (!(cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
    Primitives prim;
    recover_primitives(fs, mix, rho_floor, prim);

    const int dim = fs.grid.dim;
    const int n = mix.n;
    double max_inv_m = 0.0;
    for (int k = 0; k < n; ++k) max_inv_m = std::max(max_inv_m, 1.0 / mix.molar_mass[k]);
    const double hm = fs.grid.min_h();
    const double hm2 = hm * hm;

    double best = std::numeric_limits<double>::infinity();
    const std::size_t p = fs.points();
    for (std::size_t i = 0; i < p; ++i) {
        const double rho = fs.rho[i];
        const double theta = prim.theta[i];
        double b = 0.0;
        for (int k = 0; k < n; ++k) b += prim.Y[k][i] / mix.molar_mass[k];
        const double cs = std::sqrt(theta * b + cold_pressure_derivative(rho, mix.cold));
        for (int a = 0; a < dim; ++a)
            best = std::min(best, fs.grid.h[a] / (std::abs(prim.u[a][i]) + cs));

        const double kap = transport.kappa(rho, theta);
        if (kap > 0.0) best = std::min(best, hm2 * rho * mix.c_v / kap);

        const double pim = theta * rho * b;
        const double c0 = transport.diffusion_scalar(rho, theta);
        const double max_species_pressure_ratio = theta * max_inv_m;  // max_k p_k/rho_k
        if (c0 > 0.0 && max_species_pressure_ratio > 0.0)
            best = std::min(best, hm2 * pim / (c0 * max_species_pressure_ratio));

        const double visc = 2.0 * transport.mu(rho) + std::abs(transport.nu(rho));
        if (visc > 0.0) best = std::min(best, hm2 * rho / visc);
    }
    return cfl * best;
}

RhsEvaluator::RhsEvaluator(const Grid& grid, const MixtureSpec& mix, const TransportSpec& transport,
                           const KineticsSpec& kinetics, int stencil_order, double rho_floor)
    : grid_(grid),
      mix_(mix),
      transport_(transport),
      kinetics_(kinetics),
      order_(stencil_order),
      rho_floor_(rho_floor) {
    if (order_ != 2 && order_ != 4)
        throw std::invalid_argument("stencil_order must be 2 or 4");
    mix_.validate();
    transport_.validate();
    kinetics_.validate(mix_.n);

    const std::size_t p = grid_.points();
    const int d = grid_.dim;
    const int n = mix_.n;
    pk_.assign(static_cast<std::size_t>(n), Field(p));
    pim_.resize(p);
    pi_.resize(p);
    mu_.resize(p);
    nu_.resize(p);
    kappa_.resize(p);
    c0_.resize(p);
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a) du_[i][a].resize(p);
    for (int a = 0; a < d; ++a) dtheta_[a].resize(p);
    dpk_.assign(static_cast<std::size_t>(n), {});
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < d; ++a) dpk_[k][a].resize(p);
    for (int a = 0; a < d; ++a) {
        dpim_[a].resize(p);
        dpi_[a].resize(p);
    }
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a) stress_[i][a].resize(p);
    flux_k_.assign(static_cast<std::size_t>(n), {});
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < d; ++a) flux_k_[k][a].resize(p);
    for (int a = 0; a < d; ++a) q_[a].resize(p);
    fx_.resize(p);
    dfx_.resize(p);
}

void RhsEvaluator::operator()(const FieldSet& state, double t, FieldSet& out) {
    if (state.points() != grid_.points() || state.n_species != mix_.n)
        throw std::invalid_argument("rhs: state shape mismatch");
    if (out.points() != grid_.points() || out.n_species != mix_.n)
        throw std::invalid_argument("rhs: output shape mismatch");

    recover_primitives(state, mix_, rho_floor_, prim_);

    const std::size_t p = grid_.points();
    const int d = grid_.dim;
    const int n = mix_.n;

    // Pointwise constitutive coefficients. The loop mirrors the module
    // definitions with parameters lifted out of the loop.
    const double mu0 = transport_.viscosity.mu0;
    const double mu1 = transport_.viscosity.mu1;
    const bool nu_derived = transport_.nu_mode == TransportSpec::NuMode::derived;
    const double nu_const = transport_.nu_constant;
    const double kappa0 = transport_.kappa0;
    const double alpha = transport_.alpha;
    const double d0 = transport_.d0;
    const ColdPressureParams& cold = mix_.cold;
    std::vector<double> inv_m(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) inv_m[k] = 1.0 / mix_.molar_mass[k];

    for (std::size_t i = 0; i < p; ++i) {
        const double rho = state.rho[i];
        const double theta = prim_.theta[i];
        const double w = theta * rho;
        double pim = 0.0;
        for (int k = 0; k < n; ++k) {
            const double pk = w * prim_.Y[k][i] * inv_m[k];
            pk_[k][i] = pk;
            pim += pk;
        }
        pim_[i] = pim;
        pi_[i] = pim + cold_pressure(rho, cold);
        const double mu = mu0 + mu1 * rho;
        mu_[i] = mu;
        nu_[i] = nu_derived ? 2.0 * rho * mu1 - 2.0 * mu : nu_const;
        kappa_[i] = kappa0 * (1.0 + rho) * (1.0 + pow_fast(theta, alpha));
        c0_[i] = d0 * rho * (1.0 + theta);
    }

    // Gradients of the fields the point fluxes need.
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a) derivative(grid_, a, order_, prim_.u[i], du_[i][a]);
    for (int a = 0; a < d; ++a) derivative(grid_, a, order_, prim_.theta, dtheta_[a]);
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < d; ++a) derivative(grid_, a, order_, pk_[k], dpk_[k][a]);
    for (int a = 0; a < d; ++a) {
        // Molecular pressure gradient as the species sum keeps the fluxes
        // exactly zero-sum.
        double* dst = dpim_[a].data();
        for (std::size_t i = 0; i < p; ++i) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += dpk_[k][a][i];
            dst[i] = s;
        }
        derivative(grid_, a, order_, pi_, dpi_[a]);
    }

    // Pointwise stress, species fluxes, and heat flux.
    for (std::size_t i = 0; i < p; ++i) {
        double div = 0.0;
        for (int j = 0; j < d; ++j) div += du_[j][j][i];
        const double mu = mu_[i];
        const double nu = nu_[i];
        for (int j = 0; j < d; ++j)
            for (int a = 0; a < d; ++a) {
                double s = mu * (du_[j][a][i] + du_[a][j][i]);
                if (j == a) s += nu * div;
                stress_[j][a][i] = s;
            }
        const double scale = -c0_[i] / pim_[i];
        const double theta = prim_.theta[i];
        for (int a = 0; a < d; ++a) {
            double q = -kappa_[i] * dtheta_[a][i];
            for (int k = 0; k < n; ++k) {
                const double f = scale * (dpk_[k][a][i] - prim_.Y[k][i] * dpim_[a][i]);
                flux_k_[k][a][i] = f;
                q += (mix_.formation_energy[k] + (mix_.c_v + inv_m[k]) * theta) * f;
            }
            q_[a][i] = q;
        }
    }

    // Assemble the divergence-form right side.
    out.fill(0.0);
    for (int a = 0; a < d; ++a) {
        derivative(grid_, a, order_, state.mom[a], dfx_);
        for (std::size_t i = 0; i < p; ++i) out.rho[i] -= dfx_[i];
    }
    for (int j = 0; j < d; ++j) {
        for (int a = 0; a < d; ++a) {
            for (std::size_t i = 0; i < p; ++i)
                fx_[i] = state.mom[j][i] * prim_.u[a][i] - stress_[j][a][i];
            derivative(grid_, a, order_, fx_, dfx_);
            for (std::size_t i = 0; i < p; ++i) out.mom[j][i] -= dfx_[i];
        }
        for (std::size_t i = 0; i < p; ++i) out.mom[j][i] -= dpi_[j][i];
    }
    for (int a = 0; a < d; ++a) {
        for (std::size_t i = 0; i < p; ++i) {
            double su = 0.0;
            for (int j = 0; j < d; ++j) su += stress_[j][a][i] * prim_.u[j][i];
            fx_[i] = (state.rhoE[i] + pi_[i]) * prim_.u[a][i] + q_[a][i] - su;
        }
        derivative(grid_, a, order_, fx_, dfx_);
        for (std::size_t i = 0; i < p; ++i) out.rhoE[i] -= dfx_[i];
    }
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < d; ++a) {
            for (std::size_t i = 0; i < p; ++i)
                fx_[i] = state.rhok[k][i] * prim_.u[a][i] + flux_k_[k][a][i];
            derivative(grid_, a, order_, fx_, dfx_);
            for (std::size_t i = 0; i < p; ++i) out.rhok[k][i] -= dfx_[i];
        }

    if (kinetics_.kind != KineticsSpec::Kind::none) {
        std::vector<double> y_point(static_cast<std::size_t>(n));
        std::vector<double> omega(static_cast<std::size_t>(n));
        for (std::size_t i = 0; i < p; ++i) {
            for (int k = 0; k < n; ++k) y_point[k] = prim_.Y[k][i];
            production_rates(y_point, kinetics_, omega);
            const double scale = state.rho[i] * prim_.theta[i];
            for (int k = 0; k < n; ++k) out.rhok[k][i] += scale * omega[k];
        }
    }

    if (forcing_) forcing_(t, out);
}

}  // namespace nsf

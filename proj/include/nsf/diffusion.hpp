#pragma once

#include <span>
#include <vector>

#include "nsf/thermo.hpp"

namespace nsf {

// Everything a point needs to evaluate diffusive fluxes: the thermodynamic
// state plus gradients of the partial pressures, their sum, and temperature.
// Gradient vectors are row-major [species][axis] where applicable.
struct DiffusionInputs {
    int n = 1;
    int dim = 1;
    ThermoState state;
    std::vector<double> partial_p;       // n
    double pi_m = 0.0;                   // sum of partial pressures
    std::vector<double> grad_partial_p;  // n*dim
    std::vector<double> grad_pi_m;       // dim (must equal the species sum)
    std::vector<double> grad_theta;      // dim
    std::vector<double> enthalpy;        // n
    double c0 = 0.0;                     // diffusion scalar C0 > 0
    double kappa = 0.0;

    void validate(const MixtureSpec& spec) const;
};

// Mass fractions at or below this are treated as vacuum by the entropy
// diagnostics (the dissipation density divides by rho_k).
inline constexpr double kVacuumFraction = 1e-13;

// Singular diffusion matrix: row k has Z_k = sum_{i != k} Y_i on the
// diagonal and -Y_k off it. Kills Y (C*Y = 0) and acts as the identity on
// zero-sum vectors. Returned row-major n*n. Requires Y on the simplex.
std::vector<double> flux_matrix(std::span<const double> Y);

// Diffusion driving forces d_k = (grad p_k - Y_k grad pi_m)/pi_m,
// row-major [species][axis]. Zero-sum across species by construction.
void diffusion_forces(const DiffusionInputs& in, std::span<double> out);

// Species mass fluxes in closed form: F_k = -C0 * d_k. The matrix route
// C0 * sum_l C_kl d_l collapses to this because the forces are zero-sum.
void species_fluxes(const DiffusionInputs& in, std::span<double> out);

// Heat flux Q = sum_k h_k F_k - kappa * grad theta.
void heat_flux(const DiffusionInputs& in, std::span<const double> fluxes, std::span<double> out);

// Entropy production density of diffusion, sum_k pi_m*|F_k|^2/(C0*theta*rho_k).
// Species with vacuum-level mass fractions are skipped and counted.
double sigma_diffusion(const DiffusionInputs& in, std::span<const double> fluxes,
                       int* vacuum_skipped = nullptr);

// Same quantity through the force form, -sum_k F_k.(grad p_k - Y_k grad
// pi_m)/(theta*rho_k); agrees with sigma_diffusion to round-off.
double sigma_diffusion_via_forces(const DiffusionInputs& in, std::span<const double> fluxes,
                                  int* vacuum_skipped = nullptr);

// Hot-loop kernel: closed-form fluxes for one point from raw arrays.
// grad_pk is [species][axis] row-major, out likewise.
inline void species_fluxes_point(int n, int dim, double pi_m, double c0, const double* Y,
                                 const double* grad_pk, const double* grad_pi_m, double* out) {
    const double scale = -c0 / pi_m;
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < dim; ++a)
            out[k * dim + a] = scale * (grad_pk[k * dim + a] - Y[k] * grad_pi_m[a]);
}

}  // namespace nsf

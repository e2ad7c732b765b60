#pragma once

#include <span>
#include <string>
#include <vector>

#include "nsf/config.hpp"
#include "nsf/fields.hpp"
#include "nsf/transport.hpp"

namespace nsf {

// Manufactured solution: one-dimensional traveling waves
//   f(x, t) = base_f + amp_f * sin(k*(x - c*t) + phase_f)
// for rho, u, theta, and the first mass fraction; the remaining fractions
// split 1 - Y_1 in fixed proportions. Phases are fixed constants so the
// fields are mutually out of phase and no flux term degenerates. The
// forcing that makes this an exact solution is hard-coded from the closed
// chain-rule derivatives of the fluxes (see mms.cpp); no runtime symbolic
// algebra and no stencils are involved.
struct MmsParams {
    double base_rho = 0.9;
    double base_theta = 1.0;
    double base_u = 0.1;
    std::vector<double> base_Y;  // n entries
    double amplitude = 0.02;     // rho, u, theta waves
    double y_amplitude = 0.02;   // first-species wave; 0 for single species
    double speed = 0.3;
    double wavenumber = 0.0;     // 2*pi/L
};

// Wave parameters from a validated config with initial_condition =
// manufactured (or any config used for a convergence study).
MmsParams mms_params_from(const RunConfig& cfg);

// Conservative state of the exact solution at one point; rhok must have
// one entry per species.
struct MmsPointState {
    double rho = 0.0;
    double mom = 0.0;
    double rhoE = 0.0;
    std::vector<double> rhok;
};
MmsPointState mms_point_state(const MixtureSpec& mix, const MmsParams& p, double x, double t);

// Analytic values of the 1D conservative fluxes at one point (advective
// plus constitutive, signs as they appear under the outer divergence).
// Exposed as a finite-difference oracle target for the forcing.
struct MmsPointFluxes {
    double mass = 0.0;
    double momentum = 0.0;  // rho*u^2 - S + pi
    double energy = 0.0;    // (rhoE + pi)*u + Q - S*u
    std::vector<double> species;
};
MmsPointFluxes mms_point_fluxes(const MixtureSpec& mix, const TransportSpec& transport,
                                const MmsParams& p, double x, double t);

// Exact conservative fields on a grid at time t.
void mms_exact(const Grid& grid, const MixtureSpec& mix, const MmsParams& p, double t,
               FieldSet& out);

// Accumulates the analytic forcing g = d/dt U_exact + d/dx f(U_exact) into
// accum, making U_exact an exact solution of the forced system.
void add_mms_forcing(const Grid& grid, const MixtureSpec& mix, const TransportSpec& transport,
                     const MmsParams& p, double t, FieldSet& accum);

// Convergence studies. Spatial: grids double from cfg points with a frozen
// per-level dt from the stability bound, errors measured against the exact
// solution at t_end. Temporal: one fixed grid, dt halved per level, errors
// measured against a reference run at the finest dt / 16 (pure integrator
// self-convergence; the spatial discretization cancels exactly). The
// temporal probe starts near the raw stability bound and wants a coarse
// grid: on fine grids the stable step is so small that integrator error
// drowns in round-off before the orders can be read.
struct MmsLevel {
    int points = 0;
    double dt = 0.0;
    long long steps = 0;
    double err_rho = 0.0;
    double err_mom = 0.0;
    double err_energy = 0.0;
    double err_species = 0.0;  // worst species
};
struct MmsReport {
    std::vector<MmsLevel> levels;
    // End-to-end observed orders, log(e_first/e_last)/log(refinement).
    double order_rho = 0.0;
    double order_mom = 0.0;
    double order_energy = 0.0;
    double order_species = 0.0;

    double min_order() const;
    std::string text(const std::string& title) const;
};

// Both throw std::invalid_argument for levels < 3 or a config whose
// manufactured fields would not be smooth.
MmsReport mms_spatial_study(const RunConfig& cfg, int levels);
MmsReport mms_temporal_study(const RunConfig& cfg, int levels);

}  // namespace nsf

#pragma once

#include <functional>
#include <span>

#include "nsf/fields.hpp"
#include "nsf/grid.hpp"
#include "nsf/reactions.hpp"
#include "nsf/transport.hpp"

namespace nsf {

// Viscous stress at a point: S = mu*(g + g^T) + nu*tr(g)*I where g is the
// velocity gradient, row-major dim x dim. S is written in the same layout.
void stress_tensor(int dim, std::span<const double> grad_u, double mu, double nu,
                   std::span<double> S);

// Largest stable time step times the safety factor: the minimum over grid
// points and axes of the acoustic bound h/(|u|+c) and the diffusive bounds
// h^2*rho*c_v/kappa, h^2*pi_m/(C0*max_k p_k/rho_k), h^2*rho/(2mu+|nu|).
double cfl_dt(const FieldSet& fs, const MixtureSpec& mix, const TransportSpec& transport,
              double cfl, double rho_floor);

// Semi-discrete right side of the conservative system, evaluated with
// central stencils on the periodic grid. Divergence-form fluxes telescope,
// so grid totals are conserved to round-off. Holds its own work buffers;
// not safe for concurrent use from multiple threads.
class RhsEvaluator {
public:
    RhsEvaluator(const Grid& grid, const MixtureSpec& mix, const TransportSpec& transport,
                 const KineticsSpec& kinetics, int stencil_order, double rho_floor);

    // out = d(state)/dt at time t. Throws PositivityError on recovery failure.
    void operator()(const FieldSet& state, double t, FieldSet& out);

    // Optional analytic source injection (used by manufactured solutions);
    // called after the physical terms with fn(t, out) accumulating into out.
    void set_forcing(std::function<void(double, FieldSet&)> fn) { forcing_ = std::move(fn); }

    const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    MixtureSpec mix_;
    TransportSpec transport_;
    KineticsSpec kinetics_;
    int order_;
    double rho_floor_;
    std::function<void(double, FieldSet&)> forcing_;

    Primitives prim_;
    std::vector<Field> pk_;      // partial pressures
    Field pim_;                  // molecular pressure
    Field pi_;                   // total pressure
    Field mu_, nu_, kappa_, c0_;
    std::array<std::array<Field, 3>, 3> du_;  // du_[i][a] = d u_i / d x_a
    std::array<Field, 3> dtheta_;
    std::vector<std::array<Field, 3>> dpk_;
    std::array<Field, 3> dpim_;
    std::array<Field, 3> dpi_;
    std::array<std::array<Field, 3>, 3> stress_;
    std::vector<std::array<Field, 3>> flux_k_;
    std::array<Field, 3> q_;
    Field fx_, dfx_;
};

// Classical four-stage Runge-Kutta step over a field set. Stage states are
// kept in internal buffers, so a throwing right side leaves the input
// untouched. Rhs must be callable as rhs(state, t, out).
class Rk4Integrator {
public:
    explicit Rk4Integrator(const FieldSet& shape)
        : k1_(FieldSet::like(shape)),
          k2_(FieldSet::like(shape)),
          k3_(FieldSet::like(shape)),
          k4_(FieldSet::like(shape)),
          tmp_(FieldSet::like(shape)) {}

    template <class Rhs>
    void step(FieldSet& state, double t, double dt, Rhs&& rhs) {
        rhs(state, t, k1_);
        tmp_ = state;
        axpy(0.5 * dt, k1_, tmp_);
        rhs(tmp_, t + 0.5 * dt, k2_);
        tmp_ = state;
        axpy(0.5 * dt, k2_, tmp_);
        rhs(tmp_, t + 0.5 * dt, k3_);
        tmp_ = state;
        axpy(dt, k3_, tmp_);
        rhs(tmp_, t + dt, k4_);
        // All stages succeeded; commit.
        axpy(dt / 6.0, k1_, state);
        axpy(dt / 3.0, k2_, state);
        axpy(dt / 3.0, k3_, state);
        axpy(dt / 6.0, k4_, state);
    }

private:
    FieldSet k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace nsf

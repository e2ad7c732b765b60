#pragma once

#include <span>

#include "nsf/thermo.hpp"

namespace nsf {

// Reaction kinetics. The pairwise exchange converts the donor species into
// the acceptor at a rate proportional to the donor mass fraction; rates are
// clamped into [-omega_lower, omega_upper] by a common factor so the
// zero-sum property survives clamping.
struct KineticsSpec {
    enum class Kind { none, pairwise_exchange };
    Kind kind = Kind::none;
    int donor = 0;     // species index, 0-based
    int acceptor = 1;  // species index, 0-based
    double rate = 1.0;
    double omega_lower = 1.0;  // clamp magnitude for negative rates
    double omega_upper = 1.0;  // clamp magnitude for positive rates

    void validate(int n_species) const;
};

// Mass production rates omega_k(Y); zero-sum, bounded, and zero for any
// species with zero mass fraction. Y must lie on the simplex.
void production_rates(std::span<const double> Y, const KineticsSpec& spec, std::span<double> out);

// Source term in the species equations: rho * theta * omega_k.
void species_source(double rho, double theta, std::span<const double> omega,
                    std::span<double> out);

struct AdmissibilityResult {
    double residual = 0.0;  // sum_k g_k * rho * omega_k; admissible when <= 0
    bool singular = false;  // some omega_k != 0 where Y_k = 0 (Gibbs undefined)
};

// Thermodynamic admissibility of a rate vector at a state. Vacuum species
// with nonzero rates make the Gibbs function undefined; that is flagged,
// not thrown, so monitoring can continue.
AdmissibilityResult admissibility_residual(const ThermoState& state, const MixtureSpec& mix,
                                           std::span<const double> omega);

}  // namespace nsf

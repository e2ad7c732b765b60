#include "nsf/reactions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nsf {

void KineticsSpec::validate(int n_species) const {
    if (kind == Kind::none) return;
    if (donor < 0 || donor >= n_species || acceptor < 0 || acceptor >= n_species)
        throw std::invalid_argument("pairwise indices must name valid species");
    if (donor == acceptor) throw std::invalid_argument("pairwise indices must be distinct");
    if (!(rate >= 0.0)) throw std::invalid_argument("pairwise_rate must be nonnegative");
    if (!(omega_lower > 0.0) || !(omega_upper > 0.0))
        throw std::invalid_argument("omega bounds must be positive");
}

void production_rates(std::span<const double> Y, const KineticsSpec& spec, std::span<double> out) {
    if (out.size() != Y.size())
        throw std::invalid_argument("production_rates: output span has wrong length");
    std::fill(out.begin(), out.end(), 0.0);
    if (spec.kind == KineticsSpec::Kind::none) return;

    double sum = 0.0;
    for (double y : Y) {
        if (y < -1e-12) throw std::invalid_argument("production_rates: Y must be nonnegative");
        sum += y;
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw std::invalid_argument("production_rates: Y must sum to 1");

    const double donor_y = std::max(0.0, Y[spec.donor]);
    double raw = spec.rate * donor_y;
    if (raw > 0.0) {
        // Shrink both rates together so the pair stays zero-sum.
        const double cap = std::min(spec.omega_lower, spec.omega_upper);
        if (raw > cap) raw = cap;
    }
    out[spec.donor] = -raw;
    out[spec.acceptor] = raw;
}

void species_source(double rho, double theta, std::span<const double> omega,
                    std::span<double> out) {
    if (out.size() != omega.size())
        throw std::invalid_argument("species_source: output span has wrong length");
    const double scale = rho * theta;
    for (std::size_t k = 0; k < omega.size(); ++k) out[k] = scale * omega[k];
}

AdmissibilityResult admissibility_residual(const ThermoState& state, const MixtureSpec& mix,
                                           std::span<const double> omega) {
    if (omega.size() != static_cast<std::size_t>(mix.n))
        throw std::invalid_argument("admissibility_residual: omega has wrong length");
    AdmissibilityResult result;
    for (int k = 0; k < mix.n; ++k) {
        if (omega[k] == 0.0) continue;  // vacuum or inert species contribute nothing
        if (state.Y[k] <= 0.0) {
            result.singular = true;
            continue;
        }
        result.residual += gibbs_function(state, mix, k) * state.rho * omega[k];
    }
    return result;
}

}  // namespace nsf

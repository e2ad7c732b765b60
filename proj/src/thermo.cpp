#include "nsf/thermo.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace nsf {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

void ColdPressureParams::validate() const {
    if (!(c1 > 0.0)) fail("cold_c1 must be positive");
    if (!(c2 > 0.0)) fail("cold_c2 must be positive");
    if (!(gamma_minus > 1.0)) fail("cold_gamma_minus must exceed 1");
    if (!(gamma_plus > 1.0)) fail("cold_gamma_plus must exceed 1");
}

void MixtureSpec::validate() const {
    if (n < 1) fail("species must be >= 1");
    const auto un = static_cast<std::size_t>(n);
    if (molar_mass.size() != un) fail("molar_mass must list one value per species");
    if (formation_energy.size() != un) fail("formation_energy must list one value per species");
    if (formation_entropy.size() != un) fail("formation_entropy must list one value per species");
    for (double m : molar_mass)
        if (!(m > 0.0)) fail("molar_mass entries must be positive");
    if (!(c_v > 0.0)) fail("c_v must be positive");
    cold.validate();
}

void ThermoState::validate(const MixtureSpec& spec) const {
    if (!(rho > 0.0)) fail("state density must be positive");
    if (!(theta > 0.0)) fail("state temperature must be positive");
    if (Y.size() != static_cast<std::size_t>(spec.n)) fail("state Y must have one entry per species");
    double sum = 0.0;
    for (double y : Y) {
        if (y < -1e-12 || y > 1.0 + 1e-12) fail("state mass fractions must lie in [0, 1]");
        sum += y;
    }
    if (std::abs(sum - 1.0) > 1e-10) fail("state mass fractions must sum to 1");
}

double molecular_pressure(const ThermoState& s, const MixtureSpec& spec) {
    double b = 0.0;
    for (int k = 0; k < spec.n; ++k) b += s.Y[k] / spec.molar_mass[k];
    return s.theta * s.rho * b;
}

void partial_pressures(const ThermoState& s, const MixtureSpec& spec, std::span<double> out) {
    if (out.size() != static_cast<std::size_t>(spec.n))
        throw std::invalid_argument("partial_pressures: output span has wrong length");
    for (int k = 0; k < spec.n; ++k) out[k] = s.theta * s.rho * s.Y[k] / spec.molar_mass[k];
}

double total_pressure(const ThermoState& s, const MixtureSpec& spec) {
    return molecular_pressure(s, spec) + cold_pressure(s.rho, spec.cold);
}

double pressure_density_derivative(const ThermoState& s, const MixtureSpec& spec) {
    double b = 0.0;
    for (int k = 0; k < spec.n; ++k) b += s.Y[k] / spec.molar_mass[k];
    return s.theta * b + cold_pressure_derivative(s.rho, spec.cold);
}

double internal_energy(const ThermoState& s, const MixtureSpec& spec) {
    double e = spec.c_v * s.theta + cold_energy(s.rho, spec.cold);
    for (int k = 0; k < spec.n; ++k) e += s.Y[k] * spec.formation_energy[k];
    return e;
}

double enthalpy(const MixtureSpec& spec, int k, double theta) {
    return spec.formation_energy[k] + spec.cp(k) * theta;
}

double species_entropy(const ThermoState& s, const MixtureSpec& spec, int k) {
    if (!(s.theta > 0.0)) throw std::domain_error("species_entropy: theta must be positive");
    const double rho_k = s.rho * s.Y[k];
    if (!(rho_k > 0.0)) throw std::domain_error("species_entropy: species density must be positive");
    const double m = spec.molar_mass[k];
    return spec.formation_entropy[k] + spec.c_v * std::log(s.theta) + std::log(m / rho_k) / m;
}

double mixture_entropy(const ThermoState& s, const MixtureSpec& spec) {
    double total = 0.0;
    for (int k = 0; k < spec.n; ++k) {
        if (s.Y[k] <= 0.0) continue;  // vacuum species contribute nothing
        total += s.Y[k] * species_entropy(s, spec, k);
    }
    return total;
}

double gibbs_function(const ThermoState& s, const MixtureSpec& spec, int k) {
    return enthalpy(spec, k, s.theta) - s.theta * species_entropy(s, spec, k);
}

}  // namespace nsf

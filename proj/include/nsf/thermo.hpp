#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace nsf {

// Power with a fast path for small integer exponents; the default equation
// of state uses integer exponents and this keeps the hot loops off libm.
inline double pow_fast(double x, double p) {
    const double r = std::round(p);
    if (r == p && std::abs(r) <= 8.0) {
        int e = static_cast<int>(r);
        const double b = e < 0 ? 1.0 / x : x;
        if (e < 0) e = -e;
        double acc = 1.0;
        while (e-- > 0) acc *= b;
        return acc;
    }
    return std::pow(x, p);
}

// Barotropic cold-pressure law: two power branches glued at the reference
// density 1, with c1, c2 > 0 and both exponents > 1.
struct ColdPressureParams {
    double c1 = 1.0;
    double c2 = 1.0;
    double gamma_minus = 2.0;
    double gamma_plus = 2.0;

    void validate() const;
};

// pi_c'(rho): c1*rho^(-gamma_minus-1) below the reference density,
// c2*rho^(gamma_plus-1) above. Positive everywhere, so pi_c is increasing.
inline double cold_pressure_derivative(double rho, const ColdPressureParams& p) {
    if (!(rho > 0.0)) throw std::domain_error("cold_pressure_derivative: rho must be positive");
    return rho <= 1.0 ? p.c1 * pow_fast(rho, -p.gamma_minus - 1.0)
                      : p.c2 * pow_fast(rho, p.gamma_plus - 1.0);
}

// d/drho of cold_pressure_derivative. Discontinuous at the reference
// density 1, so manufactured solutions must keep the density band on one
// side of it.
inline double cold_pressure_second_derivative(double rho, const ColdPressureParams& p) {
    if (!(rho > 0.0))
        throw std::domain_error("cold_pressure_second_derivative: rho must be positive");
    return rho <= 1.0 ? -p.c1 * (p.gamma_minus + 1.0) * pow_fast(rho, -p.gamma_minus - 2.0)
                      : p.c2 * (p.gamma_plus - 1.0) * pow_fast(rho, p.gamma_plus - 2.0);
}

// Antiderivative of cold_pressure_derivative normalized so pi_c(1) = 0.
inline double cold_pressure(double rho, const ColdPressureParams& p) {
    if (!(rho > 0.0)) throw std::domain_error("cold_pressure: rho must be positive");
    if (rho <= 1.0) return p.c1 / p.gamma_minus * (1.0 - pow_fast(rho, -p.gamma_minus));
    return p.c2 / p.gamma_plus * (pow_fast(rho, p.gamma_plus) - 1.0);
}

// Cold specific energy: rho^2 * e_c'(rho) = pi_c(rho) with e_c(1) = 0.
// Closed form of the integral of pi_c(s)/s^2 from 1 to rho; nonnegative on
// both branches and divergent as rho -> 0, so vacuum is penalized.
inline double cold_energy(double rho, const ColdPressureParams& p) {
    if (!(rho > 0.0)) throw std::domain_error("cold_energy: rho must be positive");
    if (rho <= 1.0) {
        const double gm = p.gamma_minus;
        return p.c1 / gm * ((1.0 - 1.0 / rho) + (pow_fast(rho, -gm - 1.0) - 1.0) / (gm + 1.0));
    }
    const double gp = p.gamma_plus;
    return p.c2 / gp * ((pow_fast(rho, gp - 1.0) - 1.0) / (gp - 1.0) + 1.0 / rho - 1.0);
}

inline double cold_energy_derivative(double rho, const ColdPressureParams& p) {
    return cold_pressure(rho, p) / (rho * rho);
}

// Mixture description: per-species molar masses and formation constants,
// one shared heat capacity c_v, and the cold (barotropic) pressure law.
struct MixtureSpec {
    int n = 1;
    std::vector<double> molar_mass;         // m_k > 0
    std::vector<double> formation_energy;   // e_st
    std::vector<double> formation_entropy;  // s_st
    double c_v = 1.0;
    ColdPressureParams cold;

    double cp(int k) const { return c_v + 1.0 / molar_mass[static_cast<std::size_t>(k)]; }
    void validate() const;  // throws std::invalid_argument naming the violated rule
};

// Pointwise thermodynamic state: density, temperature, mass fractions.
struct ThermoState {
    double rho = 1.0;
    double theta = 1.0;
    std::vector<double> Y;

    void validate(const MixtureSpec& spec) const;
};

// Molecular (thermal) pressure: sum_k theta*rho*Y_k/m_k. Linear in theta.
double molecular_pressure(const ThermoState& s, const MixtureSpec& spec);

// Partial pressures p_k = theta*rho*Y_k/m_k; out has length n.
void partial_pressures(const ThermoState& s, const MixtureSpec& spec, std::span<double> out);

// Total pressure: molecular plus cold part.
double total_pressure(const ThermoState& s, const MixtureSpec& spec);

// d(total pressure)/d(rho) at fixed theta and Y; positive, used for the
// acoustic speed in the time-step bound.
double pressure_density_derivative(const ThermoState& s, const MixtureSpec& spec);

// Specific internal energy: formation + thermal + cold.
double internal_energy(const ThermoState& s, const MixtureSpec& spec);

// Species specific enthalpy h_k = e_st_k + (c_v + 1/m_k)*theta.
double enthalpy(const MixtureSpec& spec, int k, double theta);

// Species specific entropy; requires theta > 0 and Y_k > 0.
double species_entropy(const ThermoState& s, const MixtureSpec& spec, int k);

// Mass-weighted mixture entropy with the x*log(x) -> 0 vacuum convention:
// species with Y_k = 0 contribute nothing.
double mixture_entropy(const ThermoState& s, const MixtureSpec& spec);

// Gibbs function g_k = h_k - theta*s_k; requires theta > 0 and Y_k > 0.
double gibbs_function(const ThermoState& s, const MixtureSpec& spec, int k);

}  // namespace nsf

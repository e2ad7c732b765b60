#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nsf/thermo.hpp"

namespace {

nsf::MixtureSpec two_species() {
    nsf::MixtureSpec mix;
    mix.n = 2;
    mix.molar_mass = {1.0, 2.0};
    mix.formation_energy = {0.0, 0.0};
    mix.formation_entropy = {0.0, 0.0};
    mix.c_v = 1.0;
    mix.validate();
    return mix;
}

nsf::MixtureSpec single_species(double m = 1.0) {
    nsf::MixtureSpec mix;
    mix.n = 1;
    mix.molar_mass = {m};
    mix.formation_energy = {0.0};
    mix.formation_entropy = {0.0};
    mix.c_v = 1.0;
    mix.validate();
    return mix;
}

nsf::ThermoState state_of(double rho, double theta, std::vector<double> Y) {
    nsf::ThermoState s;
    s.rho = rho;
    s.theta = theta;
    s.Y = std::move(Y);
    return s;
}

}  // namespace

TEST_CASE("cold pressure closed form") {
    const nsf::ColdPressureParams cold;  // c1 = c2 = 1, gamma = 2 both sides

    // Values worked out by integrating pi_c'(s) = s^(-3) (s <= 1) and s
    // (s > 1) from the pi_c(1) = 0 normalization by hand.
    CHECK(nsf::cold_pressure(1.0, cold) == 0.0);
    CHECK(nsf::cold_pressure(2.0, cold) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(nsf::cold_pressure(0.5, cold) == doctest::Approx(-1.5).epsilon(1e-14));

    CHECK(nsf::cold_pressure_derivative(2.0, cold) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(nsf::cold_pressure_derivative(0.5, cold) == doctest::Approx(8.0).epsilon(1e-14));

    // Strictly increasing across the reference density.
    double prev = nsf::cold_pressure(0.01, cold);
    for (double rho = 0.02; rho < 5.0; rho += 0.01) {
        const double cur = nsf::cold_pressure(rho, cold);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("cold energy closed form and consistency") {
    const nsf::ColdPressureParams cold;

    // e_c(rho) = integral of pi_c(s)/s^2 from 1 to rho, done by hand:
    // rho > 1: (rho + 1/rho - 2)/2; rho < 1: (1/rho + rho^-3/3 - 4/3)/2... the
    // numbers below are the hand-evaluated results at 2 and 1/2.
    CHECK(nsf::cold_energy(1.0, cold) == 0.0);
    CHECK(nsf::cold_energy(2.0, cold) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(nsf::cold_energy(0.5, cold) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    // rho^2 * e_c'(rho) = pi_c(rho) across six decades.
    for (int i = 0; i < 100; ++i) {
        const double rho = std::pow(10.0, -3.0 + 6.0 * i / 99.0);
        const double lhs = rho * rho * nsf::cold_energy_derivative(rho, cold);
        const double rhs = nsf::cold_pressure(rho, cold);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * (std::abs(rhs) + 1.0));
        CHECK(nsf::cold_energy(rho, cold) >= 0.0);
    }
}

TEST_CASE("molecular and total pressure") {
    const nsf::MixtureSpec mix = two_species();
    const nsf::ThermoState s = state_of(1.0, 1.0, {0.5, 0.5});
    CHECK(nsf::molecular_pressure(s, mix) == doctest::Approx(0.75).epsilon(1e-14));

    std::vector<double> pk(2);
    nsf::partial_pressures(s, mix, pk);
    CHECK(pk[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(pk[1] == doctest::Approx(0.25).epsilon(1e-14));

    const nsf::MixtureSpec one = single_species();
    CHECK(nsf::total_pressure(state_of(2.0, 1.0, {1.0}), one) ==
          doctest::Approx(3.5).epsilon(1e-14));
    // Negative total pressure at low density is admissible.
    CHECK(nsf::total_pressure(state_of(0.5, 1.0, {1.0}), one) ==
          doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("internal energy") {
    const nsf::MixtureSpec one = single_species();
    CHECK(nsf::internal_energy(state_of(1.0, 1.0, {1.0}), one) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(nsf::internal_energy(state_of(2.0, 1.0, {1.0}), one) ==
          doctest::Approx(1.25).epsilon(1e-14));

    nsf::MixtureSpec formed = single_species();
    formed.formation_energy = {3.0};
    CHECK(nsf::internal_energy(state_of(1.0, 2.0, {1.0}), formed) ==
          doctest::Approx(5.0).epsilon(1e-14));

    // e is affine in theta with slope exactly c_v.
    const nsf::MixtureSpec mix = two_species();
    const double e1 = nsf::internal_energy(state_of(1.3, 1.0, {0.25, 0.75}), mix);
    const double e2 = nsf::internal_energy(state_of(1.3, 2.5, {0.25, 0.75}), mix);
    CHECK((e2 - e1) / 1.5 == doctest::Approx(mix.c_v).epsilon(1e-14));
}

TEST_CASE("species and mixture entropy") {
    const nsf::MixtureSpec one = single_species();
    CHECK(nsf::species_entropy(state_of(1.0, 1.0, {1.0}), one, 0) == doctest::Approx(0.0));
    CHECK(nsf::species_entropy(state_of(1.0, std::exp(1.0), {1.0}), one, 0) ==
          doctest::Approx(1.0).epsilon(1e-14));

    const nsf::MixtureSpec heavy = single_species(2.0);
    CHECK(nsf::species_entropy(state_of(2.0, 1.0, {1.0}), heavy, 0) ==
          doctest::Approx(0.0).epsilon(1e-14));

    nsf::MixtureSpec equal = two_species();
    equal.molar_mass = {1.0, 1.0};
    CHECK(nsf::mixture_entropy(state_of(1.0, 1.0, {0.5, 0.5}), equal) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));

    // Vacuum-species convention: Y_k = 0 contributes nothing.
    const nsf::ThermoState vac = state_of(1.0, 1.0, {1.0, 0.0});
    CHECK(nsf::mixture_entropy(vac, equal) ==
          doctest::Approx(nsf::species_entropy(vac, equal, 0)).epsilon(1e-14));

    // Permutation symmetry for a symmetric spec.
    CHECK(nsf::mixture_entropy(state_of(1.2, 0.7, {0.3, 0.7}), equal) ==
          doctest::Approx(nsf::mixture_entropy(state_of(1.2, 0.7, {0.7, 0.3}), equal)));

    CHECK_THROWS_AS(nsf::species_entropy(vac, equal, 1), std::domain_error);
}

TEST_CASE("gibbs function") {
    const nsf::MixtureSpec one = single_species();
    CHECK(nsf::gibbs_function(state_of(1.0, 1.0, {1.0}), one, 0) ==
          doctest::Approx(2.0).epsilon(1e-14));

    nsf::MixtureSpec formed = single_species();
    formed.formation_energy = {5.0};
    CHECK(nsf::gibbs_function(state_of(1.0, 1e-12, {1.0}), formed, 0) ==
          doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("gibbs relation residual is second order") {
    // theta*ds - de - pi*d(1/rho) -> 0 at second order along a fixed-Y path.
    const nsf::MixtureSpec mix = two_species();
    const std::vector<double> Y{0.4, 0.6};
    const double rho = 1.7, theta = 1.3;

    auto residual = [&](double step) {
        const nsf::ThermoState c = state_of(rho, theta, Y);
        const nsf::ThermoState p = state_of(rho * (1.0 + step), theta * (1.0 + step), Y);
        const nsf::ThermoState m = state_of(rho * (1.0 - step), theta * (1.0 - step), Y);
        const double ds = nsf::mixture_entropy(p, mix) - nsf::mixture_entropy(m, mix);
        const double de = nsf::internal_energy(p, mix) - nsf::internal_energy(m, mix);
        const double dv = 1.0 / p.rho - 1.0 / m.rho;
        return std::abs(c.theta * ds - de - nsf::total_pressure(c, mix) * dv);
    };
    // Centered differences cancel the even error terms on top of the
    // identity killing the linear one, so the observed rate is cubic;
    // anything >= quadratic satisfies the consistency requirement.
    const double r1 = residual(1e-3);
    const double r2 = residual(5e-4);
    CHECK(r1 / r2 >= 3.5);
    CHECK(r1 / r2 == doctest::Approx(8.0).epsilon(0.05));
    CHECK(residual(1e-5) <= 1e-8);
}

TEST_CASE("spec validation") {
    nsf::MixtureSpec mix = two_species();
    mix.cold.gamma_minus = 1.0;
    CHECK_THROWS_WITH_AS(mix.validate(), "cold_gamma_minus must exceed 1", std::invalid_argument);

    mix = two_species();
    mix.molar_mass[1] = 0.0;
    CHECK_THROWS_AS(mix.validate(), std::invalid_argument);

    mix = two_species();
    mix.c_v = 0.0;
    CHECK_THROWS_AS(mix.validate(), std::invalid_argument);
}

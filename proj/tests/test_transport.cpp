#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nsf/transport.hpp"

namespace {

bool has_failed_id(const nsf::TransportAuditReport& rep, const std::string& id) {
    for (const std::string& f : rep.failed_ids())
        if (f == id) return true;
    return false;
}

}  // namespace

TEST_CASE("linear viscosity family") {
    nsf::TransportSpec spec;
    spec.viscosity.mu0 = 0.25;
    spec.viscosity.mu1 = 1.5;
    spec.validate();

    CHECK(spec.mu(2.0) == doctest::Approx(3.25).epsilon(1e-14));
    CHECK(spec.mu_prime(2.0) == 1.5);
    CHECK(spec.viscosity.mu_second(2.0) == 0.0);
    CHECK_THROWS_AS(spec.mu(-1.0), std::domain_error);
}

TEST_CASE("derived bulk viscosity") {
    nsf::TransportSpec spec;  // mu = rho
    // nu = 2*rho*mu' - 2*mu vanishes identically for mu = mu1*rho.
    for (double rho : {0.1, 1.0, 7.3}) {
        CHECK(spec.nu(rho) == doctest::Approx(0.0));
        CHECK(spec.nu_prime(rho) == 0.0);
    }

    spec.viscosity.mu0 = 0.2;
    // With an offset the derived nu is the constant -2*mu0.
    CHECK(spec.nu(0.5) == doctest::Approx(-0.4).epsilon(1e-14));
    CHECK(spec.nu(4.0) == doctest::Approx(-0.4).epsilon(1e-14));

    spec.nu_mode = nsf::TransportSpec::NuMode::constant_override;
    spec.nu_constant = 0.7;
    CHECK(spec.nu(0.5) == 0.7);
    CHECK(spec.nu_prime(0.5) == 0.0);
}

TEST_CASE("conductivity and diffusion scalar") {
    nsf::TransportSpec spec;
    spec.kappa0 = 1.5;
    spec.alpha = 3.0;
    CHECK(spec.kappa(1.0, 1.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(spec.kappa(0.0, 0.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(spec.kappa(1.0, 2.0) == doctest::Approx(1.5 * 2.0 * 9.0).epsilon(1e-14));

    spec.d0 = 2.0;
    CHECK(spec.diffusion_scalar(3.0, 1.0) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(spec.diffusion_scalar(3.0, 0.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK_THROWS_AS(spec.kappa(-1.0, 1.0), std::domain_error);
}

TEST_CASE("bd potential") {
    nsf::TransportSpec spec;
    spec.viscosity.mu1 = 1.5;
    CHECK(spec.bd_potential(1.0) == 0.0);
    CHECK(spec.bd_potential(std::exp(1.0)) == doctest::Approx(3.0).epsilon(1e-14));
    // grad phi = 2 mu'(rho) grad rho / rho.
    CHECK(nsf::bd_potential_gradient(spec, 2.0, 0.4) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK_THROWS_AS(spec.bd_potential(0.0), std::domain_error);
}

TEST_CASE("transport validation") {
    nsf::TransportSpec spec;
    spec.alpha = 1.0;
    CHECK_THROWS_WITH_AS(spec.validate(), "conductivity_alpha must be >= 2",
                         std::invalid_argument);

    spec = nsf::TransportSpec{};
    spec.kappa0 = 5.0;  // outside [0.5, 2]
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

    spec = nsf::TransportSpec{};
    spec.viscosity.mu1 = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("transport audit passes defaults and names breakages") {
    const nsf::TransportSpec good;
    CHECK(nsf::audit_transport(good, 0.05, 20.0, 64).all_pass);

    // Slope outside the [lo, 1/lo] band.
    nsf::TransportSpec steep;
    steep.viscosity.mu1 = 3.0;
    const auto steep_rep = nsf::audit_transport(steep, 0.05, 20.0, 64);
    CHECK(!steep_rep.all_pass);
    CHECK(has_failed_id(steep_rep, "mu_prime_upper"));

    // Bulk viscosity decoupled from the shear family.
    nsf::TransportSpec decoupled;
    decoupled.nu_mode = nsf::TransportSpec::NuMode::constant_override;
    decoupled.nu_constant = 0.5;
    const auto dec_rep = nsf::audit_transport(decoupled, 0.05, 20.0, 64);
    CHECK(!dec_rep.all_pass);
    CHECK(has_failed_id(dec_rep, "nu_constraint"));

    // alpha below 2 is audit-visible even though validate would reject it.
    nsf::TransportSpec cold_alpha;
    cold_alpha.alpha = 1.0;
    const auto alpha_rep = nsf::audit_transport(cold_alpha, 0.05, 20.0, 8);
    CHECK(!alpha_rep.all_pass);
    CHECK(has_failed_id(alpha_rep, "alpha_min"));
}

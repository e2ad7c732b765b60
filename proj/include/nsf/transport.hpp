#pragma once

#include <cmath>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsf/thermo.hpp"

namespace nsf {

// Density-dependent shear viscosity family. Currently linear in rho; other
// smooth families slot in as new kinds with their own derivatives.
struct ViscosityModel {
    enum class Kind { linear };
    Kind kind = Kind::linear;
    double mu0 = 0.0;  // offset, must be >= 0
    double mu1 = 1.0;  // slope, must be > 0

    double mu(double rho) const {
        if (!(rho >= 0.0)) throw std::domain_error("mu: rho must be nonnegative");
        return mu0 + mu1 * rho;
    }
    double mu_prime(double rho) const {
        if (!(rho >= 0.0)) throw std::domain_error("mu_prime: rho must be nonnegative");
        return mu1;
    }
    double mu_second(double rho) const {
        if (!(rho >= 0.0)) throw std::domain_error("mu_second: rho must be nonnegative");
        return 0.0;
    }
};

struct TransportSpec {
    ViscosityModel viscosity;
    double mu_prime_lower = 0.5;  // admissible band for mu' is [lo, 1/lo]

    // The bulk viscosity is always derived from the shear family as
    // nu = 2*rho*mu'(rho) - 2*mu(rho). The constant override exists only so
    // a decoupled nu can be expressed and then caught by the audit.
    enum class NuMode { derived, constant_override };
    NuMode nu_mode = NuMode::derived;
    double nu_constant = 0.0;

    double kappa0 = 1.0;  // conductivity scale, within [kappa0_lower, kappa0_upper]
    double kappa0_lower = 0.5;
    double kappa0_upper = 2.0;
    double alpha = 2.0;  // temperature exponent, >= 2

    double d0 = 1.0;  // diffusion scale, within [d0_lower, d0_upper]
    double d0_lower = 0.5;
    double d0_upper = 2.0;

    double mu(double rho) const { return viscosity.mu(rho); }
    double mu_prime(double rho) const { return viscosity.mu_prime(rho); }

    double nu_derived(double rho) const {
        return 2.0 * rho * viscosity.mu_prime(rho) - 2.0 * viscosity.mu(rho);
    }
    double nu(double rho) const {
        return nu_mode == NuMode::constant_override ? nu_constant : nu_derived(rho);
    }
    double nu_prime(double rho) const {
        return nu_mode == NuMode::constant_override ? 0.0 : 2.0 * rho * viscosity.mu_second(rho);
    }

    // kappa(rho, theta) = kappa0 * (1 + rho) * (1 + theta^alpha)
    double kappa(double rho, double theta) const {
        if (!(rho >= 0.0) || !(theta >= 0.0))
            throw std::domain_error("kappa: rho and theta must be nonnegative");
        return kappa0 * (1.0 + rho) * (1.0 + pow_fast(theta, alpha));
    }

    // C0(rho, theta) = d0 * rho * (1 + theta)
    double diffusion_scalar(double rho, double theta) const {
        if (!(rho >= 0.0) || !(theta >= 0.0))
            throw std::domain_error("diffusion_scalar: rho and theta must be nonnegative");
        return d0 * rho * (1.0 + theta);
    }

    // phi(rho) = integral from 1 to rho of 2*mu'(s)/s ds, so phi(1) = 0.
    // For the linear family this is 2*mu1*log(rho).
    double bd_potential(double rho) const;

    void validate() const;  // structural checks; band membership is audited
};

// Gradient of the potential in exact product form: 2*mu'(rho)*grad_rho/rho.
inline double bd_potential_gradient(const TransportSpec& spec, double rho, double grad_rho) {
    if (!(rho > 0.0)) throw std::domain_error("bd_potential_gradient: rho must be positive");
    return 2.0 * spec.mu_prime(rho) * grad_rho / rho;
}

// One audited inequality instance, expressed as lhs <= rhs.
struct TransportAuditRow {
    double rho;  // NaN for rows that do not depend on a sampled density
    std::string inequality;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    bool pass = false;
};

struct TransportAuditReport {
    std::vector<TransportAuditRow> rows;
    bool all_pass = true;
    std::map<std::string, double> worst_margin;  // per inequality id

    std::vector<std::string> failed_ids() const;
    void write_csv(std::ostream& os) const;
};

// Samples the viscosity band, bulk-coupling, and coefficient-band
// hypotheses on log-spaced densities in [rho_min, rho_max].
TransportAuditReport audit_transport(const TransportSpec& spec, double rho_min, double rho_max,
                                     int samples);

}  // namespace nsf

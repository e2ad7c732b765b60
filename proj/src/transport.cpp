#include "nsf/transport.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "nsf/util.hpp"

namespace nsf {

double TransportSpec::bd_potential(double rho) const {
    if (!(rho > 0.0)) throw std::domain_error("bd_potential: rho must be positive");
    switch (viscosity.kind) {
        case ViscosityModel::Kind::linear: return 2.0 * viscosity.mu1 * std::log(rho);
    }
    throw std::logic_error("unknown viscosity kind");
}

void TransportSpec::validate() const {
    if (!(viscosity.mu0 >= 0.0)) throw std::invalid_argument("viscosity_mu0 must be >= 0");
    if (!(viscosity.mu1 > 0.0)) throw std::invalid_argument("viscosity_mu1 must be positive");
    if (!(mu_prime_lower > 0.0)) throw std::invalid_argument("mu_prime_lower must be positive");
    if (!(alpha >= 2.0)) throw std::invalid_argument("conductivity_alpha must be >= 2");
    if (!(kappa0_lower > 0.0) || !(kappa0_upper >= kappa0_lower))
        throw std::invalid_argument("kappa0 bounds must satisfy 0 < kappa0_lower <= kappa0_upper");
    if (!(kappa0 >= kappa0_lower && kappa0 <= kappa0_upper))
        throw std::invalid_argument("kappa0 must lie within [kappa0_lower, kappa0_upper]");
    if (!(d0_lower > 0.0) || !(d0_upper >= d0_lower))
        throw std::invalid_argument("d0 bounds must satisfy 0 < d0_lower <= d0_upper");
    if (!(d0 >= d0_lower && d0 <= d0_upper))
        throw std::invalid_argument("d0 must lie within [d0_lower, d0_upper]");
}

std::vector<std::string> TransportAuditReport::failed_ids() const {
    std::vector<std::string> ids;
    for (const auto& row : rows)
        if (!row.pass) ids.push_back(row.inequality);
    return ids;
}

void TransportAuditReport::write_csv(std::ostream& os) const {
    os << "rho,inequality,lhs,rhs,margin,pass\n";
    for (const auto& row : rows) {
        if (std::isnan(row.rho))
            os << "-";
        else
            os << format_double(row.rho);
        os << ',' << row.inequality << ',' << format_double(row.lhs) << ','
           << format_double(row.rhs) << ',' << format_double(row.margin) << ','
           << (row.pass ? 1 : 0) << '\n';
    }
}

namespace {

void push_row(TransportAuditReport& rep, double rho, const std::string& id, double lhs,
              double rhs) {
    // Pass means lhs <= rhs, up to round-off scaled by the terms involved.
    const double tol = 1e-12 * (std::abs(lhs) + std::abs(rhs) + 1.0);
    TransportAuditRow row;
    row.rho = rho;
    row.inequality = id;
    row.lhs = lhs;
    row.rhs = rhs;
    row.margin = rhs - lhs;
    row.pass = row.margin >= -tol;
    rep.all_pass = rep.all_pass && row.pass;
    auto it = rep.worst_margin.find(id);
    if (it == rep.worst_margin.end() || row.margin < it->second) rep.worst_margin[id] = row.margin;
    rep.rows.push_back(std::move(row));
}

}  // namespace

TransportAuditReport audit_transport(const TransportSpec& spec, double rho_min, double rho_max,
                                     int samples) {
    if (!(rho_min > 0.0) || !(rho_max > rho_min))
        throw std::invalid_argument("audit_transport: need 0 < rho_min < rho_max");
    if (samples < 2) throw std::invalid_argument("audit_transport: need at least 2 samples");

    TransportAuditReport rep;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double lo = spec.mu_prime_lower;

    // Density-independent hypotheses first.
    push_row(rep, nan, "mu_vacuum", 0.0, spec.mu(0.0));
    push_row(rep, nan, "alpha_min", 2.0, spec.alpha);
    push_row(rep, nan, "kappa0_lower", spec.kappa0_lower, spec.kappa0);
    push_row(rep, nan, "kappa0_upper", spec.kappa0, spec.kappa0_upper);
    push_row(rep, nan, "d0_lower", spec.d0_lower, spec.d0);
    push_row(rep, nan, "d0_upper", spec.d0, spec.d0_upper);

    const double log_lo = std::log(rho_min);
    const double log_hi = std::log(rho_max);
    for (int i = 0; i < samples; ++i) {
        const double frac = static_cast<double>(i) / (samples - 1);
        const double rho = std::exp(log_lo + frac * (log_hi - log_lo));
        const double mu = spec.mu(rho);
        const double mup = spec.mu_prime(rho);
        const double nu = spec.nu(rho);
        const double nup = spec.nu_prime(rho);
        push_row(rep, rho, "mu_prime_lower", lo, mup);
        push_row(rep, rho, "mu_prime_upper", mup, 1.0 / lo);
        push_row(rep, rho, "nu_prime_bound", std::abs(nup), mup / lo);
        push_row(rep, rho, "shear_bulk_lower", lo * mu, 2.0 * mu + 3.0 * nu);
        push_row(rep, rho, "shear_bulk_upper", 2.0 * mu + 3.0 * nu, mu / lo);
        // The bulk viscosity must stay coupled to the shear family.
        push_row(rep, rho, "nu_constraint", std::abs(nu - spec.nu_derived(rho)), 0.0);
    }
    return rep;
}

}  // namespace nsf

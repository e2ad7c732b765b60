#include "nsf/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "nsf/diffusion.hpp"
#include "nsf/util.hpp"

namespace nsf {

namespace {

double volume_element(const Grid& grid) {
    double v = 1.0;
    for (int a = 0; a < grid.dim; ++a) v *= grid.h[a];
    return v;
}

}  // namespace

ConservedTotals conserved_totals(const FieldSet& fs, const MixtureSpec& mix) {
    if (fs.n_species != mix.n) throw std::invalid_argument("conserved_totals: species mismatch");
    const std::size_t p = fs.points();
    const int d = fs.grid.dim;
    KahanSum mass, energy;
    std::array<KahanSum, 3> mom;
    std::vector<KahanSum> species(static_cast<std::size_t>(mix.n));
    for (std::size_t i = 0; i < p; ++i) {
        mass.add(fs.rho[i]);
        for (int a = 0; a < d; ++a) mom[a].add(fs.mom[a][i]);
        energy.add(fs.rhoE[i]);
        for (int k = 0; k < mix.n; ++k) species[k].add(fs.rhok[k][i]);
    }
    const double vol = volume_element(fs.grid);
    ConservedTotals out;
    out.mass = vol * mass.value();
    for (int a = 0; a < d; ++a) out.momentum[a] = vol * mom[a].value();
    out.energy = vol * energy.value();
    out.species.resize(static_cast<std::size_t>(mix.n));
    for (int k = 0; k < mix.n; ++k) out.species[k] = vol * species[k].value();
    return out;
}

double entropy_total(const FieldSet& fs, const MixtureSpec& mix, double rho_floor) {
    Primitives prim;
    recover_primitives(fs, mix, rho_floor, prim);
    const std::size_t p = fs.points();
    ThermoState state;
    state.Y.resize(static_cast<std::size_t>(mix.n));
    KahanSum total;
    for (std::size_t i = 0; i < p; ++i) {
        state.rho = fs.rho[i];
        state.theta = prim.theta[i];
        for (int k = 0; k < mix.n; ++k) state.Y[k] = prim.Y[k][i];
        total.add(state.rho * mixture_entropy(state, mix));
    }
    return volume_element(fs.grid) * total.value();
}

double bd_functional(const FieldSet& fs, const TransportSpec& transport, int stencil_order,
                     double rho_floor) {
    const std::size_t p = fs.points();
    const int d = fs.grid.dim;
    std::array<Field, 3> drho;
    gradient(fs.grid, stencil_order, fs.rho, drho);
    KahanSum total;
    for (std::size_t i = 0; i < p; ++i) {
        const double rho = fs.rho[i];
        if (rho <= rho_floor) throw std::domain_error("bd_functional: density at or below floor");
        const double two_mu_prime = 2.0 * transport.mu_prime(rho);
        double acc = 0.0;
        for (int a = 0; a < d; ++a) {
            const double w = fs.mom[a][i] / rho + two_mu_prime * drho[a][i] / rho;
            acc += w * w;
        }
        total.add(0.5 * rho * acc);
    }
    return volume_element(fs.grid) * total.value();
}

PositivityReport positivity_report(const FieldSet& fs, const MixtureSpec& mix) {
    const std::size_t p = fs.points();
    const int d = fs.grid.dim;
    const int n = fs.n_species;
    PositivityReport rep;
    rep.min_rho = std::numeric_limits<double>::infinity();
    rep.min_theta = std::numeric_limits<double>::quiet_NaN();
    rep.min_rhok = std::numeric_limits<double>::infinity();
    rep.max_Y = -std::numeric_limits<double>::infinity();
    rep.max_Ysum_dev = 0.0;
    double min_theta = std::numeric_limits<double>::infinity();
    bool any_theta = false;
    for (std::size_t i = 0; i < p; ++i) {
        const double rho = fs.rho[i];
        rep.min_rho = std::min(rep.min_rho, rho);
        double rhok_sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const double rk = fs.rhok[k][i];
            rep.min_rhok = std::min(rep.min_rhok, rk);
            rhok_sum += rk;
        }
        if (rho > 0.0) {
            double ke = 0.0;
            double e_formation = 0.0;
            for (int a = 0; a < d; ++a) {
                const double u = fs.mom[a][i] / rho;
                ke += 0.5 * u * u;
            }
            for (int k = 0; k < n; ++k) {
                const double y = fs.rhok[k][i] / rho;
                rep.max_Y = std::max(rep.max_Y, y);
                e_formation += y * mix.formation_energy[k];
            }
            rep.max_Ysum_dev = std::max(rep.max_Ysum_dev, std::abs(rhok_sum / rho - 1.0));
            const double e = fs.rhoE[i] / rho - ke;
            const double theta = (e - e_formation - cold_energy(rho, mix.cold)) / mix.c_v;
            min_theta = std::min(min_theta, theta);
            any_theta = true;
        }
    }
    if (any_theta) rep.min_theta = min_theta;
    return rep;
}

DiagnosticsEvaluator::DiagnosticsEvaluator(const Grid& grid, const MixtureSpec& mix,
                                           const TransportSpec& transport,
                                           const KineticsSpec& kinetics, int stencil_order,
                                           double rho_floor)
    : grid_(grid),
      mix_(mix),
      transport_(transport),
      kinetics_(kinetics),
      order_(stencil_order),
      rho_floor_(rho_floor) {
    if (order_ != 2 && order_ != 4)
        throw std::invalid_argument("stencil_order must be 2 or 4");
    mix_.validate();
    transport_.validate();
    kinetics_.validate(mix_.n);

    const std::size_t p = grid_.points();
    const int d = grid_.dim;
    const int n = mix_.n;
    pk_.assign(static_cast<std::size_t>(n), Field(p));
    pim_.resize(p);
    pi_.resize(p);
    for (int a = 0; a < d; ++a) {
        drho_[a].resize(p);
        dtheta_[a].resize(p);
        dpim_[a].resize(p);
        dpi_[a].resize(p);
    }
    dpk_.assign(static_cast<std::size_t>(n), {});
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < d; ++a) dpk_[k][a].resize(p);
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a) du_[i][a].resize(p);
    sig_visc_.resize(p);
    sig_heat_.resize(p);
    sig_diff_.resize(p);
    sig_react_.resize(p);
    point_state_.Y.resize(static_cast<std::size_t>(n));
    omega_point_.resize(static_cast<std::size_t>(n));
    flux_point_.resize(static_cast<std::size_t>(n) * 3);
}

DiagnosticsRecord DiagnosticsEvaluator::record(const FieldSet& fs, double t, long long step,
                                               double dt) {
    if (fs.points() != grid_.points() || fs.n_species != mix_.n)
        throw std::invalid_argument("diagnostics: state shape mismatch");

    recover_primitives(fs, mix_, rho_floor_, prim_);

    const std::size_t p = grid_.points();
    const int d = grid_.dim;
    const int n = mix_.n;
    std::vector<double> inv_m(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) inv_m[k] = 1.0 / mix_.molar_mass[k];

    for (std::size_t i = 0; i < p; ++i) {
        const double w = prim_.theta[i] * fs.rho[i];
        double pim = 0.0;
        for (int k = 0; k < n; ++k) {
            const double pk = w * prim_.Y[k][i] * inv_m[k];
            pk_[k][i] = pk;
            pim += pk;
        }
        pim_[i] = pim;
        pi_[i] = pim + cold_pressure(fs.rho[i], mix_.cold);
    }

    for (int a = 0; a < d; ++a) {
        derivative(grid_, a, order_, fs.rho, drho_[a]);
        derivative(grid_, a, order_, prim_.theta, dtheta_[a]);
        derivative(grid_, a, order_, pi_, dpi_[a]);
        for (int i = 0; i < d; ++i) derivative(grid_, a, order_, prim_.u[i], du_[i][a]);
        for (int k = 0; k < n; ++k) derivative(grid_, a, order_, pk_[k], dpk_[k][a]);
        double* dst = dpim_[a].data();
        for (std::size_t i = 0; i < p; ++i) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += dpk_[k][a][i];
            dst[i] = s;
        }
    }

    DiagnosticsRecord rec;
    rec.t = t;
    rec.step = step;
    rec.dt = dt;
    rec.species_masses.resize(static_cast<std::size_t>(n));

    KahanSum mass, energy, entropy, kin, thermal;
    std::array<KahanSum, 3> mom;
    std::vector<KahanSum> species(static_cast<std::size_t>(n));
    KahanSum s_visc, s_heat, s_diff, s_react, s_raw, s_molar;
    KahanSum visc_d, press_w, mol_press_w, rot_d, gphi_gpi, bd, form_heat;

    double min_rho = std::numeric_limits<double>::infinity();
    double min_theta = std::numeric_limits<double>::infinity();
    double min_rhok = std::numeric_limits<double>::infinity();
    double max_ysum = 0.0;
    double worst_adm = -std::numeric_limits<double>::infinity();
    double sign_visc = std::numeric_limits<double>::infinity();
    double sign_heat = std::numeric_limits<double>::infinity();
    double sign_diff = std::numeric_limits<double>::infinity();
    long long vacuum = 0;
    long long singular = 0;

    const bool reacting = kinetics_.kind != KineticsSpec::Kind::none;

    for (std::size_t i = 0; i < p; ++i) {
        const double rho = fs.rho[i];
        const double theta = prim_.theta[i];

        mass.add(rho);
        energy.add(fs.rhoE[i]);
        double ke = 0.0;
        for (int a = 0; a < d; ++a) {
            mom[a].add(fs.mom[a][i]);
            ke += 0.5 * fs.mom[a][i] * prim_.u[a][i];
        }
        kin.add(ke);
        thermal.add(rho * mix_.c_v * theta);

        double rhok_sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const double rk = fs.rhok[k][i];
            species[k].add(rk);
            min_rhok = std::min(min_rhok, rk);
            rhok_sum += rk;
            point_state_.Y[k] = prim_.Y[k][i];
        }
        max_ysum = std::max(max_ysum, std::abs(rhok_sum / rho - 1.0));
        min_rho = std::min(min_rho, rho);
        min_theta = std::min(min_theta, theta);

        point_state_.rho = rho;
        point_state_.theta = theta;
        entropy.add(rho * mixture_entropy(point_state_, mix_));

        // Velocity-gradient invariants and the viscous terms.
        const double mu = transport_.mu(rho);
        const double nu = transport_.nu(rho);
        double div_u = 0.0;
        double dsq = 0.0;  // |D|^2
        double rsq = 0.0;  // |grad u - grad^T u|^2
        for (int j = 0; j < d; ++j) {
            div_u += du_[j][j][i];
            for (int a = 0; a < d; ++a) {
                const double sym = 0.5 * (du_[j][a][i] + du_[a][j][i]);
                const double asym = du_[j][a][i] - du_[a][j][i];
                dsq += sym * sym;
                rsq += asym * asym;
            }
        }
        const double s_dot_gu = 2.0 * mu * dsq + nu * div_u * div_u;
        const double s_dot_gu_scale = 2.0 * mu * dsq + std::abs(nu) * div_u * div_u;
        visc_d.add(s_dot_gu);
        rot_d.add(0.5 * mu * rsq);
        press_w.add(pi_[i] * div_u);
        mol_press_w.add(pim_[i] * div_u);
        sig_visc_[i] = s_dot_gu / theta;
        s_visc.add(sig_visc_[i]);
        sign_visc = std::min(sign_visc, s_dot_gu_scale > 0.0 ? s_dot_gu / s_dot_gu_scale : 0.0);

        double gth2 = 0.0;
        for (int a = 0; a < d; ++a) gth2 += dtheta_[a][i] * dtheta_[a][i];
        const double kap = transport_.kappa(rho, theta);
        sig_heat_[i] = kap * gth2 / (theta * theta);
        s_heat.add(sig_heat_[i]);
        sign_heat = std::min(sign_heat, sig_heat_[i] > 0.0 ? 1.0 : 0.0);

        // Species fluxes and the diffusion dissipation, vacuum species
        // skipped. The raw entropy-production variants reuse the same skip
        // set so the reduced and raw forms stay comparable.
        const double c0 = transport_.diffusion_scalar(rho, theta);
        const double scale = -c0 / pim_[i];
        double sd = 0.0;
        double q_dot_gth = 0.0;     // (Q + kappa grad theta) . grad theta
        double raw_diff = 0.0;      // sum_k F_k . grad(g_k/theta)
        double raw_diff_molar = 0.0;   // sum_k (F_k/m_k) . grad(g_k/theta)
        for (int k = 0; k < n; ++k) {
            const double y = prim_.Y[k][i];
            double f2 = 0.0;
            for (int a = 0; a < d; ++a) {
                const double f = scale * (dpk_[k][a][i] - y * dpim_[a][i]);
                flux_point_[k * 3 + a] = f;
                f2 += f * f;
            }
            if (y <= kVacuumFraction) {
                ++vacuum;
                continue;
            }
            sd += pim_[i] * f2 / (c0 * theta * rho * y);
            const double h_k = mix_.formation_energy[k] + (mix_.c_v + inv_m[k]) * theta;
            const double cp_k = mix_.c_v + inv_m[k];
            double f_dot_gg = 0.0;
            double f_dot_gth = 0.0;
            for (int a = 0; a < d; ++a) {
                const double f = flux_point_[k * 3 + a];
                const double gg = -mix_.formation_energy[k] * dtheta_[a][i] / (theta * theta) -
                                  cp_k * dtheta_[a][i] / theta +
                                  inv_m[k] * dpk_[k][a][i] / pk_[k][i];
                f_dot_gg += f * gg;
                f_dot_gth += f * dtheta_[a][i];
            }
            q_dot_gth += h_k * f_dot_gth;
            raw_diff += f_dot_gg;
            raw_diff_molar += inv_m[k] * f_dot_gg;
        }
        sig_diff_[i] = sd;
        s_diff.add(sd);
        sign_diff = std::min(sign_diff, sd > 0.0 ? 1.0 : 0.0);
        const double minus_q_gth = (kap * gth2 - q_dot_gth) / (theta * theta);
        s_raw.add(minus_q_gth - raw_diff);
        s_molar.add(minus_q_gth - raw_diff_molar);

        if (reacting) {
            production_rates(point_state_.Y, kinetics_, omega_point_);
            const AdmissibilityResult adm =
                admissibility_residual(point_state_, mix_, omega_point_);
            sig_react_[i] = -adm.residual;
            s_react.add(sig_react_[i]);
            worst_adm = std::max(worst_adm, adm.residual);
            if (adm.singular) ++singular;
            double e_st_omega = 0.0;
            for (int k = 0; k < n; ++k) e_st_omega += mix_.formation_energy[k] * omega_point_[k];
            form_heat.add(rho * theta * e_st_omega);
        } else {
            sig_react_[i] = 0.0;
        }

        // BD velocity and the pressure-gradient pairing.
        double bd_acc = 0.0;
        double gg_acc = 0.0;
        const double two_mu_prime = 2.0 * transport_.mu_prime(rho);
        for (int a = 0; a < d; ++a) {
            const double gphi = two_mu_prime * drho_[a][i] / rho;
            const double w = prim_.u[a][i] + gphi;
            bd_acc += w * w;
            gg_acc += gphi * dpi_[a][i];
        }
        bd.add(0.5 * rho * bd_acc);
        gphi_gpi.add(gg_acc);
    }

    const double vol = volume_element(grid_);
    rec.total_mass = vol * mass.value();
    for (int a = 0; a < d; ++a) rec.total_momentum[a] = vol * mom[a].value();
    rec.total_energy = vol * energy.value();
    for (int k = 0; k < n; ++k) rec.species_masses[k] = vol * species[k].value();
    rec.total_entropy = vol * entropy.value();
    rec.sigma_visc = vol * s_visc.value();
    rec.sigma_heat = vol * s_heat.value();
    rec.sigma_diff = vol * s_diff.value();
    rec.sigma_react = vol * s_react.value();
    rec.bd_functional = vol * bd.value();
    rec.min_rho = min_rho;
    rec.min_theta = min_theta;
    rec.min_rhok = min_rhok;
    rec.max_Ysum_dev = max_ysum;
    rec.admissibility_worst = reacting ? worst_adm : 0.0;
    rec.kinetic_energy = vol * kin.value();
    rec.thermal_energy = vol * thermal.value();
    rec.visc_dissipation = vol * visc_d.value();
    rec.pressure_work = vol * press_w.value();
    rec.molecular_pressure_work = vol * mol_press_w.value();
    rec.rot_dissipation = vol * rot_d.value();
    rec.grad_phi_dot_grad_pi = vol * gphi_gpi.value();
    rec.formation_heat = vol * form_heat.value();
    rec.sign_visc_min = sign_visc;
    rec.sign_heat_min = sign_heat;
    rec.sign_diff_min = sign_diff;
    rec.vacuum_skipped = vacuum;
    rec.singular_points = singular;
    rec.sigma_raw = vol * s_raw.value();
    rec.sigma_molar = vol * s_molar.value();
    return rec;
}

IdentityResiduals identity_residuals(std::span<const DiagnosticsRecord> records) {
    if (records.size() < 3)
        throw std::invalid_argument("identity_residuals: need at least 3 records");
    const double dt = records[1].t - records[0].t;
    if (!(dt > 0.0)) throw std::invalid_argument("identity_residuals: records must advance in time");
    for (std::size_t j = 1; j < records.size(); ++j) {
        const double step = records[j].t - records[j - 1].t;
        if (std::abs(step - dt) > 1e-9 * dt)
            throw std::invalid_argument("identity_residuals: records not uniformly spaced in time");
    }

    IdentityResiduals out;
    out.windows = static_cast<int>(records.size()) - 2;
    auto update = [](IdentityResiduals::Entry& e, double res, double scale) {
        const double a = std::abs(res);
        if (a >= e.absolute) {
            e.absolute = a;
            e.relative = a / std::max(scale, 1e-300);
        }
    };

    for (std::size_t j = 1; j + 1 < records.size(); ++j) {
        const DiagnosticsRecord& lo = records[j - 1];
        const DiagnosticsRecord& mid = records[j];
        const DiagnosticsRecord& hi = records[j + 1];
        const double inv2dt = 1.0 / (2.0 * dt);

        const double dk = (hi.kinetic_energy - lo.kinetic_energy) * inv2dt;
        update(out.kinetic, dk + mid.visc_dissipation - mid.pressure_work,
               std::max({std::abs(dk), std::abs(mid.visc_dissipation),
                         std::abs(mid.pressure_work)}));

        const double db = (hi.bd_functional - lo.bd_functional) * inv2dt;
        update(out.bd,
               db + mid.rot_dissipation + mid.grad_phi_dot_grad_pi - mid.pressure_work,
               std::max({std::abs(db), std::abs(mid.rot_dissipation),
                         std::abs(mid.grad_phi_dot_grad_pi), std::abs(mid.pressure_work)}));

        const double de = (hi.total_energy - lo.total_energy) * inv2dt;
        update(out.energy, de, std::abs(mid.total_energy));

        const double dth = (hi.thermal_energy - lo.thermal_energy) * inv2dt;
        update(out.temperature,
               dth + mid.molecular_pressure_work - mid.visc_dissipation + mid.formation_heat,
               std::max({std::abs(dth), std::abs(mid.molecular_pressure_work),
                         std::abs(mid.visc_dissipation), std::abs(mid.formation_heat)}));
    }
    return out;
}

namespace {

const char* kAxisSuffix[3] = {"_x", "_y", "_z"};

}  // namespace

std::string records_csv_header(int dim, int n_species, std::uint64_t digest, bool extended) {
    std::string h = "# parameter_digest=" + to_hex(digest) + "\n";
    h += "t,total_mass";
    for (int a = 0; a < dim; ++a) {
        h += ",total_momentum";
        h += kAxisSuffix[a];
    }
    h += ",total_energy";
    for (int k = 0; k < n_species; ++k) h += ",species_mass_" + std::to_string(k);
    h += ",total_entropy,sigma_visc,sigma_heat,sigma_diff,sigma_react,bd_functional";
    h += ",min_rho,min_theta,min_rhok,max_Ysum_dev,admissibility_worst";
    h += ",step,dt,kinetic_energy,thermal_energy,visc_dissipation,pressure_work";
    h += ",molecular_pressure_work,rot_dissipation,grad_phi_dot_grad_pi,formation_heat";
    h += ",sign_visc_min,sign_heat_min,sign_diff_min,vacuum_skipped,singular_points";
    if (extended) h += ",sigma_raw,sigma_molar";
    h += "\n";
    return h;
}

std::string record_csv_row(const DiagnosticsRecord& rec, int dim, int n_species, bool extended) {
    std::string r = format_double(rec.t);
    auto push = [&r](double v) {
        r += ',';
        r += format_double(v);
    };
    push(rec.total_mass);
    for (int a = 0; a < dim; ++a) push(rec.total_momentum[a]);
    push(rec.total_energy);
    for (int k = 0; k < n_species; ++k) push(rec.species_masses[k]);
    push(rec.total_entropy);
    push(rec.sigma_visc);
    push(rec.sigma_heat);
    push(rec.sigma_diff);
    push(rec.sigma_react);
    push(rec.bd_functional);
    push(rec.min_rho);
    push(rec.min_theta);
    push(rec.min_rhok);
    push(rec.max_Ysum_dev);
    push(rec.admissibility_worst);
    r += ',' + std::to_string(rec.step);
    push(rec.dt);
    push(rec.kinetic_energy);
    push(rec.thermal_energy);
    push(rec.visc_dissipation);
    push(rec.pressure_work);
    push(rec.molecular_pressure_work);
    push(rec.rot_dissipation);
    push(rec.grad_phi_dot_grad_pi);
    push(rec.formation_heat);
    push(rec.sign_visc_min);
    push(rec.sign_heat_min);
    push(rec.sign_diff_min);
    r += ',' + std::to_string(rec.vacuum_skipped);
    r += ',' + std::to_string(rec.singular_points);
    if (extended) {
        push(rec.sigma_raw);
        push(rec.sigma_molar);
    }
    r += '\n';
    return r;
}

void write_records_csv(const std::string& path, std::span<const DiagnosticsRecord> records,
                       int dim, int n_species, std::uint64_t digest, bool extended) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << records_csv_header(dim, n_species, digest, extended);
    for (const DiagnosticsRecord& rec : records)
        out << record_csv_row(rec, dim, n_species, extended);
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace nsf

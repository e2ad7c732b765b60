#include "nsf/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <stdexcept>

#include "nsf/init.hpp"
#include "nsf/pde.hpp"
#include "nsf/reactions.hpp"
#include "nsf/snapshot.hpp"
#include "nsf/util.hpp"

namespace nsf {

namespace {

// Worst acceptable normalized ratio for the pointwise entropy-production
// signs; anything below this is a scheme defect, not round-off.
constexpr double kSignTolerance = 1e-12;

void push_check(AuditReport& rep, const std::string& name, bool passed,
                const std::string& detail) {
    rep.checks.push_back(AuditCheck{name, passed, detail});
}

std::string num(double x) { return format_double(x); }

void audit_cold_consistency(AuditReport& rep, const MixtureSpec& mix) {
    // rho^2 * e_c'(rho) = pi_c(rho) on log-spaced densities straddling the
    // reference density, plus the normalizations pi_c(1) = e_c(1) = 0.
    double worst = 0.0;
    double worst_rho = 1.0;
    bool monotone = true;
    const int samples = 100;
    for (int i = 0; i < samples; ++i) {
        const double rho = std::exp(std::log(0.02) +
                                    (std::log(50.0) - std::log(0.02)) * i / (samples - 1));
        const double lhs = rho * rho * cold_energy_derivative(rho, mix.cold);
        const double rhs = cold_pressure(rho, mix.cold);
        const double rel = std::abs(lhs - rhs) / (std::abs(rhs) + 1.0);
        if (rel > worst) {
            worst = rel;
            worst_rho = rho;
        }
        if (!(cold_pressure_derivative(rho, mix.cold) > 0.0)) monotone = false;
    }
    push_check(rep, "cold_energy_consistency", worst <= 1e-10,
               "worst relative residual " + num(worst) + " at rho=" + num(worst_rho));
    push_check(rep, "cold_pressure_monotone", monotone,
               monotone ? "pi_c' > 0 on all samples" : "pi_c' <= 0 at some sample");
    const double at_one = std::abs(cold_pressure(1.0, mix.cold)) +
                          std::abs(cold_energy(1.0, mix.cold));
    push_check(rep, "cold_reference_zero", at_one == 0.0,
               "pi_c(1), e_c(1) = " + num(cold_pressure(1.0, mix.cold)) + ", " +
                   num(cold_energy(1.0, mix.cold)));
}

void audit_kinetics(AuditReport& rep, const RunConfig& cfg, const MixtureSpec& mix) {
    const KineticsSpec kin = cfg.kinetics_spec();
    if (kin.kind == KineticsSpec::Kind::none) {
        push_check(rep, "kinetics_simplex", true, "null kinetics");
        return;
    }

    const auto n = static_cast<std::size_t>(mix.n);
    std::vector<double> y(n), omega(n);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double bound = std::min(kin.rate, std::min(kin.omega_lower, kin.omega_upper)) + 1e-14;

    double worst_sum = 0.0, worst_vacuum = 0.0, worst_bound = 0.0;
    // Simplex vertices first, then random interior points.
    const int random_samples = 256;
    for (int s = 0; s < mix.n + random_samples; ++s) {
        if (s < mix.n) {
            std::fill(y.begin(), y.end(), 0.0);
            y[static_cast<std::size_t>(s)] = 1.0;
        } else {
            double total = 0.0;
            for (auto& v : y) total += v = -std::log(1.0 - unit(rng));
            for (auto& v : y) v /= total;
        }
        production_rates(y, kin, omega);
        double sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            sum += omega[k];
            if (y[k] == 0.0) worst_vacuum = std::max(worst_vacuum, -omega[k]);
            worst_bound = std::max(worst_bound, std::abs(omega[k]) - bound);
        }
        worst_sum = std::max(worst_sum, std::abs(sum));
    }
    push_check(rep, "kinetics_zero_sum", worst_sum <= 1e-14,
               "worst |sum omega| " + num(worst_sum));
    push_check(rep, "kinetics_vacuum_sign", worst_vacuum <= 0.0,
               "worst -omega at Y=0: " + num(worst_vacuum));
    push_check(rep, "kinetics_bounded", worst_bound <= 0.0,
               "worst |omega| excess over clamp: " + num(worst_bound));
}

void audit_admissibility(AuditReport& rep, const RunConfig& cfg, const MixtureSpec& mix) {
    const KineticsSpec kin = cfg.kinetics_spec();
    if (kin.kind == KineticsSpec::Kind::none) return;

    const auto n = static_cast<std::size_t>(mix.n);
    ThermoState state;
    state.Y.resize(n);
    std::vector<double> omega(n);
    std::mt19937_64 rng(cfg.seed + 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int samples = 512;
    int violations = 0, singular = 0;
    double worst = 0.0;
    ThermoState worst_state = state;
    for (int s = 0; s < samples; ++s) {
        state.rho = std::exp(std::log(0.3) + std::log(10.0) * unit(rng));
        state.theta = std::exp(std::log(0.3) + std::log(10.0) * unit(rng));
        double total = 0.0;
        for (auto& v : state.Y) total += v = -std::log(1.0 - unit(rng));
        for (auto& v : state.Y) v /= total;
        production_rates(state.Y, kin, omega);
        const AdmissibilityResult res = admissibility_residual(state, mix, omega);
        if (res.singular) {
            ++singular;
            continue;
        }
        if (res.residual > 1e-12 * (std::abs(res.residual) + 1.0)) {
            ++violations;
            if (res.residual > worst) {
                worst = res.residual;
                worst_state = state;
            }
        }
    }
    if (violations > 0) {
        std::string msg = "admissibility: " + std::to_string(violations) + " of " +
                          std::to_string(samples) + " sampled states have sum_k g_k rho omega_k > 0" +
                          "; worst " + num(worst) + " at rho=" + num(worst_state.rho) +
                          " theta=" + num(worst_state.theta);
        rep.warnings.push_back(msg);
    }
    if (singular > 0)
        rep.warnings.push_back("admissibility: " + std::to_string(singular) +
                               " sampled states had rates on a vacuum species");
}

std::size_t uniform_prefix(std::span<const DiagnosticsRecord> recs) {
    if (recs.size() < 3) return recs.size();
    const double dt0 = recs[1].t - recs[0].t;
    std::size_t m = 2;
    while (m < recs.size() &&
           std::abs((recs[m].t - recs[m - 1].t) - dt0) <= 1e-9 * std::abs(dt0))
        ++m;
    return m;
}

struct Drifts {
    double mass = 0.0;
    double momentum = 0.0;
    double energy = 0.0;
};

Drifts relative_drifts(std::span<const DiagnosticsRecord> recs) {
    Drifts d;
    if (recs.empty()) return d;
    const DiagnosticsRecord& first = recs.front();
    // Momentum can start at zero; normalize by the largest magnitude any
    // momentum component could take at the initial mass and energy.
    double mom0 = 0.0;
    for (double m : first.total_momentum) mom0 = std::max(mom0, std::abs(m));
    const double mom_scale =
        mom0 + std::sqrt(2.0 * std::abs(first.total_mass * first.total_energy)) + 1e-300;
    for (const DiagnosticsRecord& rec : recs) {
        d.mass = std::max(d.mass, std::abs(rec.total_mass - first.total_mass) /
                                      std::abs(first.total_mass));
        for (int a = 0; a < 3; ++a)
            d.momentum = std::max(d.momentum,
                                  std::abs(rec.total_momentum[a] - first.total_momentum[a]) /
                                      mom_scale);
        d.energy = std::max(d.energy, std::abs(rec.total_energy - first.total_energy) /
                                          std::abs(first.total_energy));
    }
    return d;
}

}  // namespace

bool AuditReport::all_passed() const {
    for (const AuditCheck& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string AuditReport::text() const {
    std::string out;
    for (const AuditCheck& c : checks)
        out += std::string(c.passed ? "pass" : "FAIL") + "  " + c.name + "  (" + c.detail + ")\n";
    for (const std::string& w : warnings) out += "warn  " + w + "\n";
    out += all_passed() ? "audit: all checks passed\n" : "audit: FAILED\n";
    return out;
}

AuditReport constitutive_audit(const RunConfig& cfg) {
    AuditReport rep;
    const MixtureSpec mix = cfg.mixture();
    const TransportSpec transport = cfg.transport_spec();

    const TransportAuditReport tr = audit_transport(transport, 0.05, 20.0, 64);
    for (const auto& [id, margin] : tr.worst_margin) {
        bool passed = true;
        for (const auto& row : tr.rows)
            if (row.inequality == id && !row.pass) passed = false;
        push_check(rep, "transport:" + id, passed, "worst margin " + num(margin));
    }

    audit_kinetics(rep, cfg, mix);
    audit_admissibility(rep, cfg, mix);
    audit_cold_consistency(rep, mix);
    return rep;
}

RunResult run(const RunConfig& cfg) {
    namespace sfs = std::filesystem;
    const Grid grid = cfg.make_run_grid();
    const MixtureSpec mix = cfg.mixture();
    const TransportSpec transport = cfg.transport_spec();
    const KineticsSpec kinetics = cfg.kinetics_spec();
    const std::uint64_t digest = config_digest(cfg);
    const sfs::path out_dir(cfg.output_dir);
    sfs::create_directories(out_dir);
    write_text_file((out_dir / "config.txt").string(), serialize_config(cfg));

    RunResult result;

    const AuditReport audit = constitutive_audit(cfg);
    write_text_file((out_dir / "audit.txt").string(), audit.text());
    if (!audit.all_passed()) {
        result.exit_code = 1;
        result.summary = "run refused: constitutive audit failed\n" + audit.text();
        write_text_file((out_dir / "summary.txt").string(), result.summary);
        return result;
    }

    InitialConditionReport ic;
    FieldSet state = make_initial_condition(cfg, &ic);

    RhsEvaluator rhs(grid, mix, transport, kinetics, cfg.stencil_order, cfg.rho_floor);
    DiagnosticsEvaluator diag(grid, mix, transport, kinetics, cfg.stencil_order, cfg.rho_floor);
    Rk4Integrator integrator(state);

    std::vector<DiagnosticsRecord>& records = result.records;
    double dt = cfl_dt(state, mix, transport, cfg.cfl, cfg.rho_floor);
    records.push_back(diag.record(state, 0.0, 0, dt));

    const double t_end = cfg.t_end;
    double t = 0.0;
    long long step = 0;
    std::string failure;
    while (t < t_end * (1.0 - 1e-14)) {
        if (cfg.dt_recompute_every > 0 && step > 0 &&
            step % static_cast<long long>(cfg.dt_recompute_every) == 0)
            dt = cfl_dt(state, mix, transport, cfg.cfl, cfg.rho_floor);
        const double dt_step = std::min(dt, t_end - t);
        try {
            integrator.step(state, t, dt_step, rhs);
        } catch (const PositivityError& err) {
            // The integrator commits only after all stages succeed, so
            // state is still the last good one.
            failure = std::string("positivity loss during step ") + std::to_string(step + 1) +
                      " at t=" + num(t) + ": " + err.what();
            write_snapshot((out_dir / "snapshot_last_good.bin").string(), state, t, digest);
            result.exit_code = 2;
            break;
        }
        ++step;
        t += dt_step;
        const bool final_step = t >= t_end * (1.0 - 1e-14) ||
                                (cfg.max_steps > 0 && step >= cfg.max_steps);
        if (step % static_cast<long long>(cfg.cadence) == 0 || final_step)
            records.push_back(diag.record(state, t, step, dt_step));
        if (cfg.snapshot_every > 0 && step % static_cast<long long>(cfg.snapshot_every) == 0)
            write_snapshot((out_dir / ("snapshot_" + std::to_string(step) + ".bin")).string(),
                           state, t, digest);
        if (final_step) break;
    }
    result.steps = step;
    result.t_final = t;

    write_records_csv((out_dir / "records.csv").string(), records, grid.dim, mix.n, digest,
                      cfg.extended_diagnostics);
    if (result.exit_code != 2)
        write_snapshot((out_dir / "snapshot_final.bin").string(), state, t, digest);

    // Worst-case signs, admissibility findings, and conservation drifts
    // over everything recorded.
    double sign_visc = 0.0, sign_heat = 0.0, sign_diff = 0.0;
    double worst_adm = 0.0;
    long long adm_violations = 0, vacuum_skipped = 0, singular_points = 0;
    double min_rho = records.front().min_rho, min_theta = records.front().min_theta;
    double min_rhok = records.front().min_rhok, max_ysum = 0.0;
    double min_entropy_rate = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const DiagnosticsRecord& rec = records[i];
        sign_visc = std::min(sign_visc, rec.sign_visc_min);
        sign_heat = std::min(sign_heat, rec.sign_heat_min);
        sign_diff = std::min(sign_diff, rec.sign_diff_min);
        worst_adm = std::max(worst_adm, rec.admissibility_worst);
        if (rec.admissibility_worst > 0.0) ++adm_violations;
        vacuum_skipped += rec.vacuum_skipped;
        singular_points += rec.singular_points;
        min_rho = std::min(min_rho, rec.min_rho);
        min_theta = std::min(min_theta, rec.min_theta);
        min_rhok = std::min(min_rhok, rec.min_rhok);
        max_ysum = std::max(max_ysum, rec.max_Ysum_dev);
        if (i > 0) {
            const double dt_rec = records[i].t - records[i - 1].t;
            if (dt_rec > 0.0)
                min_entropy_rate =
                    std::min(min_entropy_rate,
                             (records[i].total_entropy - records[i - 1].total_entropy) / dt_rec);
        }
    }
    const bool sign_violation =
        sign_visc < -kSignTolerance || sign_heat < -kSignTolerance || sign_diff < -kSignTolerance;
    if (result.exit_code == 0 && sign_violation) result.exit_code = 3;

    const Drifts drifts = relative_drifts(records);

    const std::size_t prefix = uniform_prefix(records);
    IdentityResiduals ids;
    bool ids_available = false;
    if (prefix >= 3) {
        ids = identity_residuals(std::span<const DiagnosticsRecord>(records.data(), prefix));
        ids_available = true;
    }

    std::ostringstream human;
    std::ostringstream machine;
    auto emit = [&human, &machine](const std::string& key, const std::string& value) {
        char line[192];
        std::snprintf(line, sizeof(line), "  %-28s %s\n", key.c_str(), value.c_str());
        human << line;
        std::string flat = key;
        for (char& c : flat)
            if (c == ' ') c = '_';
        machine << flat << "=" << value << "\n";
    };
    char digest_hex[32];
    std::snprintf(digest_hex, sizeof(digest_hex), "%016llx",
                  static_cast<unsigned long long>(digest));

    human << "run summary\n";
    emit("exit_code", std::to_string(result.exit_code));
    emit("steps", std::to_string(result.steps));
    emit("t_final", num(result.t_final));
    emit("parameter_digest", digest_hex);
    emit("records", std::to_string(records.size()));
    human << "initial data\n";
    emit("initial_mass", num(ic.total_mass));
    emit("initial_energy", num(ic.total_energy));
    emit("initial_bd_functional", num(ic.bd_functional));
    human << "conservation (worst relative drift)\n";
    emit("drift_mass", num(drifts.mass));
    emit("drift_momentum", num(drifts.momentum));
    emit("drift_energy", num(drifts.energy));
    human << "positivity (worst over records)\n";
    emit("min_rho", num(min_rho));
    emit("min_theta", num(min_theta));
    emit("min_rhok", num(min_rhok));
    emit("max_Ysum_dev", num(max_ysum));
    human << "entropy production (worst pointwise ratio; tolerance " << num(-kSignTolerance)
          << ")\n";
    emit("sign_visc_min", num(sign_visc));
    emit("sign_heat_min", num(sign_heat));
    emit("sign_diff_min", num(sign_diff));
    emit("min_entropy_rate", num(min_entropy_rate));
    human << "identity residuals (centered differences, " << (ids_available ? ids.windows : 0)
          << " uniform windows)\n";
    if (ids_available) {
        emit("kinetic_identity_rel", num(ids.kinetic.relative));
        emit("bd_identity_rel", num(ids.bd.relative));
        emit("energy_identity_rel", num(ids.energy.relative));
        emit("temperature_identity_rel", num(ids.temperature.relative));
    } else {
        emit("kinetic_identity_rel", "unavailable");
        emit("bd_identity_rel", "unavailable");
        emit("energy_identity_rel", "unavailable");
        emit("temperature_identity_rel", "unavailable");
    }
    human << "admissibility\n";
    emit("admissibility_violations", std::to_string(adm_violations));
    emit("admissibility_worst", num(worst_adm));
    emit("singular_points", std::to_string(singular_points));
    emit("vacuum_skipped", std::to_string(vacuum_skipped));
    if (!failure.empty()) human << "failure\n  " << failure << "\n";
    if (!audit.warnings.empty()) {
        human << "warnings\n";
        for (const std::string& w : audit.warnings) human << "  " << w << "\n";
    }

    result.summary = human.str();
    write_text_file((out_dir / "summary.txt").string(), result.summary);
    write_text_file((out_dir / "summary.kv").string(), machine.str());
    if (!failure.empty())
        write_text_file((out_dir / "failure.txt").string(), failure + "\n");
    return result;
}

}  // namespace nsf

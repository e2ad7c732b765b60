#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nsf/grid.hpp"
#include "nsf/reactions.hpp"
#include "nsf/thermo.hpp"
#include "nsf/transport.hpp"

namespace nsf {

// Full run description in the key = value file format. Defaults make a
// minimal file valid: 1D, N=128 on a unit box, two species with masses 1
// and 2, mu(rho) = rho, null kinetics. Lists are comma-separated; per-axis
// and per-species lists accept a single value broadcast to all entries.
// Per-species keys a file never mentions default to masses 1..n, zero
// formation constants, and equal mass fractions. Species indices are
// 0-based.
struct RunConfig {
    // Grid and run control.
    int dim = 1;
    std::vector<int> points{128};
    std::vector<double> box_length{1.0};
    int stencil_order = 2;
    double t_end = 0.1;
    double cfl = 0.4;
    double rho_floor = 1e-10;
    long long max_steps = 0;      // 0 = no cap
    int dt_recompute_every = 1;   // steps between dt refreshes; 0 = frozen dt
    int cadence = 100;            // steps between diagnostics records
    int snapshot_every = 0;       // steps between snapshots; 0 = final only

    // Mixture.
    int species = 2;
    std::vector<double> molar_mass{1.0, 2.0};
    std::vector<double> formation_energy{0.0, 0.0};
    std::vector<double> formation_entropy{0.0, 0.0};
    double c_v = 1.0;
    double cold_c1 = 1.0;
    double cold_c2 = 1.0;
    double cold_gamma_minus = 2.0;
    double cold_gamma_plus = 2.0;

    // Transport.
    double viscosity_mu0 = 0.0;
    double viscosity_mu1 = 1.0;
    double mu_prime_lower = 0.5;
    std::string nu_mode = "derived";  // derived | constant
    double nu_constant = 0.0;
    double kappa0 = 1.0;
    double kappa0_lower = 0.5;
    double kappa0_upper = 2.0;
    double conductivity_alpha = 2.0;
    double d0 = 1.0;
    double d0_lower = 0.5;
    double d0_upper = 2.0;

    // Kinetics.
    std::string kinetics = "none";  // none | pairwise
    int pairwise_donor = 0;
    int pairwise_acceptor = 1;
    double pairwise_rate = 1.0;
    double omega_lower = 1.0;
    double omega_upper = 1.0;

    // Initial condition.
    std::string initial_condition = "uniform_perturbation";
    double rho0 = 1.0;
    double theta0 = 1.0;
    std::vector<double> u0{0.0};
    std::vector<double> Y0;  // empty = equal fractions
    double perturbation_amplitude = 0.01;
    double y_amplitude = 0.01;
    double mixing_y_mid = 0.5;
    double mixing_y_amplitude = 0.4;
    double mixing_width = 0.25;
    double mms_amplitude = 0.02;
    double mms_wave_speed = 0.3;
    std::uint64_t seed = 12345;

    // Output.
    std::string output_dir = "out";
    bool extended_diagnostics = false;

    // Derived spec builders; validate() must pass first.
    Grid make_run_grid() const;
    MixtureSpec mixture() const;
    TransportSpec transport_spec() const;
    KineticsSpec kinetics_spec() const;

    // Throws std::invalid_argument naming the violated invariant.
    void validate() const;
};

// Parses the documented key = value format. Unknown and duplicate keys are
// rejected with "<name>:<line>: ..." messages; the result is validated.
RunConfig parse_config(std::string_view text, const std::string& name);
RunConfig load_config(const std::string& path);

// Canonical serialization: every key in fixed order, round-trip exact.
// parse_config(serialize_config(cfg)) reproduces cfg.
std::string serialize_config(const RunConfig& cfg);

// FNV-1a hash of the canonical serialization with the output directory
// normalized away; stamped into output headers so artifacts from the same
// parameters carry the same mark regardless of destination.
std::uint64_t config_digest(const RunConfig& cfg);

}  // namespace nsf

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nsf/fields.hpp"
#include "nsf/grid.hpp"
#include "nsf/reactions.hpp"
#include "nsf/transport.hpp"

namespace nsf {

// One sampled row of the diagnostics time series. The leading fields up to
// admissibility_worst are the primary columns, in CSV column order; the
// rest are bookkeeping integrals for the identity residuals and sign
// monitoring, plus the two raw entropy-production variants kept for the
// extended output mode.
struct DiagnosticsRecord {
    double t = 0.0;
    double total_mass = 0.0;
    std::array<double, 3> total_momentum{};  // dim entries used
    double total_energy = 0.0;
    std::vector<double> species_masses;
    double total_entropy = 0.0;
    double sigma_visc = 0.0;   // integral of S:grad(u)/theta
    double sigma_heat = 0.0;   // integral of kappa*|grad theta|^2/theta^2
    double sigma_diff = 0.0;   // integral of sum_k pi_m*|F_k|^2/(C0*theta*rho_k)
    double sigma_react = 0.0;  // integral of -sum_k g_k*rho*omega_k
    double bd_functional = 0.0;
    double min_rho = 0.0;
    double min_theta = 0.0;
    double min_rhok = 0.0;
    double max_Ysum_dev = 0.0;
    double admissibility_worst = 0.0;  // most positive pointwise sum_k g_k*rho*omega_k

    long long step = 0;
    double dt = 0.0;
    double kinetic_energy = 0.0;             // integral of rho*|u|^2/2
    double thermal_energy = 0.0;             // integral of rho*c_v*theta
    double visc_dissipation = 0.0;           // integral of S:grad(u)
    double pressure_work = 0.0;              // integral of pi*div(u)
    double molecular_pressure_work = 0.0;    // integral of pi_m*div(u)
    double rot_dissipation = 0.0;            // integral of mu*|grad u - grad^T u|^2/2
    double grad_phi_dot_grad_pi = 0.0;       // integral of grad(phi) . grad(pi)
    double formation_heat = 0.0;             // integral of rho*theta*sum_k e_st_k*omega_k
    double sign_visc_min = 0.0;              // min over points of sigma_visc/local scale
    double sign_heat_min = 0.0;
    double sign_diff_min = 0.0;
    long long vacuum_skipped = 0;    // species-point pairs excluded from sigma_diff
    long long singular_points = 0;   // points with omega_k != 0 at Y_k = 0
    double sigma_raw = 0.0;    // integral of -Q.grad(theta)/theta^2 - sum_k F_k.grad(g_k/theta)
    double sigma_molar = 0.0;  // same with molar fluxes F_k/m_k in the diffusion sum
};

// Grid sums times the volume element.
struct ConservedTotals {
    double mass = 0.0;
    std::array<double, 3> momentum{};
    double energy = 0.0;
    std::vector<double> species;
};
ConservedTotals conserved_totals(const FieldSet& fs, const MixtureSpec& mix);

// Integral of rho*s with the vacuum-species convention. Throws
// PositivityError if primitive recovery fails.
double entropy_total(const FieldSet& fs, const MixtureSpec& mix, double rho_floor);

// Integral of rho*|u + grad(phi(rho))|^2 / 2 with grad(phi) = 2*mu'(rho)*
// grad(rho)/rho from the given stencil order.
double bd_functional(const FieldSet& fs, const TransportSpec& transport, int stencil_order,
                     double rho_floor);

// State-health minima; never throws, so it can describe corrupted states.
// min_theta is taken over points with usable density and is NaN if none.
struct PositivityReport {
    double min_rho = 0.0;
    double min_theta = 0.0;
    double min_rhok = 0.0;
    double max_Y = 0.0;
    double max_Ysum_dev = 0.0;
};
PositivityReport positivity_report(const FieldSet& fs, const MixtureSpec& mix);

// Evaluates full diagnostics records. Owns its work buffers; the pointwise
// entropy-production fields are retained from the latest record() call for
// sign audits. Gradients use the same stencils as the solver and the same
// field choices (partial pressures differentiated directly, molecular
// pressure gradient as the species sum), so the flux values seen here match
// the right-side evaluation.
class DiagnosticsEvaluator {
public:
    DiagnosticsEvaluator(const Grid& grid, const MixtureSpec& mix, const TransportSpec& transport,
                         const KineticsSpec& kinetics, int stencil_order, double rho_floor);

    DiagnosticsRecord record(const FieldSet& fs, double t, long long step, double dt);

    // Pointwise entropy-production components; valid after record().
    const Field& sigma_visc_field() const { return sig_visc_; }
    const Field& sigma_heat_field() const { return sig_heat_; }
    const Field& sigma_diff_field() const { return sig_diff_; }
    const Field& sigma_react_field() const { return sig_react_; }

private:
    Grid grid_;
    MixtureSpec mix_;
    TransportSpec transport_;
    KineticsSpec kinetics_;
    int order_;
    double rho_floor_;

    Primitives prim_;
    std::vector<Field> pk_;
    Field pim_;
    Field pi_;
    std::array<Field, 3> drho_;
    std::array<Field, 3> dtheta_;
    std::vector<std::array<Field, 3>> dpk_;
    std::array<Field, 3> dpim_;
    std::array<Field, 3> dpi_;
    std::array<std::array<Field, 3>, 3> du_;
    Field sig_visc_, sig_heat_, sig_diff_, sig_react_;
    ThermoState point_state_;
    std::vector<double> omega_point_;
    std::vector<double> flux_point_;  // n x dim scratch
};

// Worst centered-in-time residuals of the integrated identities over a
// window of records at uniform spacing:
//   kinetic:      d/dt K + D - P            (K kinetic energy, D viscous
//                                            dissipation, P pressure work)
//   bd:           d/dt B + R + G - P        (B the BD functional, R the
//                                            rotation dissipation, G the
//                                            grad(phi).grad(pi) integral)
//   energy:       d/dt E                    (relative to |E| per unit time)
//   temperature:  d/dt Th + Pm - D + H      (Th thermal energy, Pm the
//                                            molecular pressure work, H the
//                                            formation heat)
// relative = absolute / largest constituent magnitude at the worst window.
struct IdentityResiduals {
    struct Entry {
        double absolute = 0.0;
        double relative = 0.0;
    };
    Entry kinetic, bd, energy, temperature;
    int windows = 0;
};
IdentityResiduals identity_residuals(std::span<const DiagnosticsRecord> records);

// CSV emission: one comment line "# parameter_digest=<hex>", one header row
// of column names, then one row per record with round-trip formatting.
// extended appends the sigma_raw / sigma_molar columns.
std::string records_csv_header(int dim, int n_species, std::uint64_t digest, bool extended);
std::string record_csv_row(const DiagnosticsRecord& rec, int dim, int n_species, bool extended);
void write_records_csv(const std::string& path, std::span<const DiagnosticsRecord> records,
                       int dim, int n_species, std::uint64_t digest, bool extended);

}  // namespace nsf

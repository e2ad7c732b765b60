#include <doctest.h>

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "nsf/diagnostics.hpp"
#include "nsf/pde.hpp"

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

nsf::Grid grid1d(int n) {
    const std::array<int, 1> npts{n};
    const std::array<double, 1> len{1.0};
    return nsf::make_grid(1, npts, len);
}

nsf::MixtureSpec two_species() {
    nsf::MixtureSpec mix;
    mix.n = 2;
    mix.molar_mass = {1.0, 2.0};
    mix.formation_energy = {0.1, -0.05};
    mix.formation_entropy = {0.0, 0.0};
    mix.validate();
    return mix;
}

nsf::FieldSet wavy_state(const nsf::Grid& grid, const nsf::MixtureSpec& mix) {
    nsf::FieldSet fs = nsf::FieldSet::zeros(grid, mix.n);
    for (std::size_t j = 0; j < grid.points(); ++j) {
        const double x = grid.coord(0, static_cast<int>(j));
        const double rho = 0.9 + 0.05 * std::sin(kTwoPi * x);
        const double u = 0.1 + 0.03 * std::sin(kTwoPi * x + 0.4);
        const double theta = 1.0 + 0.04 * std::cos(kTwoPi * x);
        const double y1 = 0.4 + 0.1 * std::sin(kTwoPi * x + 1.7);
        const std::array<double, 2> Y{y1, 1.0 - y1};
        fs.rho[j] = rho;
        fs.mom[0][j] = rho * u;
        double e = mix.c_v * theta + nsf::cold_energy(rho, mix.cold);
        for (int k = 0; k < 2; ++k) e += Y[(std::size_t)k] * mix.formation_energy[(std::size_t)k];
        fs.rhoE[j] = rho * (e + 0.5 * u * u);
        for (int k = 0; k < 2; ++k) fs.rhok[(std::size_t)k][j] = rho * Y[(std::size_t)k];
    }
    return fs;
}

}  // namespace

TEST_CASE("conserved totals and positivity report") {
    const nsf::MixtureSpec mix = two_species();
    const nsf::Grid grid = grid1d(32);
    const nsf::FieldSet fs = wavy_state(grid, mix);

    const nsf::ConservedTotals totals = nsf::conserved_totals(fs, mix);
    double mass = 0.0;
    for (double v : fs.rho) mass += v * grid.h[0];
    CHECK(totals.mass == doctest::Approx(mass).epsilon(1e-14));
    CHECK(totals.species.size() == 2);
    CHECK(totals.species[0] + totals.species[1] == doctest::Approx(totals.mass).epsilon(1e-13));

    const nsf::PositivityReport pos = nsf::positivity_report(fs, mix);
    CHECK(pos.min_rho == doctest::Approx(0.85).epsilon(1e-3));
    CHECK(pos.min_rho > 0.0);
    CHECK(pos.min_theta > 0.0);
    CHECK(pos.min_rhok > 0.0);
    CHECK(pos.max_Ysum_dev <= 1e-14);
}

TEST_CASE("bd functional reduces to kinetic energy for uniform density") {
    const nsf::MixtureSpec mix = two_species();
    const nsf::Grid grid = grid1d(32);
    nsf::FieldSet fs = wavy_state(grid, mix);
    // Flatten the density; grad phi vanishes.
    for (std::size_t j = 0; j < grid.points(); ++j) {
        const double u = fs.mom[0][j] / fs.rho[j];
        const double e = fs.rhoE[j] / fs.rho[j] - 0.5 * u * u;
        const double y1 = fs.rhok[0][j] / fs.rho[j];
        fs.rho[j] = 1.1;
        fs.mom[0][j] = 1.1 * u;
        fs.rhoE[j] = 1.1 * (e + 0.5 * u * u);
        fs.rhok[0][j] = 1.1 * y1;
        fs.rhok[1][j] = 1.1 * (1.0 - y1);
    }
    const nsf::TransportSpec transport;
    const double bd = nsf::bd_functional(fs, transport, 2, 1e-10);
    double ke = 0.0;
    for (std::size_t j = 0; j < grid.points(); ++j)
        ke += 0.5 * fs.mom[0][j] * fs.mom[0][j] / fs.rho[j] * grid.h[0];
    CHECK(bd == doctest::Approx(ke).epsilon(1e-12));

    CHECK(nsf::bd_functional(wavy_state(grid, mix), transport, 2, 1e-10) >= 0.0);
}

TEST_CASE("record aggregates match the standalone reductions") {
    const nsf::MixtureSpec mix = two_species();
    const nsf::TransportSpec transport;
    const nsf::Grid grid = grid1d(64);
    const nsf::FieldSet fs = wavy_state(grid, mix);

    nsf::DiagnosticsEvaluator diag(grid, mix, transport, nsf::KineticsSpec{}, 2, 1e-10);
    const nsf::DiagnosticsRecord rec = diag.record(fs, 0.25, 7, 1e-3);

    const nsf::ConservedTotals totals = nsf::conserved_totals(fs, mix);
    CHECK(rec.t == 0.25);
    CHECK(rec.step == 7);
    CHECK(rec.total_mass == doctest::Approx(totals.mass).epsilon(1e-14));
    CHECK(rec.total_energy == doctest::Approx(totals.energy).epsilon(1e-14));
    CHECK(rec.total_momentum[0] == doctest::Approx(totals.momentum[0]).epsilon(1e-14));
    CHECK(rec.total_entropy == doctest::Approx(nsf::entropy_total(fs, mix, 1e-10)).epsilon(1e-13));
    CHECK(rec.bd_functional ==
          doctest::Approx(nsf::bd_functional(fs, transport, 2, 1e-10)).epsilon(1e-13));

    // All dissipation components are nonnegative up to round-off on a
    // smooth state, and every component field is retained.
    CHECK(rec.sigma_visc >= 0.0);
    CHECK(rec.sigma_heat >= 0.0);
    CHECK(rec.sigma_diff >= 0.0);
    CHECK(rec.sign_visc_min >= -1e-12);
    CHECK(rec.sign_heat_min >= -1e-12);
    CHECK(rec.sign_diff_min >= -1e-12);
    CHECK(diag.sigma_visc_field().size() == grid.points());

    // Null kinetics: no reaction dissipation, no admissibility content.
    CHECK(rec.sigma_react == 0.0);
    CHECK(rec.admissibility_worst == 0.0);
}

TEST_CASE("entropy production forms agree") {
    // The raw Gibbs-gradient form and the reduced kappa/diffusion form are
    // algebraically identical; discretized on the same gradients they agree
    // to round-off. sigma_raw folds the heat and diffusion parts together.
    const nsf::MixtureSpec mix = two_species();
    const nsf::Grid grid = grid1d(64);
    nsf::DiagnosticsEvaluator diag(grid, mix, nsf::TransportSpec{}, nsf::KineticsSpec{}, 2, 1e-10);
    const nsf::DiagnosticsRecord rec = diag.record(wavy_state(grid, mix), 0.0, 0, 1e-3);

    const double reduced = rec.sigma_heat + rec.sigma_diff;
    CHECK(std::abs(rec.sigma_raw - reduced) <= 1e-12 * (std::abs(reduced) + 1.0));
    // The variant weighting the flux term by 1/m_k coincides with the raw
    // form only for unit molar masses; with m = (1, 2) they must differ.
    CHECK(std::abs(rec.sigma_molar - rec.sigma_raw) > 1e-12 * (std::abs(rec.sigma_raw) + 1.0));

    nsf::MixtureSpec equal = mix;
    equal.molar_mass = {1.0, 1.0};
    nsf::DiagnosticsEvaluator diag_eq(grid, equal, nsf::TransportSpec{}, nsf::KineticsSpec{}, 2,
                                      1e-10);
    const nsf::DiagnosticsRecord rec_eq = diag_eq.record(wavy_state(grid, equal), 0.0, 0, 1e-3);
    CHECK(std::abs(rec_eq.sigma_molar - rec_eq.sigma_raw) <=
          1e-12 * (std::abs(rec_eq.sigma_raw) + 1.0));
}

TEST_CASE("identity residuals over a short run") {
    const nsf::MixtureSpec mix = two_species();
    const nsf::TransportSpec transport;
    const nsf::Grid grid = grid1d(64);
    nsf::FieldSet state = wavy_state(grid, mix);

    nsf::RhsEvaluator rhs(grid, mix, transport, nsf::KineticsSpec{}, 2, 1e-10);
    nsf::DiagnosticsEvaluator diag(grid, mix, transport, nsf::KineticsSpec{}, 2, 1e-10);
    nsf::Rk4Integrator integrator(state);

    const double dt = 0.5 * nsf::cfl_dt(state, mix, transport, 0.4, 1e-10);
    std::vector<nsf::DiagnosticsRecord> records;
    records.push_back(diag.record(state, 0.0, 0, dt));
    for (int i = 0; i < 8; ++i) {
        integrator.step(state, i * dt, dt, rhs);
        records.push_back(diag.record(state, (i + 1) * dt, i + 1, dt));
    }

    const nsf::IdentityResiduals ids = nsf::identity_residuals(records);
    CHECK(ids.windows == 7);
    // Total energy is conserved to round-off, so its centered time
    // difference is pure noise relative to |E|.
    CHECK(ids.energy.relative <= 1e-9);
    // The other identities hold up to the O(h^2) + O(dt^2) discretization
    // bias; at N=64 that is a small relative residual, not machine zero.
    CHECK(ids.kinetic.relative <= 0.05);
    CHECK(ids.bd.relative <= 0.05);
    CHECK(ids.temperature.relative <= 0.05);

    CHECK_THROWS_AS(
        nsf::identity_residuals(std::span<const nsf::DiagnosticsRecord>(records.data(), 2)),
        std::invalid_argument);
    std::vector<nsf::DiagnosticsRecord> skewed = records;
    skewed[2].t += 0.1 * dt;
    CHECK_THROWS_AS(nsf::identity_residuals(skewed), std::invalid_argument);
}

TEST_CASE("csv rows are stable and complete") {
    const nsf::MixtureSpec mix = two_species();
    const nsf::Grid grid = grid1d(32);
    nsf::DiagnosticsEvaluator diag(grid, mix, nsf::TransportSpec{}, nsf::KineticsSpec{}, 2, 1e-10);
    const nsf::DiagnosticsRecord rec = diag.record(wavy_state(grid, mix), 0.125, 3, 2e-4);

    const std::string header = nsf::records_csv_header(1, 2, 0xabcdef, false);
    const std::string row = nsf::record_csv_row(rec, 1, 2, false);
    auto count = [](const std::string& s, char c) {
        std::size_t n = 0;
        for (char ch : s)
            if (ch == c) ++n;
        return n;
    };
    // Header comes with a digest comment line; the column line and the data
    // row must agree on the field count.
    const std::size_t newline = header.find('\n');
    REQUIRE(newline != std::string::npos);
    CHECK(header.substr(0, 18) == "# parameter_digest");
    CHECK(count(header.substr(newline + 1), ',') == count(row, ','));

    // Bitwise stability: the same record prints the same bytes.
    CHECK(row == nsf::record_csv_row(rec, 1, 2, false));
    const std::string wide = nsf::record_csv_row(rec, 1, 2, true);
    CHECK(count(wide, ',') == count(row, ',') + 2);
}

#include "nsf/mms.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nsf/pde.hpp"

namespace nsf {

namespace {

constexpr double kPhaseRho = 0.0;
constexpr double kPhaseU = 0.3;
constexpr double kPhaseTheta = 1.1;
constexpr double kPhaseY = 2.0;

struct Wave {
    double base = 0.0;
    double amp = 0.0;
    double k = 0.0;
    double phase = 0.0;

    double val(double xi) const { return base + amp * std::sin(k * xi + phase); }
    double d1(double xi) const { return amp * k * std::cos(k * xi + phase); }
    double d2(double xi) const { return -amp * k * k * std::sin(k * xi + phase); }
};

// Closed-form point evaluation of the exact solution, its fluxes, and the
// forcing. Every x-derivative below is the hand-applied chain rule of the
// constitutive definitions through the traveling-wave profiles; second
// derivatives of the primitives appear because the fluxes carry first
// derivatives.
class Kernel {
public:
    Kernel(const MixtureSpec& mix, const TransportSpec* transport, const MmsParams& p)
        : mix_(mix), transport_(transport), p_(p) {
        const auto n = static_cast<std::size_t>(mix_.n);
        if (p_.base_Y.size() != n)
            throw std::invalid_argument("mms: base_Y must have one entry per species");
        weight_.assign(n, 0.0);
        if (mix_.n >= 2) {
            const double rest = 1.0 - p_.base_Y[0];
            if (!(rest > 0.0))
                throw std::invalid_argument("mms: first mass fraction must be below 1");
            for (int k = 1; k < mix_.n; ++k) weight_[k] = p_.base_Y[k] / rest;
        }
        Y_.resize(n);
        Yx_.resize(n);
        Yxx_.resize(n);
        pkx_.resize(n);
        pkxx_.resize(n);
        flux_.resize(n);
        fluxx_.resize(n);
    }

    // Primitive profiles and their first two x-derivatives at xi = x - c*t.
    void eval_primitives(double x, double t) {
        const double xi = x - p_.speed * t;
        const Wave wr{p_.base_rho, p_.amplitude, p_.wavenumber, kPhaseRho};
        const Wave wu{p_.base_u, p_.amplitude, p_.wavenumber, kPhaseU};
        const Wave wt{p_.base_theta, p_.amplitude, p_.wavenumber, kPhaseTheta};
        const Wave wy{mix_.n >= 2 ? p_.base_Y[0] : 1.0, mix_.n >= 2 ? p_.y_amplitude : 0.0,
                      p_.wavenumber, kPhaseY};
        r_ = wr.val(xi);
        rx_ = wr.d1(xi);
        rxx_ = wr.d2(xi);
        v_ = wu.val(xi);
        vx_ = wu.d1(xi);
        vxx_ = wu.d2(xi);
        th_ = wt.val(xi);
        thx_ = wt.d1(xi);
        thxx_ = wt.d2(xi);
        Y_[0] = wy.val(xi);
        Yx_[0] = wy.d1(xi);
        Yxx_[0] = wy.d2(xi);
        for (int k = 1; k < mix_.n; ++k) {
            Y_[k] = weight_[k] * (1.0 - Y_[0]);
            Yx_[k] = -weight_[k] * Yx_[0];
            Yxx_[k] = -weight_[k] * Yxx_[0];
        }
    }

    // Conservative state from the current primitives.
    void conservative(double* rho, double* mom, double* rhoE, std::span<double> rhok) const {
        *rho = r_;
        *mom = r_ * v_;
        double e = mix_.c_v * th_ + cold_energy(r_, mix_.cold);
        for (int k = 0; k < mix_.n; ++k) e += Y_[k] * mix_.formation_energy[k];
        *rhoE = r_ * (e + 0.5 * v_ * v_);
        for (int k = 0; k < mix_.n; ++k) rhok[k] = r_ * Y_[k];
    }

    // Fluxes and flux derivatives; requires transport.
    void eval_fluxes() {
        double b = 0.0, bx = 0.0, bxx = 0.0;
        for (int k = 0; k < mix_.n; ++k) {
            const double im = 1.0 / mix_.molar_mass[k];
            b += Y_[k] * im;
            bx += Yx_[k] * im;
            bxx += Yxx_[k] * im;
            pkx_[k] = (rx_ * th_ * Y_[k] + r_ * thx_ * Y_[k] + r_ * th_ * Yx_[k]) * im;
            pkxx_[k] = (rxx_ * th_ * Y_[k] + r_ * thxx_ * Y_[k] + r_ * th_ * Yxx_[k] +
                        2.0 * (rx_ * thx_ * Y_[k] + rx_ * th_ * Yx_[k] + r_ * thx_ * Yx_[k])) *
                       im;
        }
        const double pim = r_ * th_ * b;
        const double pimx = rx_ * th_ * b + r_ * thx_ * b + r_ * th_ * bx;
        const double pimxx = rxx_ * th_ * b + r_ * thxx_ * b + r_ * th_ * bxx +
                             2.0 * (rx_ * thx_ * b + rx_ * th_ * bx + r_ * thx_ * bx);
        const double pic = cold_pressure(r_, mix_.cold);
        const double picx = cold_pressure_derivative(r_, mix_.cold) * rx_;
        pi_ = pim + pic;
        pix_ = pimx + picx;

        const double mu = transport_->mu(r_);
        const double nu = transport_->nu(r_);
        const double stot = 2.0 * mu + nu;
        const double stot_drho = 2.0 * transport_->mu_prime(r_) + transport_->nu_prime(r_);
        s_ = stot * vx_;
        sx_ = stot_drho * rx_ * vx_ + stot * vxx_;

        const double alpha = transport_->alpha;
        const double tha = pow_fast(th_, alpha);
        const double kap = transport_->kappa0 * (1.0 + r_) * (1.0 + tha);
        const double kapx = transport_->kappa0 * (rx_ * (1.0 + tha) +
                                                  (1.0 + r_) * alpha * pow_fast(th_, alpha - 1.0) *
                                                      thx_);
        const double c0 = transport_->d0 * r_ * (1.0 + th_);
        const double c0x = transport_->d0 * (rx_ * (1.0 + th_) + r_ * thx_);
        const double ratio = c0 / pim;
        const double ratiox = (c0x * pim - c0 * pimx) / (pim * pim);

        double q = -kap * thx_;
        double qx = -kapx * thx_ - kap * thxx_;
        for (int k = 0; k < mix_.n; ++k) {
            const double g = pkx_[k] - Y_[k] * pimx;
            const double gx = pkxx_[k] - Yx_[k] * pimx - Y_[k] * pimxx;
            flux_[k] = -ratio * g;
            fluxx_[k] = -ratiox * g - ratio * gx;
            const double cp = mix_.c_v + 1.0 / mix_.molar_mass[k];
            const double h = mix_.formation_energy[k] + cp * th_;
            q += h * flux_[k];
            qx += cp * thx_ * flux_[k] + h * fluxx_[k];
        }
        q_ = q;
        qx_ = qx;
    }

    // Conservative fluxes as they appear under the outer divergence.
    void fluxes(double* mass, double* momentum, double* energy, std::span<double> species) const {
        *mass = r_ * v_;
        *momentum = r_ * v_ * v_ - s_ + pi_;
        double rho, mom, rhoE;
        conservative_scratch(&rho, &mom, &rhoE);
        *energy = (rhoE + pi_) * v_ + q_ - s_ * v_;
        for (int k = 0; k < mix_.n; ++k) species[k] = r_ * Y_[k] * v_ + flux_[k];
    }

    // Forcing g = d/dt U + d/dx f; traveling profiles give d/dt = -c d/dx
    // for the conservative part.
    void forcing(double* g_rho, double* g_mom, double* g_E, std::span<double> g_k) const {
        const double c = p_.speed;
        const double momx = rx_ * v_ + r_ * vx_;

        double e = mix_.c_v * th_ + cold_energy(r_, mix_.cold);
        double ex = mix_.c_v * thx_ + cold_energy_derivative(r_, mix_.cold) * rx_;
        for (int k = 0; k < mix_.n; ++k) {
            e += Y_[k] * mix_.formation_energy[k];
            ex += Yx_[k] * mix_.formation_energy[k];
        }
        const double rhoE = r_ * (e + 0.5 * v_ * v_);
        const double rhoEx = rx_ * (e + 0.5 * v_ * v_) + r_ * (ex + v_ * vx_);

        *g_rho = -c * rx_ + momx;
        *g_mom = -c * momx + (rx_ * v_ * v_ + 2.0 * r_ * v_ * vx_ - sx_ + pix_);
        *g_E = -c * rhoEx +
               ((rhoEx + pix_) * v_ + (rhoE + pi_) * vx_ + qx_ - sx_ * v_ - s_ * vx_);
        for (int k = 0; k < mix_.n; ++k) {
            const double rhokx = rx_ * Y_[k] + r_ * Yx_[k];
            g_k[k] = -c * rhokx + (rhokx * v_ + r_ * Y_[k] * vx_ + fluxx_[k]);
        }
    }

private:
    void conservative_scratch(double* rho, double* mom, double* rhoE) const {
        *rho = r_;
        *mom = r_ * v_;
        double e = mix_.c_v * th_ + cold_energy(r_, mix_.cold);
        for (int k = 0; k < mix_.n; ++k) e += Y_[k] * mix_.formation_energy[k];
        *rhoE = r_ * (e + 0.5 * v_ * v_);
    }

    const MixtureSpec& mix_;
    const TransportSpec* transport_;
    MmsParams p_;
    std::vector<double> weight_;

    double r_ = 0, rx_ = 0, rxx_ = 0;
    double v_ = 0, vx_ = 0, vxx_ = 0;
    double th_ = 0, thx_ = 0, thxx_ = 0;
    std::vector<double> Y_, Yx_, Yxx_;
    std::vector<double> pkx_, pkxx_;
    double pi_ = 0, pix_ = 0;
    double s_ = 0, sx_ = 0;
    double q_ = 0, qx_ = 0;
    std::vector<double> flux_, fluxx_;
};

}  // namespace

MmsParams mms_params_from(const RunConfig& cfg) {
    if (cfg.dim != 1)
        throw std::invalid_argument("manufactured solutions are one-dimensional");
    if (cfg.kinetics != "none")
        throw std::invalid_argument("manufactured runs require null kinetics");
    MmsParams p;
    p.base_rho = cfg.rho0;
    p.base_theta = cfg.theta0;
    p.base_u = cfg.u0[0];
    p.base_Y = cfg.Y0;
    p.amplitude = cfg.mms_amplitude;
    p.y_amplitude = cfg.species >= 2 ? cfg.mms_amplitude : 0.0;
    p.speed = cfg.mms_wave_speed;
    p.wavenumber = 2.0 * std::acos(-1.0) / cfg.box_length[0];
    if (std::abs(p.base_rho - 1.0) <= p.amplitude)
        throw std::invalid_argument(
            "manufactured density band must stay on one side of the reference density 1");
    if (!(p.base_theta - p.amplitude > 0.0))
        throw std::invalid_argument("manufactured temperature band must stay positive");
    if (cfg.species >= 2)
        for (double y : cfg.Y0)
            if (!(y - p.amplitude > 0.0 && y + p.amplitude < 1.0))
                throw std::invalid_argument(
                    "manufactured mass fractions must stay inside (0, 1)");
    return p;
}

MmsPointState mms_point_state(const MixtureSpec& mix, const MmsParams& p, double x, double t) {
    Kernel kernel(mix, nullptr, p);
    kernel.eval_primitives(x, t);
    MmsPointState out;
    out.rhok.resize(static_cast<std::size_t>(mix.n));
    kernel.conservative(&out.rho, &out.mom, &out.rhoE, out.rhok);
    return out;
}

MmsPointFluxes mms_point_fluxes(const MixtureSpec& mix, const TransportSpec& transport,
                                const MmsParams& p, double x, double t) {
    Kernel kernel(mix, &transport, p);
    kernel.eval_primitives(x, t);
    kernel.eval_fluxes();
    MmsPointFluxes out;
    out.species.resize(static_cast<std::size_t>(mix.n));
    kernel.fluxes(&out.mass, &out.momentum, &out.energy, out.species);
    return out;
}

void mms_exact(const Grid& grid, const MixtureSpec& mix, const MmsParams& p, double t,
               FieldSet& out) {
    if (grid.dim != 1) throw std::invalid_argument("mms_exact: grid must be one-dimensional");
    if (out.points() != grid.points() || out.n_species != mix.n)
        throw std::invalid_argument("mms_exact: output shape mismatch");
    Kernel kernel(mix, nullptr, p);
    std::vector<double> rhok(static_cast<std::size_t>(mix.n));
    for (std::size_t i = 0; i < grid.points(); ++i) {
        kernel.eval_primitives(grid.coord(0, static_cast<int>(i)), t);
        kernel.conservative(&out.rho[i], &out.mom[0][i], &out.rhoE[i], rhok);
        for (int k = 0; k < mix.n; ++k) out.rhok[k][i] = rhok[k];
    }
}

void add_mms_forcing(const Grid& grid, const MixtureSpec& mix, const TransportSpec& transport,
                     const MmsParams& p, double t, FieldSet& accum) {
    if (grid.dim != 1) throw std::invalid_argument("mms forcing: grid must be one-dimensional");
    if (accum.points() != grid.points() || accum.n_species != mix.n)
        throw std::invalid_argument("mms forcing: output shape mismatch");
    Kernel kernel(mix, &transport, p);
    std::vector<double> gk(static_cast<std::size_t>(mix.n));
    for (std::size_t i = 0; i < grid.points(); ++i) {
        kernel.eval_primitives(grid.coord(0, static_cast<int>(i)), t);
        kernel.eval_fluxes();
        double g_rho, g_mom, g_E;
        kernel.forcing(&g_rho, &g_mom, &g_E, gk);
        accum.rho[i] += g_rho;
        accum.mom[0][i] += g_mom;
        accum.rhoE[i] += g_E;
        for (int k = 0; k < mix.n; ++k) accum.rhok[k][i] += gk[k];
    }
}

namespace {

// Fixed-step forced integration; steps * dt must equal the target time.
FieldSet integrate_forced(const Grid& grid, const MixtureSpec& mix, const TransportSpec& transport,
                          const MmsParams& p, int order, double rho_floor, double dt,
                          long long steps) {
    FieldSet state = FieldSet::zeros(grid, mix.n);
    mms_exact(grid, mix, p, 0.0, state);
    RhsEvaluator rhs(grid, mix, transport, KineticsSpec{}, order, rho_floor);
    rhs.set_forcing([&grid, &mix, &transport, &p](double t, FieldSet& out) {
        add_mms_forcing(grid, mix, transport, p, t, out);
    });
    Rk4Integrator integrator(state);
    for (long long i = 0; i < steps; ++i)
        integrator.step(state, static_cast<double>(i) * dt, dt, rhs);
    return state;
}

double l2_error(const Field& a, const Field& b, double vol) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(vol * acc);
}

MmsLevel level_errors(const FieldSet& numeric, const FieldSet& reference) {
    const double vol = numeric.grid.h[0];
    MmsLevel lvl;
    lvl.points = numeric.grid.n[0];
    lvl.err_rho = l2_error(numeric.rho, reference.rho, vol);
    lvl.err_mom = l2_error(numeric.mom[0], reference.mom[0], vol);
    lvl.err_energy = l2_error(numeric.rhoE, reference.rhoE, vol);
    for (int k = 0; k < numeric.n_species; ++k)
        lvl.err_species = std::max(lvl.err_species, l2_error(numeric.rhok[k], reference.rhok[k], vol));
    return lvl;
}

void fill_orders(MmsReport& rep, double refinement_total) {
    const MmsLevel& first = rep.levels.front();
    const MmsLevel& last = rep.levels.back();
    const double denom = std::log(refinement_total);
    auto order = [denom](double e0, double e1) { return std::log(e0 / e1) / denom; };
    rep.order_rho = order(first.err_rho, last.err_rho);
    rep.order_mom = order(first.err_mom, last.err_mom);
    rep.order_energy = order(first.err_energy, last.err_energy);
    rep.order_species = order(first.err_species, last.err_species);
}

// Largest fixed step that divides t_end and respects the stability bound.
std::pair<double, long long> dividing_step(double t_end, double dt_bound) {
    const auto steps = static_cast<long long>(std::ceil(t_end / dt_bound - 1e-12));
    return {t_end / static_cast<double>(steps), steps};
}

}  // namespace

double MmsReport::min_order() const {
    return std::min(std::min(order_rho, order_mom), std::min(order_energy, order_species));
}

std::string MmsReport::text(const std::string& title) const {
    std::string out = title + "\n";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%8s %14s %10s %12s %12s %12s %12s\n", "points", "dt", "steps",
                  "err_rho", "err_mom", "err_energy", "err_species");
    out += buf;
    for (const MmsLevel& lvl : levels) {
        std::snprintf(buf, sizeof(buf), "%8d %14.6e %10lld %12.4e %12.4e %12.4e %12.4e\n",
                      lvl.points, lvl.dt, lvl.steps, lvl.err_rho, lvl.err_mom, lvl.err_energy,
                      lvl.err_species);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "observed orders: rho %.3f, momentum %.3f, energy %.3f, species %.3f\n",
                  order_rho, order_mom, order_energy, order_species);
    out += buf;
    return out;
}

MmsReport mms_spatial_study(const RunConfig& cfg, int levels) {
    if (levels < 3) throw std::invalid_argument("need >= 3 levels");
    const MmsParams params = mms_params_from(cfg);
    const MixtureSpec mix = cfg.mixture();
    const TransportSpec transport = cfg.transport_spec();

    MmsReport rep;
    int n = cfg.points[0];
    for (int lvl = 0; lvl < levels; ++lvl, n *= 2) {
        const std::array<int, 1> npts{n};
        const std::array<double, 1> len{cfg.box_length[0]};
        const Grid grid = make_grid(1, npts, len);
        FieldSet exact = FieldSet::zeros(grid, mix.n);
        mms_exact(grid, mix, params, 0.0, exact);
        const double dt_bound = cfl_dt(exact, mix, transport, cfg.cfl, cfg.rho_floor);
        const auto [dt, steps] = dividing_step(cfg.t_end, dt_bound);
        const FieldSet state = integrate_forced(grid, mix, transport, params, cfg.stencil_order,
                                                cfg.rho_floor, dt, steps);
        mms_exact(grid, mix, params, cfg.t_end, exact);
        MmsLevel entry = level_errors(state, exact);
        entry.dt = dt;
        entry.steps = steps;
        rep.levels.push_back(entry);
    }
    fill_orders(rep, std::pow(2.0, levels - 1));
    return rep;
}

MmsReport mms_temporal_study(const RunConfig& cfg, int levels) {
    if (levels < 3) throw std::invalid_argument("need >= 3 levels");
    const MmsParams params = mms_params_from(cfg);
    const MixtureSpec mix = cfg.mixture();
    const TransportSpec transport = cfg.transport_spec();

    const std::array<int, 1> npts{cfg.points[0]};
    const std::array<double, 1> len{cfg.box_length[0]};
    const Grid grid = make_grid(1, npts, len);
    FieldSet exact = FieldSet::zeros(grid, mix.n);
    mms_exact(grid, mix, params, 0.0, exact);

    // Probe near the raw stability bound rather than at the configured
    // safety factor: at the production step the integrator error of a
    // resolved solution sits at round-off and halving dt would measure
    // noise. The fraction is fixed so the study does not depend on cfl.
    constexpr double kProbeFraction = 1.5;
    const double dt_bound =
        cfl_dt(exact, mix, transport, cfg.cfl, cfg.rho_floor) * (kProbeFraction / cfg.cfl);
    const auto [dt0, steps0] = dividing_step(cfg.t_end, dt_bound);

    // Reference at the finest dt / 16: four more halvings.
    const long long shift_ref = (levels - 1) + 4;
    const FieldSet reference =
        integrate_forced(grid, mix, transport, params, cfg.stencil_order, cfg.rho_floor,
                         dt0 / static_cast<double>(1LL << shift_ref), steps0 * (1LL << shift_ref));

    MmsReport rep;
    for (int lvl = 0; lvl < levels; ++lvl) {
        const double dt = dt0 / static_cast<double>(1LL << lvl);
        const long long steps = steps0 * (1LL << lvl);
        const FieldSet state = integrate_forced(grid, mix, transport, params, cfg.stencil_order,
                                                cfg.rho_floor, dt, steps);
        MmsLevel entry = level_errors(state, reference);
        entry.dt = dt;
        entry.steps = steps;
        rep.levels.push_back(entry);
    }
    fill_orders(rep, std::pow(2.0, levels - 1));
    return rep;
}

}  // namespace nsf

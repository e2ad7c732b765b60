#include "nsf/diffusion.hpp"

#include <cmath>
#include <stdexcept>

namespace nsf {

void DiffusionInputs::validate(const MixtureSpec& spec) const {
    state.validate(spec);
    const auto un = static_cast<std::size_t>(n);
    const auto ud = static_cast<std::size_t>(dim);
    if (n != spec.n) throw std::invalid_argument("diffusion inputs: species count mismatch");
    if (dim < 1 || dim > 3) throw std::invalid_argument("diffusion inputs: dim must be 1, 2, or 3");
    if (partial_p.size() != un || enthalpy.size() != un || grad_partial_p.size() != un * ud ||
        grad_pi_m.size() != ud || grad_theta.size() != ud)
        throw std::invalid_argument("diffusion inputs: array length mismatch");
    if (!(pi_m > 0.0)) throw std::invalid_argument("diffusion inputs: pi_m must be positive");
    if (!(c0 > 0.0)) throw std::invalid_argument("diffusion inputs: c0 must be positive");

    double sum_p = 0.0;
    for (double p : partial_p) sum_p += p;
    if (std::abs(sum_p - pi_m) > 1e-12 * (std::abs(pi_m) + 1.0))
        throw std::invalid_argument("diffusion inputs: partial pressures must sum to pi_m");
    for (int a = 0; a < dim; ++a) {
        double sum_g = 0.0;
        for (int k = 0; k < n; ++k) sum_g += grad_partial_p[k * dim + a];
        if (std::abs(sum_g - grad_pi_m[a]) > 1e-12 * (std::abs(grad_pi_m[a]) + 1.0))
            throw std::invalid_argument(
                "diffusion inputs: partial pressure gradients must sum to grad pi_m");
    }
}

std::vector<double> flux_matrix(std::span<const double> Y) {
    const int n = static_cast<int>(Y.size());
    if (n < 1) throw std::invalid_argument("flux_matrix: need at least one species");
    double sum = 0.0;
    for (double y : Y) sum += y;
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("flux_matrix: mass fractions must sum to 1");

    std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        double z = 0.0;
        for (int i = 0; i < n; ++i)
            if (i != k) z += Y[i];
        for (int l = 0; l < n; ++l) c[k * n + l] = (l == k) ? z : -Y[k];
    }
    return c;
}

void diffusion_forces(const DiffusionInputs& in, std::span<double> out) {
    if (out.size() != static_cast<std::size_t>(in.n) * in.dim)
        throw std::invalid_argument("diffusion_forces: output span has wrong length");
    if (!(in.pi_m > 0.0)) throw std::domain_error("diffusion_forces: pi_m must be positive");
    const double inv = 1.0 / in.pi_m;
    for (int k = 0; k < in.n; ++k)
        for (int a = 0; a < in.dim; ++a)
            out[k * in.dim + a] =
                (in.grad_partial_p[k * in.dim + a] - in.state.Y[k] * in.grad_pi_m[a]) * inv;
}

void species_fluxes(const DiffusionInputs& in, std::span<double> out) {
    if (out.size() != static_cast<std::size_t>(in.n) * in.dim)
        throw std::invalid_argument("species_fluxes: output span has wrong length");
    if (!(in.pi_m > 0.0)) throw std::domain_error("species_fluxes: pi_m must be positive");
    species_fluxes_point(in.n, in.dim, in.pi_m, in.c0, in.state.Y.data(), in.grad_partial_p.data(),
                         in.grad_pi_m.data(), out.data());
}

void heat_flux(const DiffusionInputs& in, std::span<const double> fluxes, std::span<double> out) {
    if (out.size() != static_cast<std::size_t>(in.dim))
        throw std::invalid_argument("heat_flux: output span has wrong length");
    for (int a = 0; a < in.dim; ++a) {
        double q = -in.kappa * in.grad_theta[a];
        for (int k = 0; k < in.n; ++k) q += in.enthalpy[k] * fluxes[k * in.dim + a];
        out[a] = q;
    }
}

double sigma_diffusion(const DiffusionInputs& in, std::span<const double> fluxes,
                       int* vacuum_skipped) {
    double sigma = 0.0;
    int skipped = 0;
    for (int k = 0; k < in.n; ++k) {
        if (in.state.Y[k] <= kVacuumFraction) {
            ++skipped;
            continue;
        }
        double f2 = 0.0;
        for (int a = 0; a < in.dim; ++a) f2 += fluxes[k * in.dim + a] * fluxes[k * in.dim + a];
        sigma += in.pi_m * f2 / (in.c0 * in.state.theta * in.state.rho * in.state.Y[k]);
    }
    if (vacuum_skipped) *vacuum_skipped = skipped;
    return sigma;
}

double sigma_diffusion_via_forces(const DiffusionInputs& in, std::span<const double> fluxes,
                                  int* vacuum_skipped) {
    double sigma = 0.0;
    int skipped = 0;
    for (int k = 0; k < in.n; ++k) {
        if (in.state.Y[k] <= kVacuumFraction) {
            ++skipped;
            continue;
        }
        double dot = 0.0;
        for (int a = 0; a < in.dim; ++a)
            dot += fluxes[k * in.dim + a] *
                   (in.grad_partial_p[k * in.dim + a] - in.state.Y[k] * in.grad_pi_m[a]);
        sigma -= dot / (in.state.theta * in.state.rho * in.state.Y[k]);
    }
    if (vacuum_skipped) *vacuum_skipped = skipped;
    return sigma;
}

}  // namespace nsf

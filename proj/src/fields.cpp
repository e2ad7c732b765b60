#include "nsf/fields.hpp"

#include <cmath>
#include <cstdio>

#include "nsf/util.hpp"

namespace nsf {

FieldSet FieldSet::zeros(const Grid& grid, int n_species) {
    if (n_species < 1) throw std::invalid_argument("FieldSet: need at least one species");
    FieldSet fs;
    fs.grid = grid;
    fs.n_species = n_species;
    const std::size_t p = grid.points();
    fs.rho.assign(p, 0.0);
    for (int a = 0; a < grid.dim; ++a) fs.mom[a].assign(p, 0.0);
    fs.rhoE.assign(p, 0.0);
    fs.rhok.assign(static_cast<std::size_t>(n_species), Field(p, 0.0));
    return fs;
}

FieldSet FieldSet::like(const FieldSet& other) { return zeros(other.grid, other.n_species); }

void FieldSet::fill(double value) {
    for_each_component([value](Field& f) { std::fill(f.begin(), f.end(), value); });
}

void axpy(double a, const FieldSet& x, FieldSet& y) {
    if (x.points() != y.points() || x.n_species != y.n_species || x.grid.dim != y.grid.dim)
        throw std::invalid_argument("axpy: field sets have different shapes");
    auto each = [a](const Field& src, Field& dst) {
        const std::size_t n = dst.size();
        const double* s = src.data();
        double* d = dst.data();
        parallel_for(n, [=](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) d[i] += a * s[i];
        });
    };
    each(x.rho, y.rho);
    for (int ax = 0; ax < y.grid.dim; ++ax) each(x.mom[ax], y.mom[ax]);
    each(x.rhoE, y.rhoE);
    for (int k = 0; k < y.n_species; ++k) each(x.rhok[k], y.rhok[k]);
}

namespace {

[[noreturn]] void raise_positivity(const Grid& grid, PositivityError::What what, std::size_t i,
                                   double value) {
    std::array<int, 3> idx{};
    grid.decode(i, idx);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s at point %zu (i=%d j=%d k=%d): value %.6g",
                  what == PositivityError::What::density_floor ? "density fell below the floor"
                                                               : "nonpositive temperature",
                  i, idx[0], idx[1], idx[2], value);
    throw PositivityError(what, i, idx, value, buf);
}

}  // namespace

void recover_primitives(const FieldSet& fs, const MixtureSpec& mix, double rho_floor,
                        Primitives& out) {
    if (fs.n_species != mix.n)
        throw std::invalid_argument("recover_primitives: species count mismatch");
    const std::size_t p = fs.points();
    const int dim = fs.grid.dim;
    const int n = fs.n_species;
    for (int a = 0; a < dim; ++a) out.u[a].resize(p);
    out.theta.resize(p);
    out.e_internal.resize(p);
    out.Y.assign(static_cast<std::size_t>(n), Field());
    for (int k = 0; k < n; ++k) out.Y[k].resize(p);

    for (std::size_t i = 0; i < p; ++i) {
        const double rho = fs.rho[i];
        if (!(rho > rho_floor))
            raise_positivity(fs.grid, PositivityError::What::density_floor, i, rho);
        const double inv_rho = 1.0 / rho;
        double ke = 0.0;
        for (int a = 0; a < dim; ++a) {
            const double u = fs.mom[a][i] * inv_rho;
            out.u[a][i] = u;
            ke += u * u;
        }
        double formation = 0.0;
        for (int k = 0; k < n; ++k) {
            const double y = fs.rhok[k][i] * inv_rho;
            out.Y[k][i] = y;
            formation += y * mix.formation_energy[k];
        }
        const double e = fs.rhoE[i] * inv_rho - 0.5 * ke;
        out.e_internal[i] = e;
        const double theta = (e - formation - cold_energy(rho, mix.cold)) / mix.c_v;
        if (!(theta > 0.0))
            raise_positivity(fs.grid, PositivityError::What::nonpositive_temperature, i, theta);
        out.theta[i] = theta;
    }
}

void check_fieldset(const FieldSet& fs) {
    const std::size_t p = fs.points();
    if (fs.rho.size() != p || fs.rhoE.size() != p)
        throw std::invalid_argument("field set: size mismatch with grid");
    for (int a = 0; a < fs.grid.dim; ++a)
        if (fs.mom[a].size() != p) throw std::invalid_argument("field set: momentum size mismatch");
    if (fs.rhok.size() != static_cast<std::size_t>(fs.n_species))
        throw std::invalid_argument("field set: species count mismatch");
    for (const auto& r : fs.rhok)
        if (r.size() != p) throw std::invalid_argument("field set: species size mismatch");
    for (std::size_t i = 0; i < p; ++i) {
        if (!(fs.rho[i] > 0.0)) throw std::invalid_argument("field set: nonpositive density");
        double sum = 0.0;
        for (const auto& r : fs.rhok) {
            if (r[i] < -1e-12 * fs.rho[i])
                throw std::invalid_argument("field set: negative species density");
            sum += r[i];
        }
        if (std::abs(sum - fs.rho[i]) > 1e-10 * fs.rho[i])
            throw std::invalid_argument("field set: species densities do not sum to density");
    }
}

}  // namespace nsf

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsf/grid.hpp"
#include "nsf/thermo.hpp"

namespace nsf {

// Conservative unknowns on a grid: density, momentum components, total
// energy density, and per-species partial densities.
struct FieldSet {
    Grid grid;
    int n_species = 0;
    Field rho;
    std::array<Field, 3> mom;
    Field rhoE;
    std::vector<Field> rhok;

    static FieldSet zeros(const Grid& grid, int n_species);
    static FieldSet like(const FieldSet& other);  // same shape, zero-filled

    std::size_t points() const { return grid.points(); }
    void fill(double value);

    template <class F>
    void for_each_component(F&& f) {
        f(rho);
        for (int a = 0; a < grid.dim; ++a) f(mom[a]);
        f(rhoE);
        for (auto& r : rhok) f(r);
    }

    template <class F>
    void for_each_component(F&& f) const {
        f(rho);
        for (int a = 0; a < grid.dim; ++a) f(mom[a]);
        f(rhoE);
        for (const auto& r : rhok) f(r);
    }
};

// y += a * x, componentwise over all conservative fields.
void axpy(double a, const FieldSet& x, FieldSet& y);

// Recovered pointwise primitives.
struct Primitives {
    std::array<Field, 3> u;
    Field theta;
    Field e_internal;
    std::vector<Field> Y;
};

// Recovery failure: the state left the physically meaningful set.
struct PositivityError : std::runtime_error {
    enum class What { density_floor, nonpositive_temperature };
    What what_failed;
    std::size_t flat_index;
    std::array<int, 3> grid_index;
    double value;

    PositivityError(What w, std::size_t flat, const std::array<int, 3>& idx, double v,
                    const std::string& msg)
        : std::runtime_error(msg), what_failed(w), flat_index(flat), grid_index(idx), value(v) {}
};

// Algebraic inversion of the conservative variables. Temperature recovery
// is exact because the internal energy is affine in theta at fixed (rho, Y).
// Throws PositivityError with the offending location on rho <= rho_floor or
// theta <= 0. Output fields are resized as needed.
void recover_primitives(const FieldSet& fs, const MixtureSpec& mix, double rho_floor,
                        Primitives& out);

// Structural checks used on freshly built or reloaded states: positive
// density and species densities consistent with the total.
void check_fieldset(const FieldSet& fs);

}  // namespace nsf

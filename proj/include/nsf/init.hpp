#pragma once

#include "nsf/config.hpp"
#include "nsf/diagnostics.hpp"
#include "nsf/fields.hpp"

namespace nsf {

// Finite-ness and positivity witnesses of a freshly built state, reported
// so a run log starts with the discrete analogs of the initial-data
// hypotheses (finite mass, finite energy and density-gradient functionals,
// no vacuum).
struct InitialConditionReport {
    double total_mass = 0.0;
    double total_energy = 0.0;
    double bd_functional = 0.0;
    PositivityReport positivity;
};

// Builds the conservative fields selected by cfg.initial_condition:
//   uniform_perturbation  base state with seeded sinusoidal perturbations
//   mixing_layer          two species, smooth periodic tanh interface in Y
//   manufactured          exact traveling-wave slice at t = 0
// Throws std::invalid_argument if the requested amplitudes push density,
// temperature, or a mass fraction out of its admissible range anywhere.
FieldSet make_initial_condition(const RunConfig& cfg, InitialConditionReport* report = nullptr);

}  // namespace nsf

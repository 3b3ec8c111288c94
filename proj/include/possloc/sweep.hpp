#pragma once

#include <vector>

#include "possloc/geometry.hpp"

namespace possloc {

enum class Family { Hardy, GenHardy };

struct SweepResult {
    std::vector<double> best_params;  // hardy: (theta, p2); gen_hardy: (theta, a, b)
    double best_value = 0;
    long evaluations = 0;
};

// Deterministic nested grid search (resolution points per axis, two
// refinement rounds shrinking the span by 8) maximizing the paradoxical
// probability of the generated tables.  Invalid parameter tuples score 0.
// The gen_hardy x-chord is derived per tuple: the chord through the reduced
// state parallel to the chord joining antipode(A) and antipode(B), the
// placement that maximizes the povm-validity margin.  Ties resolve to the
// lexicographically smallest parameter tuple.
SweepResult sweep_paradox(Family family, int resolution, int jobs = 1);

}  // namespace possloc

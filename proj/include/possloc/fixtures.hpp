#pragma once

#include <string>
#include <vector>

#include "possloc/table.hpp"

namespace possloc {

// Named constant tables: chsh, hardy_pattern, pr_box, gen_hardy, bad_array.
// Fixtures carry symbolic row/column labels.  Throws on unknown names.
PossibilityTable fixture(const std::string& name);

std::vector<std::string> fixture_names();

// The CHSH probability table (the upper table of the same experiment);
// possibilize() of it reproduces fixture("chsh").
ProbabilityTable chsh_probabilities();

}  // namespace possloc

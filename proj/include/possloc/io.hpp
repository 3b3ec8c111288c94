#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "possloc/table.hpp"

namespace possloc {

using ParsedTable = std::variant<PossibilityTable, ProbabilityTable>;

// POSSLOC/PROBLOC v1.  Errors carry the offending line number.
ParsedTable parse_table(std::istream& in);
ParsedTable parse_table(const std::string& text);

std::string serialize_table(const PossibilityTable& table);
std::string serialize_table(const ProbabilityTable& table);

// `event=(A;b_perp)` with labels, `event=(a,i;b,l)` without.
std::string format_event(const PossibilityTable& table, const Event& e);

// Certificate text: verdict line, then one grid per line
// `A: o1 .. on | B: o1 .. om`.
struct LocalityVerdict;  // solver.hpp
std::string serialize_certificate(const PossibilityTable& table, const LocalityVerdict& v);
LocalityVerdict parse_certificate(std::istream& in, const Scenario& scenario);

}  // namespace possloc

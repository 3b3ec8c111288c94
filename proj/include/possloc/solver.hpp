#pragma once

#include <optional>
#include <vector>

#include "possloc/table.hpp"

namespace possloc {

enum class Locality { Local, Nonlocal };

// Local: `certificate` covers every 1-entry with consistent grids.
// Nonlocal: `witness` is the row-major-first 1-entry with no consistent
// extension.  `signalling_warning` flags tables violating no-signalling
// (they are still decided).
struct LocalityVerdict {
    Locality status = Locality::Local;
    std::vector<DeterministicGrid> certificate;
    std::optional<Event> witness;
    bool signalling_warning = false;
};

// Backtracking extension of a possible event to a full deterministic grid.
// Measurements are expanded in ascending live-outcome order (fail-first),
// ties broken by index, Alice before Bob.  nullopt = NotExtendable.
// Throws if the event is a 0-entry.
std::optional<DeterministicGrid> extend_event(const PossibilityTable& table, const Event& e);

LocalityVerdict decide_local(const PossibilityTable& table);

// True iff every certificate grid is consistent and the grid supports cover
// all 1-entries.  Throws on a Nonlocal verdict (certificates only exist for
// Local ones).
bool verify_certificate(const PossibilityTable& table, const LocalityVerdict& v);

// The two-outcome four-context obstruction: t[(a1,α),(b1,β)] = 1 while
// t[(a1,α),(b2,1−β′)] = t[(a2,1−α′),(b1,β)] = t[(a2,α′),(b2,β′)] = 0.
struct HardyPattern {
    int a1 = 0, a2 = 0, b1 = 0, b2 = 0;
    int alpha = 0, beta = 0, alpha_prime = 0, beta_prime = 0;

    bool operator==(const HardyPattern&) const = default;
};

// Scans ordered pairs of distinct 2-outcome measurements on each side and
// all 16 outcome labelings; first hit wins.  Complete for no-signalling
// two-outcome tables; 3-outcome measurements are skipped.
std::optional<HardyPattern> hardy_scan(const PossibilityTable& table);

// Max probability of a possible event with no local explanation, on the
// possibilization at the default eps; 0 when the table is local.
double paradoxical_probability(const ProbabilityTable& table);

}  // namespace possloc

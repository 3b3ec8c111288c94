#pragma once

#include <map>
#include <optional>

#include "possloc/cnf.hpp"
#include "possloc/table.hpp"

namespace possloc {

struct ClauseOrigin {
    int original_clause = 0;
    int part = 0;  // 0 = unsplit image, 1 / 2 = the split pair
};

// Bookkeeping for the validity transform: the two fresh variables, the
// bridge variable of every split clause, and per-output-clause provenance.
struct HardenMap {
    int x_var = -1;
    int y_var = -1;
    std::map<int, int> bridge_vars;  // original clause -> z variable
    std::vector<ClauseOrigin> provenance;
};

// The 0-valid/1-valid transform.  Output invariants: x occurs only in ¬x
// literals, y only positively; the image of every original clause contains
// ¬x or y; validity(output) = (true, true);
// satisfiable(C) <=> is_r_robust(harden(C), 2).
//
// Rules (input must be normalized; clauses of 1..3 literals):
//   (l)          -> (l ∨ ¬x ∨ y)
//   (l1 ∨ l2)    -> (l1 ∨ l2 ∨ ζ) ∧ (ζ̄ ∨ ¬x ∨ y)
//   (l1∨l2∨l3)   -> append w = ¬x when the clause has >=2 positive literals,
//                    else y; split (l1∨l2∨l3∨w) into
//                    (l1 ∨ l2 ∨ ζ) ∧ (ζ̄ ∨ l3 ∨ w)
// with a fresh bridge z per split and ζ = ¬z exactly when l1, l2 are both
// positive (each sub-clause then carries one positive and one negative
// literal).
std::pair<CnfInstance, HardenMap> harden(const CnfInstance& cnf);

// The variable<->measurement / clause<->measurement / position<->outcome
// correspondence of the gadget encoding, plus the encoded literals.
struct EncodingMap {
    int num_vars = 0;
    std::vector<Clause> clause_literals;     // literal at (clause, position)
    std::vector<int> var_to_meas, meas_to_var;
    std::vector<int> clause_to_meas, meas_to_clause;
};

// One 2-outcome Alice measurement per variable, one 3-outcome Bob
// measurement per clause; block (variable, clause) is all ones except a
// single 0 at (value falsifying the literal, its position).  Requires every
// clause to have exactly 3 literals over distinct variables.
std::pair<PossibilityTable, EncodingMap> encode_possloc(const CnfInstance& cnf);

// Assignment read off the Alice rows of a grid consistent with the encoded
// table; throws if the grid selects a falsified literal.
Assignment decode_grid(const EncodingMap& map, const DeterministicGrid& grid);

struct EntryCounterexample {
    Fixing fixing;       // the row-value fixing
    int clause = 0;      // the column whose chosen position has no extension
    int position = 0;
    Literal literal;     // the literal at that position
};

struct EntryRobustness {
    bool robust = true;
    std::optional<EntryCounterexample> counterexample;
};

// Restriction of 2-robustness to the fixing pairs induced by table entries:
// for every (variable=value, clause position with a 1 at that row) there
// must be a satisfying assignment with that value and that literal true.
// Entries scanned row-major: (variable, value) outer, (clause, position)
// inner; the first failing pair is returned.
EntryRobustness is_entry_robust(const CnfInstance& cnf);

}  // namespace possloc

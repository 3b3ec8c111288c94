#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace possloc {

struct Literal {
    int var = 0;           // 0-based
    bool positive = true;

    Literal negated() const { return {var, !positive}; }
    bool operator==(const Literal&) const = default;
    auto operator<=>(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

struct CnfInstance {
    int num_vars = 0;
    std::vector<Clause> clauses;

    bool operator==(const CnfInstance&) const = default;
};

// Dedupe literals inside clauses, drop tautological clauses, drop duplicate
// clauses (set-equal, first occurrence kept).  Literal order is preserved.
CnfInstance normalize(const CnfInstance& cnf);
bool is_normalized(const CnfInstance& cnf);

// DIMACS CNF.  Clauses longer than 3 literals are rejected.
CnfInstance parse_dimacs(std::istream& in);
CnfInstance parse_dimacs(const std::string& text);
std::string serialize_dimacs(const CnfInstance& cnf);

using Assignment = std::vector<bool>;  // one value per variable

bool clause_satisfied(const Clause& clause, const Assignment& a);
bool satisfies(const CnfInstance& cnf, const Assignment& a);

struct Fixing {
    int variable = 0;
    bool value = false;

    bool operator==(const Fixing&) const = default;
};

// Exhaustive backtracking oracle (unit propagation + branching); correctness
// is the contract, speed is not.  num_vars <= 30.
std::optional<Assignment> satisfiable(const CnfInstance& cnf);
std::optional<Assignment> satisfiable_with(const CnfInstance& cnf,
                                           const std::vector<Fixing>& fixings);

// (is_0_valid, is_1_valid): satisfied by the all-false / all-true assignment.
std::pair<bool, bool> validity(const CnfInstance& cnf);

struct Robustness {
    bool robust = true;
    std::vector<Fixing> counterexample;  // a fixing set with no extension
};

// Checks all C(n,r)·2^r fixing sets; r = 0 degenerates to satisfiability.
// num_vars <= 20.
Robustness is_r_robust(const CnfInstance& cnf, int r);

}  // namespace possloc

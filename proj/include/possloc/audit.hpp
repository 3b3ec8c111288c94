#pragma once

#include <cstdint>
#include <string>

#include "possloc/reduction.hpp"
#include "possloc/rng.hpp"

namespace possloc {

struct AuditRecord {
    CnfInstance instance;
    bool two_robust = false;
    bool entry_robust = false;
    bool table_local = false;
};

struct AuditReport {
    int max_vars = 0;
    int max_clauses = 0;
    long sample_count = 0;  // 0 = exhaustive enumeration
    uint64_t seed = 0;

    long total = 0;
    long local_and_robust = 0;
    long local_not_robust = 0;
    long nonlocal_not_robust = 0;
    long sound_violations = 0;    // 2-robust but table Nonlocal (must stay 0)
    long entry_divergences = 0;   // entry-robust XOR table-local (must stay 0)
    std::vector<AuditRecord> divergences;  // instances where local != 2-robust

    std::string to_text() const;
};

// For each instance D: is_r_robust(D,2), is_entry_robust(D),
// decide_local(encode_possloc(D)).  sample_count = 0 enumerates every
// non-empty set of <= max_clauses distinct normalized 3-literal clauses over
// exactly max_vars variables; otherwise draws seeded random instances.
// Deterministic merged output for any `jobs`.
AuditReport audit_equivalence(int max_vars, int max_clauses, long sample_count,
                              uint64_t seed, int jobs = 1);

// Seeded random normalized 3-CNF with clauses over distinct variables.
CnfInstance random_cnf3(int num_vars, int max_clauses, SplitMix64& rng);

}  // namespace possloc

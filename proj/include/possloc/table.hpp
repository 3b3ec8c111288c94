#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "possloc/scenario.hpp"

namespace possloc {

inline constexpr double kDefaultEps = 1e-9;
inline constexpr double kContextSumTol = 1e-9;

// One fixed outcome per measurement per party.  Consistent with a table if
// every context pair it selects is a possible event.
struct DeterministicGrid {
    std::vector<int> alice_choice;
    std::vector<int> bob_choice;

    bool operator==(const DeterministicGrid&) const = default;
};

// ---------------------------------------------------------------------------
// PossibilityTable: dense bit table, packed per subrow.
// ---------------------------------------------------------------------------
class PossibilityTable {
public:
    PossibilityTable(Scenario scenario, bool fill = true);

    const Scenario& scenario() const { return scenario_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int row_index(int alice_meas, int alice_outcome) const {
        return row_offset_[alice_meas] + alice_outcome;
    }
    int col_index(int bob_meas, int bob_outcome) const {
        return col_offset_[bob_meas] + bob_outcome;
    }

    bool get(int alice_meas, int alice_outcome, int bob_meas, int bob_outcome) const {
        return get_rc(row_index(alice_meas, alice_outcome), col_index(bob_meas, bob_outcome));
    }
    bool get(const Event& e) const {
        return get(e.alice_meas, e.alice_outcome, e.bob_meas, e.bob_outcome);
    }
    void set(int alice_meas, int alice_outcome, int bob_meas, int bob_outcome, bool v) {
        set_rc(row_index(alice_meas, alice_outcome), col_index(bob_meas, bob_outcome), v);
    }
    void set(const Event& e, bool v) {
        set(e.alice_meas, e.alice_outcome, e.bob_meas, e.bob_outcome, v);
    }
    bool get_rc(int row, int col) const {
        return (words_[static_cast<size_t>(row) * stride_ + col / 64] >> (col % 64)) & 1u;
    }
    void set_rc(int row, int col, bool v) {
        uint64_t& w = words_[static_cast<size_t>(row) * stride_ + col / 64];
        uint64_t m = uint64_t{1} << (col % 64);
        if (v) w |= m; else w &= ~m;
    }

    long ones_count() const;
    bool operator==(const PossibilityTable& o) const {
        return scenario_ == o.scenario_ && words_ == o.words_;
    }

    // Optional symbolic labels (one per subrow / subcolumn), used when
    // printing witnesses; empty when absent.
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

    std::string row_label(int r) const;
    std::string col_label(int c) const;

private:
    Scenario scenario_;
    std::vector<int> row_offset_, col_offset_;
    int rows_ = 0, cols_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> words_;
};

// ---------------------------------------------------------------------------
// ProbabilityTable: dense reals, every context must sum to 1 within 1e-9.
// ---------------------------------------------------------------------------
class ProbabilityTable {
public:
    explicit ProbabilityTable(Scenario scenario);

    const Scenario& scenario() const { return scenario_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int row_index(int alice_meas, int alice_outcome) const {
        return row_offset_[alice_meas] + alice_outcome;
    }
    int col_index(int bob_meas, int bob_outcome) const {
        return col_offset_[bob_meas] + bob_outcome;
    }
    double get(int a, int i, int b, int l) const {
        return probs_[static_cast<size_t>(row_index(a, i)) * cols_ + col_index(b, l)];
    }
    double get(const Event& e) const {
        return get(e.alice_meas, e.alice_outcome, e.bob_meas, e.bob_outcome);
    }
    void set(int a, int i, int b, int l, double v) {
        probs_[static_cast<size_t>(row_index(a, i)) * cols_ + col_index(b, l)] = v;
    }
    double get_rc(int row, int col) const {
        return probs_[static_cast<size_t>(row) * cols_ + col];
    }
    void set_rc(int row, int col, double v) {
        probs_[static_cast<size_t>(row) * cols_ + col] = v;
    }

    // Throws if an entry is outside [0,1] or a context does not sum to 1.
    void validate() const;

    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;

private:
    Scenario scenario_;
    std::vector<int> row_offset_, col_offset_;
    int rows_ = 0, cols_ = 0;
    std::vector<double> probs_;
};

// ---------------------------------------------------------------------------
// Structural checks and transforms
// ---------------------------------------------------------------------------

// A no-signalling violation: the named outcome's possibility marginal
// depends on the other party's choice between the two named contexts.
struct Violation {
    bool alice_side = true;  // party whose marginal disagrees
    int meas = 0;
    int outcome = 0;
    int context_a = 0;  // the two disagreeing other-party measurements
    int context_b = 0;

    bool operator==(const Violation&) const = default;
};

std::vector<Violation> check_no_signalling(const PossibilityTable& table);

// bit = 1 iff prob > eps (strict).
PossibilityTable possibilize(const ProbabilityTable& table, double eps = kDefaultEps);

// True iff the grid touches only possible entries.  Throws on shape mismatch.
bool grid_consistent(const PossibilityTable& table, const DeterministicGrid& grid);

// One outcome-pair merge on one 3-outcome measurement.
struct Merge {
    bool alice_side = false;
    int meas = 0;
    std::array<int, 2> merged{0, 1};  // the two outcome indices OR-ed together
};

struct CoarseGraining {
    std::vector<Merge> merges;  // one per 3-outcome measurement
    PossibilityTable table;
    std::string description() const;
};

// Every way to merge one outcome pair in each 3-outcome measurement
// (Cartesian product over such measurements).  Rejects >3-outcome
// measurements.  Empty when no measurement has 3 outcomes.
std::vector<CoarseGraining> coarse_grainings(const PossibilityTable& table);

}  // namespace possloc

#pragma once

#include <compare>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace possloc {

// A bipartite measurement scenario: one outcome count per measurement on
// each side.  j = max Alice outcomes, k = max Bob outcomes give the
// (j,k)-class of the scenario.
struct Scenario {
    std::vector<int> alice_outcomes;
    std::vector<int> bob_outcomes;

    int alice_measurements() const { return static_cast<int>(alice_outcomes.size()); }
    int bob_measurements() const { return static_cast<int>(bob_outcomes.size()); }

    // Total subrow / subcolumn counts of the displayed table.
    int total_rows() const {
        return std::accumulate(alice_outcomes.begin(), alice_outcomes.end(), 0);
    }
    int total_cols() const {
        return std::accumulate(bob_outcomes.begin(), bob_outcomes.end(), 0);
    }

    int max_alice_outcomes() const {
        int j = 0;
        for (int k : alice_outcomes) j = std::max(j, k);
        return j;
    }
    int max_bob_outcomes() const {
        int k = 0;
        for (int l : bob_outcomes) k = std::max(k, l);
        return k;
    }

    void validate() const {
        if (alice_outcomes.empty() || bob_outcomes.empty())
            throw std::invalid_argument("scenario: each party needs at least one measurement");
        for (int k : alice_outcomes)
            if (k < 1) throw std::invalid_argument("scenario: outcome count must be >= 1");
        for (int k : bob_outcomes)
            if (k < 1) throw std::invalid_argument("scenario: outcome count must be >= 1");
    }

    bool operator==(const Scenario&) const = default;
};

// One joint outcome of one context.
struct Event {
    int alice_meas = 0;
    int alice_outcome = 0;
    int bob_meas = 0;
    int bob_outcome = 0;

    auto operator<=>(const Event&) const = default;
};

}  // namespace possloc

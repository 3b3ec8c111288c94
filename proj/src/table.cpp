#include "possloc/table.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace possloc {

namespace {

std::vector<int> offsets_of(const std::vector<int>& counts) {
    std::vector<int> off(counts.size());
    int acc = 0;
    for (size_t i = 0; i < counts.size(); ++i) {
        off[i] = acc;
        acc += counts[i];
    }
    return off;
}

}  // namespace

PossibilityTable::PossibilityTable(Scenario scenario, bool fill)
    : scenario_(std::move(scenario)) {
    scenario_.validate();
    row_offset_ = offsets_of(scenario_.alice_outcomes);
    col_offset_ = offsets_of(scenario_.bob_outcomes);
    rows_ = scenario_.total_rows();
    cols_ = scenario_.total_cols();
    stride_ = (static_cast<size_t>(cols_) + 63) / 64;
    words_.assign(static_cast<size_t>(rows_) * stride_, 0);
    if (fill) {
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) set_rc(r, c, true);
    }
}

long PossibilityTable::ones_count() const {
    long n = 0;
    for (uint64_t w : words_) n += std::popcount(w);
    return n;
}

std::string PossibilityTable::row_label(int r) const {
    if (r >= 0 && r < static_cast<int>(row_labels.size()) && !row_labels[r].empty())
        return row_labels[r];
    // fall back to index form a,i resolved from offsets
    for (int a = scenario_.alice_measurements() - 1; a >= 0; --a) {
        if (row_offset_[a] <= r)
            return std::to_string(a) + "," + std::to_string(r - row_offset_[a]);
    }
    return std::to_string(r);
}

std::string PossibilityTable::col_label(int c) const {
    if (c >= 0 && c < static_cast<int>(col_labels.size()) && !col_labels[c].empty())
        return col_labels[c];
    for (int b = scenario_.bob_measurements() - 1; b >= 0; --b) {
        if (col_offset_[b] <= c)
            return std::to_string(b) + "," + std::to_string(c - col_offset_[b]);
    }
    return std::to_string(c);
}

ProbabilityTable::ProbabilityTable(Scenario scenario) : scenario_(std::move(scenario)) {
    scenario_.validate();
    row_offset_ = offsets_of(scenario_.alice_outcomes);
    col_offset_ = offsets_of(scenario_.bob_outcomes);
    rows_ = scenario_.total_rows();
    cols_ = scenario_.total_cols();
    probs_.assign(static_cast<size_t>(rows_) * cols_, 0.0);
}

void ProbabilityTable::validate() const {
    for (double p : probs_)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("probability table: entry outside [0,1]");
    for (int a = 0; a < scenario_.alice_measurements(); ++a) {
        for (int b = 0; b < scenario_.bob_measurements(); ++b) {
            double s = 0.0;
            for (int i = 0; i < scenario_.alice_outcomes[a]; ++i)
                for (int l = 0; l < scenario_.bob_outcomes[b]; ++l) s += get(a, i, b, l);
            if (std::fabs(s - 1.0) > kContextSumTol) {
                std::ostringstream os;
                os << "probability table: context (" << a << "," << b
                   << ") sums to " << s << ", not 1";
                throw std::invalid_argument(os.str());
            }
        }
    }
}

// ---------------------------------------------------------------------------

std::vector<Violation> check_no_signalling(const PossibilityTable& t) {
    std::vector<Violation> out;
    const Scenario& sc = t.scenario();
    const int n = sc.alice_measurements(), m = sc.bob_measurements();
    for (int a = 0; a < n; ++a) {
        for (int i = 0; i < sc.alice_outcomes[a]; ++i) {
            int first = -1;
            bool v0 = false;
            for (int b = 0; b < m; ++b) {
                bool v = false;
                for (int l = 0; l < sc.bob_outcomes[b]; ++l) v = v || t.get(a, i, b, l);
                if (b == 0) {
                    v0 = v;
                    continue;
                }
                if (v != v0) {
                    first = b;
                    break;
                }
            }
            if (first >= 0) out.push_back({true, a, i, 0, first});
        }
    }
    for (int b = 0; b < m; ++b) {
        for (int l = 0; l < sc.bob_outcomes[b]; ++l) {
            int first = -1;
            bool v0 = false;
            for (int a = 0; a < n; ++a) {
                bool v = false;
                for (int i = 0; i < sc.alice_outcomes[a]; ++i) v = v || t.get(a, i, b, l);
                if (a == 0) {
                    v0 = v;
                    continue;
                }
                if (v != v0) {
                    first = a;
                    break;
                }
            }
            if (first >= 0) out.push_back({false, b, l, 0, first});
        }
    }
    return out;
}

PossibilityTable possibilize(const ProbabilityTable& pt, double eps) {
    if (eps < 0) throw std::invalid_argument("possibilize: eps must be >= 0");
    PossibilityTable out(pt.scenario(), false);
    const Scenario& sc = pt.scenario();
    for (int a = 0; a < sc.alice_measurements(); ++a)
        for (int i = 0; i < sc.alice_outcomes[a]; ++i)
            for (int b = 0; b < sc.bob_measurements(); ++b)
                for (int l = 0; l < sc.bob_outcomes[b]; ++l)
                    out.set(a, i, b, l, pt.get(a, i, b, l) > eps);
    out.row_labels = pt.row_labels;
    out.col_labels = pt.col_labels;
    return out;
}

bool grid_consistent(const PossibilityTable& t, const DeterministicGrid& g) {
    const Scenario& sc = t.scenario();
    const int n = sc.alice_measurements(), m = sc.bob_measurements();
    if (static_cast<int>(g.alice_choice.size()) != n ||
        static_cast<int>(g.bob_choice.size()) != m)
        throw std::invalid_argument("grid_consistent: grid shape mismatch");
    for (int a = 0; a < n; ++a)
        if (g.alice_choice[a] < 0 || g.alice_choice[a] >= sc.alice_outcomes[a])
            throw std::invalid_argument("grid_consistent: alice outcome out of range");
    for (int b = 0; b < m; ++b)
        if (g.bob_choice[b] < 0 || g.bob_choice[b] >= sc.bob_outcomes[b])
            throw std::invalid_argument("grid_consistent: bob outcome out of range");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < m; ++b)
            if (!t.get(a, g.alice_choice[a], b, g.bob_choice[b])) return false;
    return true;
}

std::string CoarseGraining::description() const {
    std::ostringstream os;
    for (size_t i = 0; i < merges.size(); ++i) {
        if (i) os << ' ';
        const Merge& m = merges[i];
        os << (m.alice_side ? 'A' : 'B') << m.meas << '{' << m.merged[0] << ','
           << m.merged[1] << '}';
    }
    return os.str();
}

namespace {

// Outcome index remap after merging {p,q} of a 3-outcome measurement:
// merged pair lands at position min(p,q) in the 2-outcome result.
std::array<int, 3> merge_remap(int p, int q) {
    std::array<int, 3> map{};
    int other = 3 - p - q;
    if (other < std::min(p, q)) {
        map[other] = 0;
        map[p] = map[q] = 1;
    } else {
        map[p] = map[q] = 0;
        map[other] = 1;
    }
    return map;
}

constexpr std::array<std::array<int, 2>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

}  // namespace

std::vector<CoarseGraining> coarse_grainings(const PossibilityTable& t) {
    const Scenario& sc = t.scenario();
    for (int k : sc.alice_outcomes)
        if (k > 3) throw std::invalid_argument("coarse_grainings: >3-outcome measurement");
    for (int k : sc.bob_outcomes)
        if (k > 3) throw std::invalid_argument("coarse_grainings: >3-outcome measurement");

    std::vector<std::pair<bool, int>> targets;  // (alice_side, meas)
    for (int a = 0; a < sc.alice_measurements(); ++a)
        if (sc.alice_outcomes[a] == 3) targets.push_back({true, a});
    for (int b = 0; b < sc.bob_measurements(); ++b)
        if (sc.bob_outcomes[b] == 3) targets.push_back({false, b});
    if (targets.empty()) return {};

    std::vector<CoarseGraining> out;
    std::vector<int> choice(targets.size(), 0);
    for (;;) {
        Scenario merged_sc = sc;
        std::vector<Merge> merges(targets.size());
        for (size_t k = 0; k < targets.size(); ++k) {
            auto [alice, meas] = targets[k];
            merges[k] = {alice, meas, kPairs[choice[k]]};
            (alice ? merged_sc.alice_outcomes[meas] : merged_sc.bob_outcomes[meas]) = 2;
        }
        // outcome remaps per measurement on each side
        std::vector<std::array<int, 3>> amap(sc.alice_measurements()),
            bmap(sc.bob_measurements());
        for (int a = 0; a < sc.alice_measurements(); ++a) amap[a] = {0, 1, 2};
        for (int b = 0; b < sc.bob_measurements(); ++b) bmap[b] = {0, 1, 2};
        for (size_t k = 0; k < targets.size(); ++k) {
            auto m = merge_remap(merges[k].merged[0], merges[k].merged[1]);
            if (targets[k].first)
                amap[targets[k].second] = m;
            else
                bmap[targets[k].second] = m;
        }
        PossibilityTable mt(merged_sc, false);
        for (int a = 0; a < sc.alice_measurements(); ++a)
            for (int i = 0; i < sc.alice_outcomes[a]; ++i)
                for (int b = 0; b < sc.bob_measurements(); ++b)
                    for (int l = 0; l < sc.bob_outcomes[b]; ++l)
                        if (t.get(a, i, b, l))
                            mt.set(a, amap[a][i], b, bmap[b][l], true);
        out.push_back({std::move(merges), std::move(mt)});

        size_t k = 0;
        while (k < choice.size() && ++choice[k] == 3) choice[k++] = 0;
        if (k == choice.size()) break;
    }
    return out;
}

}  // namespace possloc

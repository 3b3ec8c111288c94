#include "possloc/solver.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace possloc {

namespace {

// Forward-checking backtracker over both parties' measurements.  Cross-party
// compatibility masks are precomputed once per table so decide_local can
// reuse them across every extension attempt.
class ExtensionSearcher {
public:
    explicit ExtensionSearcher(const PossibilityTable& t) : t_(t), sc_(t.scenario()) {
        n_ = sc_.alice_measurements();
        m_ = sc_.bob_measurements();
        for (int a = 0; a < n_; ++a)
            if (sc_.alice_outcomes[a] > 64)
                throw std::invalid_argument("extension search: >64 outcomes unsupported");
        for (int b = 0; b < m_; ++b)
            if (sc_.bob_outcomes[b] > 64)
                throw std::invalid_argument("extension search: >64 outcomes unsupported");
        // allowed_bob_[row][b]: Bob outcomes of measurement b compatible with
        // the Alice subrow; allowed_alice_[col][a] symmetric.
        allowed_bob_.assign(static_cast<size_t>(t.rows()) * m_, 0);
        allowed_alice_.assign(static_cast<size_t>(t.cols()) * n_, 0);
        for (int a = 0; a < n_; ++a)
            for (int i = 0; i < sc_.alice_outcomes[a]; ++i) {
                int r = t.row_index(a, i);
                for (int b = 0; b < m_; ++b) {
                    uint64_t mask = 0;
                    for (int l = 0; l < sc_.bob_outcomes[b]; ++l)
                        if (t.get(a, i, b, l)) mask |= uint64_t{1} << l;
                    allowed_bob_[static_cast<size_t>(r) * m_ + b] = mask;
                    for (int l = 0; l < sc_.bob_outcomes[b]; ++l)
                        if (t.get(a, i, b, l))
                            allowed_alice_[static_cast<size_t>(t.col_index(b, l)) * n_ + a] |=
                                uint64_t{1} << i;
                }
            }
    }

    std::optional<DeterministicGrid> extend(const Event& e) {
        if (!t_.get(e)) throw std::invalid_argument("extend_event: event is a 0-entry");
        live_.assign(n_ + m_, 0);
        assigned_.assign(n_ + m_, -1);
        for (int a = 0; a < n_; ++a)
            live_[a] = full_mask(sc_.alice_outcomes[a]);
        for (int b = 0; b < m_; ++b)
            live_[n_ + b] = full_mask(sc_.bob_outcomes[b]);
        if (!assign(e.alice_meas, e.alice_outcome)) return std::nullopt;
        if (!assign(n_ + e.bob_meas, e.bob_outcome)) return std::nullopt;
        if (!search()) return std::nullopt;
        DeterministicGrid g;
        g.alice_choice.assign(assigned_.begin(), assigned_.begin() + n_);
        g.bob_choice.assign(assigned_.begin() + n_, assigned_.end());
        return g;
    }

private:
    static uint64_t full_mask(int k) {
        return k == 64 ? ~uint64_t{0} : (uint64_t{1} << k) - 1;
    }

    // Assign measurement `v` (global index) to outcome `o`, pruning the other
    // side's live sets.  Returns false on a wipeout.
    bool assign(int v, int o) {
        assigned_[v] = o;
        live_[v] = uint64_t{1} << o;
        if (v < n_) {
            int r = t_.row_index(v, o);
            for (int b = 0; b < m_; ++b) {
                int u = n_ + b;
                live_[u] &= allowed_bob_[static_cast<size_t>(r) * m_ + b];
                if (live_[u] == 0) return false;
            }
        } else {
            int c = t_.col_index(v - n_, o);
            for (int a = 0; a < n_; ++a) {
                live_[a] &= allowed_alice_[static_cast<size_t>(c) * n_ + a];
                if (live_[a] == 0) return false;
            }
        }
        return true;
    }

    bool search() {
        int best = -1, best_count = 65;
        for (int v = 0; v < n_ + m_; ++v) {
            if (assigned_[v] >= 0) continue;
            int cnt = std::popcount(live_[v]);
            if (cnt < best_count) {
                best_count = cnt;
                best = v;
            }
        }
        if (best < 0) return true;
        std::vector<uint64_t> saved_live = live_;
        uint64_t options = live_[best];
        while (options) {
            int o = std::countr_zero(options);
            options &= options - 1;
            if (assign(best, o) && search()) return true;
            live_ = saved_live;
            assigned_[best] = -1;
        }
        return false;
    }

    const PossibilityTable& t_;
    const Scenario& sc_;
    int n_ = 0, m_ = 0;
    std::vector<uint64_t> allowed_bob_, allowed_alice_;
    std::vector<uint64_t> live_;
    std::vector<int> assigned_;
};

}  // namespace

std::optional<DeterministicGrid> extend_event(const PossibilityTable& t, const Event& e) {
    ExtensionSearcher s(t);
    return s.extend(e);
}

LocalityVerdict decide_local(const PossibilityTable& t) {
    const Scenario& sc = t.scenario();
    const int n = sc.alice_measurements(), m = sc.bob_measurements();
    LocalityVerdict v;
    v.signalling_warning = !check_no_signalling(t).empty();
    ExtensionSearcher searcher(t);
    std::vector<uint8_t> covered(static_cast<size_t>(t.rows()) * t.cols(), 0);
    for (int a = 0; a < n; ++a) {
        for (int i = 0; i < sc.alice_outcomes[a]; ++i) {
            int r = t.row_index(a, i);
            for (int b = 0; b < m; ++b) {
                for (int l = 0; l < sc.bob_outcomes[b]; ++l) {
                    int c = t.col_index(b, l);
                    if (!t.get_rc(r, c) || covered[static_cast<size_t>(r) * t.cols() + c])
                        continue;
                    Event e{a, i, b, l};
                    auto grid = searcher.extend(e);
                    if (!grid) {
                        v.status = Locality::Nonlocal;
                        v.witness = e;
                        v.certificate.clear();
                        return v;
                    }
                    // A found grid covers its whole support.
                    for (int aa = 0; aa < n; ++aa) {
                        int rr = t.row_index(aa, grid->alice_choice[aa]);
                        for (int bb = 0; bb < m; ++bb) {
                            int cc = t.col_index(bb, grid->bob_choice[bb]);
                            covered[static_cast<size_t>(rr) * t.cols() + cc] = 1;
                        }
                    }
                    v.certificate.push_back(std::move(*grid));
                }
            }
        }
    }
    v.status = Locality::Local;
    return v;
}

bool verify_certificate(const PossibilityTable& t, const LocalityVerdict& v) {
    if (v.status != Locality::Local)
        throw std::invalid_argument("verify_certificate: certificates only exist for Local verdicts");
    const Scenario& sc = t.scenario();
    const int n = sc.alice_measurements(), m = sc.bob_measurements();
    std::vector<uint8_t> covered(static_cast<size_t>(t.rows()) * t.cols(), 0);
    for (const DeterministicGrid& g : v.certificate) {
        if (!grid_consistent(t, g)) return false;
        for (int a = 0; a < n; ++a) {
            int r = t.row_index(a, g.alice_choice[a]);
            for (int b = 0; b < m; ++b)
                covered[static_cast<size_t>(r) * t.cols() + t.col_index(b, g.bob_choice[b])] = 1;
        }
    }
    for (int r = 0; r < t.rows(); ++r)
        for (int c = 0; c < t.cols(); ++c)
            if (t.get_rc(r, c) && !covered[static_cast<size_t>(r) * t.cols() + c]) return false;
    return true;
}

std::optional<HardyPattern> hardy_scan(const PossibilityTable& t) {
    const Scenario& sc = t.scenario();
    std::vector<int> alice2, bob2;
    for (int a = 0; a < sc.alice_measurements(); ++a)
        if (sc.alice_outcomes[a] == 2) alice2.push_back(a);
    for (int b = 0; b < sc.bob_measurements(); ++b)
        if (sc.bob_outcomes[b] == 2) bob2.push_back(b);

    for (int a1 : alice2)
        for (int a2 : alice2) {
            if (a1 == a2) continue;
            for (int b1 : bob2)
                for (int b2 : bob2) {
                    if (b1 == b2) continue;
                    for (int al = 0; al < 2; ++al)
                        for (int be = 0; be < 2; ++be)
                            for (int alp = 0; alp < 2; ++alp)
                                for (int bep = 0; bep < 2; ++bep) {
                                    if (t.get(a1, al, b1, be) &&
                                        !t.get(a1, al, b2, 1 - bep) &&
                                        !t.get(a2, 1 - alp, b1, be) &&
                                        !t.get(a2, alp, b2, bep))
                                        return HardyPattern{a1, a2, b1, b2, al, be, alp, bep};
                                }
                }
        }
    return std::nullopt;
}

double paradoxical_probability(const ProbabilityTable& pt) {
    PossibilityTable bits = possibilize(pt, kDefaultEps);
    ExtensionSearcher searcher(bits);
    const Scenario& sc = bits.scenario();
    double best = 0.0;
    for (int a = 0; a < sc.alice_measurements(); ++a)
        for (int i = 0; i < sc.alice_outcomes[a]; ++i)
            for (int b = 0; b < sc.bob_measurements(); ++b)
                for (int l = 0; l < sc.bob_outcomes[b]; ++l) {
                    Event e{a, i, b, l};
                    if (!bits.get(e)) continue;
                    if (!searcher.extend(e)) best = std::max(best, pt.get(e));
                }
    return best;
}

}  // namespace possloc

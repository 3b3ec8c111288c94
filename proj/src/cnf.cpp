#include "possloc/cnf.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace possloc {

CnfInstance normalize(const CnfInstance& cnf) {
    CnfInstance out;
    out.num_vars = cnf.num_vars;
    std::set<std::vector<Literal>> seen;
    for (const Clause& cl : cnf.clauses) {
        Clause dedup;
        bool taut = false;
        for (const Literal& l : cl) {
            if (l.var < 0 || l.var >= cnf.num_vars)
                throw std::invalid_argument("normalize: variable index out of range");
            if (std::find(dedup.begin(), dedup.end(), l) != dedup.end()) continue;
            if (std::find(dedup.begin(), dedup.end(), l.negated()) != dedup.end()) {
                taut = true;
                break;
            }
            dedup.push_back(l);
        }
        if (taut) continue;
        std::vector<Literal> key = dedup;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) continue;
        out.clauses.push_back(std::move(dedup));
    }
    return out;
}

bool is_normalized(const CnfInstance& cnf) { return normalize(cnf) == cnf; }

CnfInstance parse_dimacs(std::istream& in) {
    std::string tok;
    CnfInstance cnf;
    long declared_clauses = -1;
    bool have_header = false;
    Clause current;
    bool in_clause = false;
    while (in >> tok) {
        if (tok == "c") {
            std::string rest;
            std::getline(in, rest);
            continue;
        }
        if (tok == "p") {
            std::string kind;
            long nv = 0, nc = 0;
            if (!(in >> kind >> nv >> nc) || kind != "cnf" || nv < 0 || nc < 0)
                throw std::invalid_argument("dimacs: malformed 'p cnf' header");
            cnf.num_vars = static_cast<int>(nv);
            declared_clauses = nc;
            have_header = true;
            continue;
        }
        if (!have_header) throw std::invalid_argument("dimacs: literal before 'p cnf' header");
        long v;
        try {
            v = std::stol(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("dimacs: bad token '" + tok + "'");
        }
        if (v == 0) {
            if (current.size() > 3)
                throw std::invalid_argument("dimacs: clause too long (this artifact is 3-SAT)");
            cnf.clauses.push_back(current);
            current.clear();
            in_clause = false;
            continue;
        }
        int var = static_cast<int>(std::labs(v)) - 1;
        if (var >= cnf.num_vars)
            throw std::invalid_argument("dimacs: literal exceeds declared variable count");
        current.push_back({var, v > 0});
        in_clause = true;
    }
    if (in_clause) throw std::invalid_argument("dimacs: missing terminating 0 on last clause");
    if (declared_clauses >= 0 && declared_clauses != static_cast<long>(cnf.clauses.size()))
        throw std::invalid_argument("dimacs: clause count disagrees with header");
    return cnf;
}

CnfInstance parse_dimacs(const std::string& text) {
    std::istringstream is(text);
    return parse_dimacs(is);
}

std::string serialize_dimacs(const CnfInstance& cnf) {
    std::ostringstream os;
    os << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const Clause& cl : cnf.clauses) {
        for (const Literal& l : cl) os << (l.positive ? l.var + 1 : -(l.var + 1)) << ' ';
        os << "0\n";
    }
    return os.str();
}

bool clause_satisfied(const Clause& clause, const Assignment& a) {
    for (const Literal& l : clause)
        if (a[l.var] == l.positive) return true;
    return false;
}

bool satisfies(const CnfInstance& cnf, const Assignment& a) {
    for (const Clause& cl : cnf.clauses)
        if (!clause_satisfied(cl, a)) return false;
    return true;
}

namespace {

// -1 unassigned / 0 / 1.
using State = std::vector<int8_t>;

enum class Propagate { Ok, Conflict, Satisfied };

Propagate propagate_units(const CnfInstance& cnf, State& s) {
    for (;;) {
        bool changed = false, all_sat = true;
        for (const Clause& cl : cnf.clauses) {
            int unassigned = 0;
            const Literal* unit = nullptr;
            bool sat = false;
            for (const Literal& l : cl) {
                int8_t v = s[l.var];
                if (v < 0) {
                    ++unassigned;
                    unit = &l;
                } else if ((v == 1) == l.positive) {
                    sat = true;
                    break;
                }
            }
            if (sat) continue;
            all_sat = false;
            if (unassigned == 0) return Propagate::Conflict;
            if (unassigned == 1) {
                s[unit->var] = unit->positive ? 1 : 0;
                changed = true;
            }
        }
        if (all_sat) return Propagate::Satisfied;
        if (!changed) return Propagate::Ok;
    }
}

bool dpll(const CnfInstance& cnf, State& s) {
    switch (propagate_units(cnf, s)) {
        case Propagate::Conflict: return false;
        case Propagate::Satisfied: return true;
        case Propagate::Ok: break;
    }
    int var = -1;
    for (int v = 0; v < cnf.num_vars; ++v)
        if (s[v] < 0) {
            var = v;
            break;
        }
    if (var < 0) return false;  // all assigned yet not satisfied => conflict missed above
    for (int8_t val : {int8_t{0}, int8_t{1}}) {
        State saved = s;
        s[var] = val;
        if (dpll(cnf, s)) return true;
        s = saved;
    }
    return false;
}

std::optional<Assignment> solve(const CnfInstance& cnf, const std::vector<Fixing>& fixings,
                                int max_vars) {
    if (cnf.num_vars > max_vars)
        throw std::invalid_argument("sat oracle: instance too large (num_vars > " +
                                    std::to_string(max_vars) + ")");
    State s(cnf.num_vars, -1);
    for (const Fixing& f : fixings) {
        if (f.variable < 0 || f.variable >= cnf.num_vars)
            throw std::invalid_argument("sat oracle: fixing variable out of range");
        if (s[f.variable] >= 0 && s[f.variable] != (f.value ? 1 : 0)) return std::nullopt;
        s[f.variable] = f.value ? 1 : 0;
    }
    for (const Clause& cl : cnf.clauses)
        if (cl.empty()) return std::nullopt;
    if (!dpll(cnf, s)) return std::nullopt;
    Assignment a(cnf.num_vars, false);
    for (int v = 0; v < cnf.num_vars; ++v) a[v] = s[v] == 1;
    if (!satisfies(cnf, a))
        throw std::logic_error("sat oracle: internal error, model check failed");
    return a;
}

}  // namespace

std::optional<Assignment> satisfiable(const CnfInstance& cnf) { return solve(cnf, {}, 30); }

std::optional<Assignment> satisfiable_with(const CnfInstance& cnf,
                                           const std::vector<Fixing>& fixings) {
    return solve(cnf, fixings, 30);
}

std::pair<bool, bool> validity(const CnfInstance& cnf) {
    bool v0 = true, v1 = true;
    for (const Clause& cl : cnf.clauses) {
        bool has_neg = false, has_pos = false;
        for (const Literal& l : cl) (l.positive ? has_pos : has_neg) = true;
        v0 = v0 && has_neg;
        v1 = v1 && has_pos;
    }
    return {v0, v1};
}

Robustness is_r_robust(const CnfInstance& cnf, int r) {
    if (r < 0) throw std::invalid_argument("is_r_robust: r must be >= 0");
    if (cnf.num_vars > 20)
        throw std::invalid_argument("is_r_robust: instance too large (num_vars > 20)");
    const int n = cnf.num_vars;
    if (r == 0) {
        if (satisfiable(cnf)) return {true, {}};
        return {false, {}};
    }
    if (r > n) return {true, {}};  // no fixing set of size r exists

    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    for (;;) {
        for (unsigned m = 0; m < (1u << r); ++m) {
            std::vector<Fixing> fx(r);
            for (int j = 0; j < r; ++j) fx[j] = {idx[j], ((m >> j) & 1u) != 0};
            if (!satisfiable_with(cnf, fx)) return {false, fx};
        }
        // next lexicographic combination
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return {true, {}};
}

}  // namespace possloc

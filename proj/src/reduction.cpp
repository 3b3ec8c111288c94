#include "possloc/reduction.hpp"

#include <stdexcept>

namespace possloc {

std::pair<CnfInstance, HardenMap> harden(const CnfInstance& cnf) {
    if (!is_normalized(cnf)) throw std::invalid_argument("harden: input not normalized");
    for (const Clause& cl : cnf.clauses) {
        if (cl.empty()) throw std::invalid_argument("harden: empty clause has no image");
        if (cl.size() > 3) throw std::invalid_argument("harden: clause longer than 3 literals");
    }
    HardenMap map;
    map.x_var = cnf.num_vars;
    map.y_var = cnf.num_vars + 1;
    const Literal not_x{map.x_var, false};
    const Literal pos_y{map.y_var, true};

    CnfInstance out;
    int next_var = cnf.num_vars + 2;

    auto split = [&](int ci, Clause cl4) {
        // cl4 = (l1, l2, rest...) with |cl4| = 4; bridge polarity keeps one
        // positive and one negative literal in each sub-clause.
        int z = next_var++;
        map.bridge_vars[ci] = z;
        bool both_positive = cl4[0].positive && cl4[1].positive;
        Literal zeta{z, !both_positive};
        out.clauses.push_back({cl4[0], cl4[1], zeta});
        map.provenance.push_back({ci, 1});
        out.clauses.push_back({zeta.negated(), cl4[2], cl4[3]});
        map.provenance.push_back({ci, 2});
    };

    for (int ci = 0; ci < static_cast<int>(cnf.clauses.size()); ++ci) {
        const Clause& cl = cnf.clauses[ci];
        if (cl.size() == 1) {
            out.clauses.push_back({cl[0], not_x, pos_y});
            map.provenance.push_back({ci, 0});
        } else if (cl.size() == 2) {
            split(ci, {cl[0], cl[1], not_x, pos_y});
        } else {
            int positives = 0;
            for (const Literal& l : cl) positives += l.positive;
            Literal w = positives >= 2 ? not_x : pos_y;
            split(ci, {cl[0], cl[1], cl[2], w});
        }
    }
    out.num_vars = next_var;
    return {std::move(out), std::move(map)};
}

std::pair<PossibilityTable, EncodingMap> encode_possloc(const CnfInstance& cnf) {
    if (!is_normalized(cnf)) throw std::invalid_argument("encode_possloc: input not normalized");
    if (cnf.num_vars < 1 || cnf.clauses.empty())
        throw std::invalid_argument("encode_possloc: need at least one variable and one clause");
    for (const Clause& cl : cnf.clauses) {
        if (cl.size() != 3)
            throw std::invalid_argument("encode_possloc: every clause must have exactly 3 literals");
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (cl[i].var == cl[j].var)
                    throw std::invalid_argument(
                        "encode_possloc: clause with repeated variable (normalize first)");
    }

    const int n = cnf.num_vars, m = static_cast<int>(cnf.clauses.size());
    PossibilityTable t({std::vector<int>(n, 2), std::vector<int>(m, 3)}, true);
    for (int c = 0; c < m; ++c)
        for (int p = 0; p < 3; ++p) {
            const Literal& l = cnf.clauses[c][p];
            t.set(l.var, l.positive ? 0 : 1, c, p, false);
        }

    EncodingMap map;
    map.num_vars = n;
    map.clause_literals = cnf.clauses;
    map.var_to_meas.resize(n);
    map.meas_to_var.resize(n);
    map.clause_to_meas.resize(m);
    map.meas_to_clause.resize(m);
    for (int i = 0; i < n; ++i) map.var_to_meas[i] = map.meas_to_var[i] = i;
    for (int c = 0; c < m; ++c) map.clause_to_meas[c] = map.meas_to_clause[c] = c;
    return {std::move(t), std::move(map)};
}

Assignment decode_grid(const EncodingMap& map, const DeterministicGrid& grid) {
    const int n = map.num_vars, m = static_cast<int>(map.clause_literals.size());
    if (static_cast<int>(grid.alice_choice.size()) != n ||
        static_cast<int>(grid.bob_choice.size()) != m)
        throw std::invalid_argument("decode_grid: grid shape mismatch");
    Assignment a(n, false);
    for (int i = 0; i < n; ++i) {
        int meas = map.var_to_meas[i];
        int v = grid.alice_choice[meas];
        if (v < 0 || v > 1) throw std::invalid_argument("decode_grid: outcome out of range");
        a[i] = v == 1;
    }
    for (int c = 0; c < m; ++c) {
        int p = grid.bob_choice[map.clause_to_meas[c]];
        if (p < 0 || p > 2) throw std::invalid_argument("decode_grid: outcome out of range");
        const Literal& l = map.clause_literals[c][p];
        if (a[l.var] != l.positive)
            throw std::invalid_argument("decode_grid: grid inconsistent with the encoding "
                                        "(selected position holds a falsified literal)");
    }
    return a;
}

EntryRobustness is_entry_robust(const CnfInstance& cnf) {
    if (!is_normalized(cnf))
        throw std::invalid_argument("is_entry_robust: input not normalized");
    for (const Clause& cl : cnf.clauses)
        if (cl.size() != 3)
            throw std::invalid_argument("is_entry_robust: every clause must have 3 literals");
    for (int var = 0; var < cnf.num_vars; ++var) {
        for (int value = 0; value < 2; ++value) {
            for (int c = 0; c < static_cast<int>(cnf.clauses.size()); ++c) {
                for (int p = 0; p < 3; ++p) {
                    const Literal& l = cnf.clauses[c][p];
                    bool lit_value = l.positive;  // variable value making l true
                    if (l.var == var && lit_value != (value == 1)) continue;  // gadget zero
                    std::vector<Fixing> fx{{var, value == 1}};
                    if (l.var != var) fx.push_back({l.var, lit_value});
                    if (!satisfiable_with(cnf, fx)) {
                        return {false,
                                EntryCounterexample{{var, value == 1}, c, p, l}};
                    }
                }
            }
        }
    }
    return {true, std::nullopt};
}

}  // namespace possloc

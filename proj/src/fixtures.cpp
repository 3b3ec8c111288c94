#include "possloc/fixtures.hpp"

#include <stdexcept>

namespace possloc {

namespace {

PossibilityTable with_zeros(Scenario sc, std::vector<Event> zeros,
                            std::vector<std::string> row_labels,
                            std::vector<std::string> col_labels) {
    PossibilityTable t(std::move(sc), true);
    for (const Event& z : zeros) t.set(z, false);
    t.row_labels = std::move(row_labels);
    t.col_labels = std::move(col_labels);
    return t;
}

PossibilityTable make_chsh() {
    return with_zeros({{2, 2}, {2, 2}},
                      {{0, 0, 0, 1}, {0, 1, 0, 0}},
                      {"a1", "a1'", "a2", "a2'"},
                      {"b1", "b1'", "b2", "b2'"});
}

PossibilityTable make_hardy_pattern() {
    // The four-context obstruction with blanks filled by 1s: the flagged 1
    // sits at (a1,b1); zeros block its extension.
    return with_zeros({{2, 2}, {2, 2}},
                      {{0, 0, 1, 0}, {1, 0, 0, 0}, {1, 1, 1, 1}},
                      {"a1", "a1'", "a2", "a2'"},
                      {"b1", "b1'", "b2", "b2'"});
}

PossibilityTable make_pr_box() {
    // Correlated in three contexts, anticorrelated in the fourth.
    PossibilityTable t({{2, 2}, {2, 2}}, false);
    for (int a = 0; a < 2; ++a)
        for (int i = 0; i < 2; ++i)
            for (int b = 0; b < 2; ++b)
                for (int l = 0; l < 2; ++l) {
                    bool anti = (a == 1 && b == 1);
                    t.set(a, i, b, l, anti ? (i != l) : (i == l));
                }
    t.row_labels = {"a1", "a1'", "a2", "a2'"};
    t.col_labels = {"b1", "b1'", "b2", "b2'"};
    return t;
}

PossibilityTable make_gen_hardy() {
    return with_zeros({{2, 2, 2}, {2, 3, 3}},
                      {{0, 1, 1, 0},
                       {0, 1, 2, 0},
                       {1, 0, 0, 1},
                       {1, 1, 1, 1},
                       {1, 1, 2, 1},
                       {2, 0, 1, 2},
                       {2, 1, 2, 2}},
                      {"a", "A", "b", "B", "x", "y"},
                      {"b", "b_perp", "A_perp", "B_perp", "x_perp", "A_perp", "B_perp",
                       "y_perp"});
}

PossibilityTable make_bad_array() {
    return with_zeros({{2, 2, 2}, {3, 3}},
                      {{0, 0, 0, 0},
                       {1, 0, 0, 1},
                       {2, 0, 0, 2},
                       {0, 0, 1, 0},
                       {1, 0, 1, 1},
                       {2, 1, 1, 2}},
                      {"x1=0", "x1=1", "x2=0", "x2=1", "x3=0", "x3=1"},
                      {"M1p1", "M1p2", "M1p3", "M2p1", "M2p2", "M2p3"});
}

}  // namespace

PossibilityTable fixture(const std::string& name) {
    if (name == "chsh") return make_chsh();
    if (name == "hardy_pattern") return make_hardy_pattern();
    if (name == "pr_box") return make_pr_box();
    if (name == "gen_hardy") return make_gen_hardy();
    if (name == "bad_array") return make_bad_array();
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

std::vector<std::string> fixture_names() {
    return {"chsh", "hardy_pattern", "pr_box", "gen_hardy", "bad_array"};
}

ProbabilityTable chsh_probabilities() {
    ProbabilityTable t({{2, 2}, {2, 2}});
    const double h = 0.5, e = 0.125, s = 0.375;
    const double rows[4][4] = {
        {h, 0, s, e},
        {0, h, e, s},
        {s, e, e, s},
        {e, s, s, e},
    };
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) t.set_rc(r, c, rows[r][c]);
    t.row_labels = {"a1", "a1'", "a2", "a2'"};
    t.col_labels = {"b1", "b1'", "b2", "b2'"};
    t.validate();
    return t;
}

}  // namespace possloc

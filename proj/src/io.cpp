#include "possloc/io.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

#include "possloc/solver.hpp"

namespace possloc {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(line) + ": " + what);
}

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
    std::string comment;  // text after '#', if any
};

// Next line with content: data tokens, or a bare comment (for labels).
std::optional<Line> next_line(std::istream& in, int& lineno) {
    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        Line ln;
        ln.number = lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) {
            ln.comment = raw.substr(hash + 1);
            raw = raw.substr(0, hash);
        }
        std::istringstream is(raw);
        std::string tok;
        while (is >> tok) ln.tokens.push_back(tok);
        if (ln.tokens.empty() && ln.comment.empty()) continue;
        return ln;
    }
    return std::nullopt;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<int> parse_counts(const Line& ln, const char* who) {
    std::vector<int> counts;
    for (size_t i = 1; i < ln.tokens.size(); ++i) {
        try {
            counts.push_back(std::stoi(ln.tokens[i]));
        } catch (const std::exception&) {
            fail(ln.number, std::string(who) + " header: bad outcome count '" + ln.tokens[i] + "'");
        }
    }
    if (counts.empty()) fail(ln.number, std::string(who) + " header: no outcome counts");
    return counts;
}

std::vector<std::vector<std::string>> split_row(const Line& ln, int bob_meas) {
    std::vector<std::vector<std::string>> groups(1);
    for (const std::string& t : ln.tokens) {
        if (t == "|")
            groups.emplace_back();
        else
            groups.back().push_back(t);
    }
    if (static_cast<int>(groups.size()) != bob_meas)
        fail(ln.number, "row has " + std::to_string(groups.size()) +
                             " measurement groups, expected " + std::to_string(bob_meas));
    return groups;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ParsedTable parse_table(std::istream& in) {
    int lineno = 0;
    std::vector<std::string> alice_labels, bob_labels;
    auto maybe_labels = [&](const Line& ln) {
        auto toks = split_ws(ln.comment);
        if (toks.size() >= 2 && toks[0] == "alice-labels:")
            alice_labels.assign(toks.begin() + 1, toks.end());
        else if (toks.size() >= 2 && toks[0] == "bob-labels:")
            bob_labels.assign(toks.begin() + 1, toks.end());
    };
    auto next_data = [&](const std::string& missing) -> Line {
        for (;;) {
            auto ln = next_line(in, lineno);
            if (!ln) fail(lineno + 1, missing);
            maybe_labels(*ln);
            if (!ln->tokens.empty()) return *ln;
        }
    };

    Line hdr = next_data("empty input");
    bool poss;
    if (hdr.tokens[0] == "POSSLOC")
        poss = true;
    else if (hdr.tokens[0] == "PROBLOC")
        poss = false;
    else
        fail(hdr.number, "expected POSSLOC or PROBLOC header");
    if (hdr.tokens.size() != 2 || hdr.tokens[1] != "1")
        fail(hdr.number, "unsupported format version");

    Line alice = next_data("missing ALICE header");
    if (alice.tokens[0] != "ALICE") fail(alice.number, "expected ALICE header");
    Line bob = next_data("missing BOB header");
    if (bob.tokens[0] != "BOB") fail(bob.number, "expected BOB header");

    Scenario sc{parse_counts(alice, "ALICE"), parse_counts(bob, "BOB")};
    sc.validate();
    const int rows = sc.total_rows();

    PossibilityTable pt(sc, false);
    ProbabilityTable qt(sc);

    for (int row = 0; row < rows; ++row) {
        Line ln = next_data("expected " + std::string(std::to_string(rows)) + " data rows");
        auto groups = split_row(ln, sc.bob_measurements());
        int col = 0;
        for (int b = 0; b < sc.bob_measurements(); ++b) {
            if (static_cast<int>(groups[b].size()) != sc.bob_outcomes[b])
                fail(ln.number, "group " + std::to_string(b) + " has " +
                                     std::to_string(groups[b].size()) + " entries, expected " +
                                     std::to_string(sc.bob_outcomes[b]));
            for (const std::string& t : groups[b]) {
                if (poss) {
                    if (t == "0")
                        pt.set_rc(row, col, false);
                    else if (t == "1")
                        pt.set_rc(row, col, true);
                    else
                        fail(ln.number, "non-{0,1} token '" + t + "'");
                } else {
                    double v = 0;
                    try {
                        size_t pos;
                        v = std::stod(t, &pos);
                        if (pos != t.size()) throw std::invalid_argument(t);
                    } catch (const std::exception&) {
                        fail(ln.number, "bad probability token '" + t + "'");
                    }
                    if (v < 0.0 || v > 1.0)
                        fail(ln.number, "probability " + t + " outside [0,1]");
                    qt.set_rc(row, col, v);
                }
                ++col;
            }
        }
    }
    // Trailing comments may still carry labels.
    for (;;) {
        auto ln = next_line(in, lineno);
        if (!ln) break;
        maybe_labels(*ln);
        if (!ln->tokens.empty()) fail(ln->number, "unexpected extra data row");
    }

    auto fit = [&](std::vector<std::string>& lbl, int want) {
        if (!lbl.empty() && static_cast<int>(lbl.size()) != want) lbl.clear();
    };
    fit(alice_labels, rows);
    fit(bob_labels, sc.total_cols());

    if (poss) {
        pt.row_labels = alice_labels;
        pt.col_labels = bob_labels;
        return pt;
    }
    qt.row_labels = alice_labels;
    qt.col_labels = bob_labels;
    try {
        qt.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("context not normalized: ") + e.what());
    }
    return qt;
}

ParsedTable parse_table(const std::string& text) {
    std::istringstream is(text);
    return parse_table(is);
}

std::string serialize_table(const PossibilityTable& t) {
    const Scenario& sc = t.scenario();
    std::ostringstream os;
    os << "POSSLOC 1\nALICE";
    for (int k : sc.alice_outcomes) os << ' ' << k;
    os << "\nBOB";
    for (int k : sc.bob_outcomes) os << ' ' << k;
    os << '\n';
    if (!t.row_labels.empty()) {
        os << "# alice-labels:";
        for (const auto& l : t.row_labels) os << ' ' << l;
        os << '\n';
    }
    if (!t.col_labels.empty()) {
        os << "# bob-labels:";
        for (const auto& l : t.col_labels) os << ' ' << l;
        os << '\n';
    }
    for (int a = 0; a < sc.alice_measurements(); ++a) {
        for (int i = 0; i < sc.alice_outcomes[a]; ++i) {
            for (int b = 0; b < sc.bob_measurements(); ++b) {
                if (b) os << "| ";
                for (int l = 0; l < sc.bob_outcomes[b]; ++l)
                    os << (t.get(a, i, b, l) ? 1 : 0)
                       << (l + 1 < sc.bob_outcomes[b] ? " " : "");
                if (b + 1 < sc.bob_measurements()) os << ' ';
            }
            os << '\n';
        }
    }
    return os.str();
}

std::string serialize_table(const ProbabilityTable& t) {
    const Scenario& sc = t.scenario();
    std::ostringstream os;
    os << "PROBLOC 1\nALICE";
    for (int k : sc.alice_outcomes) os << ' ' << k;
    os << "\nBOB";
    for (int k : sc.bob_outcomes) os << ' ' << k;
    os << '\n';
    if (!t.row_labels.empty()) {
        os << "# alice-labels:";
        for (const auto& l : t.row_labels) os << ' ' << l;
        os << '\n';
    }
    if (!t.col_labels.empty()) {
        os << "# bob-labels:";
        for (const auto& l : t.col_labels) os << ' ' << l;
        os << '\n';
    }
    for (int a = 0; a < sc.alice_measurements(); ++a) {
        for (int i = 0; i < sc.alice_outcomes[a]; ++i) {
            for (int b = 0; b < sc.bob_measurements(); ++b) {
                if (b) os << "| ";
                for (int l = 0; l < sc.bob_outcomes[b]; ++l)
                    os << format_double(t.get(a, i, b, l))
                       << (l + 1 < sc.bob_outcomes[b] ? " " : "");
                if (b + 1 < sc.bob_measurements()) os << ' ';
            }
            os << '\n';
        }
    }
    return os.str();
}

std::string format_event(const PossibilityTable& t, const Event& e) {
    std::ostringstream os;
    const int r = t.row_index(e.alice_meas, e.alice_outcome);
    const int c = t.col_index(e.bob_meas, e.bob_outcome);
    if (!t.row_labels.empty() && !t.col_labels.empty()) {
        os << '(' << t.row_labels[r] << ';' << t.col_labels[c] << ')';
    } else {
        os << '(' << e.alice_meas << ',' << e.alice_outcome << ';' << e.bob_meas << ','
           << e.bob_outcome << ')';
    }
    return os.str();
}

std::string serialize_certificate(const PossibilityTable& t, const LocalityVerdict& v) {
    std::ostringstream os;
    if (v.status == Locality::Nonlocal) {
        os << "NONLOCAL event=" << format_event(t, *v.witness) << '\n';
        return os.str();
    }
    os << "LOCAL\n";
    for (const DeterministicGrid& g : v.certificate) {
        os << "A:";
        for (int o : g.alice_choice) os << ' ' << o;
        os << " | B:";
        for (int o : g.bob_choice) os << ' ' << o;
        os << '\n';
    }
    return os.str();
}

LocalityVerdict parse_certificate(std::istream& in, const Scenario& sc) {
    LocalityVerdict v;
    int lineno = 0;
    auto hdr = next_line(in, lineno);
    if (!hdr || hdr->tokens.empty()) fail(1, "empty certificate");
    if (hdr->tokens[0] == "NONLOCAL") {
        v.status = Locality::Nonlocal;
        return v;
    }
    if (hdr->tokens[0] != "LOCAL") fail(hdr->number, "expected LOCAL or NONLOCAL");
    v.status = Locality::Local;
    for (;;) {
        auto ln = next_line(in, lineno);
        if (!ln) break;
        if (ln->tokens.empty()) continue;
        if (ln->tokens[0] != "A:") fail(ln->number, "expected grid line starting with 'A:'");
        DeterministicGrid g;
        size_t i = 1;
        for (; i < ln->tokens.size() && ln->tokens[i] != "|"; ++i)
            g.alice_choice.push_back(std::stoi(ln->tokens[i]));
        if (i >= ln->tokens.size() || ln->tokens[i] != "|" || i + 1 >= ln->tokens.size() ||
            ln->tokens[i + 1] != "B:")
            fail(ln->number, "expected '| B:' separator");
        for (i += 2; i < ln->tokens.size(); ++i)
            g.bob_choice.push_back(std::stoi(ln->tokens[i]));
        if (static_cast<int>(g.alice_choice.size()) != sc.alice_measurements() ||
            static_cast<int>(g.bob_choice.size()) != sc.bob_measurements())
            fail(ln->number, "grid does not match the scenario shape");
        v.certificate.push_back(std::move(g));
    }
    return v;
}

}  // namespace possloc

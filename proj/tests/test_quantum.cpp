#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "possloc/coloring.hpp"
#include "possloc/fixtures.hpp"
#include "possloc/rng.hpp"
#include "possloc/solver.hpp"
#include "possloc/sweep.hpp"

using namespace possloc;

namespace {

constexpr double kDeg = kPi / 180.0;

std::array<double, 3> random_valid_triple(SplitMix64& rng) {
    for (;;) {
        std::array<double, 3> a{rng.next_double() * 2 * kPi, rng.next_double() * 2 * kPi,
                                rng.next_double() * 2 * kPi};
        try {
            if (povm_weights(a)) return a;
        } catch (const std::invalid_argument&) {
        }
    }
}

// Sum of the reconstructed POVM elements, as (e00, e01, e10, e11).
std::array<double, 4> element_sum(const std::array<double, 3>& pts,
                                  const std::array<double, 3>& w) {
    std::array<double, 4> s{0, 0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        double nx = std::sin(pts[i]), nz = std::cos(pts[i]);
        s[0] += w[i] * (1 + nz) / 2;
        s[1] += w[i] * nx / 2;
        s[2] += w[i] * nx / 2;
        s[3] += w[i] * (1 - nz) / 2;
    }
    return s;
}

GeometricScenario random_scenario(SplitMix64& rng) {
    GeometricScenario g;
    g.schmidt_angle = 0.1 + rng.next_double() * (kPi / 2 - 0.2);
    int n = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < n; ++i) g.alice_chords.push_back(rng.next_double() * 2 * kPi);
    int m = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < m; ++i) {
        if (rng.next_bool())
            g.bob_measurements.push_back(Projective{rng.next_double() * 2 * kPi});
        else
            g.bob_measurements.push_back(Povm3{random_valid_triple(rng)});
    }
    return g;
}

}  // namespace

TEST_CASE("povm weights") {
    auto trine = povm_weights({90 * kDeg, 210 * kDeg, 330 * kDeg});
    REQUIRE(trine);
    for (double w : *trine) CHECK(w == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    CHECK_FALSE(povm_weights({0.0, 10 * kDeg, 20 * kDeg}));  // all in a half-plane

    CHECK_THROWS_AS(povm_weights({1.0, 1.0, 2.0}), std::invalid_argument);  // coincident

    SplitMix64 rng(1);
    for (int t = 0; t < 200; ++t) {
        auto pts = random_valid_triple(rng);
        auto w = povm_weights(pts);
        REQUIRE(w);
        auto s = element_sum(pts, *w);
        CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s[3] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::fabs(s[1]) < 1e-12);
        for (double v : *w) CHECK(v > 0);
    }
}

TEST_CASE("hull lemma: flipping one point of a valid triple breaks validity") {
    SplitMix64 rng(2);
    int checked = 0;
    for (int t = 0; t < 2000; ++t) {
        auto pts = random_valid_triple(rng);
        if (angular_separation(pts[0], antipode(pts[1])) < 1e-3) continue;  // P1 = P2^perp
        ++checked;
        auto flipped = povm_weights({pts[0], pts[1], antipode(pts[2])});
        CHECK_FALSE(flipped);
    }
    CHECK(checked > 1500);
}

TEST_CASE("generate_tables: schmidt-basis correlation") {
    GeometricScenario g;
    g.schmidt_angle = kPi / 4;
    g.alice_chords = {0.0};                     // chord through the z-axis
    g.bob_measurements = {Projective{0.0}};     // z measurement
    auto [pt, bits] = generate_tables(g);
    CHECK(pt.get(0, 0, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pt.get(0, 1, 0, 1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pt.get(0, 0, 0, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pt.get(0, 1, 0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bits.get(0, 0, 0, 0));
    CHECK_FALSE(bits.get(0, 0, 0, 1));
}

TEST_CASE("generate_tables invariants on random scenarios") {
    SplitMix64 rng(3);
    for (int t = 0; t < 120; ++t) {
        GeometricScenario g = random_scenario(rng);
        auto [pt, bits] = generate_tables(g);
        pt.validate();  // context sums = 1 within 1e-9

        // steering decomposition: q0 s0 + q1 s1 = rho_B to 1e-12
        double c = std::cos(2 * g.schmidt_angle);
        for (double chord : g.alice_chords) {
            auto ends = chord_outcome_points(g.schmidt_angle, chord);
            double q0 = steering_weight(ends[0], g.schmidt_angle);
            double q1 = steering_weight(ends[1], g.schmidt_angle);
            CHECK(q0 + q1 == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(q0 * std::sin(ends[0]) + q1 * std::sin(ends[1]) ==
                  doctest::Approx(0.0).epsilon(1e-12));
            CHECK(q0 * std::cos(ends[0]) + q1 * std::cos(ends[1]) ==
                  doctest::Approx(c).epsilon(1e-12));
        }

        // dual route: the 4x4 contraction equals the closed form q·w·(1+n·n)/2
        for (size_t a = 0; a < g.alice_chords.size(); ++a) {
            auto ends = chord_outcome_points(g.schmidt_angle, g.alice_chords[a]);
            for (int i = 0; i < 2; ++i) {
                for (size_t b = 0; b < g.bob_measurements.size(); ++b) {
                    std::vector<std::pair<double, double>> elems;  // (weight, point)
                    if (const Projective* pr = std::get_if<Projective>(&g.bob_measurements[b])) {
                        elems = {{1.0, pr->point}, {1.0, antipode(pr->point)}};
                    } else {
                        const Povm3& pv = std::get<Povm3>(g.bob_measurements[b]);
                        auto w = povm_weights(pv.points);
                        for (int k = 0; k < 3; ++k) elems.push_back({(*w)[k], pv.points[k]});
                    }
                    for (size_t l = 0; l < elems.size(); ++l) {
                        double expect = oracle::closed_form_probability(
                            g.schmidt_angle, ends[i], elems[l].first, elems[l].second);
                        CHECK(pt.get(static_cast<int>(a), i, static_cast<int>(b),
                                     static_cast<int>(l)) ==
                              doctest::Approx(expect).epsilon(1e-11));
                        // zero law at the generic parameters of this corpus
                        bool coincident =
                            angular_separation(ends[i], antipode(elems[l].second)) < 1e-6;
                        if (coincident) CHECK(pt.get(static_cast<int>(a), i,
                                                     static_cast<int>(b),
                                                     static_cast<int>(l)) < 1e-12);
                        if (pt.get(static_cast<int>(a), i, static_cast<int>(b),
                                   static_cast<int>(l)) < 1e-12)
                            CHECK(coincident);
                    }
                }
            }
        }

        // eps monotonicity: doubling eps never adds ones
        PossibilityTable wider = possibilize(pt, 2 * kDefaultEps);
        for (int r = 0; r < bits.rows(); ++r)
            for (int cc = 0; cc < bits.cols(); ++cc)
                if (wider.get_rc(r, cc)) CHECK(bits.get_rc(r, cc));
    }
}

TEST_CASE("degenerate schmidt angles are rejected") {
    GeometricScenario g;
    g.schmidt_angle = 0.0;
    g.alice_chords = {1.0};
    g.bob_measurements = {Projective{0.0}};
    CHECK_THROWS_AS(generate_tables(g), std::invalid_argument);
    g.schmidt_angle = kPi / 2;
    CHECK_THROWS_AS(generate_tables(g), std::invalid_argument);
}

TEST_CASE("generalized hardy geometry reproduces the fixture") {
    GeometricScenario g = generalized_hardy_geometry();
    auto [pt, bits] = generate_tables(g);
    PossibilityTable gh = fixture("gen_hardy");
    CHECK(bits == gh);
    CHECK(check_no_signalling(bits).empty());

    LocalityVerdict v = decide_local(bits);
    CHECK(v.status == Locality::Nonlocal);
    CHECK(*v.witness == Event{0, 1, 0, 1});
    CHECK(pt.get(0, 1, 0, 1) == doctest::Approx(0.0825372983).epsilon(1e-8));
    CHECK(paradoxical_probability(pt) == doctest::Approx(pt.get(0, 1, 0, 1)));
}

TEST_CASE("generalized hardy geometry flags coincidences") {
    GenHardyParams p;
    p.b = antipode(chord_partner(p.a, p.theta));  // b = antipode(A) exactly
    CHECK(oracle::thrown_message([&] { generalized_hardy_geometry(p); })
              .find("coincid") != std::string::npos);

    GenHardyParams q;
    q.x = q.a;  // coincident chords
    CHECK_THROWS_AS(generalized_hardy_geometry(q), std::invalid_argument);
}

TEST_CASE("hardy geometry fires the scan") {
    GeometricScenario g = hardy_geometry();
    auto [pt, bits] = generate_tables(g);
    CHECK(hardy_scan(bits));
    CHECK(decide_local(bits).status == Locality::Nonlocal);

    SplitMix64 rng(12);
    for (int t = 0; t < 25; ++t) {
        HardyParams p{0.15 + rng.next_double() * 1.0, 0.4 + rng.next_double() * 2.0};
        GeometricScenario gg = hardy_geometry(p);
        auto [qt, bb] = generate_tables(gg);
        CHECK(hardy_scan(bb));
    }

    CHECK_THROWS_AS(hardy_geometry({kPi / 4, 1.0}),
                    std::invalid_argument);  // flagged 1 collapses to 0
}

TEST_CASE("sweeps (reduced resolution)") {
    SweepResult hardy = sweep_paradox(Family::Hardy, 24);
    CHECK(hardy.best_value == doctest::Approx(0.0901699).epsilon(2e-3));

    SweepResult gen = sweep_paradox(Family::GenHardy, 10, 2);
    CHECK(gen.best_value > 0.1);
    CHECK(gen.best_value < 0.5);

    CHECK_THROWS_AS(sweep_paradox(Family::Hardy, 4), std::invalid_argument);

    // determinism under jobs
    SweepResult j1 = sweep_paradox(Family::Hardy, 12, 1);
    SweepResult j3 = sweep_paradox(Family::Hardy, 12, 3);
    CHECK(j1.best_value == j3.best_value);
    CHECK(j1.best_params == j3.best_params);
}

TEST_CASE("geom text round trip") {
    GeometricScenario g = generalized_hardy_geometry();
    GeometricScenario back = parse_geom(serialize_geom(g));
    CHECK(back.schmidt_angle == doctest::Approx(g.schmidt_angle).epsilon(1e-15));
    REQUIRE(back.alice_chords.size() == g.alice_chords.size());
    for (size_t i = 0; i < g.alice_chords.size(); ++i)
        CHECK(back.alice_chords[i] == doctest::Approx(g.alice_chords[i]).epsilon(1e-15));
    REQUIRE(back.bob_measurements.size() == g.bob_measurements.size());
    auto [p1, b1] = generate_tables(g);
    auto [p2, b2] = generate_tables(back);
    CHECK(b1 == b2);

    CHECK_THROWS_AS(parse_geom("GEOM 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_geom("GEOM 1\nALICE chord 0.5\n"), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// colouring and embedding
// ---------------------------------------------------------------------------

namespace {

Coloring rb(std::vector<int> pattern) {  // 0 = red, 1 = blue, 2 = special
    Coloring c;
    for (int p : pattern)
        c.colour.push_back(p == 0 ? Colour::Red : p == 1 ? Colour::Blue : Colour::Special);
    return c;
}

CnfInstance cnf_of(int num_vars, std::vector<std::vector<int>> dimacs_clauses) {
    CnfInstance c;
    c.num_vars = num_vars;
    for (auto& cl : dimacs_clauses) {
        Clause out;
        for (int l : cl) out.push_back({std::abs(l) - 1, l > 0});
        c.clauses.push_back(std::move(out));
    }
    return c;
}

// Corpus of permitted coloured instances: every clause has its first two
// literals on opposite colours; sign patterns (+,+,+), (+,+,-), (-,-,+),
// (-,-,-).
CnfInstance corpus_instance(SplitMix64& rng, int num_vars, int num_clauses, Coloring& col) {
    col.colour.clear();
    for (int v = 0; v < num_vars; ++v)
        col.colour.push_back(v % 2 ? Colour::Blue : Colour::Red);
    CnfInstance c;
    c.num_vars = num_vars;
    while (static_cast<int>(c.clauses.size()) < num_clauses) {
        int red = 2 * static_cast<int>(rng.below((num_vars + 1) / 2));
        int blue = 2 * static_cast<int>(rng.below(num_vars / 2)) + 1;
        int third;
        do
            third = static_cast<int>(rng.below(num_vars));
        while (third == red || third == blue);
        int kind = static_cast<int>(rng.below(4));
        bool first_sign = kind == 0 || kind == 1;   // (+,+,·) vs (-,-,·)
        bool third_sign = kind == 0 || kind == 2;
        Clause cl{{red, first_sign}, {blue, first_sign}, {third, third_sign}};
        if (rng.next_bool()) std::swap(cl[0], cl[1]);
        c.clauses.push_back(cl);
    }
    CnfInstance n = normalize(c);
    if (n.clauses.size() != c.clauses.size()) return corpus_instance(rng, num_vars, num_clauses, col);
    return n;
}

}  // namespace

TEST_CASE("check_coloring rules") {
    // (red l1 ∨ red ¬l2 ∨ blue ¬l3): minority senses differ -> permitted
    CHECK(check_coloring(cnf_of(3, {{1, -2, -3}}), rb({0, 0, 1})));
    // all-red clause -> rejected
    CHECK_FALSE(check_coloring(cnf_of(3, {{1, -2, -3}}), rb({0, 0, 0})));
    // lone red literal opposing the two blues' shared sense -> rejected
    CHECK_FALSE(check_coloring(cnf_of(3, {{-1, 2, 3}}), rb({0, 1, 1})));
    // same-sense minority is fine
    CHECK(check_coloring(cnf_of(3, {{1, 2, 3}}), rb({0, 0, 1})));
    // specials are ignored
    CHECK(check_coloring(cnf_of(3, {{1, 2, -3}}), rb({0, 1, 2})));
    CHECK(check_coloring(cnf_of(3, {{-3, 2, -1}}), rb({2, 1, 2})));  // one coloured literal
    // two same-coloured non-specials still need both colours
    CHECK_FALSE(check_coloring(cnf_of(3, {{1, 2, -3}}), rb({0, 0, 2})));
}

TEST_CASE("find_coloring") {
    auto c = find_coloring(cnf_of(3, {{1, -2, -3}}));
    REQUIRE(c);
    CHECK(check_coloring(cnf_of(3, {{1, -2, -3}}), *c));
    // whatever find_coloring returns must satisfy the rule it searched for
    CnfInstance hard = cnf_of(3, {{-1, 2, 3}, {1, -2, 3}, {1, 2, -3}, {-1, -2, 3},
                                  {-1, 2, -3}, {1, -2, -3}});
    auto hc = find_coloring(hard);
    if (hc) CHECK(check_coloring(hard, *hc));
    // a single clause can always be coloured
    CHECK(find_coloring(cnf_of(3, {{1, 2, 3}})).has_value());
}

TEST_CASE("embed_colored realizes the encoded table") {
    SplitMix64 rng(2026);
    for (int t = 0; t < 10; ++t) {
        Coloring col;
        CnfInstance orig = corpus_instance(rng, 4 + static_cast<int>(rng.below(3)),
                                           1 + static_cast<int>(rng.below(5)), col);
        REQUIRE(check_coloring(orig, col));
        auto [hc, hmap] = harden(orig);
        Coloring hcol = colour_hardened(hmap, hc.num_vars, col);
        REQUIRE(check_coloring(hc, hcol));
        GeometricScenario geom = embed_colored(hc, hcol);  // throws on any failure
        // povm validity is part of the scenario invariant
        geom.validate();
        // table equality is checked inside embed_colored; spot-check zeros
        auto [pt, bits] = generate_tables(geom);
        auto [enc, emap] = encode_possloc(hc);
        CHECK(bits == enc);
    }
}

TEST_CASE("embed_colored rejects bad colourings before any geometry") {
    CnfInstance c = cnf_of(3, {{1, 2, 3}});
    CHECK_THROWS_AS(embed_colored(c, rb({0, 0, 0})), std::invalid_argument);
}

TEST_CASE("hemisphere renaming") {
    SplitMix64 rng(31);
    Coloring col;
    CnfInstance orig = corpus_instance(rng, 5, 4, col);
    auto [hc, hmap] = harden(orig);
    Coloring hcol = colour_hardened(hmap, hc.num_vars, col);
    GeometricScenario geom = embed_colored(hc, hcol);
    auto [enc, emap] = encode_possloc(hc);

    // the hardened instance is already 0/1-valid: identity renaming
    auto ren = hemisphere_renaming(geom, emap);
    REQUIRE(ren);
    auto [v0, v1] = validity(ren->renamed);
    CHECK(v0);
    CHECK(v1);
    CHECK(std::none_of(ren->flipped.begin(), ren->flipped.end(), [](bool b) { return b; }));

    // flip some variables in both the instance and the geometry; the
    // renaming must restore 0/1-validity
    std::vector<bool> flip(hc.num_vars, false);
    for (int v = 0; v < hc.num_vars; ++v) flip[v] = rng.next_bool();
    CnfInstance flipped = hc;
    for (Clause& cl : flipped.clauses)
        for (Literal& l : cl)
            if (flip[l.var]) l = l.negated();
    GeometricScenario fgeom = geom;
    for (int v = 0; v < hc.num_vars; ++v)
        if (flip[v]) fgeom.alice_chords[v] = canonical_angle(fgeom.alice_chords[v] + kPi);
    auto [fenc, fmap] = encode_possloc(flipped);
    auto [fpt, fbits] = generate_tables(fgeom);
    REQUIRE(fbits == fenc);  // outcome relabelling carries the table along
    auto ren2 = hemisphere_renaming(fgeom, fmap);
    REQUIRE(ren2);
    auto [w0, w1] = validity(ren2->renamed);
    CHECK(w0);
    CHECK(w1);
}

TEST_CASE("hemisphere renaming: every candidate diameter blocked") {
    // one clause over the equilateral trine: each gap midpoint is antipodal
    // to an element point, so every candidate is excluded
    CnfInstance c = cnf_of(3, {{1, 2, 3}});
    double theta = kPi / 3;
    std::array<double, 3> pts{0.0, 2 * kPi / 3, 4 * kPi / 3};
    GeometricScenario g;
    g.schmidt_angle = theta;
    for (double p : pts)
        g.alice_chords.push_back(chord_direction_from_anchor(antipode(p), theta));
    g.bob_measurements = {Povm3{pts}};
    auto [enc, emap] = encode_possloc(c);
    CHECK_FALSE(hemisphere_renaming(g, emap).has_value());
}

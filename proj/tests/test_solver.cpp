#include <doctest.h>

#include "oracles.hpp"
#include "possloc/fixtures.hpp"
#include "possloc/io.hpp"
#include "possloc/rng.hpp"
#include "possloc/solver.hpp"

using namespace possloc;

namespace {

PossibilityTable random_ns_table(SplitMix64& rng, int max_meas = 3) {
    // rejection-sampled no-signalling tables, biased toward ones
    for (;;) {
        Scenario sc;
        int n = 2 + static_cast<int>(rng.below(max_meas - 1));
        int m = 2 + static_cast<int>(rng.below(max_meas - 1));
        sc.alice_outcomes.assign(n, 2);
        sc.bob_outcomes.assign(m, 2);
        PossibilityTable t(sc, false);
        for (int r = 0; r < t.rows(); ++r)
            for (int c = 0; c < t.cols(); ++c) t.set_rc(r, c, rng.next_double() < 0.8);
        if (check_no_signalling(t).empty()) return t;
    }
}

}  // namespace

TEST_CASE("extend_event on the fixtures") {
    PossibilityTable gh = fixture("gen_hardy");
    CHECK_FALSE(extend_event(gh, {0, 1, 0, 1}));  // (A, b_perp) is not extendable
    auto g = extend_event(gh, {0, 1, 0, 0});      // (A, b) is
    REQUIRE(g);
    CHECK(grid_consistent(gh, *g));
    CHECK(g->alice_choice[0] == 1);
    CHECK(g->bob_choice[0] == 0);

    PossibilityTable chsh = fixture("chsh");
    auto g2 = extend_event(chsh, {0, 0, 0, 0});
    REQUIRE(g2);
    CHECK(grid_consistent(chsh, *g2));

    PossibilityTable ones({{2, 2}, {2, 2}}, true);
    CHECK(extend_event(ones, {1, 1, 1, 1}));

    CHECK_THROWS_AS(extend_event(chsh, {0, 0, 0, 1}), std::invalid_argument);  // 0-entry
}

TEST_CASE("decide_local on the fixtures") {
    LocalityVerdict gh = decide_local(fixture("gen_hardy"));
    CHECK(gh.status == Locality::Nonlocal);
    REQUIRE(gh.witness);
    CHECK(*gh.witness == Event{0, 1, 0, 1});  // row-major-first failing event (A, b_perp)
    CHECK_FALSE(gh.signalling_warning);

    LocalityVerdict chsh = decide_local(fixture("chsh"));
    CHECK(chsh.status == Locality::Local);
    CHECK(chsh.certificate.size() <= 14);
    CHECK(verify_certificate(fixture("chsh"), chsh));

    CHECK(decide_local(fixture("bad_array")).status == Locality::Local);
    CHECK(decide_local(fixture("pr_box")).status == Locality::Nonlocal);
    CHECK(decide_local(fixture("hardy_pattern")).status == Locality::Nonlocal);
}

TEST_CASE("verify_certificate rejects tampering") {
    PossibilityTable chsh = fixture("chsh");
    LocalityVerdict v = decide_local(chsh);
    REQUIRE(v.status == Locality::Local);
    REQUIRE(verify_certificate(chsh, v));

    LocalityVerdict missing = v;
    missing.certificate.pop_back();
    CHECK_FALSE(verify_certificate(chsh, missing));

    LocalityVerdict through_zero = v;
    through_zero.certificate.push_back({{0, 0}, {1, 0}});  // passes the (a1,b1') zero
    CHECK_FALSE(verify_certificate(chsh, through_zero));

    LocalityVerdict nl;
    nl.status = Locality::Nonlocal;
    CHECK_THROWS_AS(verify_certificate(chsh, nl), std::invalid_argument);
}

TEST_CASE("hardy_scan fixtures") {
    auto p = hardy_scan(fixture("hardy_pattern"));
    REQUIRE(p);
    CHECK(*p == HardyPattern{0, 1, 0, 1, 0, 0, 1, 1});

    CHECK_FALSE(hardy_scan(fixture("chsh")));
    CHECK_FALSE(hardy_scan(fixture("gen_hardy")));  // only one 2-outcome Bob measurement
    CHECK(hardy_scan(fixture("pr_box")));
}

TEST_CASE("all nine gen_hardy coarse grainings stay scan-free") {
    for (const CoarseGraining& cg : coarse_grainings(fixture("gen_hardy")))
        CHECK_MESSAGE(!hardy_scan(cg.table), cg.description());
}

TEST_CASE("solver agrees with exhaustive enumeration on random tables") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        Scenario sc;
        sc.alice_outcomes.assign(2, 2);
        sc.bob_outcomes = trial % 2 ? std::vector<int>{2, 3} : std::vector<int>{2, 2};
        PossibilityTable t(sc, false);
        for (int r = 0; r < t.rows(); ++r)
            for (int c = 0; c < t.cols(); ++c) t.set_rc(r, c, rng.next_double() < 0.75);
        LocalityVerdict v = decide_local(t);
        CHECK((v.status == Locality::Local) == oracle::local(t));
        if (v.status == Locality::Local) {
            CHECK(verify_certificate(t, v));
            CHECK(static_cast<long>(v.certificate.size()) <= t.ones_count());
        } else {
            CHECK_FALSE(oracle::extendable(t, *v.witness));
        }
    }
}

TEST_CASE("hardy scan hit implies nonlocal on arbitrary tables") {
    SplitMix64 rng(123);
    for (int trial = 0; trial < 300; ++trial) {
        Scenario sc;
        sc.alice_outcomes.assign(2 + rng.below(2), 2);
        sc.bob_outcomes.assign(2 + rng.below(2), 2);
        if (rng.next_bool()) sc.bob_outcomes.back() = 3;
        PossibilityTable t(sc, false);
        for (int r = 0; r < t.rows(); ++r)
            for (int c = 0; c < t.cols(); ++c) t.set_rc(r, c, rng.next_double() < 0.7);
        if (hardy_scan(t)) CHECK(decide_local(t).status == Locality::Nonlocal);
    }
}

TEST_CASE("scan completeness on random no-signalling two-outcome tables") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        PossibilityTable t = random_ns_table(rng);
        bool scan_clean = !hardy_scan(t);
        bool local = decide_local(t).status == Locality::Local;
        CHECK(scan_clean == local);
    }
}

TEST_CASE("verdicts are invariant under relabelling") {
    SplitMix64 rng(55);
    PossibilityTable gh = fixture("gen_hardy");
    for (int trial = 0; trial < 40; ++trial) {
        const Scenario& sc = gh.scenario();
        // random permutations of measurements and outcomes on both sides
        std::vector<int> aperm{0, 1, 2}, bperm{0, 1, 2};
        for (int i = 2; i > 0; --i) std::swap(aperm[i], aperm[rng.below(i + 1)]);
        // keep Bob measurement 0 in place (outcome counts differ), permute 1,2
        if (rng.next_bool()) std::swap(bperm[1], bperm[2]);
        std::vector<std::vector<int>> aout(3), bout(3);
        for (int a = 0; a < 3; ++a) {
            aout[a] = {0, 1};
            if (rng.next_bool()) std::swap(aout[a][0], aout[a][1]);
        }
        bout[0] = {0, 1};
        if (rng.next_bool()) std::swap(bout[0][0], bout[0][1]);
        for (int b = 1; b < 3; ++b) {
            bout[b] = {0, 1, 2};
            for (int i = 2; i > 0; --i) std::swap(bout[b][i], bout[b][rng.below(i + 1)]);
        }
        Scenario psc;
        psc.alice_outcomes.resize(3);
        psc.bob_outcomes.resize(3);
        for (int a = 0; a < 3; ++a) psc.alice_outcomes[aperm[a]] = sc.alice_outcomes[a];
        for (int b = 0; b < 3; ++b) psc.bob_outcomes[bperm[b]] = sc.bob_outcomes[b];
        PossibilityTable pt(psc, false);
        for (int a = 0; a < 3; ++a)
            for (int i = 0; i < 2; ++i)
                for (int b = 0; b < 3; ++b)
                    for (int l = 0; l < sc.bob_outcomes[b]; ++l)
                        pt.set(aperm[a], aout[a][i], bperm[b], bout[b][l], gh.get(a, i, b, l));
        LocalityVerdict v = decide_local(pt);
        REQUIRE(v.status == Locality::Nonlocal);
        // the witness maps back to a non-extendable event of the original
        Event w = *v.witness;
        int a0 = -1, b0 = -1;
        for (int a = 0; a < 3; ++a)
            if (aperm[a] == w.alice_meas) a0 = a;
        for (int b = 0; b < 3; ++b)
            if (bperm[b] == w.bob_meas) b0 = b;
        int i0 = -1, l0 = -1;
        for (int i = 0; i < 2; ++i)
            if (aout[a0][i] == w.alice_outcome) i0 = i;
        for (int l = 0; l < sc.bob_outcomes[b0]; ++l)
            if (bout[b0][l] == w.bob_outcome) l0 = l;
        CHECK_FALSE(oracle::extendable(gh, {a0, i0, b0, l0}));
    }
}

TEST_CASE("paradoxical probability") {
    CHECK(paradoxical_probability(chsh_probabilities()) == 0.0);  // local table

    // a two-context table whose possibilization is the PR box: nonlocal,
    // every entry is paradoxical, max entry probability is 1/2
    ProbabilityTable pr({{2, 2}, {2, 2}});
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int i = 0; i < 2; ++i)
                for (int l = 0; l < 2; ++l) {
                    bool anti = a == 1 && b == 1;
                    pr.set(a, i, b, l, (anti ? i != l : i == l) ? 0.5 : 0.0);
                }
    CHECK(paradoxical_probability(pr) == doctest::Approx(0.5));
}

TEST_CASE("signalling tables are still decided, with a warning flag") {
    // the (0,0) marginal flips between Bob's contexts
    PossibilityTable s({{2}, {2, 2}}, true);
    s.set(0, 0, 0, 0, false);
    s.set(0, 0, 0, 1, false);
    REQUIRE(!check_no_signalling(s).empty());
    LocalityVerdict v = decide_local(s);
    CHECK(v.signalling_warning);
    CHECK(v.status == Locality::Nonlocal);  // the (0,1,*) entries cannot extend into context 0
}

#include "possloc/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace possloc {

bool check_coloring(const CnfInstance& cnf, const Coloring& coloring) {
    if (static_cast<int>(coloring.colour.size()) != cnf.num_vars)
        throw std::invalid_argument("check_coloring: colouring not total on the variables");
    for (const Clause& cl : cnf.clauses) {
        std::vector<Literal> coloured;
        for (const Literal& l : cl)
            if (coloring.of(l.var) != Colour::Special) coloured.push_back(l);
        if (coloured.size() < 2) continue;  // the x/y/z role is always permitted
        int reds = 0, blues = 0;
        for (const Literal& l : coloured)
            (coloring.of(l.var) == Colour::Red ? reds : blues)++;
        if (reds == 0 || blues == 0) return false;
        if (coloured.size() == 3 && (reds == 1 || blues == 1)) {
            Colour minority = reds == 1 ? Colour::Red : Colour::Blue;
            Literal lone{};
            std::vector<Literal> majority;
            for (const Literal& l : coloured) {
                if (coloring.of(l.var) == minority)
                    lone = l;
                else
                    majority.push_back(l);
            }
            if (majority[0].positive == majority[1].positive &&
                lone.positive != majority[0].positive)
                return false;
        }
    }
    return true;
}

std::optional<Coloring> find_coloring(const CnfInstance& cnf) {
    if (cnf.num_vars > 20) throw std::invalid_argument("find_coloring: too many variables");
    const int n = cnf.num_vars;
    for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) {
        Coloring col;
        col.colour.resize(n);
        for (int v = 0; v < n; ++v)
            col.colour[v] = (m >> v) & 1 ? Colour::Blue : Colour::Red;
        if (check_coloring(cnf, col)) return col;
    }
    return std::nullopt;
}

Coloring colour_hardened(const HardenMap& map, int hardened_num_vars,
                         const Coloring& original) {
    Coloring out;
    out.colour.assign(hardened_num_vars, Colour::Special);
    for (size_t v = 0; v < original.colour.size(); ++v) out.colour[v] = original.colour[v];
    return out;  // x, y, and every bridge z stay Special
}

// ---------------------------------------------------------------------------
// embedding
// ---------------------------------------------------------------------------

namespace {

struct VariableKind {
    bool special = false;
    bool occurs_pos = false;
    bool occurs_neg = false;
};

}  // namespace

GeometricScenario embed_colored(const CnfInstance& hardened, const Coloring& coloring,
                                const EmbedParams& params) {
    if (!check_coloring(hardened, coloring))
        throw std::invalid_argument("embed_colored: colouring rejected");
    auto [encoded, map] = encode_possloc(hardened);  // also validates clause shape

    const int n = hardened.num_vars;
    std::vector<VariableKind> kind(n);
    for (int v = 0; v < n; ++v) kind[v].special = coloring.of(v) == Colour::Special;
    for (const Clause& cl : hardened.clauses)
        for (const Literal& l : cl) (l.positive ? kind[l.var].occurs_pos
                                                : kind[l.var].occurs_neg) = true;

    // Positive element point per variable; negative = antipode of the chord
    // partner of the antipode (both lie on a chord through -rho_B).
    std::vector<double> pos_point(n, 0.0);
    std::vector<int> reds, blues, onlyneg, onlypos, bridges;
    for (int v = 0; v < n; ++v) {
        if (!kind[v].special) {
            (coloring.of(v) == Colour::Red ? reds : blues).push_back(v);
        } else if (kind[v].occurs_pos && kind[v].occurs_neg) {
            bridges.push_back(v);
        } else if (kind[v].occurs_neg) {
            onlyneg.push_back(v);
        } else {
            onlypos.push_back(v);
        }
    }
    for (size_t i = 0; i < reds.size(); ++i)
        pos_point[reds[i]] = params.red_arc_lo + (params.red_arc_hi - params.red_arc_lo) *
                                                     (i + 0.5) / reds.size();
    for (size_t i = 0; i < blues.size(); ++i)
        pos_point[blues[i]] = params.blue_arc_lo + (params.blue_arc_hi - params.blue_arc_lo) *
                                                       (i + 0.5) / blues.size();
    // x-like specials sit just west of the pole, y-like just east; spreads
    // keep every element point distinct.
    for (size_t i = 0; i < onlyneg.size(); ++i)
        pos_point[onlyneg[i]] = -params.eta / 8 * (1.0 + static_cast<double>(i) / 4);
    for (size_t i = 0; i < onlypos.size(); ++i)
        pos_point[onlypos[i]] = params.eta / 2 * (1.0 + static_cast<double>(i) / 8);

    const double theta = params.theta;
    auto neg_point = [&](double p) {
        return antipode(chord_partner(antipode(p), theta));
    };
    auto element_point = [&](const Literal& l) {
        return l.positive ? canonical_angle(pos_point[l.var]) : neg_point(pos_point[l.var]);
    };
    auto clause_valid = [&](const Clause& cl) {
        std::array<double, 3> pts{element_point(cl[0]), element_point(cl[1]),
                                  element_point(cl[2])};
        try {
            return povm_weights(pts).has_value();
        } catch (const std::invalid_argument&) {
            return false;  // coincident points
        }
    };

    // Greedy signs for bridge variables: each occurs in clauses whose other
    // points are already placed, so per-variable validation is exact.
    const size_t nb = bridges.size();
    for (size_t k = 0; k < nb; ++k) {
        int z = bridges[k];
        double mag = params.eta * (0.6 + 0.4 * (k + 1) / (nb + 1));
        bool placed = false;
        for (double cand : {mag, -mag}) {
            pos_point[z] = cand;
            bool ok = true;
            for (const Clause& cl : hardened.clauses) {
                bool uses = std::any_of(cl.begin(), cl.end(),
                                        [&](const Literal& l) { return l.var == z; });
                if (uses && !clause_valid(cl)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                placed = true;
                break;
            }
        }
        if (!placed)
            throw std::invalid_argument(
                "embed_colored: no valid pole offset for bridge variable " +
                std::to_string(z + 1) + " (adjust arc parameters)");
    }

    for (int c = 0; c < static_cast<int>(hardened.clauses.size()); ++c)
        if (!clause_valid(hardened.clauses[c]))
            throw std::invalid_argument("embed_colored: clause " + std::to_string(c + 1) +
                                        " has no hull-valid povm under these arcs");

    GeometricScenario geom;
    geom.schmidt_angle = theta;
    for (int v = 0; v < n; ++v) {
        // Row value 0 must be killed by the positive element: the outcome-0
        // steered point is the antipode of the positive point.
        geom.alice_chords.push_back(
            chord_direction_from_anchor(antipode(pos_point[v]), theta));
    }
    for (const Clause& cl : hardened.clauses)
        geom.bob_measurements.push_back(Povm3{{element_point(cl[0]), element_point(cl[1]),
                                               element_point(cl[2])}});
    geom.validate();

    auto [probs, bits] = generate_tables(geom, kDefaultEps);
    if (!(bits == encoded))
        throw std::logic_error(
            "embed_colored: generated table does not reproduce the encoded table");
    return geom;
}

// ---------------------------------------------------------------------------
// hemisphere renaming
// ---------------------------------------------------------------------------

std::optional<Renaming> hemisphere_renaming(const GeometricScenario& geom,
                                            const EncodingMap& map) {
    geom.validate();
    const int n = map.num_vars;
    if (static_cast<int>(geom.alice_chords.size()) != n ||
        geom.bob_measurements.size() != map.clause_literals.size())
        throw std::invalid_argument("hemisphere_renaming: map does not match the geometry");

    // Element points per variable polarity, from the chords.
    std::vector<double> pos_pt(n), neg_pt(n);
    for (int v = 0; v < n; ++v) {
        auto ends = chord_outcome_points(geom.schmidt_angle, geom.alice_chords[map.var_to_meas[v]]);
        pos_pt[v] = antipode(ends[0]);
        neg_pt[v] = antipode(ends[1]);
    }
    // Every POVM point must be one of its variable's two element points.
    std::vector<double> all_points;
    for (size_t c = 0; c < map.clause_literals.size(); ++c) {
        const BobMeasurement& m = geom.bob_measurements[map.clause_to_meas[c]];
        const Povm3* pv = std::get_if<Povm3>(&m);
        if (!pv)
            throw std::invalid_argument("hemisphere_renaming: encoded geometry must use povms");
        for (int p = 0; p < 3; ++p) {
            const Literal& l = map.clause_literals[c][p];
            double expect = l.positive ? pos_pt[l.var] : neg_pt[l.var];
            if (angular_separation(pv->points[p], expect) > 1e-6)
                throw std::invalid_argument(
                    "hemisphere_renaming: povm point is not the antipode of its variable's "
                    "steered point");
            all_points.push_back(canonical_angle(pv->points[p]));
        }
    }
    std::sort(all_points.begin(), all_points.end());
    all_points.erase(std::unique(all_points.begin(), all_points.end()), all_points.end());

    // Candidate boundaries: midpoints of the angular gaps.
    std::vector<double> candidates;
    for (size_t i = 0; i < all_points.size(); ++i) {
        double a = all_points[i];
        double b = i + 1 < all_points.size() ? all_points[i + 1] : all_points[0] + 2 * kPi;
        candidates.push_back(canonical_angle((a + b) / 2));
    }

    for (double w : candidates) {
        // Equator exclusion: no point may sit on the diameter through w.
        bool blocked = false;
        for (double p : all_points)
            if (angular_separation(p, w) < kAngleTol ||
                angular_separation(p, antipode(w)) < kAngleTol) {
                blocked = true;
                break;
            }
        if (blocked) continue;
        for (int orient = 0; orient < 2; ++orient) {
            // Open half H+ = points strictly on one side of the diameter.
            auto in_half = [&](double p) {
                double s = std::sin(p - w);
                return orient == 0 ? s > 0 : s < 0;
            };
            std::vector<bool> flip(n, false);
            bool feasible = true;
            for (int v = 0; v < n && feasible; ++v) {
                if (in_half(pos_pt[v]))
                    flip[v] = false;
                else if (in_half(neg_pt[v]))
                    flip[v] = true;
                else
                    feasible = false;  // both element points in the closed other half
            }
            if (!feasible) continue;
            CnfInstance renamed;
            renamed.num_vars = n;
            for (const Clause& cl : map.clause_literals) {
                Clause rc;
                for (const Literal& l : cl)
                    rc.push_back(flip[l.var] ? l.negated() : l);
                renamed.clauses.push_back(std::move(rc));
            }
            auto [v0, v1] = validity(renamed);
            if (v0 && v1) return Renaming{std::move(flip), w, std::move(renamed)};
        }
    }
    return std::nullopt;
}

}  // namespace possloc

#include "possloc/geometry.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace possloc {

double canonical_angle(double a) {
    a = std::fmod(a, 2 * kPi);
    return a < 0 ? a + 2 * kPi : a;
}

double antipode(double a) { return canonical_angle(a + kPi); }

double angular_separation(double a, double b) {
    double d = std::fabs(canonical_angle(a) - canonical_angle(b));
    return d > kPi ? 2 * kPi - d : d;
}

double CirclePoint::x() const { return std::sin(angle); }
double CirclePoint::z() const { return std::cos(angle); }

std::optional<std::array<double, 3>> povm_weights(const std::array<double, 3>& angles) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (angular_separation(angles[i], angles[j]) < kAngleTol)
                throw std::invalid_argument("povm_weights: two coincident points");
    // Solve [x-row; z-row; ones] w = (0, 0, 2) by Cramer's rule.
    double sx[3], sz[3];
    for (int i = 0; i < 3; ++i) {
        sx[i] = std::sin(angles[i]);
        sz[i] = std::cos(angles[i]);
    }
    auto det3 = [](double a, double b, double c, double d, double e, double f, double g,
                   double h, double i) {
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    };
    double det = det3(sx[0], sx[1], sx[2], sz[0], sz[1], sz[2], 1, 1, 1);
    if (std::fabs(det) < 1e-12) return std::nullopt;
    std::array<double, 3> w{};
    w[0] = det3(0, sx[1], sx[2], 0, sz[1], sz[2], 2, 1, 1) / det;
    w[1] = det3(sx[0], 0, sx[2], sz[0], 0, sz[2], 1, 2, 1) / det;
    w[2] = det3(sx[0], sx[1], 0, sz[0], sz[1], 0, 1, 1, 2) / det;
    for (double v : w)
        if (!(v > 1e-12)) return std::nullopt;
    return w;
}

std::array<double, 2> chord_outcome_points(double schmidt_angle, double direction) {
    const double c = std::cos(2 * schmidt_angle);
    const double dx = std::sin(direction), dz = std::cos(direction);
    // |rho + t d|^2 = 1 with rho = (0, c), |d| = 1.
    const double b = c * dz;
    const double disc = b * b - (c * c - 1.0);
    const double root = std::sqrt(std::max(disc, 0.0));
    const double tp = -b + root, tm = -b - root;
    auto at = [&](double t) { return canonical_angle(std::atan2(t * dx, c + t * dz)); };
    return {at(tp), at(tm)};
}

double chord_partner(double anchor, double schmidt_angle) {
    // Half-tangent relation t0 * t1 = -tan^2(theta) for chords through
    // (0, cos 2theta).
    const double u2 = std::tan(schmidt_angle) * std::tan(schmidt_angle);
    const double t = std::tan(canonical_angle(anchor) / 2);
    if (std::fabs(t) < 1e-300) return kPi;
    return canonical_angle(2 * std::atan(-u2 / t));
}

double chord_direction_from_anchor(double anchor, double schmidt_angle) {
    const double c = std::cos(2 * schmidt_angle);
    const double px = std::sin(anchor), pz = std::cos(anchor) - c;
    return canonical_angle(std::atan2(px, pz));
}

double steering_weight(double point_angle, double schmidt_angle) {
    const double ch = std::cos(point_angle / 2), sh = std::sin(point_angle / 2);
    const double C = std::cos(schmidt_angle), S = std::sin(schmidt_angle);
    return 1.0 / (ch * ch / (C * C) + sh * sh / (S * S));
}

void GeometricScenario::validate() const {
    if (!(schmidt_angle > kAngleTol && schmidt_angle < kPi / 2 - kAngleTol))
        throw std::invalid_argument(
            "geometry: schmidt angle must lie strictly inside (0, pi/2)");
    if (alice_chords.empty() || bob_measurements.empty())
        throw std::invalid_argument("geometry: need at least one measurement per party");
    for (const BobMeasurement& m : bob_measurements) {
        if (const Povm3* p = std::get_if<Povm3>(&m)) {
            if (!povm_weights(p->points))
                throw std::invalid_argument(
                    "geometry: povm triple does not contain the circle's centre");
        }
    }
}

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat2 projector_onto(double c0, double c1) {
    const double n = std::sqrt(c0 * c0 + c1 * c1);
    c0 /= n;
    c1 /= n;
    return {{{c0 * c0, c0 * c1}, {c0 * c1, c1 * c1}}};
}

// E = w (I + n(angle)·sigma)/2 with sigma = (sigma_x, sigma_z) real.
Mat2 element_of(double weight, double angle) {
    const double nx = std::sin(angle), nz = std::cos(angle);
    return {{{weight * (1 + nz) / 2, weight * nx / 2},
             {weight * nx / 2, weight * (1 - nz) / 2}}};
}

// <psi| P (x) E |psi> for psi = C|00> + S|11> (real amplitudes).
double joint_probability(const Mat2& P, const Mat2& E, double C, double S) {
    // psi has support on |00> and |11>: the 4x4 contraction collapses to
    //   C^2 P00 E00 + C S P01 E01 + S C P10 E10 + S^2 P11 E11.
    return C * C * P[0][0] * E[0][0] + C * S * P[0][1] * E[0][1] +
           S * C * P[1][0] * E[1][0] + S * S * P[1][1] * E[1][1];
}

}  // namespace

std::pair<ProbabilityTable, PossibilityTable> generate_tables(const GeometricScenario& geom,
                                                              double eps) {
    geom.validate();
    const double theta = geom.schmidt_angle;
    const double C = std::cos(theta), S = std::sin(theta);

    Scenario sc;
    sc.alice_outcomes.assign(geom.alice_chords.size(), 2);
    for (const BobMeasurement& m : geom.bob_measurements)
        sc.bob_outcomes.push_back(std::holds_alternative<Projective>(m) ? 2 : 3);
    ProbabilityTable pt(sc);

    // Bob elements.
    std::vector<std::vector<Mat2>> elements(geom.bob_measurements.size());
    for (size_t b = 0; b < geom.bob_measurements.size(); ++b) {
        if (const Projective* pr = std::get_if<Projective>(&geom.bob_measurements[b])) {
            elements[b].push_back(element_of(1.0, pr->point));
            elements[b].push_back(element_of(1.0, antipode(pr->point)));
        } else {
            const Povm3& pv = std::get<Povm3>(geom.bob_measurements[b]);
            auto w = povm_weights(pv.points);
            if (!w) throw std::invalid_argument("generate_tables: invalid povm");
            for (int i = 0; i < 3; ++i) elements[b].push_back(element_of((*w)[i], pv.points[i]));
        }
    }

    for (size_t a = 0; a < geom.alice_chords.size(); ++a) {
        auto ends = chord_outcome_points(theta, geom.alice_chords[a]);
        for (int i = 0; i < 2; ++i) {
            // Alice state steering Bob to the endpoint.
            const double s = ends[i];
            Mat2 P = projector_onto(std::cos(s / 2) / C, std::sin(s / 2) / S);
            for (size_t b = 0; b < elements.size(); ++b)
                for (size_t l = 0; l < elements[b].size(); ++l) {
                    double p = joint_probability(P, elements[b][l], C, S);
                    pt.set(static_cast<int>(a), i, static_cast<int>(b), static_cast<int>(l),
                           std::min(std::max(p, 0.0), 1.0));
                }
        }
    }
    pt.validate();
    PossibilityTable bits = possibilize(pt, eps);
    return {std::move(pt), std::move(bits)};
}

// ---------------------------------------------------------------------------

GeometricScenario generalized_hardy_geometry(const GenHardyParams& params) {
    const double theta = params.theta;
    if (!(theta > kAngleTol && theta < kPi / 2 - kAngleTol))
        throw std::invalid_argument("generalized_hardy_geometry: bad schmidt angle");
    struct Named {
        const char* name;
        double angle;
    };
    const double A = chord_partner(params.a, theta);
    const double B = chord_partner(params.b, theta);
    const double y = chord_partner(params.x, theta);
    const Named pts[6] = {{"a", canonical_angle(params.a)}, {"A", A},
                          {"b", canonical_angle(params.b)}, {"B", B},
                          {"x", canonical_angle(params.x)}, {"y", y}};
    const double min_sep = 1e-3;  // keeps every non-designed entry above eps
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (angular_separation(pts[i].angle, pts[j].angle) < min_sep)
                throw std::invalid_argument(
                    std::string("generalized_hardy_geometry: coincident points ") +
                    pts[i].name + " and " + pts[j].name);
    const double b_perp = antipode(canonical_angle(params.b));
    for (const Named& p : pts)
        if (std::string(p.name) != "b" && angular_separation(p.angle, b_perp) < min_sep)
            throw std::invalid_argument(
                std::string("generalized_hardy_geometry: point ") + p.name +
                " coincides with the antipode of b (extra zero)");

    GeometricScenario geom;
    geom.schmidt_angle = theta;
    geom.alice_chords = {chord_direction_from_anchor(params.a, theta),
                         chord_direction_from_anchor(params.b, theta),
                         chord_direction_from_anchor(params.x, theta)};
    geom.bob_measurements = {
        Projective{canonical_angle(params.b)},
        Povm3{{antipode(A), antipode(B), antipode(canonical_angle(params.x))}},
        Povm3{{antipode(A), antipode(B), antipode(y)}}};
    geom.validate();  // hull validity of both povms
    return geom;
}

GeometricScenario hardy_geometry(const HardyParams& params) {
    const double theta = params.theta;
    if (!(theta > kAngleTol && theta < kPi / 2 - kAngleTol))
        throw std::invalid_argument("hardy_geometry: bad schmidt angle");
    const double p2 = canonical_angle(params.p2);
    const double p1 = antipode(chord_partner(antipode(p2), theta));
    // Flagged event: (chord anchored at p2, outcome 0) with Bob point p1.
    const double flagged =
        steering_weight(p2, theta) * (1 + std::cos(p2 - p1)) / 2;
    if (flagged < 1e-9)
        throw std::invalid_argument(
            "hardy_geometry: degenerate parameters collapse the flagged 1 to 0");
    GeometricScenario geom;
    geom.schmidt_angle = theta;
    geom.alice_chords = {chord_direction_from_anchor(p2, theta),
                         chord_direction_from_anchor(antipode(p2), theta)};
    geom.bob_measurements = {Projective{p1}, Projective{p2}};
    geom.validate();
    return geom;
}

// ---------------------------------------------------------------------------
// GEOM v1
// ---------------------------------------------------------------------------

GeometricScenario parse_geom(std::istream& in) {
    GeometricScenario geom;
    geom.alice_chords.clear();
    bool have_header = false, have_state = false;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::istringstream is(raw);
        std::string tok;
        if (!(is >> tok)) continue;
        auto fail = [&](const std::string& what) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": " + what);
        };
        if (!have_header) {
            std::string ver;
            if (tok != "GEOM" || !(is >> ver) || ver != "1") fail("expected 'GEOM 1' header");
            have_header = true;
            continue;
        }
        if (tok == "STATE") {
            std::string kind;
            double v;
            if (!(is >> kind >> v) || kind != "schmidt") fail("expected 'STATE schmidt <angle>'");
            geom.schmidt_angle = v;
            have_state = true;
        } else if (tok == "ALICE") {
            std::string kind;
            double v;
            if (!(is >> kind >> v) || kind != "chord") fail("expected 'ALICE chord <angle>'");
            geom.alice_chords.push_back(v);
        } else if (tok == "BOB") {
            std::string kind;
            if (!(is >> kind)) fail("expected 'BOB proj|povm ...'");
            if (kind == "proj") {
                double v;
                if (!(is >> v)) fail("expected projective point angle");
                geom.bob_measurements.push_back(Projective{canonical_angle(v)});
            } else if (kind == "povm") {
                double a1, a2, a3;
                if (!(is >> a1 >> a2 >> a3)) fail("expected three povm point angles");
                geom.bob_measurements.push_back(Povm3{{canonical_angle(a1), canonical_angle(a2),
                                                       canonical_angle(a3)}});
            } else {
                fail("unknown BOB measurement kind '" + kind + "'");
            }
        } else {
            fail("unknown directive '" + tok + "'");
        }
    }
    if (!have_header) throw std::invalid_argument("line 1: expected 'GEOM 1' header");
    if (!have_state) throw std::invalid_argument("GEOM: missing STATE line");
    geom.validate();
    return geom;
}

GeometricScenario parse_geom(const std::string& text) {
    std::istringstream is(text);
    return parse_geom(is);
}

std::string serialize_geom(const GeometricScenario& geom) {
    std::ostringstream os;
    char buf[40];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    os << "GEOM 1\nSTATE schmidt " << fmt(geom.schmidt_angle) << '\n';
    for (double c : geom.alice_chords) os << "ALICE chord " << fmt(c) << '\n';
    for (const BobMeasurement& m : geom.bob_measurements) {
        if (const Projective* p = std::get_if<Projective>(&m))
            os << "BOB proj " << fmt(p->point) << '\n';
        else {
            const Povm3& v = std::get<Povm3>(m);
            os << "BOB povm " << fmt(v.points[0]) << ' ' << fmt(v.points[1]) << ' '
               << fmt(v.points[2]) << '\n';
        }
    }
    return os.str();
}

}  // namespace possloc

#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <variant>

#include "possloc/table.hpp"

namespace possloc {

// Angles parameterize the unit circle in the x-z plane of the Bloch sphere:
// point(alpha) = (sin alpha, cos alpha); the qubit state with that Bloch
// vector is (cos(alpha/2), sin(alpha/2)).
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kAngleTol = 1e-9;

double canonical_angle(double a);                // [0, 2pi)
double antipode(double a);
double angular_separation(double a, double b);   // [0, pi]

struct CirclePoint {
    double angle = 0;  // canonical

    static CirclePoint of(double a) { return {canonical_angle(a)}; }
    CirclePoint antipodal() const { return {antipode(angle)}; }
    double x() const;
    double z() const;
};

struct Projective {
    double point = 0;  // outcome 0 = this point, outcome 1 = its antipode
};
struct Povm3 {
    std::array<double, 3> points{};
};
using BobMeasurement = std::variant<Projective, Povm3>;

// Coplanar two-qubit steering model: state cosθ|00> + sinθ|11>, Bob's
// reduced state at (0, cos 2θ); each Alice chord is the line through that
// point with the given direction angle, outcome 0 = the intersection in the
// +direction.
struct GeometricScenario {
    double schmidt_angle = kPi / 4;
    std::vector<double> alice_chords;            // direction angles
    std::vector<BobMeasurement> bob_measurements;

    void validate() const;  // throws on degenerate state or invalid POVM
};

// Weights with Σ wᵢ·n(θᵢ) = 0 and Σ wᵢ = 2, all strictly positive; the POVM
// elements are Eᵢ = wᵢ(I + nᵢ·σ)/2.  nullopt when the circle's centre is
// outside or on the hull boundary.  Throws on coincident points.
std::optional<std::array<double, 3>> povm_weights(const std::array<double, 3>& angles);

// Both outcome angles of the chord through (0, cos 2θ) with the given
// direction; [0] is the +direction intersection.
std::array<double, 2> chord_outcome_points(double schmidt_angle, double direction);

// The other endpoint of the chord through (0, cos 2θ) anchored at `anchor`.
double chord_partner(double anchor, double schmidt_angle);

// Direction angle such that chord_outcome_points(...)[0] == anchor.
double chord_direction_from_anchor(double anchor, double schmidt_angle);

// Probability that Alice's measurement steers Bob to the circle point.
double steering_weight(double point_angle, double schmidt_angle);

// Joint probabilities <ψ|P⊗E|ψ> by real 4x4 algebra, P the projector onto
// the Alice state steering Bob to the chord endpoint.  Possibility table =
// possibilize(probabilities, eps).
std::pair<ProbabilityTable, PossibilityTable> generate_tables(const GeometricScenario& geom,
                                                              double eps = kDefaultEps);

// ---------------------------------------------------------------------------
// Named constructions
// ---------------------------------------------------------------------------

// Six points a,A,b,B,x,y with chords {a,A},{b,B},{x,y} through the reduced
// state; Bob = Projective(b), Povm3(A⊥,B⊥,x⊥), Povm3(A⊥,B⊥,y⊥).  The
// defaults generate exactly the seven-zero 6x8 table of fixture("gen_hardy").
struct GenHardyParams {
    double theta = kPi / 10;
    double a = -0.14;
    double b = 0.14;
    double x = -kPi / 5;
};
GeometricScenario generalized_hardy_geometry(const GenHardyParams& params = {});

// Two chords and two projective Bob points with the three scan zeros
// enforced by coincidences; every valid parameter choice makes hardy_scan
// fire on the generated table.
struct HardyParams {
    double theta = 0.4346;
    double p2 = 1.9457;
};
GeometricScenario hardy_geometry(const HardyParams& params = {});

// GEOM v1 text format.
GeometricScenario parse_geom(std::istream& in);
GeometricScenario parse_geom(const std::string& text);
std::string serialize_geom(const GeometricScenario& geom);

}  // namespace possloc

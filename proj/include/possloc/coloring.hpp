#pragma once

#include <optional>

#include "possloc/geometry.hpp"
#include "possloc/reduction.hpp"

namespace possloc {

enum class Colour { Red, Blue, Special };

struct Coloring {
    std::vector<Colour> colour;  // one per variable

    Colour of(int var) const { return colour[var]; }
};

// Colour rule on a clause set: ignoring special variables, every clause with
// at least two coloured literals carries both colours, and in a fully
// coloured clause a lone minority-colour literal must not oppose the shared
// sense of the other two.
bool check_coloring(const CnfInstance& cnf, const Coloring& coloring);

// Brute force over the 2^n red/blue colourings (n <= 20); first passing one.
std::optional<Coloring> find_coloring(const CnfInstance& cnf);

// Colours harden() output given a red/blue colouring of the original
// variables: x, y and every bridge variable become Special.
Coloring colour_hardened(const HardenMap& map, int hardened_num_vars,
                         const Coloring& original);

struct EmbedParams {
    double theta = kPi / 3;
    double red_arc_lo = -0.34906585039886590;  // -20 degrees
    double red_arc_hi = -0.13962634015954636;  //  -8 degrees
    double blue_arc_lo = 0.13962634015954636;
    double blue_arc_hi = 0.34906585039886590;
    double eta = 0.02;  // special-variable offset bound (radians)
};

// Realizes an encoded instance geometrically: red variables' positive
// element points spread over the red arc, blue over the blue arc, specials
// within eta of the z-axis poles (bridge offsets chosen greedily per
// clause).  Verifies every clause POVM is hull-valid and that the generated
// possibility table equals encode_possloc's bit-for-bit.
GeometricScenario embed_colored(const CnfInstance& hardened, const Coloring& coloring,
                                const EmbedParams& params = {});

struct Renaming {
    std::vector<bool> flipped;   // per variable
    double boundary_angle = 0;   // the chosen diameter
    CnfInstance renamed;
};

// Tries candidate diameters (gap midpoints of the sorted POVM points);
// renames each variable so its positive-occurrence point lies in the chosen
// open half; returns the first renaming whose instance is 0-valid and
// 1-valid, nullopt when no candidate works.
std::optional<Renaming> hemisphere_renaming(const GeometricScenario& geom,
                                            const EncodingMap& map);

}  // namespace possloc

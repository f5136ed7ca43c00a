#pragma once

// Knot Floer homology from a Type-A module of a knot complement over A(W_T):
// pairings with K^-, K_inf and K^+, the natural maps between the flavours,
// and the bypass exact triangle on the paired complexes.

#include "borsut/limits.hpp"
#include "borsut/structures.hpp"

#include <map>
#include <string>
#include <vector>

namespace borsut {

struct KnotFixture {
    std::string name;
    ModPtr module;
    std::string note;
};

// ParseError, FailsVerification (structure equation), GradingInconsistent.
KnotFixture load_type_a_text(const std::string& text);
KnotFixture load_type_a(const std::string& path);
// A bundled fixture by name ("unknot", "trefoil", ...) or a path to a file.
KnotFixture fixture(const std::string& name_or_path);
std::vector<std::string> bundled_fixture_names();
KnotFixture empty_fixture();

enum class Variant { Minus, Hat, Plus };
Variant parse_variant(const std::string& s); // Usage on anything else
const char* variant_name(Variant v);

// Doubled Alexander gradings [lo, hi] reported for a fixture: from two below
// the lowest generator to the highest (minus, hat); plus reaches four above.
struct Window {
    int lo = 0, hi = 0;
};
Window grading_window(const KnotFixture& k, Variant v);

struct HfkResult {
    Variant variant = Variant::Minus;
    // Minus: the F[U]-module. Hat: U acts by zero, one F[U]/U per class.
    // Plus: left empty; see ranks.
    GradedFUModule module;
    std::map<Grading, int> ranks; // F2-dimension per grading inside the window
    Window window;
    std::string certificate;
};

// Minus is cross-checked grading by grading against K^- mod U^B for B = bound
// and bound + 1; plus against the K^+ truncations. NoStabilization if the
// window needs a larger bound.
HfkResult hfk(Variant v, const KnotFixture& k, int bound);

struct MapCheck {
    std::string name; // "p*", "pi*", "iota*"
    int a2 = 0;       // source grading
    F2Matrix natural; // chain level, in the limit-side bases
    F2Matrix limit;   // Id box Phi, restricted to the piece
    F2Matrix on_homology;
    bool pieces_match = true; // limit-side piece equals the U-expansion piece
    bool equal = true;
};

struct NaturalMaps {
    std::vector<MapCheck> checks;
    Report report;
};

// p* against Id box Phi_SV, pi* against Id box Phi_2h and iota* against
// Id box Phi_dSV, in every grading of the window.
NaturalMaps natural_maps(const KnotFixture& k, int bound);

// Per grading of the minus window, the stabilized tower homology against the
// paired K^- homology. The note lists
// the largest first-stable stage.
struct LimitAgreement {
    Report report;
    int max_first_stable = 0;
};
LimitAgreement limit_agreement(const KnotFixture& k, int bound);

struct ClassVerdict {
    std::string where;
    bool nonzero = false;
};
// `where` is "hat" (a cycle of F box K_inf), "minus" (a U^0 cycle of F box K^-),
// or a stage "K_n" (a cycle of F box K_n, pushed along the tower `steps` times).
// Generator names are those of the paired complex, e.g. "x0⊗x".
// NotACycle, Usage for mixed gradings or unknown names.
std::vector<ClassVerdict> distinguished_class_image(const KnotFixture& k, const std::string& where,
                                                    const std::vector<std::string>& gens, int steps);

// Homology ranks per grading of a box d.
std::map<Grading, int> sfh_pair(const ModPtr& a, const ModPtr& d);

struct TriangleReport {
    int rank[3] = {0, 0, 0};      // H(F box D_A), D_B, D_C
    int map_rank[3] = {0, 0, 0};  // induced by phi_A, phi_B, phi_C
    bool composite_zero[3] = {true, true, true};
    bool exact[3] = {true, true, true};
    Report report;
};
// The disk triple carried to A(W_T) by N box B_1, paired with the fixture.
TriangleReport exact_triangle(const KnotFixture& k);
// Cone(phi_B) is isomorphic to M_A, with phi_C the inclusion of M_C and phi_A
// the projection to M_B.
Report cone_identification();

} // namespace borsut

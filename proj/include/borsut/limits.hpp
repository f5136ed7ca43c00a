#pragma once

// Towers of Type-D structures and their limits.
//
// A limit is presented by threads: chains of generators carried to one
// another by idempotent-coefficient terms of the connecting maps. A direct
// tower labels a thread by the stage where it is born, an inverse tower by
// its bottom stage (below which the map is no longer a plain relabelling).
// The presentation at bound B keeps the threads labelled <= B and reads the
// delta-table at stage B+1; it is certified by agreement with stage B+2.
// Terms into threads labelled > B are dropped, so the direct presentation is
// a quotient (K^- mod U^B) and the inverse one a substructure (ker U^B of K^+).

#include "borsut/structures.hpp"

#include <functional>
#include <string>
#include <vector>

namespace borsut {

struct Tower {
    enum class Dir { Direct, Inverse };
    std::string name;
    Dir dir = Dir::Direct;
    std::function<ModPtr(int)> stage;
    std::function<Morphism(int)> connect;   // Direct: stage n -> n+1. Inverse: stage n+1 -> n.
    std::function<Morphism(int)> secondary; // the U-family, same shape as connect; may be empty
};

Tower catalog_direct_tower();  // (K_n, eta_n) with U from eta_p
Tower catalog_inverse_tower(); // (K_n^+, negative maps) with U from the positive maps
Tower constant_tower(ModPtr m);

struct LimitPresentation {
    ModPtr module;                 // generators delta_0, delta_1, ... in label order
    std::vector<int> u;            // U(delta_j) as a generator index, -1 for zero; empty without a U-family
    int bound = 0;
    std::vector<int> label_stage;  // birth (direct) or bottom (inverse) stage per generator
    std::vector<bool> truncated;   // some delta term was dropped at the bound
    // at[n][j]: generator of stage n carrying delta_j, -1 if the thread is absent there.
    std::vector<std::vector<int>> at;
    // thread_of[n][g]: index j of the thread through generator g of stage n;
    // -1 if the thread is labelled beyond the bound, -2 if g is on no limit thread.
    std::vector<std::vector<int>> thread_of;
};

// NotEventuallyStable if threads merge or split, if delta leaves the threads,
// or if stages bound+1 and bound+2 disagree.
LimitPresentation direct_limit(const Tower& t, int bound);
LimitPresentation inverse_limit(const Tower& t, int bound);
LimitPresentation limit(const Tower& t, int bound);

// Table equality with a target under delta_j -> generator j, plus equal
// gradings and, if given, the same U-action.
Report compare_presentation(const LimitPresentation& p, const ModPtr& target, const std::vector<int>& target_u);
// U-actions of the truncated K^- and K^+ presentations (generator order).
std::vector<int> k_minus_u(int n);
std::vector<int> k_plus_u(int n);

// The secondary family commutes with the connecting maps, stage by stage up
// to `bound`. Exact equality is required; the note counts homotopic squares.
Report check_commutation(const Tower& t, int bound);

// The map induced on the presentation by a compatible family: stage n -> T
// for a direct tower, T -> stage n for an inverse one. FamilyNotCompatible
// names the first failing square.
Morphism induced_limit_map(const Tower& t, const LimitPresentation& p, const std::function<Morphism(int)>& family,
                           const std::string& name);
// Morphism check that ignores the truncated generators of a direct presentation.
Report check_limit_morphism(const Morphism& f, const LimitPresentation& p);

// The Alexander piece (a2 fixed, both Maslov labels) of an F2 complex.
// Since d preserves A, a piece is both a subcomplex and a quotient.
struct Piece {
    GradedChainComplex c;
    std::vector<int> index; // generator of the parent complex
    std::vector<int> power; // U-power for expansions, 0 otherwise
};
Piece graded_piece(const GradedChainComplex& c, int a2);
// Restriction of a chain map (row convention) to pieces; tgt == nullptr keeps the whole target.
F2Matrix restrict_map(const F2Matrix& f, const Piece& src, const Piece* tgt);
// One Alexander grading of an F2[U] complex over F2: U^i g (minus) or U^-i g
// (plus, coefficients in F2[U, U^-1] / U F2[U]) with i >= 0.
Piece expand_minus(const GradedChainComplex& cu, int a2);
Piece expand_plus(const GradedChainComplex& cu, int a2);
int piece_homology_dim(const Piece& p);

struct StableHomology {
    int value = 0;
    int first_stable = 0;  // least n0 with every map n -> n+1 (n0 <= n < bound) an isomorphism
    std::vector<int> dims; // per stage 0..bound
};
// H of a box stage_n in one Alexander grading, for n = 0..bound, with the
// maps induced by the connecting morphisms. NoStabilization if the last map
// is not an isomorphism.
StableHomology stabilized_pair_homology(const ModPtr& a, const Tower& t, int a2, int bound);

// Truncation bound from BORSUT_TRUNCATION, default 12.
int truncation_bound();

} // namespace borsut

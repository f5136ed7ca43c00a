#pragma once

// Alexander weights of chords and the Z/2 Maslov parity on the algebras.
//
// A delta term a (x) y out of x has A(y) = A(x) - w(a) and
// gr(y) = gr(x) + 1 + eps(a). An A-infinity operation m_{k+1}(x, a_1..a_k)
// has A = A(x) + sum w(a_i) and gr = gr(x) + 1 + k + sum eps(a_i). With these
// rules every paired differential preserves A and flips gr.

#include "borsut/structures.hpp"

#include <map>
#include <string>
#include <vector>

namespace borsut {

// Doubled Alexander weight of a basis element of A(W_T): rho_1 counts -1,
// rho_2 and rho_3 count +1 (so w(rho_23) = 1). Idempotents weigh 0.
int chord_weight2(const Algebra& a, int basis);

// Parity bits on the elementary chords of each algebra (by id).
using ParityAssignment = std::map<std::string, std::vector<int>>;
int eps(const Algebra& a, int basis, const ParityAssignment& p);
// The assignment used throughout.
const ParityAssignment& maslov_parity();

struct ParityCheck {
    bool ok = true;
    std::string failure;
};

// Builds the parity constraint graph of every catalog structure and map (up
// to stage max_n) and checks it is 2-colourable for the given assignment.
ParityCheck check_parity(const ParityAssignment& p, int max_n);
// All assignments over W_D, W_A, W_T (64 in total) passing check_parity with
// eps(rho_23) = 1.
std::vector<ParityAssignment> parity_search(int max_n);

// Alexander (doubled) and Maslov labels of K_n and K_n^+.
std::vector<Grading> torus_gradings(int n);
std::vector<Grading> inverse_torus_gradings(int n);

// Every delta term of a graded Type-D structure over W_T respects the rules above.
Report check_type_d_gradings(const Bimodule& m);
// Every operation of a graded A-infinity module over W_T respects the rules above.
Report check_ainf_gradings(const Bimodule& m);
// Alexander degree (doubled) of a morphism between graded modules, if homogeneous.
std::optional<int> alexander_degree2(const Morphism& f);
// Maslov degree of a morphism: gr(y) = gr(x) + eps(a) + deg for every term.
std::optional<int> maslov_degree(const Morphism& f);

} // namespace borsut

#pragma once

// The explicitly computed modules, bimodules and gluing maps. Every entry is
// built from its printed table; verify_catalog() checks each one and
// rederive_maps() recomputes the gluing maps through box products.

#include "borsut/structures.hpp"

#include <functional>
#include <string>
#include <vector>

namespace borsut {

AlgebraPtr alg_wd(); // A(W_D, 1)
AlgebraPtr alg_wa(); // A(W_A, 1)
AlgebraPtr alg_wt(); // A(W_T, 1)

enum class Sign { Plus, Minus };
enum class Level { Annulus, Torus };

// Modules are cached: equal arguments give the same pointer, so morphisms
// built separately compose.
ModPtr disk_module(char which);           // 'A', 'B', 'C'
Morphism disk_bypass_map(char which);     // phi'_A: M_A -> M_B, phi'_B: M_B -> M_C, phi'_C: M_C -> M_A
ModPtr torus_module(int n);               // K_n
ModPtr annulus_module(int n);             // M_n
ModPtr annulus_infinity();                // M_inf
ModPtr torus_bimodule();                  // N
ModPtr twist_bimodule(int n);             // C_n, n >= 1
ModPtr bypass_bimodule(int which);        // B_1, B_2

// psi (Annulus, M_m -> M_{m+1}) and eta (Torus, K_m -> K_{m+1}).
Morphism stabilization_map(Sign s, int m, Level level);
// M_m -> M_inf or K_m -> K_inf.
Morphism sv_map(int m, Level level);

ModPtr k_infinity(); // K_inf = {x}, delta = 0
ModPtr k_2h();       // {q}, delta(q) = rho_12 (x) q, over W_A
ModPtr k_fill();     // {x}, delta(x) = rho_23 (x) x, over W_T
// M_n -> K_2h (Annulus) or K_n -> K_fill (Torus).
Morphism two_handle_map(int n, Level level);

UTypeD k_minus();                     // delta(x) = rho_23 (x) U x
ModPtr k_minus_truncated(int n);      // x_i = U^i x for i <= n, quotient by U^{n+1}
ModPtr k_plus_truncated(int n);       // x_i = U^{-i} x for i <= n, the kernel of U^{n+1}
ModPtr inverse_torus_module(int n);   // K_n^+
Morphism inverse_tower_map(Sign s, int n); // K_{n+1}^+ -> K_n^+
Morphism dsv_map(int n);              // K_inf -> K_n^+

// Maps between the limit-side presentations: K^- truncations to K_inf and
// K_fill, and K_inf into the K^+ truncation.
Morphism u_to_zero_map(int n);   // U^i x -> x for i = 0, else 0
Morphism u_to_one_map(int n);    // U^i x -> x for all i
Morphism kernel_inclusion_map(int n); // x -> U^0 x

// A catalog entry by name: "M_A", "K_3", "C_2", "N", "B_1", "M_inf", "K_inf",
// "K_2h", "K_fill", "Kp_2", "Kminus_4", "Kplus_4" (truncated), ...
ModPtr catalog_module(const std::string& name);
// A catalog map by name: "phi_B", "psi_p_0", "psi_n_2", "eta_n_1", "sv_M_2",
// "sv_K_1", "2h_M_1", "2h_K_2", "inv_n_1", "inv_p_0", "dsv_2".
Morphism catalog_map(const std::string& name);
std::vector<std::string> catalog_module_names();
std::vector<std::string> catalog_map_names();

struct CheckLine {
    std::string name;
    bool ok = true;
    std::string detail;
};

// Structure and morphism verification for every entry (towers up to max_n).
std::vector<CheckLine> verify_catalog(int max_n);

// Rename the generators of a box product to the catalog generator names.
// `rename` maps a product generator (factor names) to the catalog name.
// Returns the bijection product -> target, checking the tables agree.
std::vector<int> identify(const ModPtr& product, const ModPtr& target,
                          const std::function<std::string(const std::string&, const std::string&)>& rename);
// Carry a morphism between products to the identified catalog modules.
Morphism transport(const Morphism& f, const ModPtr& src, const std::vector<int>& src_bij,
                   const ModPtr& tgt, const std::vector<int>& tgt_bij);

// Gluing-map re-derivations through box_map, each compared with the printed
// formula generator by generator. Also the key-diagram identifications.
std::vector<CheckLine> rederive_maps(int max_m);

} // namespace borsut

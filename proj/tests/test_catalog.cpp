#include "borsut/catalog.hpp"
#include "borsut/error.hpp"
#include "borsut/gradings.hpp"

#include <doctest.h>

#include <algorithm>

using namespace borsut;

TEST_CASE("every catalog entry verifies") {
    for (const auto& c : verify_catalog(4)) CHECK_MESSAGE(c.ok, c.name << ": " << c.detail);
}

TEST_CASE("gluing maps re-derived through box products equal the printed formulas") {
    auto lines = rederive_maps(3);
    CHECK(lines.size() > 10);
    for (const auto& c : lines) CHECK_MESSAGE(c.ok, c.name << ": " << c.detail);
}

TEST_CASE("disk modules and bypass maps") {
    CHECK(disk_module('A')->dump() == "M_A [TypeD] left WD.1\n  x I_1\n  y I_2\n  m1(y) = rho⊗x\n");
    CHECK(disk_module('B')->size() == 1);
    CHECK(disk_module('B')->entry_count() == 0);
    CHECK(disk_module('C')->gen(0).name == "w");
    CHECK(disk_bypass_map('A').str() == "y -> I_2⊗z");
    CHECK(disk_bypass_map('B').str() == "z -> rho⊗w");
    CHECK(disk_bypass_map('C').str() == "w -> I_1⊗x");
    CHECK(compose(disk_bypass_map('C'), disk_bypass_map('A')).is_zero());
}

TEST_CASE("torus and annulus modules") {
    CHECK(torus_module(0)->size() == 1);
    CHECK(torus_module(0)->entry_count() == 0);
    CHECK(torus_module(0)->gen(0).name == "a");
    for (int n = 0; n <= 6; ++n) CHECK(torus_module(n)->size() == std::size_t(n) + 1);
    CHECK(torus_module(2)->dump().find("m1(b_1) = rho_2⊗a\n  m1(b_2) = rho_23⊗b_1") != std::string::npos);
    CHECK(annulus_module(0)->dump() == "M_0 [TypeD] left WA.1\n  a I_2\n");
    CHECK(annulus_module(1)->dump().find("m1(b_1) = rho_1⊗a") != std::string::npos);
    CHECK(annulus_infinity()->dump() == "M_inf [TypeD] left WA.1\n  w I_1\n");
    CHECK(inverse_torus_module(0)->size() == 1);
    CHECK(inverse_torus_module(2)->dump().find("m1(a) = rho_3⊗b_1\n  m1(b_1) = rho_23⊗b_2") != std::string::npos);
}

TEST_CASE("bimodule tables") {
    CHECK(torus_bimodule()->dump() ==
          "N [DA] left WT.1 right WA.1\n  x I_2 I_2\n  y I_1 I_1\n  m2(x, rho_2) = rho_3⊗y\n"
          "  m2(y, rho_1) = rho_2⊗x\n  m2(y, rho_12) = rho_23⊗y\n");
    CHECK(bypass_bimodule(1)->dump().find("m2(f, rho) = I_2⊗e") != std::string::npos);
    CHECK(bypass_bimodule(2)->dump().find("m2(f, rho) = rho_2⊗d") != std::string::npos);
    CHECK(twist_bimodule(1)->entry_count() == 6);
    CHECK(twist_bimodule(3)->dump().find("m5(a, rho_2, rho_12, rho_12, rho_12) = rho_2⊗c") != std::string::npos);
}

TEST_CASE("stabilization, SV, 2-handle and inverse-tower maps") {
    CHECK(stabilization_map(Sign::Minus, 0, Level::Annulus).str() == "a -> rho_2⊗b_1");
    CHECK(stabilization_map(Sign::Plus, 2, Level::Torus).str() == "a -> I_2⊗a, b_1 -> I_1⊗b_1, b_2 -> I_1⊗b_2");
    CHECK(stabilization_map(Sign::Minus, 2, Level::Torus).str() == "a -> rho_3⊗b_1, b_1 -> I_1⊗b_2, b_2 -> I_1⊗b_3");
    CHECK(sv_map(0, Level::Annulus).str() == "a -> rho_2⊗w");
    CHECK(sv_map(2, Level::Torus).str() == "b_2 -> I_1⊗x");
    CHECK(two_handle_map(0, Level::Annulus).str() == "a -> rho_2⊗q");
    CHECK(two_handle_map(2, Level::Torus).str() == "a -> rho_3⊗x, b_1 -> I_1⊗x, b_2 -> I_1⊗x");
    CHECK(k_2h()->dump().find("m1(q) = rho_12⊗q") != std::string::npos);
    CHECK(k_fill()->dump().find("m1(x) = rho_23⊗x") != std::string::npos);
    CHECK(inverse_tower_map(Sign::Minus, 0).str() == "b_1 -> rho_2⊗a");
    CHECK(inverse_tower_map(Sign::Plus, 1).str() == "a -> I_2⊗a, b_1 -> I_1⊗b_1");
    CHECK(dsv_map(2).str() == "x -> I_1⊗b_2");
    for (int n = 0; n <= 3; ++n) {
        CHECK(is_type_d_morphism(inverse_tower_map(Sign::Minus, n)).ok);
        CHECK(is_type_d_morphism(inverse_tower_map(Sign::Plus, n)).ok);
        CHECK(is_type_d_morphism(dsv_map(n)).ok);
        CHECK(is_type_d_morphism(two_handle_map(n, Level::Torus)).ok);
    }
}

TEST_CASE("dSV maps are compatible with the negative inverse-tower maps") {
    for (int n = 0; n <= 3; ++n) CHECK(compose(dsv_map(n + 1), inverse_tower_map(Sign::Minus, n)) == dsv_map(n));
}

TEST_CASE("the U-family commutes with the connecting maps") {
    for (int n = 0; n <= 4; ++n) {
        const Morphism a = compose(stabilization_map(Sign::Plus, n, Level::Torus), stabilization_map(Sign::Minus, n + 1, Level::Torus));
        const Morphism b = compose(stabilization_map(Sign::Minus, n, Level::Torus), stabilization_map(Sign::Plus, n + 1, Level::Torus));
        CHECK(a == b);
    }
}

TEST_CASE("the inverse-tower maps are unique on their arrow sets") {
    // The morphism complex K_{n+1}^+ -> K_n^+ has the negative map as a nontrivial class.
    for (int n = 0; n <= 2; ++n) {
        auto basis = morphism_homology_basis(inverse_torus_module(n + 1), inverse_torus_module(n));
        CHECK(!basis.empty());
        CHECK(!find_homotopy(inverse_tower_map(Sign::Minus, n), zero_morphism(inverse_torus_module(n + 1), inverse_torus_module(n))));
    }
}

TEST_CASE("Alexander gradings") {
    auto g = torus_gradings(2);
    // order a, b_1, b_2
    CHECK(g[2].a2 - g[1].a2 == 2);     // A(b_2) - A(b_1) = 1
    CHECK(g[1].a2 - g[0].a2 == 1);     // A(b_1) - A(a) = w(rho_2) = 1/2
    CHECK(g[2].a2 == 0);
    for (int n = 0; n <= 5; ++n) {
        CHECK(check_type_d_gradings(*torus_module(n)).ok);
        CHECK(check_type_d_gradings(*inverse_torus_module(n)).ok);
        auto tg = torus_gradings(n);
        for (int j = 1; j + 1 <= n; ++j) CHECK(tg[j + 1].a2 - tg[j].a2 == 2);
        CHECK(alexander_degree2(stabilization_map(Sign::Minus, n, Level::Torus)) == 0);
        CHECK(alexander_degree2(stabilization_map(Sign::Plus, n, Level::Torus)) == -2);
        CHECK(maslov_degree(stabilization_map(Sign::Minus, n, Level::Torus)) == 0);
        CHECK(maslov_degree(stabilization_map(Sign::Plus, n, Level::Torus)) == 0);
    }
    auto t = alg_wt();
    auto weight = [&](const std::string& name) {
        for (std::size_t b = 0; b < t->size(); ++b)
            if (t->name(int(b)) == name) return chord_weight2(*t, int(b));
        return 99;
    };
    CHECK(weight("rho_1") == -1);
    CHECK(weight("rho_2") == 1);
    CHECK(weight("rho_3") == 1);
    CHECK(weight("rho_23") == 2);
    CHECK(weight("I_1") == 0);
}

TEST_CASE("Z/2 Maslov parity") {
    const auto& p = maslov_parity();
    CHECK(p.at("WD") == std::vector<int>{0});
    CHECK(p.at("WA") == std::vector<int>{1, 0});
    CHECK(p.at("WT") == std::vector<int>{0, 1, 0});
    CHECK(check_parity(p, 4).ok);
    auto all = parity_search(3);
    CHECK(all.size() == 16);
    CHECK(std::find(all.begin(), all.end(), p) != all.end());
    ParityAssignment flat = p;
    flat["WT"] = {0, 0, 0};
    CHECK(!check_parity(flat, 3).ok);
}

TEST_CASE("catalog lookup by name") {
    CHECK(catalog_module("K_3")->size() == 4);
    CHECK(catalog_module("C_2")->size() == 4);
    CHECK(catalog_module("Kp_1")->size() == 2);
    CHECK(catalog_map("eta_n_1").str() == stabilization_map(Sign::Minus, 1, Level::Torus).str());
    CHECK_THROWS_AS(catalog_module("K_x"), Error);
    CHECK_THROWS_AS(catalog_map("nope"), Error);
}

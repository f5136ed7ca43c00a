#include "borsut/catalog.hpp"
#include "borsut/error.hpp"
#include "borsut/knot_floer.hpp"
#include "borsut/limits.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace borsut;

TEST_CASE("direct limit of the torus tower is K^-") {
    const Tower t = catalog_direct_tower();
    for (int bound : {3, 5, 8}) {
        const LimitPresentation p = limit(t, bound);
        REQUIRE(p.module->size() == std::size_t(bound));
        Report r = compare_presentation(p, k_minus_truncated(bound - 1), k_minus_u(bound - 1));
        CHECK_MESSAGE(r.ok, r.failure);
        for (int j = 0; j < bound; ++j) {
            CHECK(p.module->gradings()[j].a2 == p.module->gradings()[0].a2 - 2 * j);
            CHECK(p.u[j] == (j + 1 < bound ? j + 1 : -1));
        }
        CHECK(p.module->gradings()[0].a2 == 0);
        // thread delta_j passes through b_{n-j} at stage n
        const int n = bound;
        for (int j = 0; j < std::min(n, bound); ++j)
            CHECK(t.stage(n)->gen(p.at[n][j]).name == "b_" + std::to_string(n - j));
    }
    CHECK(check_commutation(t, 6).ok);
}

TEST_CASE("inverse limit of the K^+ tower is K^+") {
    const Tower t = catalog_inverse_tower();
    for (int bound : {2, 4, 7}) {
        const LimitPresentation p = limit(t, bound);
        Report r = compare_presentation(p, k_plus_truncated(bound - 1), k_plus_u(bound - 1));
        CHECK_MESSAGE(r.ok, r.failure);
        CHECK(p.u[0] == -1);
        for (std::size_t j = 1; j < p.u.size(); ++j) CHECK(p.u[j] == int(j) - 1);
    }
    CHECK(check_commutation(t, 5).ok);
}

TEST_CASE("a constant tower is its own limit") {
    const Tower t = constant_tower(torus_module(2));
    const LimitPresentation p = limit(t, 3);
    CHECK(find_isomorphism(*p.module, *torus_module(2)).has_value());
    const StableHomology s = stabilized_pair_homology(fixture("trefoil").module, t, 0, 4);
    CHECK(s.first_stable == 0);
}

TEST_CASE("merging threads are rejected") {
    Bimodule m = Bimodule::type_d("P", alg_wt());
    m.add_gen("p", 1, 0);
    m.add_gen("q", 1, 0);
    auto mp = std::make_shared<const Bimodule>(m);
    Tower t;
    t.name = "merge";
    t.stage = [mp](int) { return mp; };
    t.connect = [mp](int) {
        Morphism f("merge", mp, mp);
        const int i1 = mp->left()->idem_basis(1);
        f.add(0, i1, 0);
        f.add(1, i1, 0);
        return f;
    };
    try {
        limit(t, 3);
        FAIL("expected NotEventuallyStable");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::NotEventuallyStable);
    }
}

TEST_CASE("induced limit maps") {
    const Tower t = catalog_direct_tower();
    const LimitPresentation p = limit(t, 5);
    const Morphism sv = induced_limit_map(t, p, [](int n) { return sv_map(n, Level::Torus); }, "Phi_SV");
    CHECK(sv.str() == "delta_0 -> I_1⊗x");
    CHECK(check_limit_morphism(sv, p).ok);
    const Morphism h = induced_limit_map(t, p, [](int n) { return two_handle_map(n, Level::Torus); }, "Phi_2h");
    CHECK(h.str() == "delta_0 -> I_1⊗x, delta_1 -> I_1⊗x, delta_2 -> I_1⊗x, delta_3 -> I_1⊗x, delta_4 -> I_1⊗x");
    CHECK(check_limit_morphism(h, p).ok);

    const Tower it = catalog_inverse_tower();
    const LimitPresentation q = limit(it, 4);
    const Morphism d = induced_limit_map(it, q, [](int n) { return dsv_map(n); }, "Phi_dSV");
    CHECK(d.str() == "x -> I_1⊗delta_0");

    try {
        induced_limit_map(t, p,
                          [](int n) { return n % 2 ? zero_morphism(torus_module(n), k_infinity()) : sv_map(n, Level::Torus); },
                          "bad");
        FAIL("expected FamilyNotCompatible");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FamilyNotCompatible);
        CHECK(std::string(e.what()).find("stage 0") != std::string::npos);
    }
}

TEST_CASE("stabilized pairing homology of the unknot is a U-tower") {
    const Tower t = catalog_direct_tower();
    const ModPtr u = fixture("unknot").module;
    for (int a2 = 0; a2 >= -6; a2 -= 2) {
        const StableHomology s = stabilized_pair_homology(u, t, a2, 8);
        CHECK(s.value == 1);
        CHECK(s.first_stable <= 4);
        CHECK(s.dims.size() == 9);
    }
    CHECK(stabilized_pair_homology(u, t, 2, 8).value == 0);
    CHECK(stabilized_pair_homology(u, t, 1, 8).value == 0);
}

TEST_CASE("K_inf pairing is the U = 0 truncation of the K^- pairing") {
    for (const auto& name : bundled_fixture_names()) {
        const ModPtr a = fixture(name).module;
        const auto hat = sfh_pair(a, k_infinity());
        const auto trunc = sfh_pair(a, k_minus_truncated(0));
        CHECK(hat == trunc);
    }
}

TEST_CASE("truncation bound from the environment") {
    ::unsetenv("BORSUT_TRUNCATION");
    CHECK(truncation_bound() == 12);
    ::setenv("BORSUT_TRUNCATION", "7", 1);
    CHECK(truncation_bound() == 7);
    ::unsetenv("BORSUT_TRUNCATION");
}

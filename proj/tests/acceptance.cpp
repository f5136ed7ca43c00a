// Acceptance run: one line per criterion with its wall time against a pinned
// limit. Exit status is the number of failing criteria (capped at 10).

#include "oracles.hpp"

#include "borsut/catalog.hpp"
#include "borsut/diagrams.hpp"
#include "borsut/error.hpp"
#include "borsut/gradings.hpp"
#include "borsut/knot_floer.hpp"
#include "borsut/limits.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace borsut;

namespace {

// Collects the first failing condition of a criterion.
struct Check {
    std::string why;
    bool operator()(bool cond, const std::string& what) {
        if (!cond && why.empty()) why = what;
        return cond;
    }
    void report(const Report& r, const std::string& what) { (*this)(r.ok, what + ": " + r.failure); }
};

std::string prod(const AlgebraPtr& a, const std::string& x, const std::string& y) {
    return a->str(a->mul(*a->lookup(x), *a->lookup(y)));
}

bool same_table(const ModPtr& a, const ModPtr& b) {
    if (a->size() != b->size()) return false;
    std::vector<int> bij;
    for (std::size_t i = 0; i < a->size(); ++i) {
        auto j = b->find(a->gen(int(i)).name);
        if (!j) return false;
        bij.push_back(*j);
    }
    return same_under(*a, *b, bij);
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

void algebra_suite(Check& c) {
    for (const auto& z : {wd_diagram(), wa_diagram(), wt_diagram()}) {
        c.report(verify_dg_algebra(z), z.name);
        for (int i = 0; i <= z.k(); ++i)
            c(int(named_algebra(z.name, i)->size()) == oracle::strands_basis_count(z, i),
              z.name + " basis size in summand " + std::to_string(i));
    }
    const auto wa2 = named_algebra("WA", 2);
    c(wa2->str(wa2->d(*wa2->lookup("rho_12"))) == "rho_2*rho_1", "d rho_12 in A(W_A, 2)");
    std::size_t nonzero_d = 0;
    for (const auto& id : {"WD", "WA"})
        for (int i = 0; i <= 2; ++i) {
            const auto a = named_algebra(id, i);
            for (std::size_t b = 0; b < a->size(); ++b) nonzero_d += a->d(int(b)).any();
        }
    c(nonzero_d == 1, "W_D and W_A carry exactly one nonzero differential");
    // A(W_T, 2) has both nonzero products and nonzero differentials
    const auto wt2 = named_algebra("WT", 2);
    bool wt2_d = false;
    for (std::size_t b = 0; b < wt2->size(); ++b) wt2_d |= wt2->d(int(b)).any();
    c(wt2_d, "A(W_T, 2) has no differential");

    const auto t = alg_wt();
    const std::pair<std::pair<const char*, const char*>, const char*> wt[] = {
        {{"rho_1", "rho_2"}, "rho_12"},   {{"rho_2", "rho_3"}, "rho_23"},   {{"rho_1", "rho_23"}, "rho_123"},
        {{"rho_12", "rho_3"}, "rho_123"}, {{"rho_2", "rho_1"}, "0"},        {{"rho_3", "rho_2"}, "0"},
        {{"rho_3", "rho_1"}, "0"},        {{"rho_123", "rho_1"}, "0"},      {{"I_1", "rho_2"}, "rho_2"},
        {{"rho_2", "I_1"}, "0"},          {{"rho_23", "rho_23"}, "0"},      {{"rho_12", "rho_23"}, "0"},
    };
    for (const auto& [xy, z] : wt) c(prod(t, xy.first, xy.second) == z, std::string(xy.first) + " * " + xy.second);
    const auto a = alg_wa();
    c(prod(a, "rho_1", "rho_2") == "rho_12", "WA rho_1 * rho_2");
    c(prod(a, "rho_2", "rho_1") == "0", "WA rho_2 * rho_1");
    const auto d = alg_wd();
    c(prod(d, "rho", "rho") == "0", "WD rho * rho");
}

void catalog_suite(Check& c) {
    for (const auto& l : verify_catalog(4)) c(l.ok, l.name + ": " + l.detail);
    c(disk_module('A')->dump() == "M_A [TypeD] left WD.1\n  x I_1\n  y I_2\n  m1(y) = rho⊗x\n", "M_A table");
    c(disk_module('B')->size() == 1 && disk_module('B')->entry_count() == 0, "M_B table");
    c(disk_module('C')->size() == 1 && disk_module('C')->gen(0).name == "w", "M_C table");
    c(disk_bypass_map('A').str() == "y -> I_2⊗z", "phi_A");
    c(disk_bypass_map('B').str() == "z -> rho⊗w", "phi_B");
    c(disk_bypass_map('C').str() == "w -> I_1⊗x", "phi_C");
    c(annulus_module(0)->dump() == "M_0 [TypeD] left WA.1\n  a I_2\n", "M_0 table");
    c(contains(annulus_module(1)->dump(), "m1(b_1) = rho_1⊗a"), "M_1 table");
    c(annulus_infinity()->dump() == "M_inf [TypeD] left WA.1\n  w I_1\n", "M_inf table");
    c(torus_module(0)->size() == 1 && torus_module(0)->entry_count() == 0, "K_0 table");
    c(contains(torus_module(2)->dump(), "m1(b_1) = rho_2⊗a\n  m1(b_2) = rho_23⊗b_1"), "K_2 table");
    c(torus_bimodule()->dump() ==
          "N [DA] left WT.1 right WA.1\n  x I_2 I_2\n  y I_1 I_1\n  m2(x, rho_2) = rho_3⊗y\n"
          "  m2(y, rho_1) = rho_2⊗x\n  m2(y, rho_12) = rho_23⊗y\n",
      "N table");
    c(contains(bypass_bimodule(1)->dump(), "m2(f, rho) = I_2⊗e"), "B_1 table");
    c(contains(bypass_bimodule(2)->dump(), "m2(f, rho) = rho_2⊗d"), "B_2 table");
    c(contains(twist_bimodule(3)->dump(), "m5(a, rho_2, rho_12, rho_12, rho_12) = rho_2⊗c"), "C_3 table");
    c(stabilization_map(Sign::Minus, 0, Level::Annulus).str() == "a -> rho_2⊗b_1", "psi_n_0");
    c(stabilization_map(Sign::Plus, 2, Level::Torus).str() == "a -> I_2⊗a, b_1 -> I_1⊗b_1, b_2 -> I_1⊗b_2", "eta_p_2");
    c(stabilization_map(Sign::Minus, 2, Level::Torus).str() == "a -> rho_3⊗b_1, b_1 -> I_1⊗b_2, b_2 -> I_1⊗b_3",
      "eta_n_2");
    c(sv_map(0, Level::Annulus).str() == "a -> rho_2⊗w", "sv_M_0");
    c(sv_map(2, Level::Torus).str() == "b_2 -> I_1⊗x", "sv_K_2");
    c(two_handle_map(0, Level::Annulus).str() == "a -> rho_2⊗q", "2h_M_0");
    c(two_handle_map(2, Level::Torus).str() == "a -> rho_3⊗x, b_1 -> I_1⊗x, b_2 -> I_1⊗x", "2h_K_2");
    c(contains(k_2h()->dump(), "m1(q) = rho_12⊗q"), "K_2h table");
    c(contains(k_fill()->dump(), "m1(x) = rho_23⊗x"), "K_fill table");
    c(contains(inverse_torus_module(2)->dump(), "m1(a) = rho_3⊗b_1\n  m1(b_1) = rho_23⊗b_2"), "K_2^+ table");
    c(inverse_tower_map(Sign::Minus, 0).str() == "b_1 -> rho_2⊗a", "inv_n_0");
    c(inverse_tower_map(Sign::Plus, 1).str() == "a -> I_2⊗a, b_1 -> I_1⊗b_1", "inv_p_1");
    c(dsv_map(2).str() == "x -> I_1⊗b_2", "dsv_2");
}

void triangle_suite(Check& c) {
    c.report(cone_identification(), "cone identification");
    for (const auto& name : bundled_fixture_names()) {
        const TriangleReport t = exact_triangle(fixture(name));
        c.report(t.report, name);
        for (int j = 0; j < 3; ++j) {
            c(t.composite_zero[j] && t.exact[j], name + " exact at vertex " + std::to_string(j));
            c(t.map_rank[(j + 2) % 3] + t.map_rank[j] == t.rank[j], name + " rank identity at vertex " + std::to_string(j));
        }
    }
}

void rederive_suite(Check& c) {
    const auto lines = rederive_maps(3);
    c(lines.size() > 10, "re-derivation list is short");
    for (const auto& l : lines) c(l.ok, l.name + ": " + l.detail);
}

void limit_suite(Check& c) {
    for (int b : {3, 5, 8}) {
        c.report(compare_presentation(limit(catalog_direct_tower(), b), k_minus_truncated(b - 1), k_minus_u(b - 1)),
                 "direct limit at bound " + std::to_string(b));
        c.report(compare_presentation(limit(catalog_inverse_tower(), b), k_plus_truncated(b - 1), k_plus_u(b - 1)),
                 "inverse limit at bound " + std::to_string(b));
    }
    const std::pair<const char*, int> stage[] = {{"unknot", 4}, {"trefoil", 6}, {"trefoil_rh", 6}};
    for (const auto& [name, max_stage] : stage) {
        const LimitAgreement a = limit_agreement(fixture(name), 8);
        c.report(a.report, name);
        c(a.max_first_stable <= max_stage, std::string(name) + " stabilizes at stage " + std::to_string(a.max_first_stable));
    }
    c.report(limit_agreement(fixture("ot_unknot"), 8).report, "ot_unknot");
}

void natural_suite(Check& c) {
    for (const auto& name : bundled_fixture_names()) {
        const NaturalMaps m = natural_maps(fixture(name), 8);
        c.report(m.report, name);
        c(!m.checks.empty(), name + " has no map checks");
        for (const auto& k : m.checks)
            c(k.equal && k.pieces_match, name + " " + k.name + " at A2 = " + std::to_string(k.a2));
    }
}

void grading_suite(Check& c) {
    for (int n = 1; n <= 6; ++n) {
        const auto g = torus_gradings(n);
        for (int j = 1; j <= n; ++j)
            for (int l = 1; l <= n; ++l)
                c(g[j].a2 - g[l].a2 == 2 * (j - l), "offset A(b_j) - A(b_l) in K_" + std::to_string(n));
        c.report(check_type_d_gradings(*torus_module(n)), "K_" + std::to_string(n));
        c(alexander_degree2(stabilization_map(Sign::Minus, n, Level::Torus)) == 0, "eta_n degree");
        c(alexander_degree2(stabilization_map(Sign::Plus, n, Level::Torus)) == -2, "eta_p degree");
    }
    const ParityCheck p = check_parity(maslov_parity(), 4);
    c(p.ok, "parity: " + p.failure);
    for (const auto& name : bundled_fixture_names()) {
        const KnotFixture k = fixture(name);
        const GradedChainComplex cu = box_u(*k.module, k_minus());
        for (std::size_t i = 0; i < cu.size(); ++i)
            for (std::size_t j = 0; j < cu.size(); ++j) {
                const F2Poly& e = cu.du.at(i, j);
                for (int u = 0; u <= e.degree(); ++u)
                    if (e.coeff(u))
                        c(cu.gr[j].a2 == cu.gr[i].a2 - 2 * u && cu.gr[j].m != cu.gr[i].m,
                          name + ": U^" + std::to_string(u) + " term " + cu.names[j] + " -> " + cu.names[i]);
            }
        const HfkResult h = hfk(Variant::Minus, k, 8);
        int top = 0;
        if (c(h.module.top_free(top), name + " has no free tower"))
            for (int s = 1; s <= 6; ++s) c(h.module.dim_at(top - 2 * s) >= 1, name + ": U x vanishes below the top");
    }
}

bool class_nonzero(const std::vector<ClassVerdict>& v, const std::string& where) {
    for (const auto& x : v)
        if (x.where == where) return x.nonzero;
    throw Error(Errc::Usage, "no verdict for " + where);
}

void desk_suite(Check& c) {
    const HfkResult u = hfk(Variant::Minus, fixture("unknot"), 8);
    int top = 1;
    c(u.module.parts.size() == 1 && u.module.total_free() == 1 && u.module.top_free(top) && top == 0 &&
          u.module.parts.begin()->second.torsion.empty(),
      "HFK-minus(unknot) = " + u.module.str());
    const HfkResult t = hfk(Variant::Hat, fixture("trefoil"), 8);
    std::map<int, int> by_a;
    for (const auto& [g, r] : t.ranks) by_a[g.a2] += r;
    c(by_a == std::map<int, int>{{-2, 1}, {0, 1}, {2, 1}}, "HFK-hat(trefoil) ranks");
    const auto cls = distinguished_class_image(fixture("trefoil"), "hat", {"x0⊗x"}, 0);
    c(class_nonzero(cls, "HFK-hat") && !class_nonzero(cls, "iota*"), "iota* kills the A = 0 hat class");

    const KnotFixture ot = fixture("ot_unknot");
    const auto hat = distinguished_class_image(ot, "hat", {"x⊗x"}, 0);
    c(!class_nonzero(hat, "HFK-hat"), "the tracked hat class of ot_unknot is a boundary");
    const auto disk = distinguished_class_image(ot, "K_0", {"B⊗a"}, 0);
    c(disk.size() == 1 && disk[0].nonzero, "the disk-level class of ot_unknot survives");
    bool refused = false;
    try {
        distinguished_class_image(ot, "hat", {"b⊗x"}, 0);
    } catch (const Error& e) {
        refused = e.code() == Errc::NotACycle;
    }
    c(refused, "b⊗x is not a cycle");
}

void diagram_suite(Check& c) {
    const std::pair<const char*, ModPtr> cases[] = {
        {"H_A", disk_module('A')}, {"H_B", disk_module('B')}, {"H_C", disk_module('C')}, {"K_0", torus_module(0)},
        {"K_1", torus_module(1)},  {"K_2", torus_module(2)},  {"K_3", torus_module(3)},
    };
    for (const auto& [file, expected] : cases) {
        const NiceDiagram d = parse_diagram(std::string(BORSUT_DATA_DIR) + "/diagrams/" + file + ".json");
        const ModPtr m = type_d_from_nice_diagram(d);
        c(same_table(m, expected), std::string(file) + " differs from the catalog");
        c(type_d_from_nice_diagram(reversed(d))->dump() == m->dump(), std::string(file) + " depends on orientation");
    }
}

void homotopy_suite(Check& c) {
    const Morphism ba = compose(disk_bypass_map('A'), disk_bypass_map('B'));
    const auto h = find_homotopy(ba, zero_morphism(disk_module('A'), disk_module('C')));
    if (c(h.has_value(), "no null-homotopy of phi_B o phi_A"))
        for (std::size_t x = 0; x < h->src->size(); ++x)
            c(morphism_defect(*h, int(x)) == ba.map[x], "witness fails at generator " + std::to_string(x));
    c(!find_homotopy(disk_bypass_map('B'), zero_morphism(disk_module('B'), disk_module('C'))).has_value(),
      "phi_B is null-homotopic");
    c(morphism_homology_dim(disk_module('B'), disk_module('C')) == 1, "Mor(M_B, M_C) homology");
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Check&)> run;
};

} // namespace

int main() {
    const Criterion all[] = {
        {1, "algebra suite", 1, algebra_suite},
        {2, "catalog suite", 5, catalog_suite},
        {3, "bypass triangle", 5, triangle_suite},
        {4, "gluing-map re-derivation", 10, rederive_suite},
        {5, "limit identification", 30, limit_suite},
        {6, "natural maps", 10, natural_suite},
        {7, "gradings", 1, grading_suite},
        {8, "desk examples", 10, desk_suite},
        {9, "diagram oracle", 5, diagram_suite},
        {10, "homotopy solver", 1, homotopy_suite},
    };
    int failed = 0;
    for (const auto& k : all) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            k.run(c);
        } catch (const std::exception& e) {
            c(false, std::string("threw: ") + e.what());
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = s < k.limit_s;
        if (c.why.empty() && !in_time) c.why = "over the time limit";
        const bool ok = c.why.empty();
        failed += !ok;
        std::printf("%s %2d %-26s %7.3fs (limit %gs)%s%s\n", ok ? "PASS" : "FAIL", k.id, k.name, s, k.limit_s,
                    ok ? "" : "  ", c.why.c_str());
    }
    std::fflush(stdout);
    return failed > 10 ? 10 : failed;
}

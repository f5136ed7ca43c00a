#include "borsut/knot_floer.hpp"

#include "borsut/catalog.hpp"
#include "borsut/error.hpp"
#include "borsut/gradings.hpp"
#include "borsut/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace borsut {

namespace {

std::string data_dir() {
    if (const char* e = std::getenv("BORSUT_DATA")) return e;
    return BORSUT_DATA_DIR;
}

// Index of the paired generator f (x) d for each fixture generator f, -1 when
// the idempotents do not match. Valid for any one-generator D.
std::vector<int> pair_index(const Bimodule& box_product, std::size_t fixture_size) {
    std::vector<int> out(fixture_size, -1);
    for (std::size_t i = 0; i < box_product.factors().size(); ++i) out[box_product.factors()[i].first] = int(i);
    return out;
}

// Same for box_u, whose generators follow the fixture order.
std::vector<int> pair_index_u(const Bimodule& f, const UTypeD& k) {
    std::vector<int> out(f.size(), -1);
    int next = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
        if (f.gen(int(x)).right == k.gens[0].left) out[x] = next++;
    return out;
}

std::vector<int> position_in(const Piece& p, std::size_t parent_size) {
    std::vector<int> pos(parent_size, -1);
    for (std::size_t k = 0; k < p.index.size(); ++k) pos[p.index[k]] = int(k);
    return pos;
}

// Does the piece `lim` (generators (f, j) of a box with a presentation) equal
// the expansion piece `ex` under (f, j) <-> (g(f), sign * j)?
bool same_piece(const Piece& lim, const Bimodule& lim_box, const Piece& ex, const std::vector<int>& g_of_f, int sign,
                std::vector<int>* bij_out) {
    if (lim.index.size() != ex.index.size()) return false;
    std::map<std::pair<int, int>, int> ex_pos;
    for (std::size_t k = 0; k < ex.index.size(); ++k) ex_pos[{ex.index[k], ex.power[k]}] = int(k);
    std::vector<int> bij(lim.index.size());
    for (std::size_t k = 0; k < lim.index.size(); ++k) {
        const auto [f, j] = lim_box.factors()[lim.index[k]];
        auto it = ex_pos.find({g_of_f[f], sign * j});
        if (it == ex_pos.end()) return false;
        bij[k] = it->second;
    }
    for (std::size_t k = 0; k < bij.size(); ++k)
        for (std::size_t l = 0; l < bij.size(); ++l)
            if (lim.c.d.get(k, l) != ex.c.d.get(bij[k], bij[l])) return false;
    if (bij_out) *bij_out = bij;
    return true;
}

int total(const std::map<Grading, int>& h) {
    int s = 0;
    for (const auto& [g, r] : h) s += r;
    return s;
}

void merge_nonzero(std::map<Grading, int>& into, const std::map<Grading, int>& h) {
    for (const auto& [g, r] : h)
        if (r) into[g] += r;
}

} // namespace

KnotFixture load_type_a_text(const std::string& text) {
    LoadedModule lm = load_module_text(text);
    const Bimodule& m = *lm.module;
    if (m.kind() != Kind::AInf || m.right()->tag() != "WT.1")
        throw Error(Errc::ParseError, m.name() + " is not a Type-A module over WT.1");
    Report r = verify_ainf_module(m);
    if (!r.ok) throw Error(Errc::FailsVerification, m.name() + ": " + r.failure);
    if (m.size() > 0) {
        if (!m.graded()) throw Error(Errc::GradingInconsistent, m.name() + " carries no gradings");
        Report g = check_ainf_gradings(m);
        if (!g.ok) throw Error(Errc::GradingInconsistent, m.name() + ": " + g.failure);
    }
    return {m.name(), lm.module, lm.note};
}

KnotFixture load_type_a(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_type_a_text(ss.str());
}

KnotFixture fixture(const std::string& name_or_path) {
    if (name_or_path == "empty") return empty_fixture();
    if (name_or_path.find('/') != std::string::npos || name_or_path.find(".json") != std::string::npos)
        return load_type_a(name_or_path);
    const std::string path = data_dir() + "/fixtures/" + name_or_path + ".json";
    if (!std::filesystem::exists(path)) throw Error(Errc::Usage, "no bundled fixture '" + name_or_path + "'");
    return load_type_a(path);
}

std::vector<std::string> bundled_fixture_names() {
    std::vector<std::string> out;
    const std::filesystem::path dir = data_dir() + "/fixtures";
    if (!std::filesystem::exists(dir)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
}

KnotFixture empty_fixture() {
    return {"empty", std::make_shared<const Bimodule>(Bimodule::ainf("empty", alg_wt())), "no generators"};
}

Variant parse_variant(const std::string& s) {
    if (s == "minus") return Variant::Minus;
    if (s == "hat") return Variant::Hat;
    if (s == "plus") return Variant::Plus;
    throw Error(Errc::Usage, "variant must be minus, hat or plus, not '" + s + "'");
}

const char* variant_name(Variant v) {
    switch (v) {
    case Variant::Minus: return "minus";
    case Variant::Hat: return "hat";
    case Variant::Plus: return "plus";
    }
    return "?";
}

Window grading_window(const KnotFixture& k, Variant v) {
    const Bimodule& m = *k.module;
    if (m.size() == 0) return {0, -1};
    int lo = m.gradings()[0].a2, hi = lo;
    for (const auto& g : m.gradings()) {
        lo = std::min(lo, g.a2);
        hi = std::max(hi, g.a2);
    }
    if (v == Variant::Plus) return {lo, hi + 4};
    return {lo - 2, hi};
}

HfkResult hfk(Variant v, const KnotFixture& k, int bound) {
    HfkResult res;
    res.variant = v;
    res.window = grading_window(k, v);
    const ModPtr& F = k.module;
    if (F->size() == 0) {
        res.certificate = "empty fixture";
        return res;
    }
    if (v == Variant::Hat) {
        const auto h = f2_homology(to_complex(*box(F, k_infinity())));
        merge_nonzero(res.ranks, h);
        for (const auto& [g, r] : res.ranks) res.module.parts[g].torsion.assign(r, 1);
        res.certificate = "exact: finite complex";
        return res;
    }
    const UTypeD km = k_minus();
    const GradedChainComplex cu = box_u(*F, km);
    const bool minus = v == Variant::Minus;
    if (minus) res.module = f2u_module_homology(cu);
    std::map<int, int> dims;
    for (int a2 = res.window.lo; a2 <= res.window.hi; ++a2) {
        Piece p = minus ? expand_minus(cu, a2) : expand_plus(cu, a2);
        const auto h = f2_homology(p.c);
        merge_nonzero(res.ranks, h);
        dims[a2] = total(h);
        if (minus && dims[a2] != res.module.dim_at(a2))
            throw Error(Errc::FailsVerification, "U-expansion and Smith form disagree at A = " + half_str(a2));
    }
    // The truncations K^- mod U^B (or ker U^B on K^+) reproduce each graded
    // piece once B exceeds the window; require it for two consecutive B.
    for (int b : {bound, bound + 1}) {
        const ModPtr d = minus ? k_minus_truncated(b - 1) : k_plus_truncated(b - 1);
        const GradedChainComplex c = to_complex(*box(F, d));
        for (int a2 = res.window.lo; a2 <= res.window.hi; ++a2) {
            int got = piece_homology_dim(graded_piece(c, a2));
            if (got != dims[a2])
                throw Error(Errc::NoStabilization, std::string(variant_name(v)) + " at A = " + half_str(a2) +
                                                       ": truncation " + std::to_string(b) + " gives " +
                                                       std::to_string(got) + ", expected " + std::to_string(dims[a2]));
        }
    }
    if (!minus) {
        // Above the generators every grading is a tower; both parities must be flat.
        for (int a2 : {res.window.hi, res.window.hi - 1})
            if (dims[a2] != dims[a2 - 2])
                throw Error(Errc::NoStabilization, "plus ranks still change at A = " + half_str(a2));
    }
    res.certificate = "truncations " + std::to_string(bound) + " and " + std::to_string(bound + 1) +
                      " agree on A in [" + half_str(res.window.lo) + ", " + half_str(res.window.hi) + "]";
    return res;
}

NaturalMaps natural_maps(const KnotFixture& k, int bound) {
    NaturalMaps out;
    const ModPtr& F = k.module;
    if (F->size() == 0) return out;

    const Tower td = catalog_direct_tower();
    const LimitPresentation p = direct_limit(td, bound);
    const Morphism sv = induced_limit_map(td, p, [](int n) { return sv_map(n, Level::Torus); }, "Phi_SV");
    const Morphism th = induced_limit_map(td, p, [](int n) { return two_handle_map(n, Level::Torus); }, "Phi_2h");
    const Tower ti = catalog_inverse_tower();
    const LimitPresentation q = inverse_limit(ti, bound);
    const Morphism dsv = induced_limit_map(ti, q, [](int n) { return dsv_map(n); }, "Phi_dSV");

    const ModPtr BL = box(F, p.module), BH = box(F, k_infinity()), BF = box(F, k_fill()), BQ = box(F, q.module);
    const GradedChainComplex CL = to_complex(*BL), CH = to_complex(*BH), CF = to_complex(*BF), CQ = to_complex(*BQ);
    const F2Matrix MSV = to_matrix(box_map(F, sv, BL, BH));
    const F2Matrix M2h = to_matrix(box_map(F, th, BL, BF));
    const F2Matrix MdSV = to_matrix(box_map(F, dsv, BH, BQ));

    const UTypeD km = k_minus();
    const GradedChainComplex cu = box_u(*F, km);
    const auto g_of_f = pair_index_u(*F, km);
    const auto hat_of_f = pair_index(*BH, F->size());
    const auto fill_of_f = pair_index(*BF, F->size());

    // U = 1 on the K^- pairing is the K_fill pairing, generator for generator.
    {
        const F2Matrix one = cu.du.evaluate(1);
        bool same = CF.size() == cu.size();
        for (std::size_t f = 0; same && f < F->size(); ++f)
            for (std::size_t h = 0; same && h < F->size(); ++h)
                if (g_of_f[f] >= 0 && g_of_f[h] >= 0 &&
                    CF.d.get(fill_of_f[f], fill_of_f[h]) != one.get(g_of_f[h], g_of_f[f]))
                    same = false;
        ++out.report.checked;
        if (!same) out.report.fail("F box K_fill differs from the K^- pairing at U = 1");
    }
    const HomologyModel hfill(CF);

    auto record = [&](MapCheck c) {
        ++out.report.checked;
        if (!c.pieces_match) out.report.fail(c.name + " at A = " + half_str(c.a2) + ": limit piece differs from the U-expansion");
        else if (!c.equal) out.report.fail(c.name + " at A = " + half_str(c.a2) + ": chain maps differ");
        out.checks.push_back(std::move(c));
    };

    const Window wm = grading_window(k, Variant::Minus);
    for (int a2 = wm.lo; a2 <= wm.hi; ++a2) {
        const Piece src = graded_piece(CL, a2);
        if (src.index.empty()) continue;
        for (int i : src.index)
            if (p.truncated[BL->factors()[i].second])
                throw Error(Errc::NoStabilization, "bound " + std::to_string(bound) + " too small for A = " + half_str(a2));
        const Piece ex = expand_minus(cu, a2);
        const bool match = same_piece(src, *BL, ex, g_of_f, 1, nullptr);
        const HomologyModel hs(src.c);

        const Piece hat = graded_piece(CH, a2);
        const auto hat_pos = position_in(hat, CH.size());
        MapCheck pstar{"p*", a2, F2Matrix(src.index.size(), hat.index.size()), restrict_map(MSV, src, &hat), {}, match, true};
        for (std::size_t r = 0; r < src.index.size(); ++r) {
            const auto [f, j] = BL->factors()[src.index[r]];
            if (j == 0) pstar.natural.set(r, hat_pos[hat_of_f[f]]);
        }
        pstar.equal = pstar.natural == pstar.limit;
        const HomologyModel hh(hat.c);
        pstar.on_homology = induced_map(src.c, hat.c, pstar.limit, hs, hh);
        record(std::move(pstar));

        MapCheck pistar{"pi*", a2, F2Matrix(src.index.size(), CF.size()), restrict_map(M2h, src, nullptr), {}, match, true};
        for (std::size_t r = 0; r < src.index.size(); ++r)
            pistar.natural.set(r, fill_of_f[BL->factors()[src.index[r]].first]);
        pistar.equal = pistar.natural == pistar.limit;
        pistar.on_homology = induced_map(src.c, CF, pistar.limit, hs, hfill);
        record(std::move(pistar));
    }

    const Window wh = grading_window(k, Variant::Hat);
    for (int a2 = wh.lo; a2 <= wh.hi; ++a2) {
        const Piece src = graded_piece(CH, a2);
        if (src.index.empty()) continue;
        const Piece tgt = graded_piece(CQ, a2);
        const Piece ex = expand_plus(cu, a2);
        const bool match = same_piece(tgt, *BQ, ex, g_of_f, -1, nullptr);
        std::map<std::pair<int, int>, int> tpos;
        for (std::size_t c = 0; c < tgt.index.size(); ++c) tpos[BQ->factors()[tgt.index[c]]] = int(c);
        MapCheck iota{"iota*", a2, F2Matrix(src.index.size(), tgt.index.size()), restrict_map(MdSV, src, &tgt), {}, match, true};
        for (std::size_t r = 0; r < src.index.size(); ++r) {
            const int f = BH->factors()[src.index[r]].first;
            auto it = tpos.find({f, 0});
            if (it != tpos.end()) iota.natural.set(r, it->second);
        }
        iota.equal = iota.natural == iota.limit;
        const HomologyModel hs(src.c), ht(tgt.c);
        iota.on_homology = induced_map(src.c, tgt.c, iota.limit, hs, ht);
        record(std::move(iota));
    }
    return out;
}

LimitAgreement limit_agreement(const KnotFixture& k, int bound) {
    LimitAgreement out;
    const ModPtr& F = k.module;
    if (F->size() == 0) return out;
    const GradedFUModule hm = f2u_module_homology(box_u(*F, k_minus()));
    const Tower t = catalog_direct_tower();
    const Window w = grading_window(k, Variant::Minus);
    std::string per;
    for (int a2 = w.lo; a2 <= w.hi; ++a2) {
        ++out.report.checked;
        StableHomology s = stabilized_pair_homology(F, t, a2, bound);
        out.max_first_stable = std::max(out.max_first_stable, s.first_stable);
        per += (per.empty() ? "" : " ") + half_str(a2) + ":" + std::to_string(s.value) + "@" + std::to_string(s.first_stable);
        if (s.value != hm.dim_at(a2))
            out.report.fail("A = " + half_str(a2) + ": tower gives " + std::to_string(s.value) + ", K^- pairing " +
                            std::to_string(hm.dim_at(a2)));
    }
    out.report.note = per;
    return out;
}

namespace {

BitVec vector_of(const std::vector<std::string>& names, const std::vector<std::string>& gens) {
    BitVec v(names.size());
    for (const auto& g : gens) {
        auto it = std::find(names.begin(), names.end(), g);
        if (it == names.end()) throw Error(Errc::Usage, "no generator '" + g + "' in the pairing");
        v.flip(std::size_t(it - names.begin()));
    }
    return v;
}

int common_grading(const GradedChainComplex& c, const BitVec& v) {
    std::optional<int> a2;
    for (std::size_t i : v.ones()) {
        if (a2 && *a2 != c.gr[i].a2) throw Error(Errc::Usage, "class mixes Alexander gradings");
        a2 = c.gr[i].a2;
    }
    if (!a2) throw Error(Errc::Usage, "empty class");
    return *a2;
}

BitVec restrict_vec(const BitVec& v, const Piece& p) {
    BitVec out(p.index.size());
    for (std::size_t k = 0; k < p.index.size(); ++k)
        if (v.get(p.index[k])) out.set(k);
    return out;
}

bool nonzero_class(const GradedChainComplex& c, const BitVec& v, const std::string& where) {
    HomologyModel h(c);
    if (!h.is_cycle(v)) throw Error(Errc::NotACycle, "class is not a cycle in " + where);
    return h.coords(v).any();
}

} // namespace

std::vector<ClassVerdict> distinguished_class_image(const KnotFixture& k, const std::string& where,
                                                    const std::vector<std::string>& gens, int steps) {
    std::vector<ClassVerdict> out;
    const ModPtr& F = k.module;
    const UTypeD km = k_minus();
    if (where == "hat") {
        const ModPtr BH = box(F, k_infinity());
        const GradedChainComplex CH = to_complex(*BH);
        const BitVec v = vector_of(CH.names, gens);
        const int a2 = common_grading(CH, v);
        const Piece hp = graded_piece(CH, a2);
        out.push_back({"HFK-hat", nonzero_class(hp.c, restrict_vec(v, hp), "F⊠K_inf")});
        // iota*: g -> U^0 g in the plus expansion.
        const GradedChainComplex cu = box_u(*F, km);
        const auto g_of_f = pair_index_u(*F, km);
        const Piece ep = expand_plus(cu, a2);
        BitVec w(ep.index.size());
        for (std::size_t i : v.ones()) {
            const int g = g_of_f[BH->factors()[i].first];
            for (std::size_t c = 0; c < ep.index.size(); ++c)
                if (ep.index[c] == g && ep.power[c] == 0) w.flip(c);
        }
        out.push_back({"iota*", nonzero_class(ep.c, w, "HFK-plus")});
        return out;
    }
    if (where == "minus") {
        const GradedChainComplex cu = box_u(*F, km);
        const BitVec v = vector_of(cu.names, gens);
        const int a2 = common_grading(cu, v);
        const Piece em = expand_minus(cu, a2);
        BitVec w(em.index.size());
        for (std::size_t c = 0; c < em.index.size(); ++c)
            if (em.power[c] == 0 && v.get(em.index[c])) w.set(c);
        out.push_back({"HFK-minus", nonzero_class(em.c, w, "F⊠K^-")});
        // The U^0 generators of the K^- pairing and of the K_inf / K_fill
        // pairings are the same fixture generators, in the same order.
        const GradedChainComplex CH = to_complex(*box(F, k_infinity()));
        const Piece hp = graded_piece(CH, a2);
        out.push_back({"p*", nonzero_class(hp.c, restrict_vec(v, hp), "F⊠K_inf")});
        const GradedChainComplex CF = to_complex(*box(F, k_fill()));
        out.push_back({"pi*", nonzero_class(CF, v, "F⊠K_fill")});
        return out;
    }
    int n = 0;
    if (where.rfind("K_", 0) != 0 || (n = std::atoi(where.c_str() + 2)) < 0 || where.size() < 3)
        throw Error(Errc::Usage, "class location must be hat, minus or K_n");
    ModPtr cur = box(F, torus_module(n));
    GradedChainComplex cc = to_complex(*cur);
    BitVec v = vector_of(cc.names, gens);
    out.push_back({"F⊠K_" + std::to_string(n), nonzero_class(cc, v, "F⊠K_" + std::to_string(n))});
    for (int s = 0; s < steps; ++s) {
        ModPtr next = box(F, torus_module(n + s + 1));
        const F2Matrix m = to_matrix(box_map(F, stabilization_map(Sign::Minus, n + s, Level::Torus), cur, next));
        v = m.apply(v);
        cur = next;
        cc = to_complex(*cur);
        const std::string at = "F⊠K_" + std::to_string(n + s + 1);
        out.push_back({at, nonzero_class(cc, v, at)});
    }
    return out;
}

std::map<Grading, int> sfh_pair(const ModPtr& a, const ModPtr& d) {
    std::map<Grading, int> out;
    merge_nonzero(out, f2_homology(to_complex(*box(a, d))));
    return out;
}

TriangleReport exact_triangle(const KnotFixture& k) {
    TriangleReport out;
    const ModPtr N = torus_bimodule(), B1 = bypass_bimodule(1), F = k.module;
    const char names[3] = {'A', 'B', 'C'};
    ModPtr bx[3], dx[3], px[3];
    std::vector<GradedChainComplex> cx;
    for (int i = 0; i < 3; ++i) {
        bx[i] = box(B1, disk_module(names[i]));
        dx[i] = box(N, bx[i]);
        px[i] = box(F, dx[i]);
        cx.push_back(to_complex(*px[i]));
    }
    std::vector<HomologyModel> hm;
    for (int i = 0; i < 3; ++i) hm.emplace_back(cx[i]);
    std::vector<F2Matrix> h;
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const Morphism inner = box_map(B1, disk_bypass_map(names[i]), bx[i], bx[j]);
        const Morphism outer = box_map(N, inner, dx[i], dx[j]);
        const F2Matrix chain = to_matrix(box_map(F, outer, px[i], px[j]));
        h.push_back(induced_map(cx[i], cx[j], chain, hm[i], hm[j]));
        out.rank[i] = int(hm[i].rank());
        out.map_rank[i] = int(h.back().rank());
    }
    for (int j = 0; j < 3; ++j) {
        // Exactness at vertex j: image of the incoming map = kernel of the outgoing one.
        const int i = (j + 2) % 3;
        ++out.report.checked;
        out.composite_zero[j] = h[i].then(h[j]).is_zero();
        out.exact[j] = out.composite_zero[j] && out.map_rank[i] == out.rank[j] - out.map_rank[j];
        if (!out.exact[j])
            out.report.fail(std::string("not exact at the ") + names[j] + " vertex for " + k.name);
    }
    return out;
}

Report cone_identification() {
    Report r;
    const Morphism fb = disk_bypass_map('B');
    const ModPtr cone = mapping_cone(fb);
    const ModPtr ma = disk_module('A');
    ++r.checked;
    auto iso = find_isomorphism(*cone, *ma);
    if (!iso) {
        r.fail("Cone(phi_B) is not isomorphic to M_A");
        return r;
    }
    const Algebra& A = *ma->left();
    // The cone lists the target (M_C) first, then the source (M_B).
    const int nt = int(fb.tgt->size());
    Morphism incl("incl", fb.tgt, ma);
    for (int g = 0; g < nt; ++g) incl.add(g, A.idem_basis(fb.tgt->gen(g).left), (*iso)[g]);
    Morphism proj("proj", ma, fb.src);
    for (int s = 0; s < int(fb.src->size()); ++s)
        proj.add((*iso)[nt + s], A.idem_basis(fb.src->gen(s).left), s);
    ++r.checked;
    if (!(incl == disk_bypass_map('C'))) r.fail("phi_C is not the inclusion of M_C into the cone");
    ++r.checked;
    if (!(proj == disk_bypass_map('A'))) r.fail("phi_A is not the projection of the cone onto M_B");
    r.note = "Cone(phi_B) = {" + cone->gen(0).name + ", " + cone->gen(1).name + "} -> M_A";
    return r;
}

} // namespace borsut

#include "borsut/limits.hpp"

#include "borsut/catalog.hpp"
#include "borsut/error.hpp"

#include <cstdlib>

namespace borsut {

Tower catalog_direct_tower() {
    Tower t;
    t.name = "K";
    t.dir = Tower::Dir::Direct;
    t.stage = [](int n) { return torus_module(n); };
    t.connect = [](int n) { return stabilization_map(Sign::Minus, n, Level::Torus); };
    t.secondary = [](int n) { return stabilization_map(Sign::Plus, n, Level::Torus); };
    return t;
}

Tower catalog_inverse_tower() {
    Tower t;
    t.name = "K+";
    t.dir = Tower::Dir::Inverse;
    t.stage = [](int n) { return inverse_torus_module(n); };
    t.connect = [](int n) { return inverse_tower_map(Sign::Minus, n); };
    t.secondary = [](int n) { return inverse_tower_map(Sign::Plus, n); };
    return t;
}

Tower constant_tower(ModPtr m) {
    Tower t;
    t.name = "const(" + m->name() + ")";
    t.stage = [m](int) { return m; };
    t.connect = [m](int) { return identity_morphism(m); };
    return t;
}

namespace {

// The target of a term if it is a plain relabelling I (x) y, else -1.
int plain_image(const Morphism& f, int x) {
    const auto& terms = f.map[x];
    if (terms.size() != 1) return -1;
    const auto [a, y] = *terms.begin();
    const Algebra& A = *f.src->left();
    if (!A.is_idempotent(a)) return -1;
    return y;
}

std::string unstable(const Tower& t, const std::string& why) {
    return "tower " + t.name + ": " + why;
}

struct Threads {
    std::vector<ModPtr> stages;
    std::vector<std::vector<int>> label; // per stage, per generator; -1 if none
    std::vector<int> label_stage;
    std::vector<bool> alive; // per label: present at every stage from its label stage to the top
};

// Stages 0..top. Direct: labels flow upward along connect. Inverse: a
// generator inherits the label of its plain image one stage down.
Threads trace(const Tower& t, int top) {
    Threads th;
    for (int n = 0; n <= top; ++n) th.stages.push_back(t.stage(n));
    th.label.resize(top + 1);
    for (int n = 0; n <= top; ++n) th.label[n].assign(th.stages[n]->size(), -1);
    auto fresh = [&](int n, int g) {
        th.label[n][g] = int(th.label_stage.size());
        th.label_stage.push_back(n);
    };
    const bool direct = t.dir == Tower::Dir::Direct;
    for (int n = 0; n <= top; ++n) {
        if (n > 0) {
            const Morphism c = t.connect(n - 1);
            if (direct) {
                for (std::size_t g = 0; g < th.stages[n - 1]->size(); ++g) {
                    int y = plain_image(c, int(g));
                    if (y < 0) continue;
                    if (th.label[n][y] >= 0) throw Error(Errc::NotEventuallyStable, unstable(t, "threads merge"));
                    th.label[n][y] = th.label[n - 1][g];
                }
            } else {
                std::vector<bool> hit(th.stages[n - 1]->size(), false);
                for (std::size_t g = 0; g < th.stages[n]->size(); ++g) {
                    int y = plain_image(c, int(g));
                    if (y < 0) continue;
                    if (hit[y]) throw Error(Errc::NotEventuallyStable, unstable(t, "threads split"));
                    hit[y] = true;
                    th.label[n][g] = th.label[n - 1][y];
                }
            }
        }
        for (std::size_t g = 0; g < th.stages[n]->size(); ++g)
            if (th.label[n][g] < 0) fresh(n, int(g));
    }
    th.alive.assign(th.label_stage.size(), false);
    for (std::size_t g = 0; g < th.stages[top]->size(); ++g) th.alive[th.label[top][g]] = true;
    // A label that disappears and is not at the top is dead; labels are
    // unique per stage, so presence at the top means presence all the way.
    for (int n = 0; n < top; ++n)
        for (std::size_t g = 0; g < th.stages[n]->size(); ++g) {
            int l = th.label[n][g];
            bool next = false;
            for (int v : th.label[n + 1]) next = next || v == l;
            if (!next) th.alive[l] = false;
        }
    return th;
}

// delta-table of the kept threads read at stage s, in thread indices.
std::vector<Terms> table_at(const Tower& t, const Threads& th, const std::vector<int>& index, int bound, int s,
                            std::vector<bool>& truncated) {
    const Bimodule& m = *th.stages[s];
    std::vector<Terms> out(truncated.size());
    for (std::size_t g = 0; g < m.size(); ++g) {
        int j = index[th.label[s][g]];
        if (j < 0) continue;
        for (const auto& [a, y] : m.delta(int(g))) {
            int l = th.label[s][y];
            if (index[l] >= 0) {
                toggle(out[j], {a, index[l]});
            } else if (th.alive[l] && th.label_stage[l] > bound) {
                truncated[j] = true;
            } else {
                throw Error(Errc::NotEventuallyStable,
                            unstable(t, "delta of " + m.gen(int(g)).name + " leaves the limit threads at stage " +
                                            std::to_string(s)));
            }
        }
    }
    return out;
}

LimitPresentation build_limit(const Tower& t, int bound) {
    if (bound < 0) throw Error(Errc::Usage, "limit bound must be >= 0");
    const int top = bound + 2;
    Threads th = trace(t, top);
    std::vector<int> index(th.label_stage.size(), -1);
    LimitPresentation p;
    p.bound = bound;
    for (std::size_t l = 0; l < th.label_stage.size(); ++l)
        if (th.alive[l] && th.label_stage[l] <= bound) {
            index[l] = int(p.label_stage.size());
            p.label_stage.push_back(th.label_stage[l]);
        }
    const std::size_t k = p.label_stage.size();
    p.truncated.assign(k, false);
    std::vector<bool> scratch(k, false);
    auto t1 = table_at(t, th, index, bound, bound + 1, p.truncated);
    auto t2 = table_at(t, th, index, bound, bound + 2, scratch);
    if (t1 != t2 || p.truncated != scratch)
        throw Error(Errc::NotEventuallyStable, unstable(t, "stages " + std::to_string(bound + 1) + " and " +
                                                               std::to_string(bound + 2) + " disagree"));

    p.at.assign(top + 1, std::vector<int>(k, -1));
    p.thread_of.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
        p.thread_of[n].assign(th.stages[n]->size(), -2);
        for (std::size_t g = 0; g < th.stages[n]->size(); ++g) {
            int l = th.label[n][g];
            if (index[l] >= 0) {
                p.at[n][index[l]] = int(g);
                p.thread_of[n][g] = index[l];
            } else if (th.alive[l] && th.label_stage[l] > bound) {
                p.thread_of[n][g] = -1;
            }
        }
    }

    const Bimodule& s1 = *th.stages[bound + 1];
    auto mod = std::make_shared<Bimodule>(Bimodule::type_d("Lim(" + t.name + ")", s1.left()));
    for (std::size_t j = 0; j < k; ++j) mod->add_gen("delta_" + std::to_string(j), s1.gen(p.at[bound + 1][j]).left, 0);
    for (std::size_t j = 0; j < k; ++j)
        for (const auto& [a, y] : t1[j]) mod->add_op(int(j), {}, a, y);
    // Thread gradings carry over when the connecting maps have degree 0.
    if (s1.graded() && th.stages[bound + 2]->graded()) {
        std::vector<Grading> g;
        bool same = true;
        for (std::size_t j = 0; j < k; ++j) {
            g.push_back(s1.gradings()[p.at[bound + 1][j]]);
            same = same && th.stages[bound + 2]->gradings()[p.at[bound + 2][j]] == g.back();
        }
        if (same) mod->set_gradings(g);
    }
    Report r = verify_type_d(*mod);
    if (!r.ok) throw Error(Errc::NotEventuallyStable, unstable(t, "presentation fails: " + r.failure));

    if (t.secondary) {
        // Direct: U carries stage bound+1 to bound+2. Inverse: bound+2 to bound+1.
        const bool direct = t.dir == Tower::Dir::Direct;
        const int from = direct ? bound + 1 : bound + 2;
        const int to = direct ? bound + 2 : bound + 1;
        const Morphism u = t.secondary(bound + 1);
        p.u.assign(k, -1);
        for (std::size_t j = 0; j < k; ++j) {
            const int g = p.at[from][j];
            if (u.map[g].empty()) continue;
            int y = plain_image(u, g);
            int target = y < 0 ? -2 : p.thread_of[to][y];
            if (target == -2)
                throw Error(Errc::NotEventuallyStable, unstable(t, "U leaves the threads at delta_" + std::to_string(j)));
            p.u[j] = target;
        }
    }
    p.module = mod;
    return p;
}

} // namespace

LimitPresentation direct_limit(const Tower& t, int bound) {
    if (t.dir != Tower::Dir::Direct) throw Error(Errc::Usage, "direct_limit needs a direct tower");
    return build_limit(t, bound);
}

LimitPresentation inverse_limit(const Tower& t, int bound) {
    if (t.dir != Tower::Dir::Inverse) throw Error(Errc::Usage, "inverse_limit needs an inverse tower");
    return build_limit(t, bound);
}

LimitPresentation limit(const Tower& t, int bound) { return build_limit(t, bound); }

Report compare_presentation(const LimitPresentation& p, const ModPtr& target, const std::vector<int>& target_u) {
    Report r;
    r.checked = p.module->size();
    if (p.module->size() != target->size()) {
        r.fail("presentation has " + std::to_string(p.module->size()) + " generators, " + target->name() + " has " +
               std::to_string(target->size()));
        return r;
    }
    std::vector<int> id(p.module->size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = int(i);
    if (!same_under(*p.module, *target, id)) r.fail("delta-tables differ from " + target->name());
    if (p.module->graded() != target->graded() || (target->graded() && p.module->gradings() != target->gradings()))
        r.fail("gradings differ from " + target->name());
    if (!target_u.empty() && p.u != target_u) r.fail("U-action differs from " + target->name());
    return r;
}

std::vector<int> k_minus_u(int n) {
    std::vector<int> u;
    for (int i = 0; i <= n; ++i) u.push_back(i < n ? i + 1 : -1);
    return u;
}

std::vector<int> k_plus_u(int n) {
    std::vector<int> u;
    for (int i = 0; i <= n; ++i) u.push_back(i - 1);
    return u;
}

Report check_commutation(const Tower& t, int bound) {
    Report r;
    if (!t.secondary) {
        r.note = "no U-family";
        return r;
    }
    int homotopic = 0;
    for (int n = 0; n <= bound; ++n) {
        ++r.checked;
        Morphism lhs, rhs;
        if (t.dir == Tower::Dir::Direct) {
            lhs = compose(t.secondary(n), t.connect(n + 1));
            rhs = compose(t.connect(n), t.secondary(n + 1));
        } else {
            lhs = compose(t.secondary(n + 1), t.connect(n));
            rhs = compose(t.connect(n + 1), t.secondary(n));
        }
        if (lhs == rhs) continue;
        if (find_homotopy(lhs, rhs)) {
            ++homotopic;
            continue;
        }
        r.fail("U-family and connecting maps do not commute at stage " + std::to_string(n));
    }
    r.note = std::to_string(homotopic) + " squares commute only up to homotopy";
    if (homotopic) r.fail("square commutes only up to homotopy (" + std::to_string(homotopic) + ")");
    return r;
}

Morphism induced_limit_map(const Tower& t, const LimitPresentation& p, const std::function<Morphism(int)>& family,
                           const std::string& name) {
    const int top = p.bound + 2;
    const bool direct = t.dir == Tower::Dir::Direct;
    for (int n = 0; n < top; ++n) {
        Morphism lhs = direct ? compose(t.connect(n), family(n + 1)) : compose(family(n + 1), t.connect(n));
        Morphism rhs = family(n);
        if (!(lhs == rhs))
            throw Error(Errc::FamilyNotCompatible, name + ": square at stage " + std::to_string(n) + " gives " +
                                                       lhs.str() + " against " + rhs.str());
    }
    const int s = p.bound + 1;
    const Morphism f = family(s);
    if (direct) {
        Morphism out(name, p.module, f.tgt);
        for (std::size_t j = 0; j < p.module->size(); ++j)
            for (const auto& [a, y] : f.map[p.at[s][j]]) out.add(int(j), a, y);
        return out;
    }
    Morphism out(name, f.src, p.module);
    for (std::size_t x = 0; x < f.src->size(); ++x)
        for (const auto& [a, y] : f.map[x]) {
            int j = p.thread_of[s][y];
            if (j >= 0) out.add(int(x), a, j);
            else if (j == -2)
                throw Error(Errc::FamilyNotCompatible, name + ": image of " + f.src->gen(int(x)).name +
                                                           " leaves the limit threads");
        }
    return out;
}

Report check_limit_morphism(const Morphism& f, const LimitPresentation& p) {
    Report r;
    for (std::size_t x = 0; x < f.src->size(); ++x) {
        if (f.src == p.module && p.truncated[x]) continue;
        ++r.checked;
        Terms d = morphism_defect(f, int(x));
        if (!d.empty()) r.fail(f.name + " fails at " + f.src->gen(int(x)).name + ": " + f.tgt->terms_str(d));
    }
    return r;
}

// ---------------------------------------------------------------- graded pieces

Piece graded_piece(const GradedChainComplex& c, int a2) {
    if (c.ring != GradedChainComplex::Ring::F2) throw Error(Errc::Mismatch, "graded_piece needs an F2 complex");
    Piece p;
    std::vector<int> pos(c.size(), -1);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (c.gr[i].a2 == a2) {
            pos[i] = int(p.index.size());
            p.index.push_back(int(i));
            p.power.push_back(0);
            p.c.names.push_back(c.names[i]);
            p.c.gr.push_back(c.gr[i]);
        }
    p.c.d = F2Matrix(p.index.size(), p.index.size());
    for (std::size_t k = 0; k < p.index.size(); ++k)
        for (std::size_t j : c.d.row(p.index[k]).ones()) {
            if (pos[j] < 0) throw Error(Errc::GradingInconsistent, "differential changes the Alexander grading");
            p.c.d.set(k, pos[j]);
        }
    return p;
}

F2Matrix restrict_map(const F2Matrix& f, const Piece& src, const Piece* tgt) {
    const std::size_t cols = tgt ? tgt->index.size() : f.cols();
    F2Matrix out(src.index.size(), cols);
    std::vector<int> pos(f.cols(), -1);
    if (tgt)
        for (std::size_t k = 0; k < tgt->index.size(); ++k) pos[tgt->index[k]] = int(k);
    for (std::size_t k = 0; k < src.index.size(); ++k)
        for (std::size_t j : f.row(src.index[k]).ones()) {
            if (!tgt) {
                out.set(k, j);
            } else if (pos[j] < 0) {
                throw Error(Errc::GradingInconsistent, "map leaves the target piece");
            } else {
                out.set(k, pos[j]);
            }
        }
    return out;
}

namespace {

Piece expand(const GradedChainComplex& cu, int a2, bool plus) {
    if (cu.ring != GradedChainComplex::Ring::F2U) throw Error(Errc::Mismatch, "expansion needs an F2[U] complex");
    Piece p;
    std::map<std::pair<int, int>, int> pos;
    for (std::size_t g = 0; g < cu.size(); ++g) {
        int diff = plus ? a2 - cu.gr[g].a2 : cu.gr[g].a2 - a2;
        if (diff < 0 || diff % 2) continue;
        int e = plus ? -diff / 2 : diff / 2;
        pos[{int(g), e}] = int(p.index.size());
        p.index.push_back(int(g));
        p.power.push_back(e);
        p.c.names.push_back("U^" + std::to_string(e) + "·" + cu.names[g]);
        p.c.gr.push_back({a2, cu.gr[g].m});
    }
    p.c.d = F2Matrix(p.index.size(), p.index.size());
    for (std::size_t k = 0; k < p.index.size(); ++k) {
        const int j = p.index[k];
        for (std::size_t i = 0; i < cu.size(); ++i) {
            const F2Poly& q = cu.du.at(i, j);
            for (int deg = 0; deg <= q.degree(); ++deg) {
                if (!q.coeff(deg)) continue;
                int e = p.power[k] + deg;
                if (plus && e > 0) continue;
                auto it = pos.find({int(i), e});
                if (it == pos.end()) throw Error(Errc::GradingInconsistent, "U-differential is not homogeneous");
                p.c.d.flip(k, it->second);
            }
        }
    }
    return p;
}

} // namespace

Piece expand_minus(const GradedChainComplex& cu, int a2) { return expand(cu, a2, false); }
Piece expand_plus(const GradedChainComplex& cu, int a2) { return expand(cu, a2, true); }

int piece_homology_dim(const Piece& p) {
    p.c.check();
    return int(p.c.size()) - 2 * int(p.c.d.rank());
}

StableHomology stabilized_pair_homology(const ModPtr& a, const Tower& t, int a2, int bound) {
    if (!a->graded()) throw Error(Errc::Usage, a->name() + " carries no gradings");
    if (bound < 1) throw Error(Errc::Usage, "stabilization bound must be >= 1");
    StableHomology out;
    std::vector<ModPtr> boxes;
    std::vector<GradedChainComplex> cx;
    for (int n = 0; n <= bound; ++n) {
        boxes.push_back(box(a, t.stage(n)));
        if (!boxes.back()->graded() && boxes.back()->size() > 0)
            throw Error(Errc::Usage, "stage " + std::to_string(n) + " of " + t.name + " is ungraded");
        cx.push_back(to_complex(*boxes.back()));
        out.dims.push_back(piece_homology_dim(graded_piece(cx.back(), a2)));
    }
    const bool direct = t.dir == Tower::Dir::Direct;
    std::vector<bool> iso(bound, false);
    for (int m = 0; m < bound; ++m) {
        const int s = direct ? m : m + 1, d = direct ? m + 1 : m;
        Morphism f = box_map(a, t.connect(m), boxes[s], boxes[d]);
        Piece sp = graded_piece(cx[s], a2), tp = graded_piece(cx[d], a2);
        F2Matrix fm = restrict_map(to_matrix(f), sp, &tp);
        HomologyModel hs(sp.c), ht(tp.c);
        F2Matrix ind = induced_map(sp.c, tp.c, fm, hs, ht);
        iso[m] = hs.rank() == ht.rank() && ind.rank() == hs.rank();
    }
    if (!iso[bound - 1])
        throw Error(Errc::NoStabilization, "grading " + half_str(a2) + " of " + a->name() + " box " + t.name +
                                               " not stable by stage " + std::to_string(bound));
    int n0 = bound - 1;
    while (n0 > 0 && iso[n0 - 1]) --n0;
    out.first_stable = n0;
    out.value = out.dims[bound];
    return out;
}

int truncation_bound() {
    if (const char* s = std::getenv("BORSUT_TRUNCATION")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end && *end == '\0' && v >= 1 && v <= 200) return int(v);
        throw Error(Errc::Usage, "BORSUT_TRUNCATION must be an integer in 1..200");
    }
    return 12;
}

} // namespace borsut

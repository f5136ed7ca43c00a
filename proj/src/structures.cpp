#include "borsut/structures.hpp"

#include "borsut/error.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace borsut {

const char* kind_name(Kind k) {
    switch (k) {
    case Kind::TypeD: return "TypeD";
    case Kind::AInf: return "AInf";
    case Kind::DA: return "DA";
    case Kind::Complex: return "Complex";
    }
    return "?";
}

const char* boundedness_name(Boundedness b) {
    switch (b) {
    case Boundedness::Bounded: return "bounded";
    case Boundedness::Unbounded: return "unbounded";
    case Boundedness::Unknown: return "unknown";
    }
    return "?";
}

namespace {

bool trivial(const AlgebraPtr& a) { return a->diagram().k() == 0; }

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || (a->id() == b->id() && a->summand() == b->summand());
}

void add_product(Terms& out, const Algebra& alg, int a, int b, int y) {
    for (std::size_t c : alg.mul(a, b).ones()) toggle(out, {int(c), y});
}

} // namespace

// ---------------------------------------------------------------- Bimodule

Bimodule::Bimodule(std::string name, AlgebraPtr left, AlgebraPtr right)
    : name_(std::move(name)), left_(std::move(left)), right_(std::move(right)) {}

Bimodule Bimodule::type_d(std::string name, AlgebraPtr alg) {
    return Bimodule(std::move(name), std::move(alg), ground_field());
}
Bimodule Bimodule::ainf(std::string name, AlgebraPtr alg) {
    return Bimodule(std::move(name), ground_field(), std::move(alg));
}
Bimodule Bimodule::complex(std::string name) {
    return Bimodule(std::move(name), ground_field(), ground_field());
}

Kind Bimodule::kind() const {
    bool l = trivial(left_), r = trivial(right_);
    if (l && r) return Kind::Complex;
    if (r) return Kind::TypeD;
    if (l) return Kind::AInf;
    return Kind::DA;
}

int Bimodule::add_gen(const std::string& name, int left_idem, int right_idem) {
    if (find(name)) throw Error(Errc::ParseError, "duplicate generator '" + name + "' in " + name_);
    if (left_idem < 0 || left_idem >= int(left_->idem_count()) || right_idem < 0 ||
        right_idem >= int(right_->idem_count()))
        throw Error(Errc::BadSubset, "idempotent out of range for generator " + name);
    gens_.push_back({name, left_idem, right_idem});
    table_.emplace_back();
    return int(gens_.size()) - 1;
}

std::optional<int> Bimodule::find(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return int(i);
    return std::nullopt;
}

int Bimodule::index(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw Error(Errc::ParseError, "no generator '" + name + "' in " + name_);
}

void Bimodule::add_op(int x, const std::vector<int>& inputs, int a, int y) {
    auto& t = table_[x][inputs];
    toggle(t, {a, y});
    if (t.empty()) table_[x].erase(inputs);
}

void Bimodule::add_op(int x, const std::vector<int>& inputs, const BitVec& a, int y) {
    for (std::size_t b : a.ones()) add_op(x, inputs, int(b), y);
}

Terms Bimodule::op(int x, const std::vector<int>& inputs) const {
    for (int b : inputs)
        if (right_->is_idempotent(b)) {
            if (inputs.size() == 1 && b == right_->idem_basis(gens_[x].right))
                return {{left_->idem_basis(gens_[x].left), x}};
            return {};
        }
    auto it = table_[x].find(inputs);
    return it == table_[x].end() ? Terms{} : it->second;
}

std::size_t Bimodule::entry_count() const {
    std::size_t n = 0;
    for (const auto& t : table_) n += t.size();
    return n;
}

std::size_t Bimodule::max_arity() const {
    std::size_t m = 1;
    for (const auto& t : table_)
        for (const auto& [in, terms] : t) m = std::max(m, in.size() + 1);
    return m;
}

void Bimodule::set_gradings(std::vector<Grading> g) {
    if (!g.empty() && g.size() != gens_.size())
        throw Error(Errc::GradingInconsistent, "grading count differs from generator count");
    gr_ = std::move(g);
}

std::string Bimodule::term_str(const Term& t) const {
    if (trivial(left_)) return gens_[t.second].name;
    return left_->name(t.first) + "⊗" + gens_[t.second].name;
}

std::string Bimodule::terms_str(const Terms& t) const {
    if (t.empty()) return "0";
    std::string s;
    for (const auto& x : t) s += (s.empty() ? "" : " + ") + term_str(x);
    return s;
}

std::string Bimodule::inputs_str(const std::vector<int>& inputs) const {
    std::string s;
    for (int b : inputs) s += ", " + right_->name(b);
    return s;
}

std::string Bimodule::dump() const {
    std::ostringstream os;
    os << name_ << " [" << kind_name(kind()) << "]";
    if (!trivial(left_)) os << " left " << left_->tag();
    if (!trivial(right_)) os << " right " << right_->tag();
    os << "\n";
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        os << "  " << gens_[i].name;
        if (!trivial(left_)) os << " " << left_->idem_name(gens_[i].left);
        if (!trivial(right_)) os << " " << right_->idem_name(gens_[i].right);
        if (graded()) os << " A=" << half_str(gr_[i].a2) << " M=" << gr_[i].m;
        os << "\n";
    }
    for (std::size_t i = 0; i < gens_.size(); ++i)
        for (const auto& [in, terms] : table_[i])
            os << "  m" << in.size() + 1 << "(" << gens_[i].name << inputs_str(in)
               << ") = " << terms_str(terms) << "\n";
    return os.str();
}

// ---------------------------------------------------------------- verification

namespace {

Terms relation(const Bimodule& m, int x, const std::vector<int>& s) {
    const Algebra& L = *m.left();
    const Algebra& R = *m.right();
    Terms out;
    const std::size_t n = s.size();
    for (std::size_t j = 0; j <= n; ++j) {
        std::vector<int> head(s.begin(), s.begin() + j), tail(s.begin() + j, s.end());
        for (const auto& [a, y] : m.op(x, head))
            for (const auto& [b, z] : m.op(y, tail)) add_product(out, L, a, b, z);
    }
    for (const auto& [a, y] : m.op(x, s))
        for (std::size_t c : L.d(a).ones()) toggle(out, {int(c), y});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c : R.d(s[i]).ones()) {
            auto t = s;
            t[i] = int(c);
            toggle_all(out, m.op(x, t));
        }
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t c : R.mul(s[i], s[i + 1]).ones()) {
            std::vector<int> t(s.begin(), s.begin() + i);
            t.push_back(int(c));
            t.insert(t.end(), s.begin() + i + 2, s.end());
            toggle_all(out, m.op(x, t));
        }
    return out;
}

bool composable(const Algebra& R, const std::vector<int>& s) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (R.ridem(s[i]) != R.lidem(s[i + 1])) return false;
    return true;
}

} // namespace

Report verify_structure(const Bimodule& m) {
    Report rep;
    const Algebra& L = *m.left();
    const Algebra& R = *m.right();
    std::set<std::vector<int>> keys;
    for (std::size_t x = 0; x < m.size(); ++x)
        for (const auto& [in, terms] : m.table(int(x))) {
            ++rep.checked;
            const Gen& gx = m.gen(int(x));
            std::string where = "m" + std::to_string(in.size() + 1) + "(" + gx.name + m.inputs_str(in) + ")";
            bool idem_input = false;
            for (int b : in) idem_input = idem_input || R.is_idempotent(b);
            if (idem_input) {
                rep.fail("unitality: table entry with an idempotent input " + where);
                continue;
            }
            if (!in.empty() && (R.lidem(in.front()) != gx.right || !composable(R, in)))
                rep.fail("idempotent mismatch in the inputs of " + where);
            for (const auto& [a, y] : terms) {
                const Gen& gy = m.gen(y);
                int rout = in.empty() ? gx.right : R.ridem(in.back());
                if (L.lidem(a) != gx.left || L.ridem(a) != gy.left || rout != gy.right)
                    rep.fail("idempotent mismatch in " + where + " -> " + m.term_str({a, y}));
            }
            keys.insert(in);
        }

    // Preimages under d and under multiplication, restricted to non-idempotents.
    std::map<int, std::vector<int>> dpre;
    std::map<int, std::vector<std::pair<int, int>>> mpre;
    for (int b = 0; b < int(R.size()); ++b) {
        if (R.is_idempotent(b)) continue;
        for (std::size_t c : R.d(b).ones()) dpre[int(c)].push_back(b);
        for (int b2 = 0; b2 < int(R.size()); ++b2) {
            if (R.is_idempotent(b2)) continue;
            for (std::size_t c : R.mul(b, b2).ones()) mpre[int(c)].push_back({b, b2});
        }
    }
    std::set<std::vector<int>> cand(keys.begin(), keys.end());
    cand.insert({});
    for (const auto& k1 : keys)
        for (const auto& k2 : keys) {
            auto s = k1;
            s.insert(s.end(), k2.begin(), k2.end());
            cand.insert(s);
        }
    for (const auto& k : keys)
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (auto it = dpre.find(k[i]); it != dpre.end())
                for (int b : it->second) {
                    auto s = k;
                    s[i] = b;
                    cand.insert(s);
                }
            if (auto it = mpre.find(k[i]); it != mpre.end())
                for (auto [b, b2] : it->second) {
                    std::vector<int> s(k.begin(), k.begin() + i);
                    s.push_back(b);
                    s.push_back(b2);
                    s.insert(s.end(), k.begin() + i + 1, k.end());
                    cand.insert(s);
                }
        }
    std::size_t longest = 0;
    for (const auto& s : cand) {
        if (!composable(R, s)) continue;
        longest = std::max(longest, s.size());
        for (std::size_t x = 0; x < m.size(); ++x) {
            if (!s.empty() && R.lidem(s.front()) != m.gen(int(x)).right) continue;
            ++rep.checked;
            Terms r = relation(m, int(x), s);
            if (!r.empty())
                rep.fail("structure relation fails at n=" + std::to_string(s.size() + 1) + " on (" +
                         m.gen(int(x)).name + m.inputs_str(s) + "): " + m.terms_str(r));
        }
    }
    rep.note = "input sequences up to length " + std::to_string(longest) + "; arity bound " +
               std::to_string(2 * m.max_arity() + 2);
    return rep;
}

Report verify_type_d(const Bimodule& m) {
    if (m.kind() != Kind::TypeD && m.kind() != Kind::Complex)
        throw Error(Errc::Mismatch, m.name() + " is not a Type-D structure");
    return verify_structure(m);
}

Report verify_ainf_module(const Bimodule& m) {
    if (m.kind() != Kind::AInf && m.kind() != Kind::Complex)
        throw Error(Errc::Mismatch, m.name() + " is not an A-infinity module");
    return verify_structure(m);
}

Report verify_da_bimodule(const Bimodule& m) { return verify_structure(m); }

// ---------------------------------------------------------------- morphisms

Morphism::Morphism(std::string n, ModPtr s, ModPtr t)
    : name(std::move(n)), src(std::move(s)), tgt(std::move(t)), map(src->size()) {
    if (!same_algebra(src->left(), tgt->left()))
        throw Error(Errc::AlgebraMismatch, src->name() + " and " + tgt->name() + " differ in algebra");
}

void Morphism::add(int x, const BitVec& a, int y) {
    for (std::size_t b : a.ones()) add(x, int(b), y);
}

bool Morphism::is_zero() const {
    for (const auto& t : map)
        if (!t.empty()) return false;
    return true;
}

std::string Morphism::str() const {
    std::string s;
    for (std::size_t x = 0; x < map.size(); ++x) {
        if (map[x].empty()) continue;
        s += (s.empty() ? "" : ", ") + src->gen(int(x)).name + " -> " + tgt->terms_str(map[x]);
    }
    return s.empty() ? "0" : s;
}

Morphism identity_morphism(ModPtr m) {
    Morphism f("Id_" + m->name(), m, m);
    for (std::size_t x = 0; x < m->size(); ++x)
        f.add(int(x), m->left()->idem_basis(m->gen(int(x)).left), int(x));
    return f;
}

Morphism zero_morphism(ModPtr src, ModPtr tgt) { return Morphism("0", src, tgt); }

Morphism operator+(const Morphism& a, const Morphism& b) {
    if (a.src != b.src || a.tgt != b.tgt) throw Error(Errc::Mismatch, "sum of morphisms with different ends");
    Morphism r = a;
    r.name = a.name + "+" + b.name;
    for (std::size_t x = 0; x < r.map.size(); ++x) toggle_all(r.map[x], b.map[x]);
    return r;
}

Terms morphism_defect(const Morphism& f, int x) {
    const Algebra& A = *f.src->left();
    Terms out;
    for (const auto& [a, y] : f.src->delta(x))
        for (const auto& [b, z] : f.map[y]) add_product(out, A, a, b, z);
    for (const auto& [a, y] : f.map[x]) {
        for (const auto& [b, z] : f.tgt->delta(y)) add_product(out, A, a, b, z);
        for (std::size_t c : A.d(a).ones()) toggle(out, {int(c), y});
    }
    return out;
}

Report is_type_d_morphism(const Morphism& f) {
    if (!same_algebra(f.src->left(), f.tgt->left()))
        throw Error(Errc::AlgebraMismatch, "morphism between modules over different algebras");
    Report rep;
    const Algebra& A = *f.src->left();
    for (std::size_t x = 0; x < f.map.size(); ++x) {
        ++rep.checked;
        for (const auto& [a, y] : f.map[x])
            if (A.lidem(a) != f.src->gen(int(x)).left || A.ridem(a) != f.tgt->gen(y).left)
                rep.fail("idempotent mismatch: " + f.src->gen(int(x)).name + " -> " + f.tgt->term_str({a, y}));
        Terms d = morphism_defect(f, int(x));
        if (!d.empty()) rep.fail("morphism relation fails at " + f.src->gen(int(x)).name + ": " + f.tgt->terms_str(d));
    }
    return rep;
}

Morphism compose(const Morphism& phi, const Morphism& psi) {
    if (phi.tgt != psi.src && !(phi.tgt->name() == psi.src->name() && phi.tgt->size() == psi.src->size()))
        throw Error(Errc::Mismatch, "target of " + phi.name + " is not the source of " + psi.name);
    const Algebra& A = *phi.src->left();
    Morphism r(psi.name + "∘" + phi.name, phi.src, psi.tgt);
    for (std::size_t x = 0; x < phi.map.size(); ++x)
        for (const auto& [a, y] : phi.map[x])
            for (const auto& [b, z] : psi.map[y]) add_product(r.map[x], A, a, b, z);
    return r;
}

namespace {

// Basis (x, a, y) of the morphism space with idempotent-compatible a.
struct MorSpace {
    ModPtr src, tgt;
    std::vector<std::tuple<int, int, int>> basis;
    std::map<std::tuple<int, int, int>, std::size_t> index;
    F2Matrix D; // row i = D(basis i)

    MorSpace(ModPtr s, ModPtr t) : src(std::move(s)), tgt(std::move(t)) {
        if (!same_algebra(src->left(), tgt->left()))
            throw Error(Errc::AlgebraMismatch, "morphism space between different algebras");
        const Algebra& A = *src->left();
        for (std::size_t x = 0; x < src->size(); ++x)
            for (int a = 0; a < int(A.size()); ++a)
                for (std::size_t y = 0; y < tgt->size(); ++y)
                    if (A.lidem(a) == src->gen(int(x)).left && A.ridem(a) == tgt->gen(int(y)).left) {
                        index[{int(x), a, int(y)}] = basis.size();
                        basis.push_back({int(x), a, int(y)});
                    }
        D = F2Matrix(basis.size(), basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            auto [x, a, y] = basis[i];
            Morphism e("e", src, tgt);
            e.add(x, a, y);
            D.row(i) = vec(full_defect(e));
        }
    }
    // D(f) as a morphism: the defect evaluated on every generator.
    Morphism full_defect(const Morphism& f) const {
        Morphism r("D", src, tgt);
        for (std::size_t x = 0; x < src->size(); ++x) r.map[x] = morphism_defect(f, int(x));
        return r;
    }
    BitVec vec(const Morphism& f) const {
        BitVec v(basis.size());
        for (std::size_t x = 0; x < f.map.size(); ++x)
            for (const auto& [a, y] : f.map[x]) {
                auto it = index.find({int(x), a, y});
                if (it == index.end()) throw Error(Errc::Incompatible, "term outside the morphism space");
                v.flip(it->second);
            }
        return v;
    }
    Morphism unvec(const BitVec& v, const std::string& name) const {
        Morphism f(name, src, tgt);
        for (std::size_t i : v.ones()) {
            auto [x, a, y] = basis[i];
            f.add(x, a, y);
        }
        return f;
    }
};

} // namespace

std::optional<Morphism> find_homotopy(const Morphism& phi, const Morphism& psi) {
    if (phi.src != psi.src || phi.tgt != psi.tgt) throw Error(Errc::Mismatch, "homotopy between maps with different ends");
    MorSpace sp(phi.src, phi.tgt);
    Reducer red(sp.basis.size(), sp.basis.size());
    for (std::size_t i = 0; i < sp.basis.size(); ++i) red.insert(sp.D.row(i), i);
    BitVec target = sp.vec(phi) ^ sp.vec(psi);
    auto [res, tag] = red.reduce(target);
    if (res.any()) return std::nullopt;
    Morphism h = sp.unvec(tag, "h");
    // Re-verify by substitution.
    if (sp.vec(sp.full_defect(h)) != target)
        throw Error(Errc::FailsVerification, "homotopy witness failed substitution");
    return h;
}

std::vector<Morphism> morphism_homology_basis(ModPtr src, ModPtr tgt) {
    MorSpace sp(src, tgt);
    Reducer red(sp.basis.size(), 0);
    for (std::size_t i = 0; i < sp.basis.size(); ++i)
        if (sp.D.row(i).any()) red.insert_tagged(sp.D.row(i), BitVec(0));
    std::vector<Morphism> out;
    for (const BitVec& k : sp.D.kernel())
        if (red.insert_tagged(k, BitVec(0))) out.push_back(sp.unvec(k, "class" + std::to_string(out.size())));
    return out;
}

std::size_t morphism_homology_dim(ModPtr src, ModPtr tgt) { return morphism_homology_basis(src, tgt).size(); }

ModPtr mapping_cone(const Morphism& f) {
    Report r = is_type_d_morphism(f);
    if (!r.ok) throw Error(Errc::NotAMorphism, r.failure);
    auto c = std::make_shared<Bimodule>(Bimodule::type_d("Cone(" + f.name + ")", f.src->left()));
    const int nt = int(f.tgt->size());
    for (const auto& g : f.tgt->gens()) c->add_gen(g.name, g.left, 0);
    for (const auto& g : f.src->gens()) {
        std::string n = g.name;
        while (c->find(n)) n += "'";
        c->add_gen(n, g.left, 0);
    }
    for (int y = 0; y < nt; ++y)
        for (const auto& [a, z] : f.tgt->delta(y)) c->add_op(y, {}, a, z);
    for (int x = 0; x < int(f.src->size()); ++x) {
        for (const auto& [a, z] : f.src->delta(x)) c->add_op(nt + x, {}, a, nt + z);
        for (const auto& [a, z] : f.map[x]) c->add_op(nt + x, {}, a, z);
    }
    return c;
}

// ---------------------------------------------------------------- box products

namespace {

std::vector<std::set<std::vector<int>>> prefixes(const Bimodule& m) {
    std::vector<std::set<std::vector<int>>> p(m.size());
    for (std::size_t x = 0; x < m.size(); ++x)
        for (const auto& [in, terms] : m.table(int(x)))
            for (std::size_t l = 1; l <= in.size(); ++l) p[x].insert(std::vector<int>(in.begin(), in.begin() + l));
    return p;
}

// Whether the input chain bs + [b] can still feed a nonzero operation of x.
bool extendable(const Bimodule& m, const std::set<std::vector<int>>& pre, const std::vector<int>& bs, int b) {
    if (bs.size() + 2 > m.max_arity() && !(bs.empty() && m.right()->is_idempotent(b))) return false;
    if (m.right()->is_idempotent(b)) return bs.empty();
    auto t = bs;
    t.push_back(b);
    return pre.count(t) > 0;
}

} // namespace

ModPtr box(const ModPtr& m, const ModPtr& n) {
    if (!same_algebra(m->right(), n->left()))
        throw Error(Errc::AlgebraMismatch, "cannot pair " + m->name() + " with " + n->name());
    if (m->kind() == Kind::TypeD || m->kind() == Kind::Complex)
        throw Error(Errc::Mismatch, m->name() + " has no right action to pair with");
    auto out = std::make_shared<Bimodule>(m->name() + "⊠" + n->name(), m->left(), n->right());
    std::map<std::pair<int, int>, int> idx;
    std::vector<std::pair<int, int>> fac;
    std::vector<Grading> gr;
    const bool graded = m->graded() && n->graded();
    for (std::size_t x = 0; x < m->size(); ++x)
        for (std::size_t y = 0; y < n->size(); ++y)
            if (m->gen(int(x)).right == n->gen(int(y)).left) {
                idx[{int(x), int(y)}] =
                    out->add_gen(m->gen(int(x)).name + "⊗" + n->gen(int(y)).name, m->gen(int(x)).left,
                                 n->gen(int(y)).right);
                fac.push_back({int(x), int(y)});
                if (graded) {
                    const Grading &a = m->gradings()[x], &b = n->gradings()[y];
                    gr.push_back({a.a2 + b.a2, a.m ^ b.m});
                }
            }
    out->set_factors(fac);
    if (graded) out->set_gradings(gr);
    const auto pre = prefixes(*m);
    auto at = [&](int x, int y) {
        auto it = idx.find({x, y});
        if (it == idx.end()) throw Error(Errc::Incompatible, "operation leaves the idempotent-compatible pairs");
        return it->second;
    };
    for (const auto& [xy, src] : idx) {
        const int x = xy.first;
        std::vector<int> bs, cs;
        std::function<void(int)> rec = [&](int y) {
            for (const auto& [a, x2] : m->op(x, bs)) out->add_op(src, cs, a, at(x2, y));
            for (const auto& [in, terms] : n->table(y))
                for (const auto& [b, y2] : terms) {
                    if (!extendable(*m, pre[x], bs, b)) continue;
                    bs.push_back(b);
                    cs.insert(cs.end(), in.begin(), in.end());
                    rec(y2);
                    bs.pop_back();
                    cs.resize(cs.size() - in.size());
                }
        };
        rec(xy.second);
    }
    return out;
}

Morphism box_map(const ModPtr& m, const Morphism& f) { return box_map(m, f, box(m, f.src), box(m, f.tgt)); }

Morphism box_map(const ModPtr& m, const Morphism& f, ModPtr sb, ModPtr tb) {
    if (f.src->kind() != Kind::TypeD || f.tgt->kind() != Kind::TypeD)
        throw Error(Errc::Mismatch, "box_map needs a morphism of Type-D structures");
    std::map<std::pair<int, int>, int> tidx;
    for (std::size_t i = 0; i < tb->factors().size(); ++i) tidx[tb->factors()[i]] = int(i);
    Morphism out("Id_" + m->name() + "⊠" + f.name, sb, tb);
    const auto pre = prefixes(*m);
    for (std::size_t s = 0; s < sb->factors().size(); ++s) {
        const int x = sb->factors()[s].first;
        std::vector<int> bs;
        std::function<void(int, bool)> rec = [&](int y, bool used) {
            if (used)
                for (const auto& [a, x2] : m->op(x, bs)) {
                    auto it = tidx.find({x2, y});
                    if (it == tidx.end()) throw Error(Errc::Incompatible, "box map leaves compatible pairs");
                    out.add(int(s), a, it->second);
                }
            auto step = [&](const Terms& terms, bool next) {
                for (const auto& [b, y2] : terms) {
                    if (!extendable(*m, pre[x], bs, b)) continue;
                    bs.push_back(b);
                    rec(y2, next);
                    bs.pop_back();
                }
            };
            if (used) {
                step(f.tgt->delta(y), true);
            } else {
                step(f.src->delta(y), false);
                step(f.map[y], true);
            }
        };
        rec(sb->factors()[s].second, false);
    }
    return out;
}

// ---------------------------------------------------------------- isomorphism

bool same_under(const Bimodule& a, const Bimodule& b, const std::vector<int>& bij) {
    if (a.size() != b.size() || !same_algebra(a.left(), b.left()) || !same_algebra(a.right(), b.right()))
        return false;
    for (std::size_t x = 0; x < a.size(); ++x) {
        const Gen &ga = a.gen(int(x)), &gb = b.gen(bij[x]);
        if (ga.left != gb.left || ga.right != gb.right) return false;
        const auto& ta = a.table(int(x));
        const auto& tb = b.table(bij[x]);
        if (ta.size() != tb.size()) return false;
        for (const auto& [in, terms] : ta) {
            auto it = tb.find(in);
            if (it == tb.end()) return false;
            Terms mapped;
            for (const auto& [c, y] : terms) mapped.insert({c, bij[y]});
            if (mapped != it->second) return false;
        }
    }
    return true;
}

std::optional<std::vector<int>> find_isomorphism(const Bimodule& a, const Bimodule& b) {
    if (a.size() != b.size() || !same_algebra(a.left(), b.left()) || !same_algebra(a.right(), b.right()))
        return std::nullopt;
    // Signature: idempotents plus the multiset of (inputs, coefficient) going out and coming in.
    auto sig = [](const Bimodule& m) {
        std::vector<std::vector<std::vector<int>>> s(m.size());
        for (std::size_t x = 0; x < m.size(); ++x) {
            s[x].push_back({m.gen(int(x)).left, m.gen(int(x)).right});
            for (const auto& [in, terms] : m.table(int(x)))
                for (const auto& [c, y] : terms) {
                    auto v = in;
                    v.insert(v.begin(), {0, c});
                    s[x].push_back(v);
                    v[0] = 1;
                    s[y].push_back(v);
                }
        }
        for (auto& v : s) std::sort(v.begin(), v.end());
        return s;
    };
    auto sa = sig(a), sb = sig(b);
    std::vector<int> bij(a.size(), -1);
    std::vector<bool> used(b.size(), false);
    std::function<bool(std::size_t)> rec = [&](std::size_t x) -> bool {
        if (x == a.size()) return same_under(a, b, bij);
        for (std::size_t y = 0; y < b.size(); ++y) {
            if (used[y] || sa[x] != sb[y]) continue;
            bij[x] = int(y);
            used[y] = true;
            if (rec(x + 1)) return true;
            used[y] = false;
        }
        bij[x] = -1;
        return false;
    };
    if (rec(0)) return bij;
    return std::nullopt;
}

// ---------------------------------------------------------------- boundedness

Boundedness boundedness_status(const Bimodule& m) {
    // delta^k in (A tensor ... tensor A) tensor X, tracked as (start, word, end) with
    // F2 multiplicity, using only operations with no inputs.
    using Word = std::vector<int>;
    std::set<std::tuple<int, Word, int>> cur;
    for (std::size_t x = 0; x < m.size(); ++x)
        for (const auto& [a, y] : m.delta(int(x))) cur.insert({int(x), Word{a}, y});
    const std::size_t limit = m.size() + 1;
    for (std::size_t k = 1; k <= limit; ++k) {
        if (cur.empty()) return Boundedness::Bounded;
        if (k == limit) return Boundedness::Unbounded;
        std::set<std::tuple<int, Word, int>> next;
        for (const auto& [x, w, y] : cur)
            for (const auto& [a, z] : m.delta(y)) {
                Word w2 = w;
                w2.push_back(a);
                std::tuple<int, Word, int> t{x, w2, z};
                if (!next.erase(t)) next.insert(t);
            }
        if (next.size() > 200000) return Boundedness::Unknown;
        cur = std::move(next);
    }
    return Boundedness::Unknown;
}

// ---------------------------------------------------------------- complexes

GradedChainComplex to_complex(const Bimodule& c) {
    if (c.kind() != Kind::Complex) throw Error(Errc::Mismatch, c.name() + " is not a chain complex");
    GradedChainComplex g;
    g.ring = GradedChainComplex::Ring::F2;
    g.graded = c.graded();
    for (const auto& x : c.gens()) g.names.push_back(x.name);
    g.gr = c.graded() ? c.gradings() : std::vector<Grading>(c.size());
    g.d = F2Matrix(c.size(), c.size());
    for (std::size_t x = 0; x < c.size(); ++x)
        for (const auto& [a, y] : c.delta(int(x))) g.d.flip(x, y);
    return g;
}

F2Matrix to_matrix(const Morphism& f) {
    F2Matrix m(f.src->size(), f.tgt->size());
    for (std::size_t x = 0; x < f.map.size(); ++x)
        for (const auto& [a, y] : f.map[x]) m.flip(x, y);
    return m;
}

// ---------------------------------------------------------------- U-decorated

Report verify_u_type_d(const UTypeD& k) {
    Report rep;
    const Algebra& A = *k.alg;
    for (std::size_t x = 0; x < k.gens.size(); ++x) {
        ++rep.checked;
        std::set<UTypeD::UTerm> out;
        auto tog = [&](UTypeD::UTerm t) {
            if (!out.erase(t)) out.insert(t);
        };
        for (const auto& t : k.delta[x]) {
            if (A.lidem(t.a) != k.gens[x].left || A.ridem(t.a) != k.gens[t.y].left)
                rep.fail("idempotent mismatch in delta(" + k.gens[x].name + ")");
            for (std::size_t c : A.d(t.a).ones()) tog({int(c), t.y, t.upow});
            for (const auto& s : k.delta[t.y])
                for (std::size_t c : A.mul(t.a, s.a).ones()) tog({int(c), s.y, t.upow + s.upow});
        }
        if (!out.empty()) rep.fail("structure relation fails at " + k.gens[x].name);
    }
    return rep;
}

Boundedness u_boundedness_undecorated(const UTypeD& k) {
    // Forgetting U, a U-term loop is a cycle in the delta graph of an infinite module.
    std::vector<std::vector<int>> adj(k.gens.size());
    for (std::size_t x = 0; x < k.gens.size(); ++x)
        for (const auto& t : k.delta[x]) adj[x].push_back(t.y);
    std::vector<int> state(k.gens.size(), 0);
    std::function<bool(int)> cyc = [&](int v) {
        state[v] = 1;
        for (int w : adj[v])
            if (state[w] == 1 || (state[w] == 0 && cyc(w))) return true;
        state[v] = 2;
        return false;
    };
    for (std::size_t v = 0; v < k.gens.size(); ++v)
        if (state[v] == 0 && cyc(int(v))) return Boundedness::Unbounded;
    return Boundedness::Bounded;
}

GradedChainComplex box_u(const Bimodule& m, const UTypeD& k) {
    if (!same_algebra(m.right(), k.alg) || m.kind() != Kind::AInf)
        throw Error(Errc::AlgebraMismatch, "box_u needs an A-infinity module over " + k.alg->tag());
    GradedChainComplex c;
    c.ring = GradedChainComplex::Ring::F2U;
    c.graded = m.graded() && !k.gr.empty();
    std::map<std::pair<int, int>, int> idx;
    for (std::size_t x = 0; x < m.size(); ++x)
        for (std::size_t y = 0; y < k.gens.size(); ++y)
            if (m.gen(int(x)).right == k.gens[y].left) {
                idx[{int(x), int(y)}] = int(c.names.size());
                c.names.push_back(m.gen(int(x)).name + "⊗" + k.gens[y].name);
                if (c.graded) {
                    const Grading &a = m.gradings()[x], &b = k.gr[y];
                    c.gr.push_back({a.a2 + b.a2, a.m ^ b.m});
                } else {
                    c.gr.push_back({});
                }
            }
    c.du = F2UMatrix(c.names.size(), c.names.size());
    const auto pre = prefixes(m);
    for (const auto& [xy, src] : idx) {
        const int x = xy.first;
        std::vector<int> bs;
        std::function<void(int, int)> rec = [&](int y, int upow) {
            for (const auto& [a, x2] : m.op(x, bs)) {
                auto it = idx.find({x2, y});
                if (it == idx.end()) throw Error(Errc::Incompatible, "pairing leaves compatible pairs");
                c.du.at(it->second, src) += F2Poly::monomial(upow);
            }
            for (const auto& t : k.delta[y]) {
                if (!extendable(m, pre[x], bs, t.a)) continue;
                bs.push_back(t.a);
                rec(t.y, upow + t.upow);
                bs.pop_back();
            }
        };
        rec(xy.second, 0);
    }
    return c;
}

} // namespace borsut

#include "borsut/strands.hpp"

#include "borsut/error.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>

namespace borsut {

// ---------------------------------------------------------------- arc diagrams

int ArcDiagram::arc_of(int p) const {
    int o = 0;
    for (std::size_t a = 0; a < arc_sizes.size(); ++a) {
        if (p < o + arc_sizes[a]) return int(a);
        o += arc_sizes[a];
    }
    return -1;
}

int ArcDiagram::partner(int p) const {
    for (int q = 0; q < points(); ++q)
        if (q != p && matching[q] == matching[p]) return q;
    return -1;
}

ArcDiagram make_arc_diagram(const std::string& name, std::vector<int> arc_sizes,
                            std::vector<int> matching) {
    ArcDiagram z{name, std::move(arc_sizes), std::move(matching)};
    int total = 0;
    for (int s : z.arc_sizes) {
        if (s < 0) throw Error(Errc::BadMatching, "negative arc size");
        total += s;
    }
    if (total != z.points()) throw Error(Errc::BadMatching, "matching size differs from point count");
    if (total % 2) throw Error(Errc::BadMatching, "odd number of points");
    std::vector<int> uses(z.k() + 1, 0);
    for (int m : z.matching) {
        if (m < 1 || m > z.k()) throw Error(Errc::BadMatching, "label out of range 1..k");
        ++uses[m];
    }
    for (int m = 1; m <= z.k(); ++m)
        if (uses[m] != 2) throw Error(Errc::BadMatching, "label " + std::to_string(m) + " not used twice");

    // Segments of each arc cut at its points; surgery glues the segment
    // arriving at p to the segment leaving partner(p).
    std::vector<int> arc_start(z.arc_sizes.size()), seg_start(z.arc_sizes.size());
    int po = 0, so = 0;
    for (std::size_t a = 0; a < z.arc_sizes.size(); ++a) {
        arc_start[a] = po;
        seg_start[a] = so;
        po += z.arc_sizes[a];
        so += z.arc_sizes[a] + 1;
    }
    std::vector<bool> seen(so, false);
    for (std::size_t a = 0; a < z.arc_sizes.size(); ++a) {
        int arc = int(a), j = 0;
        for (;;) {
            seen[seg_start[arc] + j] = true;
            if (j == z.arc_sizes[arc]) break;
            int q = z.partner(arc_start[arc] + j);
            arc = z.arc_of(q);
            j = q - arc_start[arc] + 1;
        }
    }
    for (bool s : seen)
        if (!s) throw Error(Errc::ClosedComponent, "surgery on " + z.name + " has a closed component");
    return z;
}

ArcDiagram wd_diagram() { return make_arc_diagram("WD", {1, 2, 1}, {2, 2, 1, 1}); }
ArcDiagram wa_diagram() { return make_arc_diagram("WA", {1, 3}, {2, 1, 2, 1}); }
ArcDiagram wt_diagram() { return make_arc_diagram("WT", {4}, {2, 1, 2, 1}); }

// ---------------------------------------------------------------- strand diagrams

std::vector<int> StrandDiagram::sources() const {
    std::vector<int> s;
    for (auto& [a, b] : strands) s.push_back(a);
    return s;
}

std::vector<int> StrandDiagram::targets() const {
    std::vector<int> t;
    for (auto& [a, b] : strands) t.push_back(b);
    std::sort(t.begin(), t.end());
    return t;
}

int StrandDiagram::inv(const ArcDiagram& z) const {
    int n = 0;
    for (std::size_t i = 0; i < strands.size(); ++i)
        for (std::size_t j = i + 1; j < strands.size(); ++j) {
            auto [s1, t1] = strands[i];
            auto [s2, t2] = strands[j];
            if (z.arc_of(s1) != z.arc_of(s2)) continue;
            if ((s1 < s2 && t1 > t2) || (s2 < s1 && t2 > t1)) ++n;
        }
    return n;
}

std::optional<StrandDiagram> strand_product(const ArcDiagram& z, const StrandDiagram& a,
                                            const StrandDiagram& b) {
    if (a.targets() != b.sources()) return std::nullopt;
    StrandDiagram c;
    for (auto [s, t] : a.strands)
        for (auto [u, v] : b.strands)
            if (u == t) c.strands.push_back({s, v});
    std::sort(c.strands.begin(), c.strands.end());
    if (c.inv(z) != a.inv(z) + b.inv(z)) return std::nullopt;
    return c;
}

std::vector<StrandDiagram> strand_differential(const ArcDiagram& z, const StrandDiagram& a) {
    std::set<StrandDiagram> out;
    const int base = a.inv(z);
    for (std::size_t i = 0; i < a.strands.size(); ++i)
        for (std::size_t j = i + 1; j < a.strands.size(); ++j) {
            auto [s1, t1] = a.strands[i];
            auto [s2, t2] = a.strands[j];
            if (z.arc_of(s1) != z.arc_of(s2) || t1 <= t2) continue;
            StrandDiagram r = a;
            r.strands[i].second = t2;
            r.strands[j].second = t1;
            if (r.inv(z) != base - 1) continue;
            if (!out.erase(r)) out.insert(r);
        }
    return {out.begin(), out.end()};
}

// ---------------------------------------------------------------- algebra construction

namespace {

using DSet = std::set<StrandDiagram>;

void toggle(DSet& s, const StrandDiagram& d) {
    if (!s.erase(d)) s.insert(d);
}

DSet set_mul(const ArcDiagram& z, const DSet& x, const DSet& y) {
    DSet r;
    for (const auto& a : x)
        for (const auto& b : y)
            if (auto c = strand_product(z, a, b)) toggle(r, *c);
    return r;
}

DSet set_d(const ArcDiagram& z, const DSet& x) {
    DSet r;
    for (const auto& a : x)
        for (const auto& c : strand_differential(z, a)) toggle(r, c);
    return r;
}

// Echelon basis over sets of diagrams; the pivot of a row is its least diagram.
class SetReducer {
public:
    bool insert(const DSet& v) {
        DSet r = reduce(v);
        if (r.empty()) return false;
        rows_.push_back(std::move(r));
        return true;
    }
    DSet reduce(DSet v) const {
        for (const auto& row : rows_)
            if (v.count(*row.begin()))
                for (const auto& d : row) toggle(v, d);
        return v;
    }

private:
    std::vector<DSet> rows_;
};

void subsets(int k, int size, int from, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (int(cur.size()) == size) {
        out.push_back(cur);
        return;
    }
    for (int m = from; m <= k; ++m) {
        cur.push_back(m);
        subsets(k, size, m + 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> all_subsets(int k, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    if (size >= 0 && size <= k) subsets(k, size, 1, cur, out);
    return out;
}

bool chord_less(const Chord& a, const Chord& b) {
    return std::make_pair(a.to - a.from, a.from) < std::make_pair(b.to - b.from, b.from);
}

} // namespace

std::string Algebra::tag() const { return z_.name + "." + std::to_string(summand_); }

std::string Algebra::idem_name(int e) const {
    if (idems_[e].empty()) return "I_empty";
    std::string s = "I_";
    for (int m : idems_[e]) s += std::to_string(m);
    return s;
}

int Algebra::idem_index(const std::vector<int>& s) const {
    std::vector<int> t = s;
    std::sort(t.begin(), t.end());
    for (std::size_t e = 0; e < idems_.size(); ++e)
        if (idems_[e] == t) return int(e);
    throw Error(Errc::BadSubset, "no idempotent for this subset in " + tag());
}

std::vector<Chord> Algebra::elementary_chords() const {
    std::vector<Chord> out;
    int o = 0;
    for (int s : z_.arc_sizes) {
        for (int j = 0; j + 1 < s; ++j) out.push_back({o + j, o + j + 1});
        o += s;
    }
    return out;
}

std::string Algebra::chord_label(const Chord& c) const {
    auto el = elementary_chords();
    std::string s;
    for (std::size_t i = 0; i < el.size(); ++i)
        if (el[i].from >= c.from && el[i].to <= c.to) {
            if (el.size() >= 10 && !s.empty()) s += ".";
            s += std::to_string(i + 1);
        }
    return s;
}

std::optional<Chord> Algebra::chord_from_label(const std::string& digits) const {
    auto el = elementary_chords();
    std::vector<int> idx;
    if (el.size() >= 10) {
        std::size_t p = 0;
        while (p < digits.size()) {
            std::size_t q = digits.find('.', p);
            if (q == std::string::npos) q = digits.size();
            idx.push_back(std::stoi(digits.substr(p, q - p)));
            p = q + 1;
        }
    } else {
        for (char ch : digits) {
            if (ch < '1' || ch > '9') return std::nullopt;
            idx.push_back(ch - '0');
        }
    }
    if (idx.empty()) return std::nullopt;
    for (int i : idx)
        if (i < 1 || i > int(el.size())) return std::nullopt;
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i] != idx[i - 1] + 1 || el[idx[i] - 1].from != el[idx[i - 1] - 1].to) return std::nullopt;
    return Chord{el[idx.front() - 1].from, el[idx.back() - 1].to};
}

std::vector<StrandDiagram> Algebra::a_rho_s(const std::vector<Chord>& rho,
                                            const std::vector<int>& s) const {
    std::vector<StrandDiagram> out;
    const std::size_t n = s.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        StrandDiagram d;
        for (const auto& c : rho) d.strands.push_back({c.from, c.to});
        for (std::size_t i = 0; i < n; ++i) {
            int first = -1, second = -1;
            for (int p = 0; p < z_.points(); ++p)
                if (z_.matching[p] == s[i]) (first < 0 ? first : second) = p;
            int p = (mask >> i) & 1 ? second : first;
            d.strands.push_back({p, p});
        }
        std::sort(d.strands.begin(), d.strands.end());
        out.push_back(std::move(d));
    }
    return out;
}

BitVec Algebra::express(const std::vector<StrandDiagram>& diagrams) const {
    BitVec v(diag_index_.size());
    for (const auto& d : diagrams) {
        auto it = diag_index_.find(d);
        if (it == diag_index_.end())
            throw Error(Errc::AlgebraMismatch, "element outside " + tag());
        v.flip(it->second);
    }
    auto [res, tag_] = basis_red_.reduce(v);
    if (res.any()) throw Error(Errc::AlgebraMismatch, "element outside " + tag());
    return tag_;
}

AlgebraPtr Algebra::build(const ArcDiagram& z, int summand) {
    auto alg = std::shared_ptr<Algebra>(new Algebra());
    Algebra& A = *alg;
    A.z_ = z;
    A.summand_ = summand;
    A.idems_ = all_subsets(z.k(), summand);
    if (A.idems_.empty()) throw Error(Errc::BadSubset, "summand index out of range");

    struct Gen {
        std::string name;
        DSet elt;
        int left, right;
        bool idem;
    };
    std::vector<Gen> gens;
    for (std::size_t e = 0; e < A.idems_.size(); ++e) {
        auto ds = A.a_rho_s({}, A.idems_[e]);
        gens.push_back({A.idem_name(int(e)), DSet(ds.begin(), ds.end()), int(e), int(e), true});
    }

    // Chord sets with distinct start pairs and distinct end pairs.
    std::vector<Chord> chords;
    for (int p = 0; p < z.points(); ++p)
        for (int q = p + 1; q < z.points(); ++q)
            if (z.arc_of(p) == z.arc_of(q)) chords.push_back({p, q});
    std::sort(chords.begin(), chords.end(), chord_less);
    const auto el = A.elementary_chords();
    std::vector<std::vector<Chord>> sets;
    for (int size = 1; size <= summand; ++size) {
        std::vector<int> idx(size);
        std::function<void(int, int)> rec = [&](int pos, int from) {
            if (pos == size) {
                std::vector<Chord> r;
                for (int i : idx) r.push_back(chords[i]);
                sets.push_back(r);
                return;
            }
            for (int i = from; i < int(chords.size()); ++i) {
                idx[pos] = i;
                rec(pos + 1, i + 1);
            }
        };
        rec(0, 0);
    }
    std::map<std::string, int> base_count;
    std::vector<Gen> chord_gens;
    for (const auto& rho : sets) {
        std::set<int> sp, ep;
        bool ok = true;
        for (const auto& c : rho) {
            ok = ok && sp.insert(z.matching[c.from]).second && ep.insert(z.matching[c.to]).second;
        }
        if (!ok) continue;
        for (const auto& s : all_subsets(z.k(), summand - int(rho.size()))) {
            bool clash = false;
            for (int m : s) clash = clash || sp.count(m) || ep.count(m);
            if (clash) continue;
            std::vector<int> l(sp.begin(), sp.end()), r(ep.begin(), ep.end());
            l.insert(l.end(), s.begin(), s.end());
            r.insert(r.end(), s.begin(), s.end());
            std::vector<Chord> by_start = rho;
            std::sort(by_start.begin(), by_start.end(),
                      [](const Chord& a, const Chord& b) { return a.from > b.from; });
            std::string base;
            for (const auto& c : by_start) {
                if (!base.empty()) base += "*";
                base += el.size() == 1 ? std::string("rho") : "rho_" + A.chord_label(c);
            }
            std::string sname;
            for (int m : s) sname += std::to_string(m);
            auto ds = A.a_rho_s(rho, s);
            chord_gens.push_back({base + "@" + sname, DSet(ds.begin(), ds.end()), A.idem_index(l),
                                  A.idem_index(r), false});
            ++base_count[base];
        }
    }
    for (auto& g : chord_gens) {
        std::string base = g.name.substr(0, g.name.find('@'));
        if (base_count[base] == 1) g.name = base;
        gens.push_back(g);
    }

    // Span closure under multiplication by generators and the differential.
    SetReducer red;
    std::vector<Gen> basis;
    for (const auto& g : gens)
        if (red.insert(g.elt)) basis.push_back(g);
    for (std::size_t q = 0; q < basis.size(); ++q) {
        std::vector<Gen> fresh;
        for (const auto& g : gens) {
            if (basis[q].right == g.left) {
                DSet p = set_mul(z, basis[q].elt, g.elt);
                if (!p.empty() && red.insert(p))
                    fresh.push_back({basis[q].name + "*" + g.name, p, basis[q].left, g.right, false});
            }
            if (g.right == basis[q].left) {
                DSet p = set_mul(z, g.elt, basis[q].elt);
                if (!p.empty() && red.insert(p))
                    fresh.push_back({g.name + "*" + basis[q].name, p, g.left, basis[q].right, false});
            }
        }
        DSet dq = set_d(z, basis[q].elt);
        if (!dq.empty() && red.insert(dq))
            fresh.push_back({"d(" + basis[q].name + ")", dq, basis[q].left, basis[q].right, false});
        for (auto& f : fresh) basis.push_back(std::move(f));
    }

    for (const auto& b : basis) {
        A.basis_.push_back({b.name, b.left, b.right, b.idem,
                            std::vector<StrandDiagram>(b.elt.begin(), b.elt.end())});
        for (const auto& d : b.elt) A.diag_index_.emplace(d, 0);
    }
    int di = 0;
    for (auto& [d, i] : A.diag_index_) i = di++;
    for (const auto& b : A.basis_) {
        BitVec v(A.diag_index_.size());
        for (const auto& d : b.diagrams) v.set(A.diag_index_.at(d));
        A.diag_to_basis_rows_.push_back(v);
    }
    A.basis_red_ = Reducer(A.diag_index_.size(), A.basis_.size());
    for (std::size_t b = 0; b < A.basis_.size(); ++b) A.basis_red_.insert(A.diag_to_basis_rows_[b], b);
    A.idem_basis_.assign(A.idems_.size(), -1);
    for (std::size_t b = 0; b < A.basis_.size(); ++b) {
        if (A.basis_[b].idem) A.idem_basis_[A.basis_[b].left] = int(b);
        A.names_[A.basis_[b].name] = int(b);
    }
    if (el.size() == 1)
        for (std::size_t b = 0; b < A.basis_.size(); ++b)
            if (A.basis_[b].name == "rho") A.names_["rho_1"] = int(b);
    for (std::size_t e = 0; e < A.idems_.size(); ++e)
        if (A.idems_[e].empty()) A.names_["I_\xE2\x88\x85"] = A.idem_basis_[e];

    const std::size_t n = A.basis_.size();
    A.mult_.assign(n * n, BitVec(n));
    A.diff_.assign(n, BitVec(n));
    for (std::size_t a = 0; a < n; ++a) {
        DSet da(A.basis_[a].diagrams.begin(), A.basis_[a].diagrams.end());
        DSet dd = set_d(z, da);
        A.diff_[a] = A.express({dd.begin(), dd.end()});
        for (std::size_t b = 0; b < n; ++b) {
            if (A.basis_[a].right != A.basis_[b].left) continue;
            DSet db(A.basis_[b].diagrams.begin(), A.basis_[b].diagrams.end());
            DSet p = set_mul(z, da, db);
            A.mult_[a * n + b] = A.express({p.begin(), p.end()});
        }
    }
    return alg;
}

BitVec Algebra::basis_vec(int b) const {
    BitVec v(size());
    v.set(b);
    return v;
}

BitVec Algebra::unit() const {
    BitVec v(size());
    for (int b : idem_basis_) v.set(b);
    return v;
}

BitVec Algebra::mul(const BitVec& x, const BitVec& y) const {
    BitVec r(size());
    for (std::size_t a : x.ones())
        for (std::size_t b : y.ones()) r ^= mult_[a * size() + b];
    return r;
}

BitVec Algebra::d(const BitVec& x) const {
    BitVec r(size());
    for (std::size_t a : x.ones()) r ^= diff_[a];
    return r;
}

BitVec Algebra::idempotent_for(const std::vector<int>& s) const {
    for (int m : s)
        if (m < 1 || m > z_.k()) throw Error(Errc::BadSubset, "pair label out of range");
    std::set<int> u(s.begin(), s.end());
    if (u.size() != s.size()) throw Error(Errc::BadSubset, "repeated pair label");
    return basis_vec(idem_basis_[idem_index(s)]);
}

BitVec Algebra::chord_element(const std::vector<Chord>& chords) const {
    std::set<int> sp, ep;
    for (const auto& c : chords) {
        if (c.from >= c.to) throw Error(Errc::Incompatible, "constant or reversed chord");
        if (z_.arc_of(c.from) != z_.arc_of(c.to) || z_.arc_of(c.from) < 0)
            throw Error(Errc::Incompatible, "chord leaves its arc");
        if (!sp.insert(z_.matching[c.from]).second || !ep.insert(z_.matching[c.to]).second)
            throw Error(Errc::Incompatible, "two chord ends in one matched pair");
    }
    if (int(chords.size()) > summand_) throw Error(Errc::Incompatible, "more chords than strands");
    BitVec r(size());
    for (const auto& s : all_subsets(z_.k(), summand_ - int(chords.size()))) {
        bool clash = false;
        for (int m : s) clash = clash || sp.count(m) || ep.count(m);
        if (clash) continue;
        r ^= express(a_rho_s(chords, s));
    }
    return r;
}

std::optional<BitVec> Algebra::lookup(const std::string& name) const {
    if (name == "1") return unit();
    auto it = names_.find(name);
    if (it == names_.end()) return std::nullopt;
    return basis_vec(it->second);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t p = 0;
    for (;;) {
        std::size_t q = s.find(sep, p);
        out.push_back(trim(s.substr(p, q == std::string::npos ? std::string::npos : q - p)));
        if (q == std::string::npos) break;
        p = q + 1;
    }
    return out;
}

} // namespace

BitVec Algebra::parse(const std::string& text) const {
    std::string t = trim(text);
    if (t.empty()) throw Error(Errc::ParseError, "empty algebra element");
    BitVec r(size());
    if (t == "0") return r;
    for (const auto& term : split(t, '+')) {
        if (auto v = lookup(term)) {
            r ^= *v;
            continue;
        }
        BitVec acc;
        bool first = true;
        for (const auto& f : split(term, '*')) {
            auto v = lookup(f);
            if (!v) throw Error(Errc::ParseError, "unknown element '" + f + "' in " + tag());
            acc = first ? *v : mul(acc, *v);
            first = false;
        }
        r ^= acc;
    }
    return r;
}

std::string Algebra::str(const BitVec& x) const {
    if (x.none()) return "0";
    std::string s;
    for (std::size_t b : x.ones()) {
        if (!s.empty()) s += " + ";
        s += basis_[b].name;
    }
    return s;
}

// ---------------------------------------------------------------- named algebras

AlgebraPtr named_algebra(const std::string& id, int summand) {
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, AlgebraPtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(id, summand);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    ArcDiagram z;
    if (id == "WD") z = wd_diagram();
    else if (id == "WA") z = wa_diagram();
    else if (id == "WT") z = wt_diagram();
    else if (id == "F2") z = make_arc_diagram("F2", {}, {});
    else throw Error(Errc::ParseError, "unknown algebra '" + id + "'");
    auto a = Algebra::build(z, summand);
    cache.emplace(key, a);
    return a;
}

AlgebraPtr ground_field() { return named_algebra("F2", 0); }

Report verify_dg_summand(const Algebra& A) {
    Report rep;
    const int n = int(A.size());
    auto nm = [&](int b) { return A.tag() + ":" + A.name(b); };
    for (int a = 0; a < n; ++a) {
        ++rep.checked;
        if (A.d(A.d(a)).any()) rep.fail("d^2 != 0 on " + nm(a));
        if (A.is_idempotent(a) && A.d(a).any()) rep.fail("d of idempotent " + nm(a));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ++rep.checked;
            BitVec ab = A.mul(a, b);
            BitVec lhs = A.d(ab);
            BitVec rhs = A.mul(A.d(a), A.basis_vec(b)) ^ A.mul(A.basis_vec(a), A.d(b));
            if (lhs != rhs) rep.fail("Leibniz fails on " + nm(a) + ", " + nm(b));
            for (std::size_t x : ab.ones())
                if (A.lidem(int(x)) != A.lidem(a) || A.ridem(int(x)) != A.ridem(b))
                    rep.fail("product leaves its idempotent block: " + nm(a) + "*" + nm(b));
        }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            BitVec ab = A.mul(a, b);
            for (int c = 0; c < n; ++c) {
                ++rep.checked;
                BitVec l = A.mul(ab, A.basis_vec(c));
                BitVec r = A.mul(A.basis_vec(a), A.mul(b, c));
                if (l != r) rep.fail("associativity fails on " + nm(a) + ", " + nm(b) + ", " + nm(c));
            }
        }
    BitVec u = A.unit();
    for (int a = 0; a < n; ++a) {
        ++rep.checked;
        if (A.mul(u, A.basis_vec(a)) != A.basis_vec(a) || A.mul(A.basis_vec(a), u) != A.basis_vec(a))
            rep.fail("unit fails on " + nm(a));
    }
    for (std::size_t e = 0; e < A.idem_count(); ++e)
        for (std::size_t f = 0; f < A.idem_count(); ++f) {
            ++rep.checked;
            BitVec p = A.mul(A.idem_basis(int(e)), A.idem_basis(int(f)));
            BitVec want = e == f ? A.basis_vec(A.idem_basis(int(e))) : A.zero();
            if (p != want) rep.fail("idempotents not orthogonal: " + A.idem_name(int(e)));
        }
    return rep;
}

Report verify_dg_algebra(const ArcDiagram& z) {
    Report total;
    for (int i = 0; i <= z.k(); ++i) {
        auto A = Algebra::build(z, i);
        Report r = verify_dg_summand(*A);
        total.checked += r.checked;
        if (!r.ok) total.fail(r.failure);
    }
    return total;
}

std::pair<AlgebraPtr, BitVec> parse_qualified(const std::string& text, AlgebraPtr default_alg) {
    std::size_t c = text.find(':');
    if (c == std::string::npos) {
        if (!default_alg) throw Error(Errc::ParseError, "no algebra for '" + text + "'");
        return {default_alg, default_alg->parse(text)};
    }
    std::string q = trim(text.substr(0, c));
    std::string id = q;
    int summand = -1;
    std::size_t dot = q.find('.');
    if (dot != std::string::npos) {
        id = q.substr(0, dot);
        try {
            summand = std::stoi(q.substr(dot + 1));
        } catch (...) {
            throw Error(Errc::ParseError, "bad summand in qualifier '" + q + "'");
        }
    }
    if (summand < 0) summand = (default_alg && default_alg->id() == id) ? default_alg->summand() : 1;
    auto alg = named_algebra(id, summand);
    if (default_alg && default_alg->id() == id && default_alg->summand() != summand)
        throw Error(Errc::AlgebraMismatch, "qualifier " + q + " differs from " + default_alg->tag());
    return {alg, alg->parse(text.substr(c + 1))};
}

} // namespace borsut

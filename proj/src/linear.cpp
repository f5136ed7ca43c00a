#include "borsut/linear.hpp"

#include "borsut/error.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace borsut {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::ClosedComponent: return "ClosedComponent";
    case Errc::BadMatching: return "BadMatching";
    case Errc::AlgebraMismatch: return "AlgebraMismatch";
    case Errc::Incompatible: return "Incompatible";
    case Errc::BadSubset: return "BadSubset";
    case Errc::NotAComplex: return "NotAComplex";
    case Errc::NotAMorphism: return "NotAMorphism";
    case Errc::Mismatch: return "Mismatch";
    case Errc::Unbounded: return "Unbounded";
    case Errc::ParseError: return "ParseError";
    case Errc::NotNice: return "NotNice";
    case Errc::Disconnected: return "Disconnected";
    case Errc::FailsVerification: return "FailsVerification";
    case Errc::GradingInconsistent: return "GradingInconsistent";
    case Errc::NoStabilization: return "NoStabilization";
    case Errc::NotEventuallyStable: return "NotEventuallyStable";
    case Errc::FamilyNotCompatible: return "FamilyNotCompatible";
    case Errc::NotACycle: return "NotACycle";
    case Errc::Usage: return "Usage";
    }
    return "Error";
}

// ---------------------------------------------------------------- BitVec

BitVec& BitVec::operator^=(const BitVec& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

bool BitVec::any() const {
    for (uint64_t w : w_)
        if (w) return true;
    return false;
}

std::size_t BitVec::count() const {
    std::size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

std::size_t BitVec::first() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i]) return i * 64 + std::countr_zero(w_[i]);
    return n_;
}

std::vector<std::size_t> BitVec::ones() const {
    std::vector<std::size_t> r;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        uint64_t w = w_[i];
        while (w) {
            r.push_back(i * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return r;
}

void BitVec::resize(std::size_t n) {
    n_ = n;
    w_.resize((n + 63) / 64, 0);
    if (n & 63) w_.back() &= (uint64_t(1) << (n & 63)) - 1;
}

// ---------------------------------------------------------------- Reducer

bool Reducer::insert(const BitVec& v, std::size_t tag) {
    BitVec t(ntags_);
    if (tag < ntags_) t.set(tag);
    return insert_tagged(v, t);
}

bool Reducer::insert_tagged(const BitVec& v, const BitVec& tag) {
    auto [res, rt] = reduce(v);
    if (res.none()) return false;
    rt ^= tag;
    std::size_t p = res.first();
    rows_.push_back(std::move(res));
    tags_.push_back(std::move(rt));
    pivots_.push_back(p);
    return true;
}

std::pair<BitVec, BitVec> Reducer::reduce(const BitVec& v) const {
    BitVec r = v, t(ntags_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (r.get(pivots_[k])) {
            r ^= rows_[k];
            t ^= tags_[k];
        }
    }
    return {r, t};
}

// ---------------------------------------------------------------- F2Matrix

F2Matrix F2Matrix::then(const F2Matrix& other) const {
    F2Matrix r(rows(), other.cols());
    for (std::size_t i = 0; i < rows(); ++i) r.r_[i] = other.apply(r_[i]);
    return r;
}

BitVec F2Matrix::apply(const BitVec& v) const {
    BitVec r(cols_);
    for (std::size_t i : v.ones()) r ^= r_[i];
    return r;
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t j : r_[i].ones()) t.set(j, i);
    return t;
}

std::size_t F2Matrix::rank() const {
    Reducer red(cols_, 0);
    for (const auto& r : r_) red.insert_tagged(r, BitVec(0));
    return red.rank();
}

bool F2Matrix::is_zero() const {
    for (const auto& r : r_)
        if (r.any()) return false;
    return true;
}

std::vector<BitVec> F2Matrix::kernel() const {
    Reducer red(cols_, rows());
    std::vector<BitVec> ker;
    for (std::size_t i = 0; i < rows(); ++i) {
        auto [res, tag] = red.reduce(r_[i]);
        if (res.none()) {
            tag.flip(i);
            ker.push_back(tag);
        } else {
            BitVec t(rows());
            t.set(i);
            red.insert_tagged(r_[i], t);
        }
    }
    return ker;
}

std::vector<BitVec> F2Matrix::image() const {
    Reducer red(cols_, 0);
    std::vector<BitVec> im;
    for (const auto& r : r_)
        if (red.insert_tagged(r, BitVec(0))) im.push_back(r);
    return im;
}

// ---------------------------------------------------------------- F2Poly

F2Poly F2Poly::monomial(int k) {
    F2Poly p;
    p.c_.assign(k / 64 + 1, 0);
    p.c_[k / 64] = uint64_t(1) << (k % 64);
    return p;
}

void F2Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int F2Poly::degree() const {
    if (c_.empty()) return -1;
    return int((c_.size() - 1) * 64 + 63 - std::countl_zero(c_.back()));
}

int F2Poly::low_degree() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) return int(i * 64 + std::countr_zero(c_[i]));
    return -1;
}

bool F2Poly::coeff(int k) const {
    std::size_t w = std::size_t(k) / 64;
    return w < c_.size() && ((c_[w] >> (k % 64)) & 1u);
}

bool F2Poly::is_monomial() const {
    std::size_t c = 0;
    for (uint64_t w : c_) c += std::popcount(w);
    return c == 1;
}

F2Poly F2Poly::operator+(const F2Poly& o) const {
    F2Poly r;
    r.c_.assign(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] ^= c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] ^= o.c_[i];
    r.trim();
    return r;
}

F2Poly F2Poly::operator*(const F2Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    F2Poly r;
    r.c_.assign(c_.size() + o.c_.size(), 0);
    for (int k = 0; k <= degree(); ++k) {
        if (!coeff(k)) continue;
        for (int j = 0; j <= o.degree(); ++j)
            if (o.coeff(j)) r.c_[(k + j) / 64] ^= uint64_t(1) << ((k + j) % 64);
    }
    r.trim();
    return r;
}

std::pair<F2Poly, F2Poly> F2Poly::divmod(const F2Poly& d) const {
    F2Poly q, r = *this;
    const int dd = d.degree();
    while (!r.is_zero() && r.degree() >= dd) {
        int s = r.degree() - dd;
        F2Poly m = monomial(s);
        q += m;
        r += m * d;
    }
    return {q, r};
}

std::string F2Poly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
        if (!coeff(k)) continue;
        if (!s.empty()) s += "+";
        if (k == 0) s += "1";
        else if (k == 1) s += "U";
        else s += "U^" + std::to_string(k);
    }
    return s;
}

// ---------------------------------------------------------------- F2UMatrix

F2UMatrix F2UMatrix::identity(std::size_t n) {
    F2UMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = F2Poly::one();
    return m;
}

F2UMatrix F2UMatrix::operator*(const F2UMatrix& o) const {
    F2UMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const F2Poly& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero()) r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

bool F2UMatrix::is_zero() const {
    for (const auto& p : e_)
        if (!p.is_zero()) return false;
    return true;
}

F2Matrix F2UMatrix::evaluate(int value) const {
    F2Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const F2Poly& p = at(i, j);
            bool v = false;
            if (value == 0) {
                v = p.coeff(0);
            } else {
                for (int k = 0; k <= p.degree(); ++k) v ^= p.coeff(k);
            }
            if (v) m.set(i, j);
        }
    return m;
}

// ---------------------------------------------------------------- SNF

namespace {

struct SnfState {
    F2UMatrix& D;
    F2UMatrix& P;
    F2UMatrix& Pinv;
    F2UMatrix& Q;

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D.at(a, j), D.at(b, j));
        for (std::size_t j = 0; j < P.cols(); ++j) std::swap(P.at(a, j), P.at(b, j));
        for (std::size_t i = 0; i < Pinv.rows(); ++i) std::swap(Pinv.at(i, a), Pinv.at(i, b));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D.at(i, a), D.at(i, b));
        for (std::size_t i = 0; i < Q.rows(); ++i) std::swap(Q.at(i, a), Q.at(i, b));
    }
    // row_i += q * row_t
    void add_row(std::size_t i, std::size_t t, const F2Poly& q) {
        for (std::size_t j = 0; j < D.cols(); ++j)
            if (!D.at(t, j).is_zero()) D.at(i, j) += q * D.at(t, j);
        for (std::size_t j = 0; j < P.cols(); ++j)
            if (!P.at(t, j).is_zero()) P.at(i, j) += q * P.at(t, j);
        for (std::size_t r = 0; r < Pinv.rows(); ++r)
            if (!Pinv.at(r, i).is_zero()) Pinv.at(r, t) += q * Pinv.at(r, i);
    }
    // col_j += q * col_t
    void add_col(std::size_t j, std::size_t t, const F2Poly& q) {
        for (std::size_t i = 0; i < D.rows(); ++i)
            if (!D.at(i, t).is_zero()) D.at(i, j) += q * D.at(i, t);
        for (std::size_t i = 0; i < Q.rows(); ++i)
            if (!Q.at(i, t).is_zero()) Q.at(i, j) += q * Q.at(i, t);
    }
};

bool better(const F2Poly& a, std::size_t ai, std::size_t aj, const F2Poly* best, std::size_t bi,
            std::size_t bj) {
    if (!best) return true;
    if (a.degree() != best->degree()) return a.degree() < best->degree();
    return std::make_pair(ai, aj) < std::make_pair(bi, bj);
}

} // namespace

SmithForm snf_over_f2u(const F2UMatrix& m) {
    SmithForm f;
    f.D = m;
    f.P = F2UMatrix::identity(m.rows());
    f.Pinv = F2UMatrix::identity(m.rows());
    f.Q = F2UMatrix::identity(m.cols());
    SnfState s{f.D, f.P, f.Pinv, f.Q};
    const std::size_t R = m.rows(), C = m.cols();

    for (std::size_t t = 0; t < std::min(R, C); ++t) {
        const F2Poly* best = nullptr;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = t; i < R; ++i)
            for (std::size_t j = t; j < C; ++j) {
                const F2Poly& e = f.D.at(i, j);
                if (!e.is_zero() && better(e, i, j, best, bi, bj)) {
                    best = &e;
                    bi = i;
                    bj = j;
                }
            }
        if (!best) break;
        s.swap_rows(t, bi);
        s.swap_cols(t, bj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (f.D.at(i, t).is_zero()) continue;
                auto [q, r] = f.D.at(i, t).divmod(f.D.at(t, t));
                s.add_row(i, t, q);
                if (!r.is_zero()) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (f.D.at(t, j).is_zero()) continue;
                auto [q, r] = f.D.at(t, j).divmod(f.D.at(t, t));
                s.add_col(j, t, q);
                if (!r.is_zero()) clean = false;
            }
            if (!clean) {
                // Move the lowest-degree remainder in row/column t onto the pivot.
                std::size_t pi = t, pj = t;
                const F2Poly* pb = &f.D.at(t, t);
                for (std::size_t i = t + 1; i < R; ++i)
                    if (!f.D.at(i, t).is_zero() && f.D.at(i, t).degree() < pb->degree()) {
                        pb = &f.D.at(i, t);
                        pi = i;
                        pj = t;
                    }
                for (std::size_t j = t + 1; j < C; ++j)
                    if (!f.D.at(t, j).is_zero() && f.D.at(t, j).degree() < pb->degree()) {
                        pb = &f.D.at(t, j);
                        pi = t;
                        pj = j;
                    }
                s.swap_rows(t, pi);
                s.swap_cols(t, pj);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < R && !fixed; ++i)
                for (std::size_t j = t + 1; j < C && !fixed; ++j)
                    if (!f.D.at(t, t).divides(f.D.at(i, j))) {
                        s.add_row(t, i, F2Poly::one());
                        fixed = true;
                    }
            if (!fixed) break;
        }
        f.factors.push_back(f.D.at(t, t));
    }
    return f;
}

// ---------------------------------------------------------------- complexes

std::string half_str(int a2) {
    if (a2 % 2 == 0) return std::to_string(a2 / 2);
    return std::to_string(a2) + "/2";
}

void GradedChainComplex::check() const {
    if (ring == Ring::F2) {
        if (d.rows() != size() || d.cols() != size())
            throw Error(Errc::NotAComplex, "differential has wrong shape");
        if (!d.then(d).is_zero()) throw Error(Errc::NotAComplex, "d^2 != 0");
    } else {
        if (du.rows() != size() || du.cols() != size())
            throw Error(Errc::NotAComplex, "differential has wrong shape");
        if (!(du * du).is_zero()) throw Error(Errc::NotAComplex, "d^2 != 0");
    }
}

namespace {

std::map<Grading, std::vector<std::size_t>> buckets(const GradedChainComplex& c) {
    std::map<Grading, std::vector<std::size_t>> b;
    for (std::size_t i = 0; i < c.size(); ++i) b[c.graded ? c.gr[i] : Grading{}].push_back(i);
    return b;
}

void check_homogeneous(const GradedChainComplex& c) {
    if (!c.graded) return;
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j : c.d.row(i).ones())
            if (c.gr[j].a2 != c.gr[i].a2 || c.gr[j].m != (c.gr[i].m ^ 1))
                throw Error(Errc::GradingInconsistent,
                            "differential term " + c.names[i] + " -> " + c.names[j] +
                                " is not homogeneous");
}

} // namespace

std::map<Grading, int> f2_homology(const GradedChainComplex& c) {
    c.check();
    check_homogeneous(c);
    std::map<Grading, int> out;
    if (!c.graded) {
        int h = int(c.size()) - 2 * int(c.d.rank());
        if (h) out[Grading{}] = h;
        return out;
    }
    auto b = buckets(c);
    for (const auto& [g, idx] : b) {
        F2Matrix sub(idx.size(), c.size());
        for (std::size_t k = 0; k < idx.size(); ++k) sub.row(k) = c.d.row(idx[k]);
        int ker = int(idx.size() - sub.rank());
        int im = 0;
        auto it = b.find(Grading{g.a2, g.m ^ 1});
        if (it != b.end()) {
            F2Matrix up(it->second.size(), c.size());
            for (std::size_t k = 0; k < it->second.size(); ++k) up.row(k) = c.d.row(it->second[k]);
            im = int(up.rank());
        }
        if (ker - im) out[g] = ker - im;
    }
    return out;
}

HomologyModel::HomologyModel(const GradedChainComplex& c) : c_(&c) {
    c.check();
    check_homogeneous(c);
    const std::size_t n = c.size();
    std::vector<BitVec> bounds;
    for (std::size_t i = 0; i < n; ++i)
        if (c.d.row(i).any()) bounds.push_back(c.d.row(i));

    std::vector<BitVec> cyc;
    std::vector<Grading> cyc_gr;
    for (const auto& [g, idx] : buckets(c)) {
        F2Matrix sub(idx.size(), n);
        for (std::size_t k = 0; k < idx.size(); ++k) sub.row(k) = c.d.row(idx[k]);
        for (const BitVec& kv : sub.kernel()) {
            BitVec v(n);
            for (std::size_t k : kv.ones()) v.set(idx[k]);
            cyc.push_back(v);
            cyc_gr.push_back(g);
        }
    }
    Reducer probe(n, 0);
    for (const auto& b : bounds) probe.insert_tagged(b, BitVec(0));
    for (std::size_t k = 0; k < cyc.size(); ++k)
        if (probe.insert_tagged(cyc[k], BitVec(0))) {
            reps_.push_back(cyc[k]);
            rep_gr_.push_back(cyc_gr[k]);
        }
    red_ = Reducer(n, reps_.size());
    for (const auto& b : bounds) red_.insert_tagged(b, BitVec(reps_.size()));
    for (std::size_t k = 0; k < reps_.size(); ++k) red_.insert(reps_[k], k);
}

bool HomologyModel::is_cycle(const BitVec& v) const { return c_->d.apply(v).none(); }

BitVec HomologyModel::coords(const BitVec& cycle) const {
    if (!is_cycle(cycle)) throw Error(Errc::NotACycle, "vector is not a cycle");
    auto [res, tag] = red_.reduce(cycle);
    if (res.any()) throw Error(Errc::NotACycle, "cycle outside the span of the model");
    return tag;
}

bool is_chain_map(const GradedChainComplex& src, const GradedChainComplex& tgt,
                  const F2Matrix& f) {
    if (f.rows() != src.size() || f.cols() != tgt.size()) return false;
    return src.d.then(f) == f.then(tgt.d);
}

F2Matrix induced_map(const GradedChainComplex& src, const GradedChainComplex& tgt,
                     const F2Matrix& f, const HomologyModel& hs, const HomologyModel& ht) {
    if (!is_chain_map(src, tgt, f)) throw Error(Errc::NotAMorphism, "not a chain map");
    F2Matrix m(hs.rank(), ht.rank());
    for (std::size_t k = 0; k < hs.rank(); ++k) m.row(k) = ht.coords(f.apply(hs.reps()[k]));
    return m;
}

// ---------------------------------------------------------------- F2[U] homology

bool GradedFUModule::empty() const { return parts.empty(); }

int GradedFUModule::total_free() const {
    int t = 0;
    for (const auto& [g, p] : parts) t += p.free;
    return t;
}

int GradedFUModule::dim_at(int a2) const {
    int d = 0;
    for (const auto& [g, p] : parts) {
        int diff = g.a2 - a2;
        if (diff < 0 || diff % 2) continue;
        int k = diff / 2;
        d += p.free;
        for (int t : p.torsion)
            if (k < t) ++d;
    }
    return d;
}

bool GradedFUModule::top_free(int& a2) const {
    bool found = false;
    for (const auto& [g, p] : parts)
        if (p.free && (!found || g.a2 > a2)) {
            a2 = g.a2;
            found = true;
        }
    return found;
}

std::string GradedFUModule::str() const {
    std::ostringstream os;
    if (parts.empty()) return "0";
    bool first = true;
    for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        const auto& [g, p] = *it;
        for (int i = 0; i < p.free; ++i) {
            os << (first ? "" : " + ") << "F[U]_(" << half_str(g.a2) << "," << g.m << ")";
            first = false;
        }
        for (int t : p.torsion) {
            os << (first ? "" : " + ") << "F[U]/U";
            if (t > 1) os << "^" << t;
            os << "_(" << half_str(g.a2) << "," << g.m << ")";
            first = false;
        }
    }
    return os.str();
}

namespace {

// Grading of a homogeneous F2[U]-combination of generators (column `col` of M).
Grading vector_grading(const GradedChainComplex& c, const F2UMatrix& M, std::size_t col) {
    bool have = false;
    Grading g;
    for (std::size_t r = 0; r < M.rows(); ++r) {
        const F2Poly& p = M.at(r, col);
        if (p.is_zero()) continue;
        if (!p.is_monomial())
            throw Error(Errc::GradingInconsistent, "inhomogeneous basis vector in Smith form");
        Grading h{c.gr[r].a2 - 2 * p.degree(), c.gr[r].m};
        if (have && !(h == g))
            throw Error(Errc::GradingInconsistent, "inhomogeneous basis vector in Smith form");
        g = h;
        have = true;
    }
    return g;
}

} // namespace

GradedFUModule f2u_module_homology(const GradedChainComplex& c) {
    if (c.ring != GradedChainComplex::Ring::F2U)
        throw Error(Errc::Mismatch, "f2u_module_homology needs an F2[U] complex");
    c.check();
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < c.size(); ++j) {
            const F2Poly& p = c.du.at(i, j);
            if (p.is_zero()) continue;
            if (!p.is_monomial() || c.gr[i].a2 - 2 * p.degree() != c.gr[j].a2 ||
                c.gr[i].m != (c.gr[j].m ^ 1))
                throw Error(Errc::GradingInconsistent,
                            "differential " + c.names[j] + " -> " + c.names[i] + " not homogeneous");
        }
    GradedFUModule out;
    if (c.size() == 0) return out;
    SmithForm s = snf_over_f2u(c.du);
    const std::size_t r = s.factors.size();
    std::multiset<Grading> ker;
    for (std::size_t j = r; j < c.size(); ++j) ker.insert(vector_grading(c, s.Q, j));
    for (std::size_t i = 0; i < r; ++i) {
        Grading g = vector_grading(c, s.Pinv, i);
        auto it = ker.find(g);
        if (it == ker.end())
            throw Error(Errc::GradingInconsistent, "image generator outside kernel gradings");
        ker.erase(it);
        if (!s.factors[i].is_one()) out.parts[g].torsion.push_back(s.factors[i].degree());
    }
    for (const Grading& g : ker) out.parts[g].free += 1;
    for (auto& [g, p] : out.parts) std::sort(p.torsion.begin(), p.torsion.end());
    return out;
}

GradedChainComplex specialize_u0(const GradedChainComplex& c) {
    GradedChainComplex r;
    r.ring = GradedChainComplex::Ring::F2;
    r.names = c.names;
    r.gr = c.gr;
    r.d = c.du.evaluate(0).transpose();
    return r;
}

} // namespace borsut

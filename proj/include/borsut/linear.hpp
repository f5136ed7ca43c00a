#pragma once

// Exact linear algebra over F2 and F2[U].

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace borsut {

// Dense F2 vector packed into 64-bit words. Bits past size() stay zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        if (v) w_[i >> 6] |= (uint64_t(1) << (i & 63));
        else w_[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= (uint64_t(1) << (i & 63)); }
    BitVec& operator^=(const BitVec& o);
    BitVec operator^(const BitVec& o) const { BitVec r = *this; r ^= o; return r; }
    bool any() const;
    bool none() const { return !any(); }
    std::size_t count() const;
    // Index of the lowest set bit, or size() if none.
    std::size_t first() const;
    std::vector<std::size_t> ones() const;
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }
    bool operator<(const BitVec& o) const { return n_ != o.n_ ? n_ < o.n_ : w_ < o.w_; }
    void resize(std::size_t n);
    const std::vector<uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<uint64_t> w_;
};

// Incremental echelon basis with tags recording which inserted vectors each
// basis row is a combination of. Used for rank, membership and solving.
class Reducer {
public:
    Reducer(std::size_t dim, std::size_t ntags) : dim_(dim), ntags_(ntags) {}
    // Reduces v against the basis; returns true if v was independent (and adds it).
    bool insert(const BitVec& v, std::size_t tag);
    bool insert_tagged(const BitVec& v, const BitVec& tag);
    // Reduce v fully. The returned tag says which inserted vectors sum to v - residual.
    std::pair<BitVec, BitVec> reduce(const BitVec& v) const;
    bool contains(const BitVec& v) const { return reduce(v).first.none(); }
    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

private:
    std::size_t dim_, ntags_;
    std::vector<BitVec> rows_, tags_;
    std::vector<std::size_t> pivots_;
};

// Linear map F2^rows -> F2^cols in row convention: row i is the image of e_i.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), r_(rows, BitVec(cols)) {}

    std::size_t rows() const { return r_.size(); }
    std::size_t cols() const { return cols_; }
    bool get(std::size_t i, std::size_t j) const { return r_[i].get(j); }
    void set(std::size_t i, std::size_t j, bool v = true) { r_[i].set(j, v); }
    void flip(std::size_t i, std::size_t j) { r_[i].flip(j); }
    const BitVec& row(std::size_t i) const { return r_[i]; }
    BitVec& row(std::size_t i) { return r_[i]; }

    // this then other: (F2^rows -> F2^cols -> F2^other.cols)
    F2Matrix then(const F2Matrix& other) const;
    BitVec apply(const BitVec& v) const;
    F2Matrix transpose() const;
    std::size_t rank() const;
    bool is_zero() const;
    bool operator==(const F2Matrix& o) const { return cols_ == o.cols_ && r_ == o.r_; }
    // Basis of {v : apply(v) = 0}.
    std::vector<BitVec> kernel() const;
    // Basis of the image (span of rows).
    std::vector<BitVec> image() const;

private:
    std::size_t cols_ = 0;
    std::vector<BitVec> r_;
};

// Polynomial in U with F2 coefficients. Bit k is the coefficient of U^k.
class F2Poly {
public:
    F2Poly() = default;
    static F2Poly one() { return monomial(0); }
    static F2Poly monomial(int k);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    int degree() const; // -1 for zero
    int low_degree() const; // -1 for zero
    bool coeff(int k) const;
    bool is_monomial() const;
    F2Poly operator+(const F2Poly& o) const;
    F2Poly& operator+=(const F2Poly& o) { return *this = *this + o; }
    F2Poly operator*(const F2Poly& o) const;
    // Euclidean division; divisor must be nonzero.
    std::pair<F2Poly, F2Poly> divmod(const F2Poly& d) const;
    bool divides(const F2Poly& o) const { return o.divmod(*this).second.is_zero(); }
    bool operator==(const F2Poly& o) const { return c_ == o.c_; }
    bool operator!=(const F2Poly& o) const { return c_ != o.c_; }
    std::string str() const;

private:
    void trim();
    std::vector<uint64_t> c_;
};

// Matrix over F2[U] in the usual column convention: entry (i, j) is the
// coefficient of basis vector i in the image of basis vector j.
class F2UMatrix {
public:
    F2UMatrix() = default;
    F2UMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}
    static F2UMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const F2Poly& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    F2Poly& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    F2UMatrix operator*(const F2UMatrix& o) const;
    bool operator==(const F2UMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool is_zero() const;
    // Substitute U = value (0 or 1).
    F2Matrix evaluate(int value) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F2Poly> e_;
};

struct SmithForm {
    F2UMatrix P, D, Q;      // P * A * Q == D
    F2UMatrix Pinv;         // P^{-1}
    std::vector<F2Poly> factors; // nonzero diagonal entries, d1 | d2 | ...
};

// Euclidean reduction on the lowest-degree pivot, ties by smallest (row, col).
SmithForm snf_over_f2u(const F2UMatrix& m);

// Alexander gradings are stored doubled; Maslov is taken mod 2.
struct Grading {
    int a2 = 0;
    int m = 0;
    bool operator<(const Grading& o) const { return a2 != o.a2 ? a2 < o.a2 : m < o.m; }
    bool operator==(const Grading& o) const { return a2 == o.a2 && m == o.m; }
};

std::string half_str(int a2);

// A finite complex over F2 (d in row convention, d[i] = d(g_i)) or over F2[U]
// (column convention, entry (i, j) = coefficient of g_i in d(g_j)).
struct GradedChainComplex {
    enum class Ring { F2, F2U };
    Ring ring = Ring::F2;
    // Ungraded complexes put every generator in Grading{} and skip homogeneity checks.
    bool graded = true;
    std::vector<std::string> names;
    std::vector<Grading> gr;
    F2Matrix d;   // used when ring == F2
    F2UMatrix du; // used when ring == F2U

    std::size_t size() const { return names.size(); }
    // Throws NotAComplex if d^2 != 0.
    void check() const;
};

// Per-grading homology ranks of an F2 complex.
std::map<Grading, int> f2_homology(const GradedChainComplex& c);

// Homology with explicit representatives, for computing induced maps.
class HomologyModel {
public:
    explicit HomologyModel(const GradedChainComplex& c);
    std::size_t rank() const { return reps_.size(); }
    const std::vector<BitVec>& reps() const { return reps_; }
    const std::vector<Grading>& rep_gradings() const { return rep_gr_; }
    bool is_cycle(const BitVec& v) const;
    // Coordinates of the class of a cycle in terms of reps().
    BitVec coords(const BitVec& cycle) const;

private:
    const GradedChainComplex* c_;
    std::vector<BitVec> reps_;
    std::vector<Grading> rep_gr_;
    Reducer red_{0, 0};
};

// Matrix (row convention) of the map induced on homology by a chain map f
// (row convention, src.size() x tgt.size()). Throws NotAMorphism if f is not
// a chain map.
F2Matrix induced_map(const GradedChainComplex& src, const GradedChainComplex& tgt,
                     const F2Matrix& f, const HomologyModel& hs, const HomologyModel& ht);

bool is_chain_map(const GradedChainComplex& src, const GradedChainComplex& tgt,
                  const F2Matrix& f);

// Homology of a graded free F2[U]-complex, split by the grading of the
// generator of each summand.
struct GradedFUModule {
    struct Part {
        int free = 0;
        std::vector<int> torsion; // orders k, meaning F2[U]/U^k; sorted ascending
        bool operator==(const Part& o) const { return free == o.free && torsion == o.torsion; }
    };
    std::map<Grading, Part> parts;

    bool empty() const;
    int total_free() const;
    // F2-dimension of the degree-a2 piece (summing over Maslov labels).
    int dim_at(int a2) const;
    // Top Alexander grading (doubled) of a free summand, if any.
    bool top_free(int& a2) const;
    bool operator==(const GradedFUModule& o) const { return parts == o.parts; }
    std::string str() const;
};

GradedFUModule f2u_module_homology(const GradedChainComplex& c);

// Set U = 0 in an F2[U] complex.
GradedChainComplex specialize_u0(const GradedChainComplex& c);

} // namespace borsut

#pragma once

// Arc diagrams and their strands algebras A(Z, i).

#include "borsut/linear.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace borsut {

// Points are numbered 0..2k-1 arc by arc, bottom to top; printed as a1..a2k.
struct ArcDiagram {
    std::string name;
    std::vector<int> arc_sizes;
    std::vector<int> matching; // matched-pair label (1..k) of each point

    int k() const { return int(matching.size()) / 2; }
    int points() const { return int(matching.size()); }
    int arc_of(int p) const;
    // Partner of p under the matching.
    int partner(int p) const;
};

// Validates: matching exactly 2-to-1 onto 1..k (BadMatching), surgery yields
// no closed component (ClosedComponent).
ArcDiagram make_arc_diagram(const std::string& name, std::vector<int> arc_sizes,
                            std::vector<int> matching);

// A Reeb chord from point `from` up to point `to` on one arc.
struct Chord {
    int from = 0, to = 0;
    bool operator<(const Chord& o) const { return std::tie(from, to) < std::tie(o.from, o.to); }
    bool operator==(const Chord& o) const { return from == o.from && to == o.to; }
};

// Strands (s, phi(s)), sorted by source; horizontal strands have s == phi(s).
struct StrandDiagram {
    std::vector<std::pair<int, int>> strands;

    std::vector<int> sources() const;
    std::vector<int> targets() const; // sorted
    int inv(const ArcDiagram& z) const;
    bool operator<(const StrandDiagram& o) const { return strands < o.strands; }
    bool operator==(const StrandDiagram& o) const { return strands == o.strands; }
};

// Product in the ambient strands algebra; nullopt means zero.
std::optional<StrandDiagram> strand_product(const ArcDiagram& z, const StrandDiagram& a,
                                            const StrandDiagram& b);
// Resolutions of single crossings that drop inv by exactly one.
std::vector<StrandDiagram> strand_differential(const ArcDiagram& z, const StrandDiagram& a);

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Basis elements are indices; elements are F2 bit vectors over the basis.
class Algebra {
public:
    static AlgebraPtr build(const ArcDiagram& z, int summand);

    const ArcDiagram& diagram() const { return z_; }
    const std::string& id() const { return z_.name; }
    int summand() const { return summand_; }
    // Display tag such as "WT.1".
    std::string tag() const;
    std::size_t size() const { return basis_.size(); }

    const std::string& name(int b) const { return basis_[b].name; }
    int lidem(int b) const { return basis_[b].left; }
    int ridem(int b) const { return basis_[b].right; }
    bool is_idempotent(int b) const { return basis_[b].idem; }
    const std::vector<StrandDiagram>& expansion(int b) const { return basis_[b].diagrams; }

    // Idempotents: subsets of {1..k} of size summand(), in lexicographic order.
    std::size_t idem_count() const { return idems_.size(); }
    const std::vector<int>& idem_set(int e) const { return idems_[e]; }
    int idem_basis(int e) const { return idem_basis_[e]; }
    std::string idem_name(int e) const;
    // Index of the idempotent for the set s (BadSubset if not valid here).
    int idem_index(const std::vector<int>& s) const;

    BitVec zero() const { return BitVec(size()); }
    BitVec basis_vec(int b) const;
    BitVec unit() const;
    const BitVec& mul(int a, int b) const { return mult_[a * size() + b]; }
    const BitVec& d(int a) const { return diff_[a]; }
    BitVec mul(const BitVec& x, const BitVec& y) const;
    BitVec d(const BitVec& x) const;

    // I_s as an algebra element.
    BitVec idempotent_for(const std::vector<int>& s) const;
    // a_i(rho): the sum over all completions. Throws Incompatible.
    BitVec chord_element(const std::vector<Chord>& chords) const;

    // Elementary chords numbered 1.. across arcs; names like "12" cover 1 and 2.
    std::vector<Chord> elementary_chords() const;
    std::string chord_label(const Chord& c) const;
    std::optional<Chord> chord_from_label(const std::string& digits) const;

    std::optional<BitVec> lookup(const std::string& name) const;
    BitVec parse(const std::string& text) const; // ParseError
    std::string str(const BitVec& x) const;

private:
    struct Basis {
        std::string name;
        int left = 0, right = 0;
        bool idem = false;
        std::vector<StrandDiagram> diagrams;
    };
    ArcDiagram z_;
    int summand_ = 0;
    std::vector<std::vector<int>> idems_;
    std::vector<int> idem_basis_;
    std::vector<Basis> basis_;
    std::vector<BitVec> mult_;
    std::vector<BitVec> diff_;
    std::map<std::string, int> names_;
    std::map<StrandDiagram, int> diag_index_;
    std::vector<BitVec> diag_to_basis_rows_;
    Reducer basis_red_{0, 0};

    std::vector<StrandDiagram> a_rho_s(const std::vector<Chord>& rho, const std::vector<int>& s) const;
    BitVec express(const std::vector<StrandDiagram>& diagrams) const;
};

// The three algebras used throughout, plus the ground field F2 (no arcs).
ArcDiagram wd_diagram();
ArcDiagram wa_diagram();
ArcDiagram wt_diagram();
AlgebraPtr named_algebra(const std::string& id, int summand);
AlgebraPtr ground_field();

struct Report {
    bool ok = true;
    std::size_t checked = 0;
    std::string failure; // first counterexample, if any
    std::string note;    // extra context, e.g. the arity bound used

    void fail(const std::string& why) {
        if (ok) failure = why;
        ok = false;
    }
};

// d^2 = 0, Leibniz, associativity, unit and idempotent orthogonality, on
// every summand 0..k of the algebra family of `z`.
Report verify_dg_algebra(const ArcDiagram& z);
Report verify_dg_summand(const Algebra& a);

// Element text with optional qualifier: "WT:rho_23", "WA.2:rho_2*rho_1".
// Returns the algebra the qualifier names (default_alg if no qualifier).
std::pair<AlgebraPtr, BitVec> parse_qualified(const std::string& text, AlgebraPtr default_alg);

} // namespace borsut

#pragma once

// Type-D structures, A-infinity modules and DA bimodules share one
// representation: a left algebra (outputs), a right algebra (inputs), and a
// table (generator, right inputs) -> sum of (left basis element, generator).
// A Type-D structure has the ground field on the right, an A-infinity module
// has it on the left, and a chain complex has it on both sides.

#include "borsut/linear.hpp"
#include "borsut/strands.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <vector>

namespace borsut {

// (left algebra basis index, generator index). A Terms set is an F2 sum.
using Term = std::pair<int, int>;
using Terms = std::set<Term>;

inline void toggle(Terms& t, const Term& x) {
    if (!t.erase(x)) t.insert(x);
}
inline void toggle_all(Terms& t, const Terms& u) {
    for (const auto& x : u) toggle(t, x);
}

struct Gen {
    std::string name;
    int left = 0;  // idempotent index in the left algebra
    int right = 0; // idempotent index in the right algebra
};

enum class Kind { TypeD, AInf, DA, Complex };
const char* kind_name(Kind k);

class Bimodule;
using ModPtr = std::shared_ptr<const Bimodule>;

class Bimodule {
public:
    Bimodule(std::string name, AlgebraPtr left, AlgebraPtr right);
    static Bimodule type_d(std::string name, AlgebraPtr alg);
    static Bimodule ainf(std::string name, AlgebraPtr alg);
    static Bimodule complex(std::string name);

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    const AlgebraPtr& left() const { return left_; }
    const AlgebraPtr& right() const { return right_; }
    Kind kind() const;

    std::size_t size() const { return gens_.size(); }
    const Gen& gen(int i) const { return gens_[i]; }
    const std::vector<Gen>& gens() const { return gens_; }
    int add_gen(const std::string& name, int left_idem, int right_idem);
    // Index by name; throws ParseError if absent.
    int index(const std::string& name) const;
    std::optional<int> find(const std::string& name) const;

    // Toggles the term a (x) y in m(x, inputs).
    void add_op(int x, const std::vector<int>& inputs, int a, int y);
    void add_op(int x, const std::vector<int>& inputs, const BitVec& a, int y);
    // Table lookup with the unit rules applied: m2(x, I) = I (x) x when I is
    // the right idempotent of x; any other operation with an idempotent input is 0.
    Terms op(int x, const std::vector<int>& inputs) const;
    Terms delta(int x) const { return op(x, {}); }
    const std::map<std::vector<int>, Terms>& table(int x) const { return table_[x]; }
    std::size_t entry_count() const;
    // 1 + longest input sequence in the table.
    std::size_t max_arity() const;

    bool graded() const { return !gr_.empty(); }
    const std::vector<Grading>& gradings() const { return gr_; }
    void set_gradings(std::vector<Grading> g);

    // For box products: the factor generators of each generator.
    const std::vector<std::pair<int, int>>& factors() const { return factors_; }
    void set_factors(std::vector<std::pair<int, int>> f) { factors_ = std::move(f); }

    std::string term_str(const Term& t) const;
    std::string terms_str(const Terms& t) const;
    std::string inputs_str(const std::vector<int>& inputs) const;
    // One line per table entry, deterministic order.
    std::string dump() const;

private:
    std::string name_;
    AlgebraPtr left_, right_;
    std::vector<Gen> gens_;
    std::vector<std::map<std::vector<int>, Terms>> table_;
    std::vector<Grading> gr_;
    std::vector<std::pair<int, int>> factors_;
};

// Structure equation over every candidate input sequence. The candidates are
// complete: any nonzero term of a relation needs a table key, a concatenation
// of two keys, or a key with one entry replaced by a d-preimage or a
// product-splitting. Also checks idempotent compatibility and that the table
// stores no idempotent inputs (strict unitality).
Report verify_structure(const Bimodule& m);
Report verify_type_d(const Bimodule& m);
Report verify_ainf_module(const Bimodule& m);
Report verify_da_bimodule(const Bimodule& m);

// Morphism of Type-D structures (or chain map, over the ground field).
struct Morphism {
    std::string name;
    ModPtr src, tgt;
    std::vector<Terms> map; // per source generator

    Morphism() = default;
    Morphism(std::string name, ModPtr src, ModPtr tgt);
    void add(int x, int a, int y) { toggle(map[x], {a, y}); }
    void add(int x, const BitVec& a, int y);
    bool is_zero() const;
    bool operator==(const Morphism& o) const { return map == o.map; }
    std::string str() const;
};

Morphism identity_morphism(ModPtr m);
Morphism zero_morphism(ModPtr src, ModPtr tgt);
Morphism operator+(const Morphism& a, const Morphism& b);

// mu2(Id (x) phi) delta + mu2(Id (x) delta') phi + d(phi) on each generator.
Terms morphism_defect(const Morphism& f, int x);
Report is_type_d_morphism(const Morphism& f);
// psi after phi. Mismatch if phi.tgt != psi.src.
Morphism compose(const Morphism& phi, const Morphism& psi);

// Exact F2 solve for h with D(h) = phi + psi; nullopt proves none exists.
std::optional<Morphism> find_homotopy(const Morphism& phi, const Morphism& psi);
// Dimension of the homology of the morphism complex Mor(src, tgt).
std::size_t morphism_homology_dim(ModPtr src, ModPtr tgt);
// Every cycle of the morphism complex, as a basis of representatives of its
// homology (used to prove uniqueness of nontrivial maps).
std::vector<Morphism> morphism_homology_basis(ModPtr src, ModPtr tgt);

// Generators: target then source. NotAMorphism if f fails its check.
ModPtr mapping_cone(const Morphism& f);

// m box n, for m a DA bimodule or A-infinity module whose right algebra is
// n's left algebra, and n a Type-D structure or DA bimodule.
ModPtr box(const ModPtr& m, const ModPtr& n);
// Id_m box f, a morphism box(m, f.src) -> box(m, f.tgt). f must be a Type-D morphism.
Morphism box_map(const ModPtr& m, const Morphism& f);
Morphism box_map(const ModPtr& m, const Morphism& f, ModPtr src_box, ModPtr tgt_box);

// A generator bijection carrying labels and table of a onto b, if any.
std::optional<std::vector<int>> find_isomorphism(const Bimodule& a, const Bimodule& b);
// Table equality under a given bijection.
bool same_under(const Bimodule& a, const Bimodule& b, const std::vector<int>& bij);

enum class Boundedness { Bounded, Unbounded, Unknown };
const char* boundedness_name(Boundedness b);
Boundedness boundedness_status(const Bimodule& m);

// Complex-kind Bimodule to an F2 complex; graded iff the module carries gradings.
GradedChainComplex to_complex(const Bimodule& c);
// Matrix (row convention) of a chain map between Complex-kind modules.
F2Matrix to_matrix(const Morphism& f);

// Type-D structure whose delta carries powers of U: (a, y, k) is a (x) U^k y.
// Only finitely many generators over F2[U] (K^-).
struct UTypeD {
    struct UTerm {
        int a, y, upow;
        bool operator<(const UTerm& o) const {
            return std::tie(a, y, upow) < std::tie(o.a, o.y, o.upow);
        }
    };
    std::string name;
    AlgebraPtr alg;
    std::vector<Gen> gens;
    std::vector<Grading> gr;
    std::vector<std::set<UTerm>> delta;
};

Report verify_u_type_d(const UTypeD& k);
// Delta of the undecorated module is never eventually zero if some U-term
// chain cycles; per U-degree it is always bounded.
Boundedness u_boundedness_undecorated(const UTypeD& k);
// m box k over F2[U]. m must be an A-infinity module over k.alg.
GradedChainComplex box_u(const Bimodule& m, const UTypeD& k);

} // namespace borsut

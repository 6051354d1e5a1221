#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "heis/exactla.hpp"
#include "heis/report.hpp"

namespace heis {

struct BasisMorphism {
    int src = 0;
    int tgt = 0;
    int degree = 0;
    std::string label;
};

// Finite based graded linear category. Morphism ids index a global basis;
// composition and differential are structure constants over that basis.
class LinCat {
public:
    explicit LinCat(std::string name = {}) : name_(std::move(name)) {}

    int add_object(std::string label);
    int add_morphism(int src, int tgt, int degree, std::string label);
    void set_identity(int object, int morphism);
    void set_identity(int object, SparseVec value);
    void set_differential(int morphism, SparseVec value);
    void set_composition(int g, int f, SparseVec value);  // g o f
    // Registers id o f = f and g o id = g for every basis morphism.
    void fill_identity_compositions();

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    std::size_t num_objects() const { return objects_.size(); }
    std::size_t num_morphisms() const { return morphisms_.size(); }
    const std::string& object_label(int a) const { return objects_.at(static_cast<std::size_t>(a)); }
    const BasisMorphism& morphism(int m) const { return morphisms_.at(static_cast<std::size_t>(m)); }
    int degree(int m) const { return morphism(m).degree; }
    int src(int m) const { return morphism(m).src; }
    int tgt(int m) const { return morphism(m).tgt; }
    // Identities are combinations in general (matrix categories); most
    // fixtures have a single identity basis morphism per object.
    const SparseVec& identity(int a) const { return identity_.at(static_cast<std::size_t>(a)); }
    int identity_basis(int a) const;  // throws InvalidCategory if not a single basis morphism
    bool is_identity(int m) const;
    const std::vector<int>& out_of(int a) const { return out_.at(static_cast<std::size_t>(a)); }
    const std::vector<int>& hom(int a, int b) const;  // basis of Hom(a, b)
    const std::vector<int>& into(int b) const { return into_.at(static_cast<std::size_t>(b)); }
    const SparseVec& d(int m) const { return differential_.at(static_cast<std::size_t>(m)); }
    SparseVec d(const SparseVec& x) const;
    // Throws CategoryMismatch unless src(g) == tgt(f).
    SparseVec compose(int g, int f) const;
    SparseVec compose(const SparseVec& g, const SparseVec& f) const;
    bool concentrated_in_degree_zero() const;
    int find_object(const std::string& label) const;  // -1 if absent
    int find_morphism(const std::string& label) const;

    // Invariant suite: d^2 = 0, Leibniz, associativity, identities, degrees.
    Report check() const;
    void validate() const;  // throws InvalidCategory with the first failure

private:
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<BasisMorphism> morphisms_;
    std::vector<SparseVec> identity_;
    std::vector<SparseVec> differential_;
    std::unordered_map<std::uint64_t, SparseVec> composition_;
    std::map<std::pair<int, int>, std::vector<int>> hom_;
    std::vector<std::vector<int>> into_;
    std::vector<std::vector<int>> out_;
};

using CatPtr = std::shared_ptr<const LinCat>;

// Degree-zero functor given on basis morphisms.
struct LinFunctor {
    CatPtr source;
    CatPtr target;
    std::vector<int> object_map;
    std::vector<SparseVec> morphism_map;

    int on_object(int a) const { return object_map.at(static_cast<std::size_t>(a)); }
    const SparseVec& on_morphism(int m) const { return morphism_map.at(static_cast<std::size_t>(m)); }
    SparseVec apply(const SparseVec& x) const;
    Report check() const;
    bool operator==(const LinFunctor& o) const;
};

using FunctorPtr = std::shared_ptr<const LinFunctor>;

FunctorPtr identity_functor(const CatPtr& c);
FunctorPtr compose_functors(const FunctorPtr& g, const FunctorPtr& f);  // g o f

// eta_a : F(a) -> G(a)
struct NatTransform {
    FunctorPtr from;
    FunctorPtr to;
    std::vector<SparseVec> component;
    Report check() const;
};

struct FiniteGroup {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table;  // table[g][h] = gh
    int identity = 0;
    std::vector<int> inverse;
    // Permutation realisation when the group is a permutation group:
    // perms[g][i] = g(i), 0-based.
    std::vector<std::vector<int>> perms;

    int size() const { return static_cast<int>(labels.size()); }
    int mul(int g, int h) const { return table.at(static_cast<std::size_t>(g)).at(static_cast<std::size_t>(h)); }
    int inv(int g) const { return inverse.at(static_cast<std::size_t>(g)); }
    int find_perm(const std::vector<int>& p) const;  // -1 if absent
    int find(const std::string& label) const;       // -1 if absent
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

std::vector<int> perm_compose(const std::vector<int>& s, const std::vector<int>& t);  // s o t
std::vector<int> perm_inverse(const std::vector<int>& s);
int perm_sign(const std::vector<int>& s);
std::string perm_label(const std::vector<int>& s);  // cycle notation, 1-based; "e" for identity
std::vector<int> long_cycle(int n);                  // i -> i+1 mod n

GroupPtr trivial_group();
GroupPtr symmetric_group(int n);
// Closure-free construction: perms must already form a group.
GroupPtr permutation_group(const std::vector<std::vector<int>>& perms);
// Young subgroup S_h x S_n inside S_{h+n}.
GroupPtr young_subgroup(int h, int n);
GroupPtr product_group(const GroupPtr& g, const GroupPtr& h);

struct GroupAction {
    GroupPtr group;
    CatPtr cat;
    std::vector<FunctorPtr> act;

    const LinFunctor& of(int g) const { return *act.at(static_cast<std::size_t>(g)); }
    Report check() const;
};

using ActionPtr = std::shared_ptr<const GroupAction>;

ActionPtr trivial_action(const CatPtr& c);
// Restrict an action to a subgroup given by the element ids of sub inside the group.
ActionPtr restrict_action(const ActionPtr& act, const GroupPtr& sub, const std::vector<int>& embedding);

struct TensorCat {
    CatPtr cat;
    std::vector<CatPtr> factors;
    std::vector<int> object_radix;
    std::vector<int> morphism_radix;

    std::vector<int> object_tuple(int a) const;
    std::vector<int> morphism_tuple(int m) const;
    int object_id(const std::vector<int>& t) const;
    int morphism_id(const std::vector<int>& t) const;
};

using TensorPtr = std::shared_ptr<const TensorCat>;

// Koszul convention: (f1 x .. x fn) o (g1 x .. x gn) = sign * (f1 g1) x .. x (fn gn)
// with sign = prod_{i<j} (-1)^{|f_j||g_i|}.
TensorPtr tensor_product(const std::vector<CatPtr>& factors);
CatPtr tensor_cat(const CatPtr& a, const CatPtr& b);
FunctorPtr tensor_functor(const TensorPtr& source, const TensorPtr& target,
                          const std::vector<FunctorPtr>& parts);

CatPtr opposite_cat(const CatPtr& a);

struct SemidirectCat {
    CatPtr cat;
    CatPtr base;
    ActionPtr action;

    // (alpha, g): g^{-1}.src(alpha) -> tgt(alpha)
    int morphism_id(int alpha, int g) const {
        return g * static_cast<int>(base->num_morphisms()) + alpha;
    }
    int alpha_of(int m) const { return m % static_cast<int>(base->num_morphisms()); }
    int group_of(int m) const { return m / static_cast<int>(base->num_morphisms()); }
    // Embeds a combination of base morphisms with a fixed group element.
    SparseVec with_group(const SparseVec& alpha, int g) const;
};

using SemidirectPtr = std::shared_ptr<const SemidirectCat>;

SemidirectPtr semidirect(const ActionPtr& act, const std::string& name = {});
// g(alpha, f) = (g(alpha), g f g^{-1})
FunctorPtr group_autoequiv(const SemidirectPtr& s, int g);
// Components (id, g): a -> g.a of the isomorphism from the identity to group_autoequiv(g).
NatTransform autoequiv_iso(const SemidirectPtr& s, int g);

// S_n acting on A^{(x)n} by sigma(a_1 x .. x a_n) = +- a_{sigma^-1(1)} x .. x a_{sigma^-1(n)}.
ActionPtr permutation_action(const TensorPtr& power, const GroupPtr& perm_group);

struct SymPower {
    int n = 0;
    CatPtr base;
    TensorPtr power;
    ActionPtr action;
    SemidirectPtr sym;
    const CatPtr& cat() const { return sym->cat; }
};

using SymPtr = std::shared_ptr<const SymPower>;

SymPtr sym_power(const CatPtr& a, int n);
// Same tensor power, with the action restricted to a permutation subgroup of S_n.
SemidirectPtr sym_subgroup(const SymPtr& s, const GroupPtr& sub);

// Inclusion Sym^h A (x) Sym^n A -> Sym^{h+n} A. Also returns the tensor category used as source.
struct SymInclusion {
    TensorPtr source;
    FunctorPtr functor;
};
SymInclusion sym_inclusion(const SymPtr& h, const SymPtr& n, const SymPtr& total);
// The same map landing in the subgroup category A^{(x)(h+n)} x| (S_h x S_n), which it identifies with the tensor product.
SymInclusion young_inclusion(const SymPtr& h, const SymPtr& n, const SymPtr& total,
                             const SemidirectPtr& young);

// Fixtures.
CatPtr point_cat();
CatPtr dual_numbers_cat(int eps_degree);
CatPtr two_points_cat();
// One object; basis id, x (degree -1), y (degree 0); dx = y, all products of x, y vanish.
CatPtr acyclic_pair_cat();

// Formal direct sums of objects of A with matrix morphisms. Every object of A
// also appears as a one-term sum.
struct Envelope {
    CatPtr cat;
    CatPtr base;
    std::vector<std::vector<int>> sums;  // per envelope object, the list of base objects
    // morphism id -> (row, column, base morphism): entry from summand column to summand row
    struct Entry {
        int row, col, base;
    };
    std::vector<Entry> entries;
    std::map<std::vector<int>, int> entry_index;  // (from, to, row, col, base) -> id
    int singleton(int base_object) const { return base_object; }
    int entry_id(int object_from, int object_to, int row, int col, int base_morphism) const;
};

using EnvelopePtr = std::shared_ptr<const Envelope>;

EnvelopePtr additive_envelope(const CatPtr& a, const std::vector<std::vector<int>>& extra_sums);

std::string to_string(const LinCat& c, const SparseVec& x);

}  // namespace heis

#pragma once

#include <map>
#include <memory>
#include <random>
#include <vector>

#include "heis/dgcat.hpp"
#include "heis/exactla.hpp"

namespace heis {

// A basic chain is a tuple (a_0, ..., a_m) of basis morphisms with
// a_i in Hom(x_{i+1}, x_i), a_m in Hom(x_0, x_m) and a_0 landing in F(x_0)
// when twisted by F. Cohomological degree = sum |a_i| - m.
using BasicChain = std::vector<int>;

class Chain {
public:
    Chain() = default;
    Chain(CatPtr cat, FunctorPtr twist = nullptr) : cat_(std::move(cat)), twist_(std::move(twist)) {}
    static Chain basic(CatPtr cat, const BasicChain& b, const Rational& c = 1, FunctorPtr twist = nullptr);

    const CatPtr& cat() const { return cat_; }
    const FunctorPtr& twist() const { return twist_; }
    const std::map<BasicChain, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t max_length() const;
    // Degree of the first term; DegreeMismatch if the terms disagree.
    int degree() const;

    void add(const BasicChain& b, const Rational& c);
    Chain& operator+=(const Chain& o);
    Chain& operator-=(const Chain& o);
    Chain operator+(const Chain& o) const;
    Chain operator-(const Chain& o) const;
    Chain operator*(const Rational& c) const;
    bool operator==(const Chain& o) const;

private:
    void check_compatible(const Chain& o) const;
    CatPtr cat_;
    FunctorPtr twist_;
    std::map<BasicChain, Rational> terms_;
};

int chain_degree(const LinCat& cat, const BasicChain& b);
bool is_composable(const LinCat& cat, const LinFunctor* twist, const BasicChain& b);
// Expands a tuple of combinations into a chain (multilinear).
void add_expanded(Chain& out, const std::vector<SparseVec>& factors, const Rational& c);

// Bar part plus internal differential.
Chain differential(const Chain& c);

struct Complex {
    CatPtr cat;
    FunctorPtr twist;
    int lmax = 0;
    std::map<int, std::vector<BasicChain>> chains;           // by degree
    std::map<int, std::map<BasicChain, int>> index;          // by degree
    std::map<int, SparseMat> d;                              // degree k -> k+1

    const std::vector<BasicChain>& at(int deg) const;
    const SparseMat& d_from(int deg) const;  // OutOfRange when absent
    SparseVec vectorize(const Chain& c, int deg) const;
    Chain chain_of(const SparseVec& v, int deg) const;
};

using ComplexPtr = std::shared_ptr<const Complex>;

// Cached per (category, Lmax, twist); safe to call concurrently.
ComplexPtr build_complex(const CatPtr& cat, int lmax, const FunctorPtr& twist = nullptr);
std::size_t hh_dim(const CatPtr& cat, int degree, int lmax, const FunctorPtr& twist = nullptr);

// Homology at one degree of a truncated complex, with exact class arithmetic.
class HomologySpace {
public:
    HomologySpace(const CatPtr& cat, int degree, int lmax, const FunctorPtr& twist = nullptr);

    int degree() const { return degree_; }
    const ComplexPtr& complex() const { return complex_; }
    bool is_closed(const Chain& c) const;
    bool is_boundary(const Chain& c) const;
    bool equal(const Chain& x, const Chain& y) const { return is_boundary(x - y); }
    std::size_t dim() const { return dim_; }
    // Closed basic chains of this degree chosen greedily (enumeration order),
    // independent modulo boundaries; covers the whole homology.
    const std::vector<Chain>& basis() const { return basis_; }
    void set_basis(std::vector<Chain> basis);  // Error unless it is a basis
    std::vector<Rational> coordinates(const Chain& c) const;
    SparseVec vectorize(const Chain& c) const;

private:
    ComplexPtr complex_;
    int degree_;
    std::size_t dim_ = 0;
    Echelon boundaries_;
    std::vector<SparseVec> boundary_rows_;
    std::vector<Chain> basis_;
    std::unique_ptr<QuotientCoordinates> coords_;
};

struct HHClass {
    Chain rep;
    int degree = 0;
    // NotClosed when d(rep) != 0.
    static HHClass of(const Chain& c);
};

std::string to_string(const Chain& c);

// Random basic chains for property tests.
BasicChain random_basic_chain(const LinCat& cat, const LinFunctor* twist, std::size_t length,
                              std::mt19937_64& rng);
Chain random_chain(const CatPtr& cat, const FunctorPtr& twist, std::size_t max_length,
                   std::size_t terms, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Chain maps

// a_0 x a_1 x .. x a_n -> +- a_0 x a_n x .. x a_1 in HC(A^op).
Chain op_chain(const Chain& c, const CatPtr& op);
Chain push_chain(const LinFunctor& f, const Chain& c, const FunctorPtr& target_twist = nullptr);
// (eta o H a_0) x H a_1 x ..; eta : H F -> G H.
Chain eta_chain(const LinFunctor& h, const NatTransform& eta, const Chain& c, const FunctorPtr& target_twist);
Chain kunneth(const Chain& x, const Chain& y, const TensorPtr& ab, const FunctorPtr& twist = nullptr);
// (g^-1 a_0, g^-1) x (a_1, e) x ..
Chain xi_chain(const SemidirectPtr& s, int g, const Chain& c);
// Sector -> chain in HC(A; action(sector)).
std::map<int, Chain> baranovsky_forward(const SemidirectPtr& s, const Chain& c);

struct Summand {
    int object;
    SparseVec iota;  // object -> whole
    SparseVec pi;    // whole -> object
};
using Decomposition = std::vector<std::vector<Summand>>;  // per object

Decomposition trivial_decomposition(const LinCat& cat);
// Each formal sum splits into its singleton terms; singletons stay whole.
Decomposition envelope_decomposition(const Envelope& env);
void validate_decomposition(const LinCat& cat, const Decomposition& dec);  // InvalidDecomposition
Chain redcts(const Chain& c, const Decomposition& dec);
// dh + hd = id - redcts
Chain redcts_homotopy(const Chain& c, const Decomposition& dec);

// Coset data for H inside G: reps[q] with reps[0] the identity.
struct Cosets {
    std::vector<int> reps;              // element ids of G
    std::vector<int> embedding;         // H element id -> G element id
    std::vector<std::vector<int>> act;  // act[g][q] = g.q
    std::vector<std::vector<int>> h;    // h[g][q] in H with g r_q = r_{g.q} h
};
Cosets make_cosets(const FiniteGroup& G, const FiniteGroup& H, const std::vector<int>& embedding,
                   const std::vector<int>& reps);  // BadCosets
std::vector<int> embed_subgroup(const FiniteGroup& H, const FiniteGroup& G);
std::vector<int> default_coset_reps(const FiniteGroup& G, const std::vector<int>& embedding);
Chain restrict_chain(const SemidirectPtr& big, const SemidirectPtr& small, const Cosets& cosets,
                     const Chain& c);

// Matrix chains: rows are morphisms of A^{(x)n}, twisted by the long cycle t.
Chain g_map(const Chain& c, const TensorPtr& power, const FunctorPtr& t);
Chain f_map(const Chain& mc, const TensorPtr& power);
Chain matrix_chain(const TensorPtr& power, const FunctorPtr& t, const std::vector<std::vector<int>>& rows,
                   const Rational& c = 1);

Chain psi_n(const Chain& c, const SymPtr& sym);

HHClass euler_class(const CatPtr& cat, int object);
Rational euler_pairing(const Chain& x, const Chain& y);

}  // namespace heis

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "heis/exactla.hpp"
#include "heis/report.hpp"

namespace heis {

class GradedSpace {
public:
    GradedSpace(std::vector<std::string> labels, std::vector<bool> odd,
                std::vector<std::vector<Rational>> chi);

    std::size_t rank() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_.at(i); }
    bool odd(std::size_t i) const { return odd_.at(i); }
    const Rational& chi(std::size_t i, std::size_t j) const { return chi_.at(i).at(j); }
    const std::vector<std::vector<Rational>>& chi_matrix() const { return chi_; }
    std::size_t index_of(const std::string& label) const;  // UnknownBasisIndex
    // <v, w> = v^T chi w
    Rational pairing(const std::vector<Rational>& v, const std::vector<Rational>& w) const;

private:
    std::vector<std::string> labels_;
    std::vector<bool> odd_;
    std::vector<std::vector<Rational>> chi_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

// a_{e_index}(level); level != 0, negative levels annihilate.
struct AGen {
    int index = 0;
    int level = 1;
    auto operator<=>(const AGen&) const = default;
};

// Creation block then annihilation block, each ascending by (|level|, index).
struct NormalMonomial {
    std::vector<AGen> gens;

    std::vector<AGen> creation() const;
    std::vector<AGen> annihilation() const;
    int degree() const;  // sum of |level|
    bool operator==(const NormalMonomial&) const = default;
    bool operator<(const NormalMonomial& o) const;
};

class HeisElement {
public:
    explicit HeisElement(SpacePtr space) : space_(std::move(space)) {}
    static HeisElement scalar(SpacePtr space, const Rational& c);
    static HeisElement gen(SpacePtr space, int index, int level);

    const SpacePtr& space() const { return space_; }
    const std::map<NormalMonomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const NormalMonomial& m) const;
    void add_term(const NormalMonomial& m, const Rational& c);

    HeisElement& operator+=(const HeisElement& o);
    HeisElement& operator-=(const HeisElement& o);
    HeisElement operator+(const HeisElement& o) const;
    HeisElement operator-(const HeisElement& o) const;
    HeisElement operator*(const Rational& c) const;
    bool operator==(const HeisElement& o) const;

private:
    void check_space(const HeisElement& o) const;
    SpacePtr space_;
    std::map<NormalMonomial, Rational> terms_;
};

// Rewriting order: by default the leftmost out-of-order adjacent pair is
// rewritten; with an rng a uniformly random one is chosen instead.
HeisElement normal_form(const SpacePtr& space, const std::vector<AGen>& word,
                        const Rational& coeff = 1, std::mt19937_64* rng = nullptr);
HeisElement mul(const HeisElement& x, const HeisElement& y);
HeisElement power(const HeisElement& x, int k);

HeisElement a_of_vector(const SpacePtr& space, const std::vector<Rational>& coords, int level);

enum class Side { P, Q };

HeisElement pq_elem(const SpacePtr& space, Side side, int index, int n);
// Basis decomposition formula.
HeisElement pq_of_vector(const SpacePtr& space, Side side, const std::vector<Rational>& coords,
                         int n);
// Coefficient of t^n in exp(sum_k a_v(+-k) t^k / k) for even v; a_v(+-n) for odd v.
HeisElement pq_by_exponentiation(const SpacePtr& space, Side side,
                                 const std::vector<Rational>& coords, int n);

Report check_pq_relations(const SpacePtr& space, int nmax);

enum class Presentation { A, PQ };
std::size_t filtered_count(const SpacePtr& space, Presentation pres, int n);
// Rank of the PQ monomials of degree <= n once expanded in normal A-monomials.
std::size_t pq_monomial_rank(const SpacePtr& space, int n);

// Fock states are elements whose monomials have empty annihilation blocks.
using FockState = HeisElement;
FockState vacuum(const SpacePtr& space);
FockState fock_apply(const HeisElement& x, const FockState& s);
// Creation-only monomials of total degree exactly n.
std::vector<NormalMonomial> fock_basis(const SpacePtr& space, int n);

struct TwistResult {
    SpacePtr source;  // the original space with form chi
    SpacePtr twisted; // same basis with form S^T chi T
    std::vector<std::vector<Rational>> S, T;
    // Images of the twisted generators inside the original algebra.
    HeisElement image(Side side, int index, int n) const;
};

TwistResult twist_form(const SpacePtr& space, const std::vector<std::vector<Rational>>& S,
                       const std::vector<std::vector<Rational>>& T);
// Relations (1) and (3) with the twisted pairing, evaluated on the images.
Report check_twist(const TwistResult& tw, int nmax);

std::string to_string(const HeisElement& x);
std::string to_string(const GradedSpace& space, const NormalMonomial& m);

// Normal forms with chi kept symbolic, for display: coefficients are
// polynomials in the entries chi[i,j].
std::string normal_form_symbolic(const SpacePtr& space, const std::string& expression);
HeisElement parse_expression(const SpacePtr& space, const std::string& expression);

}  // namespace heis

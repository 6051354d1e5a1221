#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "heis/errors.hpp"

namespace heis {

// GMP keeps every value in lowest terms with a positive denominator.
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// Sorted by index, no zero values.
using SparseVec = std::vector<std::pair<int, Rational>>;

SparseVec sparse_from_map(const std::map<int, Rational>& m);
void sparse_axpy(SparseVec& y, const Rational& a, const SparseVec& x);  // y += a x
SparseVec sparse_scaled(const SparseVec& x, const Rational& a);
Rational sparse_get(const SparseVec& x, int index);

class SparseMat {
public:
    SparseMat() = default;
    SparseMat(std::size_t nrows, std::size_t ncols);

    std::size_t nrows() const { return rows_.size(); }
    std::size_t ncols() const { return ncols_; }

    void add(std::size_t r, std::size_t c, const Rational& v);
    void set_row(std::size_t r, SparseVec row);
    Rational at(std::size_t r, std::size_t c) const;
    const SparseVec& row(std::size_t r) const { return rows_.at(r); }

    SparseMat transpose() const;
    SparseMat operator*(const SparseMat& rhs) const;
    bool is_zero() const;
    std::size_t nnz() const;
    bool operator==(const SparseMat& rhs) const = default;

private:
    std::vector<SparseVec> rows_;
    std::size_t ncols_ = 0;
};

SparseMat identity_mat(std::size_t n);
SparseMat operator-(const SparseMat& a, const SparseMat& b);
SparseMat operator+(const SparseMat& a, const SparseMat& b);
SparseMat scaled(const SparseMat& a, const Rational& s);

std::size_t rank(const SparseMat& m);

// dim ker(d_out) - rank(d_in) for d_in: X -> Y, d_out: Y -> Z.
std::size_t homology_dim(const SparseMat& d_in, const SparseMat& d_out);

// Basis of the null space {x : M x = 0}.
std::vector<SparseVec> kernel_basis(const SparseMat& m);

// Incrementally built row echelon form. Every stored row has leading
// coefficient 1 at a column owned by no other row. A tag vector records which
// combination of inserted inputs the row represents.
class Echelon {
public:
    bool insert(const SparseVec& v, const SparseVec& tag = {});
    // Returns v - sum c_r row_r with no pivot columns left; *tag receives sum c_r tag_r.
    SparseVec reduce(const SparseVec& v, SparseVec* tag = nullptr) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    std::size_t rank() const { return rows_.size(); }

private:
    std::map<int, std::size_t> pivot_;
    std::vector<SparseVec> rows_;
    std::vector<SparseVec> tags_;
};

// Coordinates of x modulo span(relations) in terms of basis:
// x = sum_k lambda_k basis_k + (element of span(relations)).
class QuotientCoordinates {
public:
    QuotientCoordinates(const std::vector<SparseVec>& relations,
                        const std::vector<SparseVec>& basis);
    // Coordinates with respect to basis; throws Error if x is not in the span.
    std::vector<Rational> coordinates(const SparseVec& x) const;
    bool in_span(const SparseVec& x) const;
    bool basis_independent() const { return independent_; }
    std::size_t dim() const { return nbasis_; }

private:
    Echelon relations_;
    Echelon basis_;
    std::size_t nbasis_ = 0;
    bool independent_ = true;
};

}  // namespace heis

#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "heis/hochschild.hpp"
#include "heis/report.hpp"

namespace heis {

// The slices HH_0(Sym^n A), n = 0..nmax, each with a fixed class basis.
// Only degree 0 is materialised, so the base must be concentrated in degree 0.
class FockSpaceHH {
public:
    FockSpaceHH(CatPtr base, int nmax);

    const CatPtr& base() const { return base_; }
    int nmax() const { return nmax_; }
    const SymPtr& sym(int n) const;
    const HomologySpace& slice(int n) const;
    std::size_t dim(int n) const { return slice(n).dim(); }
    // Basis of HH_0(A) used to label the operators.
    const std::vector<Chain>& alpha_basis() const { return alpha_->basis(); }
    const HomologySpace& base_homology() const { return *alpha_; }

    Chain psi(const Chain& alpha, int n) const;
    // Columns are coordinates of the images of the slice-ho basis in slice ho+n.
    SparseMat creation(const Chain& alpha, int n, int ho) const;
    // From slice ho+n to slice ho.
    SparseMat annihilation(const Chain& alpha, int n, int ho) const;
    // Euler pairing Gram matrix of the slice basis: entry (i, j) = <b_i, b_j>.
    SparseMat gram(int n) const;
    // Coordinates of a chain of slice n as a column matrix.
    SparseMat column(const Chain& c, int n) const;

private:
    struct Split;
    const Split& split(int ho, int n) const;
    void check_range(int n, int ho) const;

    CatPtr base_;
    int nmax_;
    std::unique_ptr<HomologySpace> alpha_;
    std::vector<SymPtr> syms_;
    std::vector<std::unique_ptr<HomologySpace>> slices_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, std::shared_ptr<const Split>> splits_;
};

using FockPtr = std::shared_ptr<const FockSpaceHH>;

SparseMat creation_op(const FockSpaceHH& f, const HHClass& alpha, int n, int ho);
SparseMat annihilation_op(const FockSpaceHH& f, const HHClass& alpha, int n, int ho);

// Commutation of equal-sign operators and [A_a(-m), A_b(n)] = delta_{mn} m <a,b> id.
Report heisenberg_report(const CatPtr& a, int nmax);
// Slice dimensions against the Fock generating function, and creation words spanning each slice.
Report fock_identification(const CatPtr& a, int nmax);
// P_ho A(-n) = A(n)^T P_{ho+n}.
Report adjointness_report(const CatPtr& a, int nmax);

// Degree-n part of the Fock space on a d-dimensional even space:
// sum over partitions of prod_k dim Sym^{r_k}(Q^d).
Rational fock_dimension(std::size_t d, int n);

std::string to_string(const SparseMat& m);

}  // namespace heis

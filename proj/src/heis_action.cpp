#include "heis/heis_action.hpp"

#include <functional>
#include <optional>
#include <tuple>

#include "heis/combinatorics.hpp"

namespace heis {

// Restriction data for S_ho x S_n inside S_{ho+n}: the subgroup category, its
// cosets, and a degree-0 class basis made of Kunneth products b_i x c_j.
struct FockSpaceHH::Split {
    SemidirectPtr young;
    Cosets cosets;
    SymInclusion inclusion;
    std::unique_ptr<HomologySpace> space;
    std::vector<std::pair<std::size_t, std::size_t>> labels;  // basis k = (i, j)
};

FockSpaceHH::FockSpaceHH(CatPtr base, int nmax) : base_(std::move(base)), nmax_(nmax) {
    if (nmax < 0) throw OutOfRange("Nmax must be non-negative");
    if (!base_->concentrated_in_degree_zero())
        throw InvalidCategory("Fock slices are built from HH_0 only; the base must sit in degree 0");
    alpha_ = std::make_unique<HomologySpace>(base_, 0, 2);
    for (int n = 0; n <= nmax; ++n) {
        syms_.push_back(sym_power(base_, n));
        slices_.push_back(std::make_unique<HomologySpace>(syms_.back()->cat(), 0, 2));
    }
}

const SymPtr& FockSpaceHH::sym(int n) const {
    if (n < 0 || n > nmax_) throw OutOfRange("slice " + std::to_string(n) + " outside 0.." + std::to_string(nmax_));
    return syms_[static_cast<std::size_t>(n)];
}

const HomologySpace& FockSpaceHH::slice(int n) const {
    sym(n);
    return *slices_[static_cast<std::size_t>(n)];
}

void FockSpaceHH::check_range(int n, int ho) const {
    if (n < 1) throw OutOfRange("operator index must be at least 1");
    if (ho < 0 || ho + n > nmax_)
        throw OutOfRange("slices " + std::to_string(ho) + " and " + std::to_string(ho + n) + " must lie within Nmax " +
                         std::to_string(nmax_));
}

Chain FockSpaceHH::psi(const Chain& alpha, int n) const { return psi_n(alpha, sym(n)); }

SparseMat FockSpaceHH::column(const Chain& c, int n) const {
    const auto coords = slice(n).coordinates(c);
    SparseMat m(coords.size(), 1);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) m.set_row(i, SparseVec{{0, coords[i]}});
    return m;
}

namespace {

SparseMat from_columns(const std::vector<std::vector<Rational>>& cols, std::size_t rows) {
    SparseMat m(rows, cols.size());
    for (std::size_t i = 0; i < rows; ++i) {
        SparseVec r;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (cols[j][i] != 0) r.emplace_back(static_cast<int>(j), cols[j][i]);
        m.set_row(i, r);
    }
    return m;
}

}  // namespace

SparseMat FockSpaceHH::creation(const Chain& alpha, int n, int ho) const {
    check_range(n, ho);
    const Chain p = psi(alpha, n);
    const auto inc = sym_inclusion(sym(ho), sym(n), sym(ho + n));
    std::vector<std::vector<Rational>> cols;
    for (const Chain& x : slice(ho).basis()) {
        const Chain img = push_chain(*inc.functor, kunneth(x, p, inc.source));
        cols.push_back(slice(ho + n).coordinates(img));
    }
    return from_columns(cols, dim(ho + n));
}

const FockSpaceHH::Split& FockSpaceHH::split(int ho, int n) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = splits_.find({ho, n});
        if (it != splits_.end()) return *it->second;
    }
    auto s = std::make_shared<Split>();
    const SymPtr& total = sym(ho + n);
    GroupPtr young = young_subgroup(ho, n);
    s->young = sym_subgroup(total, young);
    const FiniteGroup& G = *total->action->group;
    const auto emb = embed_subgroup(*young, G);
    s->cosets = make_cosets(G, *young, emb, default_coset_reps(G, emb));
    s->inclusion = young_inclusion(sym(ho), sym(n), total, s->young);
    s->space = std::make_unique<HomologySpace>(s->young->cat, 0, 2);
    std::vector<Chain> basis;
    for (std::size_t i = 0; i < dim(ho); ++i)
        for (std::size_t j = 0; j < dim(n); ++j) {
            basis.push_back(push_chain(*s->inclusion.functor,
                                       kunneth(slice(ho).basis()[i], slice(n).basis()[j], s->inclusion.source)));
            s->labels.emplace_back(i, j);
        }
    s->space->set_basis(std::move(basis));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = splits_.emplace(std::make_pair(ho, n), s);
    return *it->second;
}

SparseMat FockSpaceHH::annihilation(const Chain& alpha, int n, int ho) const {
    check_range(n, ho);
    const Split& s = split(ho, n);
    const Chain p = psi(alpha, n);
    std::vector<Rational> pairing;
    for (const Chain& c : slice(n).basis()) pairing.push_back(euler_pairing(p, c));
    std::vector<std::vector<Rational>> cols;
    for (const Chain& x : slice(ho + n).basis()) {
        const Chain r = restrict_chain(sym(ho + n)->sym, s.young, s.cosets, x);
        const auto coords = s.space->coordinates(r);
        std::vector<Rational> col(dim(ho), 0);
        for (std::size_t k = 0; k < coords.size(); ++k)
            col[s.labels[k].first] += coords[k] * pairing[s.labels[k].second];
        cols.push_back(col);
    }
    return from_columns(cols, dim(ho));
}

SparseMat FockSpaceHH::gram(int n) const {
    const auto& b = slice(n).basis();
    SparseMat g(b.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        SparseVec row;
        for (std::size_t j = 0; j < b.size(); ++j) {
            Rational v = euler_pairing(b[i], b[j]);
            if (v != 0) row.emplace_back(static_cast<int>(j), v);
        }
        g.set_row(i, row);
    }
    return g;
}

namespace {

const Chain& checked_alpha(const FockSpaceHH& f, const HHClass& alpha) {
    if (alpha.degree != 0) throw DegreeMismatch("operators are indexed by degree-0 classes");
    if (alpha.rep.cat() != f.base()) throw CategoryMismatch("class over another category");
    return alpha.rep;
}

}  // namespace

SparseMat creation_op(const FockSpaceHH& f, const HHClass& alpha, int n, int ho) {
    return f.creation(checked_alpha(f, alpha), n, ho);
}

SparseMat annihilation_op(const FockSpaceHH& f, const HHClass& alpha, int n, int ho) {
    return f.annihilation(checked_alpha(f, alpha), n, ho);
}

std::string to_string(const SparseMat& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.nrows(); ++i) {
        s += i ? "; " : "";
        for (std::size_t j = 0; j < m.ncols(); ++j) s += (j ? " " : "") + to_string(m.at(i, j));
    }
    return s + "]";
}

namespace {

// Operator on slices: A(k) for k > 0 raises by k, A(-k) lowers by k; zero outside range.
struct Ops {
    const FockSpaceHH& f;
    std::map<std::tuple<std::size_t, int, int>, SparseMat> memo;

    // Matrix of A_alpha(k) on slice `from`; nullopt when the target slice is out of range.
    std::optional<SparseMat> op(std::size_t alpha, int k, int from) {
        const int to = from + k;
        if (to < 0) return std::nullopt;
        if (to > f.nmax()) return std::nullopt;
        auto key = std::make_tuple(alpha, k, from);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const Chain& a = f.alpha_basis()[alpha];
        SparseMat m = k > 0 ? f.creation(a, k, from) : f.annihilation(a, -k, to);
        memo.emplace(key, m);
        return m;
    }

    // A(k2) A(k1) on slice `from`, zero matrix when an intermediate slice falls below 0.
    std::optional<SparseMat> product(std::size_t a1, int k1, std::size_t a2, int k2, int from) {
        const int mid = from + k1, to = mid + k2;
        if (to < 0 || to > f.nmax() || mid > f.nmax()) return std::nullopt;
        if (mid < 0) return SparseMat(f.dim(to), f.dim(from));
        auto first = op(a1, k1, from);
        auto second = op(a2, k2, mid);
        return *second * *first;
    }
};

std::string op_label(const char* name, std::size_t a, int k) {
    return std::string(name) + std::to_string(a) + "(" + std::to_string(k) + ")";
}

}  // namespace

Report heisenberg_report(const CatPtr& a, int nmax) {
    Report rep;
    FockSpaceHH f(a, nmax);
    Ops ops{f, {}};
    const std::size_t na = f.alpha_basis().size();
    for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < na; ++y) {
            const Rational chi = euler_pairing(f.alpha_basis()[x], f.alpha_basis()[y]);
            for (int m = 1; m <= nmax; ++m)
                for (int n = 1; n <= nmax; ++n)
                    for (int ho = 0; ho <= nmax; ++ho) {
                        const std::string where = ",slice=" + std::to_string(ho) + "]";
                        // same-sign commutation, creation and annihilation
                        for (int sgn : {1, -1}) {
                            auto lhs = ops.product(y, sgn * n, x, sgn * m, ho);
                            auto rhs = ops.product(x, sgn * m, y, sgn * n, ho);
                            if (!lhs || !rhs) continue;
                            const SparseMat res = *lhs - *rhs;
                            rep.add("commute[" + op_label("A", x, sgn * m) + "," + op_label("A", y, sgn * n) + where,
                                    res.is_zero(), "residual=" + to_string(res));
                        }
                        // [A_x(-m), A_y(n)] = delta_{mn} m <x,y> id
                        auto lower_first = ops.product(x, -m, y, n, ho);  // A_y(n) A_x(-m)
                        auto raise_first = ops.product(y, n, x, -m, ho);  // A_x(-m) A_y(n)
                        if (!lower_first || !raise_first) continue;
                        SparseMat expect(f.dim(ho + n - m), f.dim(ho));
                        if (m == n) expect = scaled(identity_mat(f.dim(ho)), chi * m);
                        const SparseMat comm = *raise_first - *lower_first;
                        rep.add("heisenberg[" + op_label("A", x, -m) + "," + op_label("A", y, n) + where,
                                comm == expect, "lhs=" + to_string(comm) + " rhs=" + to_string(expect));
                    }
        }
    return rep;
}

Rational fock_dimension(std::size_t d, int n) {
    Rational total = 0;
    for (const Partition& p : partitions_of(n)) {
        Rational term = 1;
        for (int r : p.multiplicities()) term *= binom(Rational(static_cast<long>(d) + r - 1), r);
        total += term;
    }
    return total;
}

namespace {

// All compositions of n (ordered, positive parts).
void compositions(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = 1; k <= n; ++k) {
        cur.push_back(k);
        compositions(n - k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Report fock_identification(const CatPtr& a, int nmax) {
    Report rep;
    FockSpaceHH f(a, nmax);
    const std::size_t d = f.alpha_basis().size();
    Ops ops{f, {}};
    for (int n = 0; n <= nmax; ++n) {
        const Rational expect = fock_dimension(d, n);
        rep.add("fock-dim[n=" + std::to_string(n) + "]", Rational(static_cast<long>(f.dim(n))) == expect,
                "HH0=" + std::to_string(f.dim(n)) + " fock=" + to_string(expect));
        // words A_{a_k}(c_k) .. A_{a_1}(c_1) applied to the vacuum
        std::vector<std::vector<int>> comps;
        std::vector<int> cur;
        compositions(n, cur, comps);
        std::vector<SparseVec> images;
        for (const auto& c : comps) {
            std::vector<std::size_t> labels(c.size(), 0);
            std::function<void(std::size_t)> rec = [&](std::size_t k) {
                if (k < c.size()) {
                    for (std::size_t x = 0; x < d; ++x) {
                        labels[k] = x;
                        rec(k + 1);
                    }
                    return;
                }
                SparseMat v = identity_mat(f.dim(0));
                int at = 0;
                for (std::size_t i = 0; i < c.size(); ++i) {
                    v = *ops.op(labels[i], c[i], at) * v;
                    at += c[i];
                }
                images.push_back(v.transpose().row(0));
            };
            rec(0);
        }
        SparseMat span(images.size(), f.dim(n));
        for (std::size_t i = 0; i < images.size(); ++i) span.set_row(i, images[i]);
        const std::size_t r = rank(span);
        rep.add("fock-span[n=" + std::to_string(n) + "]", r == f.dim(n),
                "rank=" + std::to_string(r) + " dim=" + std::to_string(f.dim(n)));
    }
    return rep;
}

Report adjointness_report(const CatPtr& a, int nmax) {
    Report rep;
    FockSpaceHH f(a, nmax);
    for (std::size_t x = 0; x < f.alpha_basis().size(); ++x)
        for (int n = 1; n <= nmax; ++n)
            for (int ho = 0; ho + n <= nmax; ++ho) {
                const Chain& al = f.alpha_basis()[x];
                const SparseMat lhs = f.gram(ho) * f.annihilation(al, n, ho);
                const SparseMat rhs = f.creation(al, n, ho).transpose() * f.gram(ho + n);
                rep.add("adjoint[" + op_label("A", x, n) + ",slice=" + std::to_string(ho) + "]", lhs == rhs,
                        "lhs=" + to_string(lhs) + " rhs=" + to_string(rhs));
            }
    return rep;
}

}  // namespace heis

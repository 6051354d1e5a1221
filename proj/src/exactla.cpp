#include "heis/exactla.hpp"

#include <algorithm>
#include <numeric>

namespace heis {

Rational parse_rational(std::string_view text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s.push_back(c);
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("bad rational literal '" + std::string(text) + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

SparseVec sparse_from_map(const std::map<int, Rational>& m) {
    SparseVec out;
    out.reserve(m.size());
    for (const auto& [k, v] : m)
        if (v != 0) out.emplace_back(k, v);
    return out;
}

void sparse_axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
    if (a == 0 || x.empty()) return;
    SparseVec out;
    out.reserve(y.size() + x.size());
    auto i = y.begin();
    auto j = x.begin();
    while (i != y.end() || j != x.end()) {
        if (j == x.end() || (i != y.end() && i->first < j->first)) {
            out.push_back(std::move(*i++));
        } else if (i == y.end() || j->first < i->first) {
            out.emplace_back(j->first, a * j->second);
            ++j;
        } else {
            Rational v = i->second + a * j->second;
            if (v != 0) out.emplace_back(i->first, std::move(v));
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

SparseVec sparse_scaled(const SparseVec& x, const Rational& a) {
    SparseVec out;
    if (a == 0) return out;
    out.reserve(x.size());
    for (const auto& [k, v] : x) out.emplace_back(k, a * v);
    return out;
}

Rational sparse_get(const SparseVec& x, int index) {
    auto it = std::lower_bound(x.begin(), x.end(), index,
                               [](const auto& e, int k) { return e.first < k; });
    if (it != x.end() && it->first == index) return it->second;
    return 0;
}

SparseMat::SparseMat(std::size_t nrows, std::size_t ncols) : rows_(nrows), ncols_(ncols) {}

void SparseMat::add(std::size_t r, std::size_t c, const Rational& v) {
    if (r >= rows_.size() || c >= ncols_) throw ShapeMismatch("entry index out of range");
    sparse_axpy(rows_[r], 1, SparseVec{{static_cast<int>(c), v}});
}

void SparseMat::set_row(std::size_t r, SparseVec row) {
    if (r >= rows_.size()) throw ShapeMismatch("row index out of range");
    for (const auto& e : row)
        if (e.first < 0 || static_cast<std::size_t>(e.first) >= ncols_)
            throw ShapeMismatch("column index out of range");
    std::erase_if(row, [](const auto& e) { return e.second == 0; });
    rows_[r] = std::move(row);
}

Rational SparseMat::at(std::size_t r, std::size_t c) const {
    return sparse_get(rows_.at(r), static_cast<int>(c));
}

SparseMat SparseMat::transpose() const {
    SparseMat t(ncols_, rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(static_cast<int>(r), v);
    return t;
}

SparseMat SparseMat::operator*(const SparseMat& rhs) const {
    if (ncols_ != rhs.nrows()) throw ShapeMismatch("product of incompatible matrices");
    SparseMat out(rows_.size(), rhs.ncols_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        std::map<int, Rational> acc;
        for (const auto& [k, v] : rows_[r])
            for (const auto& [c, w] : rhs.rows_[k]) acc[c] += v * w;
        out.rows_[r] = sparse_from_map(acc);
    }
    return out;
}

bool SparseMat::is_zero() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
}

std::size_t SparseMat::nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

SparseMat identity_mat(std::size_t n) {
    SparseMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.add(i, i, 1);
    return m;
}

static SparseMat combine(const SparseMat& a, const SparseMat& b, const Rational& s) {
    if (a.nrows() != b.nrows() || a.ncols() != b.ncols())
        throw ShapeMismatch("sum of matrices of different shapes");
    SparseMat out(a.nrows(), a.ncols());
    for (std::size_t r = 0; r < a.nrows(); ++r) {
        SparseVec row = a.row(r);
        sparse_axpy(row, s, b.row(r));
        out.set_row(r, std::move(row));
    }
    return out;
}

SparseMat operator-(const SparseMat& a, const SparseMat& b) { return combine(a, b, -1); }
SparseMat operator+(const SparseMat& a, const SparseMat& b) { return combine(a, b, 1); }

SparseMat scaled(const SparseMat& a, const Rational& s) {
    SparseMat out(a.nrows(), a.ncols());
    for (std::size_t r = 0; r < a.nrows(); ++r) out.set_row(r, sparse_scaled(a.row(r), s));
    return out;
}

std::size_t rank(const SparseMat& m) {
    // Shortest rows first; stable so the reduction is deterministic.
    std::vector<std::size_t> order(m.nrows());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return m.row(a).size() < m.row(b).size();
    });
    Echelon e;
    for (std::size_t r : order)
        if (!m.row(r).empty()) e.insert(m.row(r));
    return e.rank();
}

std::size_t homology_dim(const SparseMat& d_in, const SparseMat& d_out) {
    if (d_out.ncols() != d_in.nrows())
        throw ShapeMismatch("d_out has " + std::to_string(d_out.ncols()) +
                            " columns but d_in has " + std::to_string(d_in.nrows()) + " rows");
    if (!(d_out * d_in).is_zero()) throw CompositionNotZero("d_out * d_in != 0");
    std::size_t kernel = d_out.ncols() - rank(d_out);
    return kernel - rank(d_in);
}

std::vector<SparseVec> kernel_basis(const SparseMat& m) {
    SparseMat cols = m.transpose();
    Echelon e;
    std::vector<SparseVec> out;
    for (std::size_t j = 0; j < cols.nrows(); ++j) {
        SparseVec unit{{static_cast<int>(j), Rational(1)}};
        SparseVec used;
        if (e.reduce(cols.row(j), &used).empty()) {
            SparseVec k = unit;
            sparse_axpy(k, -1, used);
            out.push_back(std::move(k));
        } else {
            e.insert(cols.row(j), unit);
        }
    }
    return out;
}

SparseVec Echelon::reduce(const SparseVec& v, SparseVec* tag) const {
    std::map<int, Rational> acc(v.begin(), v.end());
    std::map<int, Rational> tacc;
    auto it = acc.begin();
    while (it != acc.end()) {
        auto p = pivot_.find(it->first);
        if (p == pivot_.end() || it->second == 0) {
            ++it;
            continue;
        }
        int col = it->first;
        Rational c = it->second;
        for (const auto& [k, w] : rows_[p->second]) acc[k] -= c * w;
        if (tag)
            for (const auto& [k, w] : tags_[p->second]) tacc[k] += c * w;
        it = acc.upper_bound(col);
    }
    if (tag) *tag = sparse_from_map(tacc);
    return sparse_from_map(acc);
}

bool Echelon::insert(const SparseVec& v, const SparseVec& tag) {
    SparseVec used;
    SparseVec r = reduce(v, &used);
    if (r.empty()) return false;
    SparseVec t = tag;
    sparse_axpy(t, -1, used);
    Rational lead = r.front().second;
    Rational inv = 1 / lead;
    r = sparse_scaled(r, inv);
    t = sparse_scaled(t, inv);
    pivot_[r.front().first] = rows_.size();
    rows_.push_back(std::move(r));
    tags_.push_back(std::move(t));
    return true;
}

QuotientCoordinates::QuotientCoordinates(const std::vector<SparseVec>& relations,
                                         const std::vector<SparseVec>& basis)
    : nbasis_(basis.size()) {
    for (const auto& r : relations) relations_.insert(r);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        SparseVec reduced = relations_.reduce(basis[k]);
        if (!basis_.insert(reduced, SparseVec{{static_cast<int>(k), Rational(1)}}))
            independent_ = false;
    }
}

bool QuotientCoordinates::in_span(const SparseVec& x) const {
    return basis_.reduce(relations_.reduce(x)).empty();
}

std::vector<Rational> QuotientCoordinates::coordinates(const SparseVec& x) const {
    SparseVec tag;
    SparseVec rest = basis_.reduce(relations_.reduce(x), &tag);
    if (!rest.empty()) throw Error("vector lies outside the span of the chosen basis");
    std::vector<Rational> out(nbasis_);
    for (const auto& [k, v] : tag) out[k] = v;
    return out;
}

}  // namespace heis

#include "heis/hochschild.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <tuple>

namespace heis {

namespace {

int parity_sign(long k) { return (k % 2 != 0) ? -1 : 1; }

}  // namespace

Chain Chain::basic(CatPtr cat, const BasicChain& b, const Rational& c, FunctorPtr twist) {
    Chain out(std::move(cat), std::move(twist));
    out.add(b, c);
    return out;
}

std::size_t Chain::max_length() const {
    std::size_t l = 0;
    for (const auto& [b, c] : terms_) l = std::max(l, b.size());
    return l;
}

int chain_degree(const LinCat& cat, const BasicChain& b) {
    int d = 0;
    for (int m : b) d += cat.degree(m);
    return d - (static_cast<int>(b.size()) - 1);
}

int Chain::degree() const {
    if (terms_.empty()) throw DegreeMismatch("the zero chain has no degree");
    const int d = chain_degree(*cat_, terms_.begin()->first);
    for (const auto& [b, c] : terms_)
        if (chain_degree(*cat_, b) != d) throw DegreeMismatch("inhomogeneous chain");
    return d;
}

void Chain::add(const BasicChain& b, const Rational& c) {
    if (c == 0) return;
    auto& slot = terms_[b];
    slot += c;
    if (slot == 0) terms_.erase(b);
}

void Chain::check_compatible(const Chain& o) const {
    if (cat_ != o.cat_ || twist_ != o.twist_)
        throw CategoryMismatch("chains over different categories or twists");
}

Chain& Chain::operator+=(const Chain& o) {
    check_compatible(o);
    for (const auto& [b, c] : o.terms_) add(b, c);
    return *this;
}

Chain& Chain::operator-=(const Chain& o) {
    check_compatible(o);
    for (const auto& [b, c] : o.terms_) add(b, -c);
    return *this;
}

Chain Chain::operator+(const Chain& o) const {
    Chain r = *this;
    return r += o;
}

Chain Chain::operator-(const Chain& o) const {
    Chain r = *this;
    return r -= o;
}

Chain Chain::operator*(const Rational& c) const {
    Chain r(cat_, twist_);
    for (const auto& [b, v] : terms_) r.add(b, v * c);
    return r;
}

bool Chain::operator==(const Chain& o) const {
    return cat_ == o.cat_ && twist_ == o.twist_ && terms_ == o.terms_;
}

bool is_composable(const LinCat& cat, const LinFunctor* twist, const BasicChain& b) {
    if (b.empty()) return false;
    for (int m : b)
        if (m < 0 || static_cast<std::size_t>(m) >= cat.num_morphisms()) return false;
    for (std::size_t i = 0; i + 1 < b.size(); ++i)
        if (cat.src(b[i]) != cat.tgt(b[i + 1])) return false;
    int wrap = cat.src(b.back());
    if (twist) wrap = twist->on_object(wrap);
    return cat.tgt(b.front()) == wrap;
}

void add_expanded(Chain& out, const std::vector<SparseVec>& factors, const Rational& c) {
    if (c == 0) return;
    BasicChain cur(factors.size());
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& k) {
        if (i == factors.size()) {
            out.add(cur, k);
            return;
        }
        for (const auto& [m, v] : factors[i]) {
            cur[i] = m;
            rec(i + 1, k * v);
        }
    };
    rec(0, c);
}

namespace {

std::vector<SparseVec> as_factors(const BasicChain& b) {
    std::vector<SparseVec> f;
    f.reserve(b.size());
    for (int m : b) f.push_back(SparseVec{{m, Rational(1)}});
    return f;
}

void differential_basic(const LinCat& A, const LinFunctor* F, const BasicChain& b, const Rational& c,
                        Chain& out) {
    const std::size_t n = b.size() - 1;  // index of the last factor
    // internal part
    long before = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        const SparseVec& dk = A.d(b[k]);
        if (!dk.empty()) {
            auto f = as_factors(b);
            f[k] = dk;
            add_expanded(out, f, c * parity_sign(static_cast<long>(n) + before));
        }
        before += A.degree(b[k]);
    }
    if (n == 0) return;
    // bar part
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<SparseVec> f;
        for (std::size_t k = 0; k < i; ++k) f.push_back(SparseVec{{b[k], Rational(1)}});
        f.push_back(A.compose(b[i], b[i + 1]));
        if (f.back().empty()) continue;
        for (std::size_t k = i + 2; k <= n; ++k) f.push_back(SparseVec{{b[k], Rational(1)}});
        add_expanded(out, f, c * parity_sign(static_cast<long>(i)));
    }
    long others = 0;
    for (std::size_t k = 0; k < n; ++k) others += A.degree(b[k]);
    const long exponent = static_cast<long>(n) + static_cast<long>(A.degree(b[n])) * others;
    SparseVec last = F ? F->on_morphism(b[n]) : SparseVec{{b[n], Rational(1)}};
    std::vector<SparseVec> f;
    f.push_back(A.compose(last, SparseVec{{b[0], Rational(1)}}));
    if (f.back().empty()) return;
    for (std::size_t k = 1; k < n; ++k) f.push_back(SparseVec{{b[k], Rational(1)}});
    add_expanded(out, f, c * parity_sign(exponent));
}

}  // namespace

Chain differential(const Chain& c) {
    Chain out(c.cat(), c.twist());
    for (const auto& [b, v] : c.terms()) differential_basic(*c.cat(), c.twist().get(), b, v, out);
    return out;
}

// ---------------------------------------------------------------------------
// Complexes

const std::vector<BasicChain>& Complex::at(int deg) const {
    static const std::vector<BasicChain> empty;
    auto it = chains.find(deg);
    return it == chains.end() ? empty : it->second;
}

const SparseMat& Complex::d_from(int deg) const {
    auto it = d.find(deg);
    if (it == d.end()) throw OutOfRange("no differential stored at degree " + std::to_string(deg));
    return it->second;
}

SparseVec Complex::vectorize(const Chain& c, int deg) const {
    if (c.cat() != cat || c.twist() != twist) throw CategoryMismatch("chain from another complex");
    std::map<int, Rational> acc;
    auto it = index.find(deg);
    for (const auto& [b, v] : c.terms()) {
        if (static_cast<int>(b.size()) > lmax)
            throw TruncationInsufficient("chain of length " + std::to_string(b.size()) + " exceeds Lmax " +
                                         std::to_string(lmax));
        if (chain_degree(*cat, b) != deg) throw DegreeMismatch("chain term of the wrong degree");
        acc[it->second.at(b)] += v;
    }
    return sparse_from_map(acc);
}

Chain Complex::chain_of(const SparseVec& v, int deg) const {
    Chain out(cat, twist);
    const auto& cs = at(deg);
    for (const auto& [k, c] : v) out.add(cs.at(static_cast<std::size_t>(k)), c);
    return out;
}

namespace {

ComplexPtr construct_complex(const CatPtr& cat, int lmax, const FunctorPtr& twist) {
    auto cx = std::make_shared<Complex>();
    cx->cat = cat;
    cx->twist = twist;
    cx->lmax = lmax;
    const LinCat& A = *cat;
    const LinFunctor* F = twist.get();
    BasicChain cur;
    std::function<void()> rec = [&]() {
        int wrap = A.src(cur.back());
        if (F) wrap = F->on_object(wrap);
        if (A.tgt(cur.front()) == wrap) {
            int deg = chain_degree(A, cur);
            auto& list = cx->chains[deg];
            cx->index[deg].emplace(cur, static_cast<int>(list.size()));
            list.push_back(cur);
        }
        if (static_cast<int>(cur.size()) == lmax) return;
        for (int m : A.into(A.src(cur.back()))) {
            cur.push_back(m);
            rec();
            cur.pop_back();
        }
    };
    for (std::size_t m = 0; m < A.num_morphisms(); ++m) {
        cur = {static_cast<int>(m)};
        rec();
    }
    // Canonical order within a degree: by length, then lexicographic.
    for (auto& [deg, list] : cx->chains) {
        std::sort(list.begin(), list.end(), [](const BasicChain& x, const BasicChain& y) {
            return x.size() != y.size() ? x.size() < y.size() : x < y;
        });
        auto& idx = cx->index[deg];
        for (std::size_t i = 0; i < list.size(); ++i) idx[list[i]] = static_cast<int>(i);
    }
    std::vector<int> degrees;
    for (const auto& [deg, list] : cx->chains) degrees.push_back(deg);
    for (int deg : degrees) {
        const auto& src = cx->chains[deg];
        const auto& tgt_list = cx->at(deg + 1);
        auto tidx = cx->index.find(deg + 1);
        SparseMat dt(src.size(), tgt_list.size());
        for (std::size_t i = 0; i < src.size(); ++i) {
            Chain out(cat, twist);
            differential_basic(A, F, src[i], 1, out);
            std::map<int, Rational> row;
            for (const auto& [b, v] : out.terms()) row[tidx->second.at(b)] += v;
            dt.set_row(i, sparse_from_map(row));
        }
        cx->d[deg] = dt.transpose();
    }
    for (int deg : degrees) {
        auto next = cx->d.find(deg + 1);
        if (next != cx->d.end() && !(next->second * cx->d[deg]).is_zero())
            throw CompositionNotZero("Hochschild differential does not square to zero at degree " +
                                     std::to_string(deg));
    }
    return cx;
}

}  // namespace

ComplexPtr build_complex(const CatPtr& cat, int lmax, const FunctorPtr& twist) {
    if (lmax < 1) throw TruncationTooSmall("Lmax must be at least 1");
    if (twist && (twist->source != cat || twist->target != cat))
        throw CategoryMismatch("twist must be an endofunctor of the category");
    using Key = std::tuple<const LinCat*, const LinFunctor*, int>;
    static std::mutex mu;
    static std::map<Key, ComplexPtr> cache;
    static std::map<Key, std::pair<CatPtr, FunctorPtr>> keep_alive;
    const Key key{cat.get(), twist.get(), lmax};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    ComplexPtr cx = construct_complex(cat, lmax, twist);
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, cx);
    if (inserted) keep_alive.emplace(key, std::make_pair(cat, twist));
    return it->second;
}

namespace {

void guard_truncation(const LinCat& cat, int degree, int lmax) {
    if (cat.concentrated_in_degree_zero() && lmax < std::abs(degree) + 2)
        throw TruncationInsufficient("degree " + std::to_string(degree) + " needs Lmax >= " +
                                     std::to_string(std::abs(degree) + 2));
}

SparseMat zero_map(std::size_t rows, std::size_t cols) { return SparseMat(rows, cols); }

}  // namespace

std::size_t hh_dim(const CatPtr& cat, int degree, int lmax, const FunctorPtr& twist) {
    guard_truncation(*cat, degree, lmax);
    ComplexPtr cx = build_complex(cat, lmax, twist);
    const std::size_t here = cx->at(degree).size();
    SparseMat d_in = cx->d.count(degree - 1) ? cx->d.at(degree - 1) : zero_map(here, 0);
    SparseMat d_out = cx->d.count(degree) ? cx->d.at(degree) : zero_map(0, here);
    return homology_dim(d_in, d_out);
}

HomologySpace::HomologySpace(const CatPtr& cat, int degree, int lmax, const FunctorPtr& twist)
    : complex_(build_complex(cat, lmax, twist)), degree_(degree) {
    guard_truncation(*cat, degree, lmax);
    const std::size_t here = complex_->at(degree).size();
    SparseMat d_in = complex_->d.count(degree - 1) ? complex_->d.at(degree - 1) : zero_map(here, 0);
    SparseMat d_out = complex_->d.count(degree) ? complex_->d.at(degree) : zero_map(0, here);
    dim_ = homology_dim(d_in, d_out);
    SparseMat cols = d_in.transpose();
    for (std::size_t j = 0; j < cols.nrows(); ++j) {
        if (cols.row(j).empty()) continue;
        boundaries_.insert(cols.row(j));
        boundary_rows_.push_back(cols.row(j));
    }
    // Greedy basis: closed basic chains first, then kernel vectors.
    std::vector<Chain> chosen;
    Echelon span = boundaries_;
    const auto& list = complex_->at(degree);
    for (std::size_t i = 0; i < list.size() && chosen.size() < dim_; ++i) {
        SparseVec v{{static_cast<int>(i), Rational(1)}};
        bool closed = true;
        for (std::size_t r = 0; r < d_out.nrows() && closed; ++r)
            if (sparse_get(d_out.row(r), static_cast<int>(i)) != 0) closed = false;
        if (closed && span.insert(v)) chosen.push_back(complex_->chain_of(v, degree));
    }
    if (chosen.size() < dim_) {
        for (const auto& k : kernel_basis(d_out)) {
            if (chosen.size() == dim_) break;
            if (span.insert(k)) chosen.push_back(complex_->chain_of(k, degree));
        }
    }
    set_basis(std::move(chosen));
}

void HomologySpace::set_basis(std::vector<Chain> basis) {
    if (basis.size() != dim_) throw Error("basis size differs from the homology dimension");
    std::vector<SparseVec> vecs;
    for (const auto& b : basis) {
        if (!is_closed(b)) throw NotClosed("basis chain is not closed");
        vecs.push_back(vectorize(b));
    }
    auto q = std::make_unique<QuotientCoordinates>(boundary_rows_, vecs);
    if (!q->basis_independent()) throw Error("basis chains are dependent modulo boundaries");
    coords_ = std::move(q);
    basis_ = std::move(basis);
}

SparseVec HomologySpace::vectorize(const Chain& c) const {
    if (c.is_zero()) return {};
    return complex_->vectorize(c, degree_);
}

bool HomologySpace::is_closed(const Chain& c) const { return differential(c).is_zero(); }

bool HomologySpace::is_boundary(const Chain& c) const { return boundaries_.contains(vectorize(c)); }

std::vector<Rational> HomologySpace::coordinates(const Chain& c) const {
    if (!is_closed(c)) throw NotClosed("coordinates of a chain that is not closed");
    return coords_->coordinates(vectorize(c));
}

HHClass HHClass::of(const Chain& c) {
    if (!differential(c).is_zero()) throw NotClosed("representative is not closed");
    return HHClass{c, c.is_zero() ? 0 : c.degree()};
}

std::string to_string(const Chain& c) {
    if (c.is_zero()) return "0";
    std::string s;
    for (const auto& [b, v] : c.terms()) {
        if (!s.empty()) s += v < 0 ? " - " : " + ";
        else if (v < 0) s += "-";
        Rational a = abs(v);
        if (a != 1) s += to_string(a) + "*";
        for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "|" : "") + c.cat()->morphism(b[i]).label;
    }
    return s;
}

BasicChain random_basic_chain(const LinCat& cat, const LinFunctor* twist, std::size_t length,
                              std::mt19937_64& rng) {
    if (length == 0) throw OutOfRange("chains have at least one factor");
    auto pick = [&](const std::vector<int>& v) {
        return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    };
    for (int attempt = 0; attempt < 10000; ++attempt) {
        BasicChain b;
        b.push_back(static_cast<int>(std::uniform_int_distribution<std::size_t>(0, cat.num_morphisms() - 1)(rng)));
        bool dead = false;
        while (b.size() < length) {
            const auto& in = cat.into(cat.src(b.back()));
            if (in.empty()) {
                dead = true;
                break;
            }
            b.push_back(pick(in));
        }
        if (!dead && is_composable(cat, twist, b)) return b;
    }
    throw Error("no closed chain of length " + std::to_string(length) + " found in " + cat.name());
}

Chain random_chain(const CatPtr& cat, const FunctorPtr& twist, std::size_t max_length, std::size_t terms,
                   std::mt19937_64& rng) {
    Chain out(cat, twist);
    const std::size_t len = std::uniform_int_distribution<std::size_t>(1, max_length)(rng);
    std::uniform_int_distribution<int> coeff(-3, 3);
    BasicChain first = random_basic_chain(*cat, twist.get(), len, rng);
    const int deg = chain_degree(*cat, first);
    out.add(first, coeff(rng) == 0 ? 1 : 1 + std::abs(coeff(rng)));
    for (std::size_t t = 1; t < terms; ++t) {
        for (int attempt = 0; attempt < 50; ++attempt) {
            BasicChain b = random_basic_chain(*cat, twist.get(), len, rng);
            if (chain_degree(*cat, b) != deg) continue;
            out.add(b, coeff(rng));
            break;
        }
    }
    if (out.is_zero()) out.add(first, 1);
    return out;
}

}  // namespace heis

#include "heis/heisenberg.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_map>

#include "heis/combinatorics.hpp"

namespace heis {

GradedSpace::GradedSpace(std::vector<std::string> labels, std::vector<bool> odd,
                         std::vector<std::vector<Rational>> chi)
    : labels_(std::move(labels)), odd_(std::move(odd)), chi_(std::move(chi)) {
    const std::size_t l = labels_.size();
    if (odd_.size() != l || chi_.size() != l)
        throw ShapeMismatch("basis, parity and chi sizes differ");
    for (std::size_t i = 0; i < l; ++i) {
        if (chi_[i].size() != l) throw ShapeMismatch("chi is not square");
        for (std::size_t j = 0; j < l; ++j)
            if (odd_[i] != odd_[j] && chi_[i][j] != 0)
                throw ParityViolation("chi pairs " + labels_[i] + " and " + labels_[j] +
                                      " of different parity");
        for (std::size_t j = 0; j < i; ++j)
            if (labels_[i] == labels_[j]) throw Error("duplicate basis label " + labels_[i]);
    }
}

std::size_t GradedSpace::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    throw UnknownBasisIndex("no basis vector labelled '" + label + "'");
}

Rational GradedSpace::pairing(const std::vector<Rational>& v, const std::vector<Rational>& w) const {
    if (v.size() != rank() || w.size() != rank()) throw ShapeMismatch("vector length != rank");
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        for (std::size_t j = 0; j < rank(); ++j) s += v[i] * chi_[i][j] * w[j];
    return s;
}

namespace {

struct GenKey {
    int block, level, index;
    auto operator<=>(const GenKey&) const = default;
};

GenKey key(const AGen& g) { return {g.level < 0 ? 1 : 0, std::abs(g.level), g.index}; }

}  // namespace

std::vector<AGen> NormalMonomial::creation() const {
    std::vector<AGen> out;
    for (const auto& g : gens)
        if (g.level > 0) out.push_back(g);
    return out;
}

std::vector<AGen> NormalMonomial::annihilation() const {
    std::vector<AGen> out;
    for (const auto& g : gens)
        if (g.level < 0) out.push_back(g);
    return out;
}

int NormalMonomial::degree() const {
    int d = 0;
    for (const auto& g : gens) d += std::abs(g.level);
    return d;
}

bool NormalMonomial::operator<(const NormalMonomial& o) const {
    return std::lexicographical_compare(
        gens.begin(), gens.end(), o.gens.begin(), o.gens.end(),
        [](const AGen& a, const AGen& b) { return key(a) < key(b); });
}

// ---------------------------------------------------------------------------
// Coefficient rings for the rewriting engine.

namespace {

using ChiVar = std::pair<int, int>;
using ChiPoly = std::map<std::vector<ChiVar>, Rational>;

struct RationalRing {
    using T = Rational;
    static T zero() { return 0; }
    static T from(const Rational& q) { return q; }
    static T chi(const GradedSpace& s, int i, int j) { return s.chi(i, j); }
    static bool is_zero(const T& x) { return x == 0; }
    static T mul(const T& a, const T& b) { return a * b; }
    static void add_into(T& a, const T& b) { a += b; }
};

struct SymbolicRing {
    using T = ChiPoly;
    static T zero() { return {}; }
    static T from(const Rational& q) {
        T out;
        if (q != 0) out[{}] = q;
        return out;
    }
    static T chi(const GradedSpace& s, int i, int j) {
        T out;
        if (s.odd(i) == s.odd(j)) out[{ChiVar{i, j}}] = 1;
        return out;
    }
    static bool is_zero(const T& x) { return x.empty(); }
    static T mul(const T& a, const T& b) {
        T out;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b) {
                std::vector<ChiVar> m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                std::sort(m.begin(), m.end());
                out[m] += ca * cb;
            }
        std::erase_if(out, [](const auto& e) { return e.second == 0; });
        return out;
    }
    static void add_into(T& a, const T& b) {
        for (const auto& [m, c] : b) a[m] += c;
        std::erase_if(a, [](const auto& e) { return e.second == 0; });
    }
};

template <class R>
using TermsT = std::map<NormalMonomial, typename R::T>;

template <class R>
void add_scaled(TermsT<R>& acc, const TermsT<R>& x, const typename R::T& c) {
    for (const auto& [m, v] : x) {
        auto& slot = acc[m];
        R::add_into(slot, R::mul(c, v));
        if (R::is_zero(slot)) acc.erase(m);
    }
}

struct WordHash {
    std::size_t operator()(const std::vector<AGen>& w) const {
        std::size_t h = w.size();
        for (const auto& g : w)
            h = h * 1000003u ^ (static_cast<std::size_t>(g.index) * 131u + static_cast<std::size_t>(g.level + 4096));
        return h;
    }
};

template <class R>
class Rewriter {
public:
    Rewriter(const GradedSpace& space, std::mt19937_64* rng) : space_(space), rng_(rng) {}

    TermsT<R> run(const std::vector<AGen>& word) {
        if (!rng_) {
            auto it = memo_.find(word);
            if (it != memo_.end()) return it->second;
        }
        TermsT<R> out = step(word);
        if (!rng_) memo_.emplace(word, out);
        return out;
    }

private:
    bool odd(const AGen& g) const { return space_.odd(static_cast<std::size_t>(g.index)); }

    TermsT<R> step(const std::vector<AGen>& word) {
        // Candidate positions: adjacent pairs violating the canonical order,
        // or repeated odd generators (which kill the word).
        std::vector<std::size_t> cand;
        for (std::size_t i = 0; i + 1 < word.size(); ++i) {
            GenKey a = key(word[i]), b = key(word[i + 1]);
            if (a > b || (a == b && odd(word[i]))) {
                cand.push_back(i);
                if (!rng_) break;
            }
        }
        if (cand.empty()) {
            TermsT<R> out;
            out[NormalMonomial{word}] = R::from(1);
            return out;
        }
        std::size_t i = cand.front();
        if (rng_) i = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(*rng_)];
        const AGen x = word[i], y = word[i + 1];
        if (key(x) == key(y)) return {};  // odd square
        std::vector<AGen> swapped = word;
        std::swap(swapped[i], swapped[i + 1]);
        const int sign = (odd(x) && odd(y)) ? -1 : 1;
        TermsT<R> out;
        add_scaled<R>(out, run(swapped), R::from(sign));
        // a_v(-n) a_w(m) = (-1)^{|v||w|} a_w(m) a_v(-n) + delta_{n,m} m chi(v,w)
        if (x.level < 0 && y.level > 0 && -x.level == y.level) {
            auto c = R::mul(R::from(y.level), R::chi(space_, x.index, y.index));
            if (!R::is_zero(c)) {
                std::vector<AGen> rest(word.begin(), word.begin() + static_cast<long>(i));
                rest.insert(rest.end(), word.begin() + static_cast<long>(i) + 2, word.end());
                add_scaled<R>(out, run(rest), c);
            }
        }
        return out;
    }

    const GradedSpace& space_;
    std::mt19937_64* rng_;
    std::unordered_map<std::vector<AGen>, TermsT<R>, WordHash> memo_;
};

template <class R>
TermsT<R> mul_terms(const GradedSpace& space, const TermsT<R>& x, const TermsT<R>& y) {
    Rewriter<R> rw(space, nullptr);
    TermsT<R> out;
    for (const auto& [mx, cx] : x)
        for (const auto& [my, cy] : y) {
            std::vector<AGen> w = mx.gens;
            w.insert(w.end(), my.gens.begin(), my.gens.end());
            add_scaled<R>(out, rw.run(w), R::mul(cx, cy));
        }
    return out;
}

void check_word(const GradedSpace& space, const std::vector<AGen>& word) {
    for (const auto& g : word) {
        if (g.index < 0 || static_cast<std::size_t>(g.index) >= space.rank())
            throw UnknownBasisIndex("generator index " + std::to_string(g.index));
        if (g.level == 0) throw OutOfRange("generator level must be nonzero");
    }
}

}  // namespace

// ---------------------------------------------------------------------------

HeisElement HeisElement::scalar(SpacePtr space, const Rational& c) {
    HeisElement e(std::move(space));
    e.add_term(NormalMonomial{}, c);
    return e;
}

HeisElement HeisElement::gen(SpacePtr space, int index, int level) {
    check_word(*space, {AGen{index, level}});
    HeisElement e(std::move(space));
    e.add_term(NormalMonomial{{AGen{index, level}}}, 1);
    return e;
}

Rational HeisElement::coeff(const NormalMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void HeisElement::add_term(const NormalMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
}

void HeisElement::check_space(const HeisElement& o) const {
    if (space_ != o.space_) throw SpaceMismatch("elements of different Heisenberg algebras");
}

HeisElement& HeisElement::operator+=(const HeisElement& o) {
    check_space(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

HeisElement& HeisElement::operator-=(const HeisElement& o) {
    check_space(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

HeisElement HeisElement::operator+(const HeisElement& o) const {
    HeisElement r = *this;
    return r += o;
}

HeisElement HeisElement::operator-(const HeisElement& o) const {
    HeisElement r = *this;
    return r -= o;
}

HeisElement HeisElement::operator*(const Rational& c) const {
    HeisElement r(space_);
    for (const auto& [m, v] : terms_) r.add_term(m, v * c);
    return r;
}

bool HeisElement::operator==(const HeisElement& o) const {
    return space_ == o.space_ && terms_ == o.terms_;
}

HeisElement normal_form(const SpacePtr& space, const std::vector<AGen>& word, const Rational& coeff,
                        std::mt19937_64* rng) {
    check_word(*space, word);
    Rewriter<RationalRing> rw(*space, rng);
    HeisElement out(space);
    for (const auto& [m, c] : rw.run(word)) out.add_term(m, c * coeff);
    return out;
}

HeisElement mul(const HeisElement& x, const HeisElement& y) {
    if (x.space() != y.space()) throw SpaceMismatch("product of elements of different algebras");
    HeisElement out(x.space());
    for (const auto& [m, c] :
         mul_terms<RationalRing>(*x.space(), x.terms(), y.terms()))
        out.add_term(m, c);
    return out;
}

HeisElement power(const HeisElement& x, int k) {
    HeisElement out = HeisElement::scalar(x.space(), 1);
    for (int i = 0; i < k; ++i) out = mul(out, x);
    return out;
}

namespace {

enum class Block { Even, Odd, Zero };

Block parity_block(const GradedSpace& space, const std::vector<Rational>& coords) {
    if (coords.size() != space.rank()) throw ShapeMismatch("coordinate vector length != rank");
    bool even = false, odd = false;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) (space.odd(i) ? odd : even) = true;
    if (even && odd) throw MixedParity("vector has both even and odd components");
    return even ? Block::Even : odd ? Block::Odd : Block::Zero;
}

int signed_level(Side side, int n) { return side == Side::P ? n : -n; }

// prod_j (side generator at part j), parts of a partition
HeisElement a_of_partition(const SpacePtr& space, int index, Side side, const Partition& p) {
    std::vector<AGen> word;
    for (int part : p.parts) word.push_back({index, signed_level(side, part)});
    return normal_form(space, word);
}

}  // namespace

HeisElement a_of_vector(const SpacePtr& space, const std::vector<Rational>& coords, int level) {
    parity_block(*space, coords);
    HeisElement out(space);
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) out += HeisElement::gen(space, static_cast<int>(i), level) * coords[i];
    return out;
}

HeisElement pq_elem(const SpacePtr& space, Side side, int index, int n) {
    if (n < 0) throw OutOfRange("p/q generators need n >= 0");
    if (index < 0 || static_cast<std::size_t>(index) >= space->rank())
        throw UnknownBasisIndex("generator index " + std::to_string(index));
    if (n == 0) return HeisElement::scalar(space, 1);
    if (space->odd(static_cast<std::size_t>(index)))
        return HeisElement::gen(space, index, signed_level(side, n));
    HeisElement out(space);
    for (const auto& p : partitions_of(n)) {
        Rational c = 1;
        for (int r : p.multiplicities()) c /= factorial(r);
        for (int part : p.parts) c /= part;
        out += a_of_partition(space, index, side, p) * c;
    }
    return out;
}

namespace {

// prod over parts of pq_elem(side, index, part)
HeisElement pq_of_partition(const SpacePtr& space, Side side, int index, const Partition& p) {
    HeisElement out = HeisElement::scalar(space, 1);
    for (int part : p.parts) out = mul(out, pq_elem(space, side, index, part));
    return out;
}

}  // namespace

HeisElement pq_of_vector(const SpacePtr& space, Side side, const std::vector<Rational>& coords,
                         int n) {
    if (n < 0) throw OutOfRange("p/q generators need n >= 0");
    Block b = parity_block(*space, coords);
    if (n == 0) return HeisElement::scalar(space, 1);
    HeisElement out(space);
    if (b == Block::Zero) return out;
    if (b == Block::Odd) {
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] != 0) out += pq_elem(space, side, static_cast<int>(i), n) * coords[i];
        return out;
    }
    std::vector<int> support;
    for (std::size_t i = 0; i < coords.size(); ++i)
        if (coords[i] != 0) support.push_back(static_cast<int>(i));
    const int l = static_cast<int>(support.size());
    for (const auto& split : ordered_partitions(n, l)) {
        // Each basis direction k receives a partition of split[k].
        std::vector<std::vector<Partition>> choices;
        for (int k = 0; k < l; ++k) choices.push_back(partitions_of(split[static_cast<std::size_t>(k)]));
        std::vector<std::size_t> pick(static_cast<std::size_t>(l), 0);
        while (true) {
            Rational c = 1;
            HeisElement term = HeisElement::scalar(space, 1);
            for (int k = 0; k < l; ++k) {
                const Partition& p = choices[static_cast<std::size_t>(k)][pick[static_cast<std::size_t>(k)]];
                const int idx = support[static_cast<std::size_t>(k)];
                c *= multinom(coords[static_cast<std::size_t>(idx)], p.multiplicities());
                if (c == 0) break;
                term = mul(term, pq_of_partition(space, side, idx, p));
            }
            if (c != 0) out += term * c;
            int k = l - 1;
            while (k >= 0 && ++pick[static_cast<std::size_t>(k)] == choices[static_cast<std::size_t>(k)].size()) {
                pick[static_cast<std::size_t>(k)] = 0;
                --k;
            }
            if (k < 0) break;
        }
    }
    return out;
}

HeisElement pq_by_exponentiation(const SpacePtr& space, Side side,
                                 const std::vector<Rational>& coords, int n) {
    if (n < 0) throw OutOfRange("p/q generators need n >= 0");
    Block b = parity_block(*space, coords);
    if (n == 0) return HeisElement::scalar(space, 1);
    if (b != Block::Even) return a_of_vector(space, coords, signed_level(side, n));
    // E = sum_k x_k t^k with x_k = a_v(+-k)/k; exp(E) truncated at t^n.
    // Same-side even generators commute, so the series multiplies as usual.
    std::vector<HeisElement> x(static_cast<std::size_t>(n + 1), HeisElement(space));
    for (int k = 1; k <= n; ++k)
        x[static_cast<std::size_t>(k)] = a_of_vector(space, coords, signed_level(side, k)) * Rational(1, k);
    // power series coefficients of E^j / j!
    std::vector<HeisElement> epow(static_cast<std::size_t>(n + 1), HeisElement(space));
    epow[0] = HeisElement::scalar(space, 1);
    HeisElement total = n == 0 ? epow[0] : HeisElement(space);
    std::vector<HeisElement> cur = epow;  // coefficients of E^j
    for (int j = 1; j <= n; ++j) {
        std::vector<HeisElement> next(static_cast<std::size_t>(n + 1), HeisElement(space));
        for (int d = 0; d <= n; ++d) {
            if (cur[static_cast<std::size_t>(d)].is_zero()) continue;
            for (int k = 1; d + k <= n; ++k)
                next[static_cast<std::size_t>(d + k)] +=
                    mul(cur[static_cast<std::size_t>(d)], x[static_cast<std::size_t>(k)]);
        }
        cur = std::move(next);
        total += cur[static_cast<std::size_t>(n)] * (1 / factorial(j));
    }
    return total;
}

// ---------------------------------------------------------------------------

Report check_pq_relations(const SpacePtr& space, int nmax) {
    if (nmax < 1) throw OutOfRange("nmax must be >= 1");
    Report rep;
    const int l = static_cast<int>(space->rank());
    auto residual_detail = [&](const HeisElement& r) {
        return r.is_zero() ? std::string() : "residual " + to_string(r);
    };
    auto unit = [&](std::size_t i) {
        std::vector<Rational> v(space->rank(), 0);
        v[i] = 1;
        return v;
    };

    for (int i = 0; i < l; ++i) {
        for (Side s : {Side::P, Side::Q}) {
            HeisElement r = pq_elem(space, s, i, 0) - HeisElement::scalar(space, 1);
            rep.add("rel0/" + std::string(s == Side::P ? "p" : "q") + "/" + space->label(static_cast<std::size_t>(i)),
                    r.is_zero(), residual_detail(r));
        }
    }

    std::vector<std::vector<HeisElement>> P(static_cast<std::size_t>(l)), Q(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i)
        for (int n = 0; n <= nmax; ++n) {
            P[static_cast<std::size_t>(i)].push_back(pq_elem(space, Side::P, i, n));
            Q[static_cast<std::size_t>(i)].push_back(pq_elem(space, Side::Q, i, n));
        }
    auto Pe = [&](int i, int n) -> const HeisElement& { return P[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)]; };
    auto Qe = [&](int i, int n) -> const HeisElement& { return Q[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)]; };

    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            const bool bo = space->odd(static_cast<std::size_t>(i)) && space->odd(static_cast<std::size_t>(j));
            const Rational sign = bo ? -1 : 1;
            const std::string pair = space->label(static_cast<std::size_t>(i)) + "," + space->label(static_cast<std::size_t>(j));
            const Rational form = space->chi(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            for (int n = 1; n <= nmax; ++n)
                for (int m = 1; m <= nmax; ++m) {
                    const std::string tag = pair + "/" + std::to_string(n) + "," + std::to_string(m);
                    HeisElement r1 = mul(Pe(i, n), Pe(j, m)) - mul(Pe(j, m), Pe(i, n)) * sign;
                    rep.add("rel1/pp/" + tag, r1.is_zero(), residual_detail(r1));
                    HeisElement r2 = mul(Qe(i, n), Qe(j, m)) - mul(Qe(j, m), Qe(i, n)) * sign;
                    rep.add("rel1/qq/" + tag, r2.is_zero(), residual_detail(r2));
                    HeisElement lhs = mul(Qe(i, n), Pe(j, m));
                    HeisElement rhs(space);
                    if (bo) {
                        rhs = mul(Pe(j, m), Qe(i, n)) * Rational(-1);
                        if (n == m) rhs += HeisElement::scalar(space, form * m);
                    } else {
                        for (int k = 0; k <= std::min(n, m); ++k)
                            rhs += mul(Pe(j, m - k), Qe(i, n - k)) * s_pow(form, k);
                    }
                    HeisElement r3 = lhs - rhs;
                    rep.add("rel3/" + tag, r3.is_zero(), residual_detail(r3));
                }
        }

    // (2add) and (2scalmult) against the exponentiation definition of p_v, q_v.
    const std::vector<Rational> scalars = {Rational(2), Rational(-1), Rational(1, 2), Rational(-3, 2)};
    for (Side s : {Side::P, Side::Q}) {
        const std::string sname = s == Side::P ? "p" : "q";
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) {
                if (space->odd(static_cast<std::size_t>(i)) != space->odd(static_cast<std::size_t>(j))) continue;
                std::vector<Rational> v = unit(static_cast<std::size_t>(i)), w = unit(static_cast<std::size_t>(j));
                std::vector<Rational> vw(space->rank());
                for (std::size_t k = 0; k < vw.size(); ++k) vw[k] = v[k] + w[k];
                const bool odd = space->odd(static_cast<std::size_t>(i));
                for (int n = 1; n <= nmax; ++n) {
                    HeisElement lhs = pq_by_exponentiation(space, s, vw, n);
                    HeisElement rhs(space);
                    if (odd) {
                        rhs = pq_by_exponentiation(space, s, v, n) + pq_by_exponentiation(space, s, w, n);
                    } else {
                        for (int k = 0; k <= n; ++k)
                            rhs += mul(pq_by_exponentiation(space, s, v, k), pq_by_exponentiation(space, s, w, n - k));
                    }
                    HeisElement r = lhs - rhs;
                    rep.add("rel2add/" + sname + "/" + space->label(static_cast<std::size_t>(i)) + "+" +
                                space->label(static_cast<std::size_t>(j)) + "/" + std::to_string(n),
                            r.is_zero(), residual_detail(r));
                }
            }
        for (int i = 0; i < l; ++i)
            for (const Rational& z : scalars)
                for (int n = 1; n <= nmax; ++n) {
                    std::vector<Rational> zv(space->rank(), 0);
                    zv[static_cast<std::size_t>(i)] = z;
                    HeisElement lhs = pq_by_exponentiation(space, s, zv, n);
                    HeisElement rhs(space);
                    if (space->odd(static_cast<std::size_t>(i))) {
                        rhs = pq_elem(space, s, i, n) * z;
                    } else {
                        for (const auto& p : partitions_of(n))
                            rhs += pq_of_partition(space, s, i, p) * multinom(z, p.multiplicities());
                    }
                    HeisElement r = lhs - rhs;
                    rep.add("rel2scal/" + sname + "/" + space->label(static_cast<std::size_t>(i)) + "/z=" +
                                to_string(z) + "/" + std::to_string(n),
                            r.is_zero(), residual_detail(r));
                }
    }
    return rep;
}

// ---------------------------------------------------------------------------

namespace {

// All multisets of (index, level) with level >= 1, total level <= n, no odd repeats,
// emitted as sorted generator lists (ascending by (level, index)).
void enumerate_blocks(const GradedSpace& space, int budget, int sign,
                      const std::function<void(const std::vector<AGen>&, int)>& emit) {
    std::vector<AGen> cur;
    const int l = static_cast<int>(space.rank());
    std::function<void(int, int, int)> rec = [&](int min_level, int min_index, int used) {
        emit(cur, used);
        for (int lev = min_level; used + lev <= budget; ++lev)
            for (int idx = (lev == min_level ? min_index : 0); idx < l; ++idx) {
                const bool odd = space.odd(static_cast<std::size_t>(idx));
                cur.push_back({idx, sign * lev});
                // odd generators may not repeat: continue strictly after this one
                if (odd) {
                    if (idx + 1 < l) rec(lev, idx + 1, used + lev);
                    else rec(lev + 1, 0, used + lev);
                } else {
                    rec(lev, idx, used + lev);
                }
                cur.pop_back();
            }
    };
    rec(1, 0, 0);
}

}  // namespace

std::size_t filtered_count(const SpacePtr& space, Presentation pres, int n) {
    if (n < 0) throw OutOfRange("filtration degree must be >= 0");
    const std::size_t len = static_cast<std::size_t>(n + 1);
    std::vector<std::size_t> side(len, 0);
    if (pres == Presentation::A) {
        // Enumerate sorted creation words directly.
        enumerate_blocks(*space, n, 1, [&](const std::vector<AGen>&, int used) {
            ++side[static_cast<std::size_t>(used)];
        });
    } else {
        // p-monomials by generating function: each p_v^(k) contributes
        // 1/(1 - t^k) for even v and (1 + t^k) for odd v (square zero).
        side[0] = 1;
        for (std::size_t v = 0; v < space->rank(); ++v)
            for (int k = 1; k <= n; ++k) {
                const std::size_t uk = static_cast<std::size_t>(k);
                if (space->odd(v)) {
                    for (std::size_t d = len; d-- > uk;) side[d] += side[d - uk];
                } else {
                    for (std::size_t d = uk; d < len; ++d) side[d] += side[d - uk];
                }
            }
    }
    // Monomials pair a creation (p) part with an annihilation (q) part.
    std::size_t total = 0;
    for (std::size_t c = 0; c < len; ++c)
        for (std::size_t a = 0; c + a < len; ++a) total += side[c] * side[a];
    return total;
}

std::size_t pq_monomial_rank(const SpacePtr& space, int n) {
    std::vector<std::vector<AGen>> creations, annihilations;
    enumerate_blocks(*space, n, 1, [&](const std::vector<AGen>& w, int) { creations.push_back(w); });
    enumerate_blocks(*space, n, -1, [&](const std::vector<AGen>& w, int) { annihilations.push_back(w); });
    auto deg = [](const std::vector<AGen>& w) {
        int d = 0;
        for (const auto& g : w) d += std::abs(g.level);
        return d;
    };
    auto expand = [&](const std::vector<AGen>& w, Side side) {
        HeisElement out = HeisElement::scalar(space, 1);
        for (const auto& g : w) out = mul(out, pq_elem(space, side, g.index, std::abs(g.level)));
        return out;
    };
    std::map<NormalMonomial, int> column;
    Echelon e;
    for (const auto& c : creations) {
        HeisElement pc = expand(c, Side::P);
        for (const auto& a : annihilations) {
            if (deg(c) + deg(a) > n) continue;
            HeisElement x = mul(pc, expand(a, Side::Q));
            std::map<int, Rational> row;
            for (const auto& [m, v] : x.terms()) {
                auto it = column.try_emplace(m, static_cast<int>(column.size())).first;
                row[it->second] = v;
            }
            e.insert(sparse_from_map(row));
        }
    }
    return e.rank();
}

FockState vacuum(const SpacePtr& space) { return HeisElement::scalar(space, 1); }

FockState fock_apply(const HeisElement& x, const FockState& s) {
    if (x.space() != s.space()) throw SpaceMismatch("operator and state over different spaces");
    HeisElement prod = mul(x, s);
    FockState out(x.space());
    for (const auto& [m, c] : prod.terms())
        if (m.annihilation().empty()) out.add_term(m, c);
    return out;
}

std::vector<NormalMonomial> fock_basis(const SpacePtr& space, int n) {
    std::vector<NormalMonomial> out;
    enumerate_blocks(*space, n, 1, [&](const std::vector<AGen>& w, int used) {
        if (used == n) out.push_back(NormalMonomial{w});
    });
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

namespace {

using Mat = std::vector<std::vector<Rational>>;

SparseMat to_sparse(const Mat& m) {
    SparseMat s(m.size(), m.empty() ? 0 : m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            if (m[i][j] != 0) s.add(i, j, m[i][j]);
    return s;
}

void check_twist_matrix(const GradedSpace& space, const Mat& M, const char* name) {
    const std::size_t l = space.rank();
    if (M.size() != l) throw ShapeMismatch(std::string(name) + " has the wrong size");
    for (const auto& row : M)
        if (row.size() != l) throw ShapeMismatch(std::string(name) + " is not square");
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            if (space.odd(i) != space.odd(j) && M[i][j] != 0)
                throw ParityViolation(std::string(name) + " mixes parities");
    if (rank(to_sparse(M)) != l) throw SingularMatrix(std::string(name) + " is not invertible");
}

std::vector<Rational> column(const Mat& M, std::size_t j) {
    std::vector<Rational> c;
    for (const auto& row : M) c.push_back(row[j]);
    return c;
}

}  // namespace

TwistResult twist_form(const SpacePtr& space, const Mat& S, const Mat& T) {
    check_twist_matrix(*space, S, "S");
    check_twist_matrix(*space, T, "T");
    const std::size_t l = space->rank();
    Mat chi2(l, std::vector<Rational>(l, 0));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            chi2[i][j] = space->pairing(column(S, i), column(T, j));
    std::vector<std::string> labels;
    std::vector<bool> odd;
    for (std::size_t i = 0; i < l; ++i) {
        labels.push_back(space->label(i));
        odd.push_back(space->odd(i));
    }
    auto tw = std::make_shared<const GradedSpace>(labels, odd, chi2);
    return TwistResult{space, tw, S, T};
}

HeisElement TwistResult::image(Side side, int index, int n) const {
    const Mat& M = side == Side::Q ? S : T;
    return pq_by_exponentiation(source, side, column(M, static_cast<std::size_t>(index)), n);
}

Report check_twist(const TwistResult& tw, int nmax) {
    Report rep;
    const GradedSpace& sp = *tw.twisted;
    const int l = static_cast<int>(sp.rank());
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j) {
            const bool bo = sp.odd(static_cast<std::size_t>(i)) && sp.odd(static_cast<std::size_t>(j));
            const Rational form = sp.chi(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            for (int n = 1; n <= nmax; ++n)
                for (int m = 1; m <= nmax; ++m) {
                    HeisElement lhs = mul(tw.image(Side::Q, i, n), tw.image(Side::P, j, m));
                    HeisElement rhs(tw.source);
                    if (bo) {
                        rhs = mul(tw.image(Side::P, j, m), tw.image(Side::Q, i, n)) * Rational(-1);
                        if (n == m) rhs += HeisElement::scalar(tw.source, form * m);
                    } else {
                        for (int k = 0; k <= std::min(n, m); ++k)
                            rhs += mul(tw.image(Side::P, j, m - k), tw.image(Side::Q, i, n - k)) * s_pow(form, k);
                    }
                    HeisElement r = lhs - rhs;
                    rep.add("twist-rel3/" + sp.label(static_cast<std::size_t>(i)) + "," +
                                sp.label(static_cast<std::size_t>(j)) + "/" + std::to_string(n) + "," + std::to_string(m),
                            r.is_zero(), r.is_zero() ? "" : "residual " + to_string(r));
                    const Rational sign = bo ? -1 : 1;
                    HeisElement pp = mul(tw.image(Side::P, i, n), tw.image(Side::P, j, m)) -
                                     mul(tw.image(Side::P, j, m), tw.image(Side::P, i, n)) * sign;
                    rep.add("twist-rel1/" + sp.label(static_cast<std::size_t>(i)) + "," +
                                sp.label(static_cast<std::size_t>(j)) + "/" + std::to_string(n) + "," + std::to_string(m),
                            pp.is_zero());
                }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Printing and parsing.

std::string to_string(const GradedSpace& space, const NormalMonomial& m) {
    std::string s;
    for (const auto& g : m.gens) {
        if (!s.empty()) s += "*";
        s += "a[" + space.label(static_cast<std::size_t>(g.index)) + "," + std::to_string(g.level) + "]";
    }
    return s;
}

namespace {

// Longer monomials first, then canonical order; the unit comes last.
template <class V>
std::vector<std::pair<NormalMonomial, V>> display_order(const std::map<NormalMonomial, V>& terms) {
    std::vector<std::pair<NormalMonomial, V>> v(terms.begin(), terms.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return a.first.gens.size() > b.first.gens.size();
    });
    return v;
}

std::string join_terms(const std::vector<std::pair<std::string, bool>>& parts) {
    // parts: (text without leading sign, negative?)
    if (parts.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i == 0) s += parts[i].second ? "-" : "";
        else s += parts[i].second ? " - " : " + ";
        s += parts[i].first;
    }
    return s;
}

std::string poly_string(const GradedSpace& space, const ChiPoly& p) {
    std::vector<std::pair<std::string, bool>> parts;
    for (const auto& [vars, c] : p) {
        Rational a = abs(c);
        std::string t;
        if (vars.empty() || a != 1) t = to_string(a);
        for (const auto& [i, j] : vars) {
            if (!t.empty()) t += "*";
            t += "chi[" + space.label(static_cast<std::size_t>(i)) + "," + space.label(static_cast<std::size_t>(j)) + "]";
        }
        parts.emplace_back(t, c < 0);
    }
    return join_terms(parts);
}

}  // namespace

std::string to_string(const HeisElement& x) {
    std::vector<std::pair<std::string, bool>> parts;
    for (const auto& [m, c] : display_order(x.terms())) {
        Rational a = abs(c);
        std::string mono = to_string(*x.space(), m);
        std::string t;
        if (mono.empty()) t = to_string(a);
        else t = (a == 1 ? "" : to_string(a) + "*") + mono;
        parts.emplace_back(t, c < 0);
    }
    return join_terms(parts);
}

namespace {

template <class R>
class ExprParser {
public:
    ExprParser(const SpacePtr& space, const std::string& text) : space_(space) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }

    TermsT<R> parse() {
        TermsT<R> v = expr();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos_));
    }
    bool eat(char c) {
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static TermsT<R> unit_scaled(const typename R::T& c) {
        TermsT<R> t;
        if (!R::is_zero(c)) t[NormalMonomial{}] = c;
        return t;
    }
    TermsT<R> expr() {
        TermsT<R> acc;
        bool neg = eat('-');
        add_scaled<R>(acc, term(), R::from(neg ? -1 : 1));
        while (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
            neg = s_[pos_++] == '-';
            add_scaled<R>(acc, term(), R::from(neg ? -1 : 1));
        }
        return acc;
    }
    TermsT<R> term() {
        TermsT<R> acc = factor();
        while (eat('*')) acc = mul_terms<R>(*space_, acc, factor());
        return acc;
    }
    TermsT<R> factor() {
        if (eat('(')) {
            TermsT<R> v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                ++pos_;
            return unit_scaled(R::from(parse_rational(s_.substr(start, pos_ - start))));
        }
        if ((c == 'a' || c == 'p' || c == 'q') && pos_ + 1 < s_.size() && s_[pos_ + 1] == '[') {
            pos_ += 2;
            std::size_t comma = s_.find(',', pos_);
            std::size_t close = s_.find(']', pos_);
            if (comma == std::string::npos || close == std::string::npos || comma > close)
                fail("malformed generator");
            std::string label = s_.substr(pos_, comma - pos_);
            std::string lev = s_.substr(comma + 1, close - comma - 1);
            pos_ = close + 1;
            int idx = static_cast<int>(space_->index_of(label));
            int level = 0;
            try {
                std::size_t used = 0;
                level = std::stoi(lev, &used);
                if (used != lev.size()) fail("bad level '" + lev + "'");
            } catch (const std::logic_error&) {
                fail("bad level '" + lev + "'");
            }
            TermsT<R> out;
            if (c == 'a') {
                if (level == 0) fail("a-generators need a nonzero level");
                out[NormalMonomial{{AGen{idx, level}}}] = R::from(1);
                return out;
            }
            if (level < 0) fail("p/q generators need a level >= 0");
            HeisElement e = pq_elem(space_, c == 'p' ? Side::P : Side::Q, idx, level);
            for (const auto& [m, v] : e.terms()) out[m] = R::from(v);
            return out;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    SpacePtr space_;
    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

HeisElement parse_expression(const SpacePtr& space, const std::string& expression) {
    ExprParser<RationalRing> p(space, expression);
    HeisElement out(space);
    for (const auto& [m, c] : p.parse()) out.add_term(m, c);
    return out;
}

std::string normal_form_symbolic(const SpacePtr& space, const std::string& expression) {
    ExprParser<SymbolicRing> p(space, expression);
    TermsT<SymbolicRing> t = p.parse();
    std::vector<std::pair<std::string, bool>> parts;
    for (const auto& [m, c] : display_order(t)) {
        std::string mono = to_string(*space, m);
        if (mono.empty()) {
            // the scalar term carries its own signs
            std::string ps = poly_string(*space, c);
            bool neg = !ps.empty() && ps[0] == '-' && c.size() == 1;
            parts.emplace_back(neg ? ps.substr(1) : ps, neg);
            continue;
        }
        if (c.size() == 1 && c.begin()->first.empty()) {
            Rational a = abs(c.begin()->second);
            parts.emplace_back((a == 1 ? "" : to_string(a) + "*") + mono, c.begin()->second < 0);
        } else if (c.size() == 1) {
            std::string ps = poly_string(*space, c);
            bool neg = ps[0] == '-';
            parts.emplace_back((neg ? ps.substr(1) : ps) + "*" + mono, neg);
        } else {
            parts.emplace_back("(" + poly_string(*space, c) + ")*" + mono, false);
        }
    }
    return join_terms(parts);
}

}  // namespace heis

#include "suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "heis/combinatorics.hpp"
#include "heis/heis_action.hpp"
#include "heis/hochschild.hpp"
#include "oracles.hpp"

namespace heis::suites {

namespace {

using Rng = std::mt19937_64;

// Each suite draws from its own stream so that suites stay reproducible in isolation.
Rng stream(const SuiteConfig& cfg, int salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(salt)};
    return Rng(seq);
}

int trials_or(const SuiteConfig& cfg, int fallback) { return cfg.trials > 0 ? cfg.trials : fallback; }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational random_rational(Rng& rng) {
    Rational q(uniform(rng, -20, 20), uniform(rng, 1, 9));
    q.canonicalize();
    return q;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

// Counts failures over a batch of samples and keeps the first counterexample.
class Tally {
public:
    void sample(bool ok, const std::function<std::string()>& describe) {
        ++samples_;
        if (ok) return;
        if (failures_++ == 0) first_ = describe();
    }
    void sample_checked(const std::function<bool()>& check, const std::function<std::string()>& describe) {
        try {
            sample(check(), describe);
        } catch (const std::exception& e) {
            const std::string what = e.what();
            sample(false, [&] { return describe() + " threw " + what; });
        }
    }
    // A sample whose compared values are nonzero; suites that use witnesses
    // fail when every sample was degenerate.
    void witness() { ++witnesses_; }
    void emit(Report& rep, const std::string& id, bool need_witness = false) const {
        std::string detail = std::to_string(samples_) + " samples";
        if (need_witness) detail += ", " + std::to_string(witnesses_) + " nonzero";
        if (failures_) detail += ", " + std::to_string(failures_) + " failed; first: " + first_;
        rep.add(id, failures_ == 0 && samples_ > 0 && (!need_witness || witnesses_ > 0), detail);
    }

private:
    int samples_ = 0;
    int failures_ = 0;
    int witnesses_ = 0;
    std::string first_;
};

// d f(x) == f(d x); a nonzero d f(x) counts as a witness.
bool commutes_with_d(Tally& t, const std::function<Chain(const Chain&)>& f, const Chain& x) {
    const Chain lhs = differential(f(x));
    if (!lhs.is_zero()) t.witness();
    return lhs == f(differential(x));
}

std::string q(const Rational& x) { return to_string(x); }

// ---------------------------------------------------------------------------
// Combinatorics

Rational binom_or_zero(const Rational& z, int k) { return k < 0 ? Rational(0) : binom(z, k); }

std::vector<int> random_ks(Rng& rng, int parts, int total_max) {
    std::vector<int> ks(static_cast<std::size_t>(parts), 0);
    const int total = uniform(rng, 0, total_max);
    for (int i = 0; i < total; ++i) ++ks[static_cast<std::size_t>(uniform(rng, 0, parts - 1))];
    return ks;
}

// Every way to split each k_i into `groups` ordered non-negative parts.
void for_each_split(const std::vector<int>& ks, int groups,
                    const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
    std::vector<std::vector<int>> chosen(ks.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == ks.size()) {
            visit(chosen);
            return;
        }
        for (const auto& split : ordered_partitions(ks[i], groups)) {
            chosen[i] = split;
            rec(i + 1);
        }
    };
    rec(0);
}

// ---------------------------------------------------------------------------
// Hochschild helpers

FunctorPtr long_cycle_twist(const SymPtr& s) {
    const int t = s->action->group->find_perm(long_cycle(s->n));
    return s->action->act.at(static_cast<std::size_t>(t));
}

// Identity components of H F => G H when the action is strict: id on H(F(a)).
NatTransform identity_components(const LinFunctor& H, const LinFunctor& F) {
    NatTransform eta{nullptr, nullptr, {}};
    for (std::size_t a = 0; a < F.source->num_objects(); ++a)
        eta.component.push_back(H.target->identity(H.on_object(F.on_object(static_cast<int>(a)))));
    return eta;
}

Chain group_element_chain(const SymPtr& s, int g) {
    return Chain::basic(s->cat(), {s->sym->morphism_id(0, g)});
}

// Cycle type of a slice basis element (id, sigma) over the point category.
std::optional<std::vector<int>> class_of(const FockSpaceHH& f, int n, const Chain& c) {
    if (c.terms().size() != 1) return std::nullopt;
    const auto& [b, coeff] = *c.terms().begin();
    if (b.size() != 1 || coeff != 1) return std::nullopt;
    const auto& s = f.sym(n);
    const int g = s->sym->group_of(b[0]);
    return oracle::cycle_type(s->action->group->perms.at(static_cast<std::size_t>(g)));
}

}  // namespace

SpacePtr random_space(const std::vector<bool>& odd, int bound, std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t l = odd.size();
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < l; ++i) labels.push_back(std::string(1, static_cast<char>('e' + i)));
    std::vector<std::vector<Rational>> chi(l, std::vector<Rational>(l, 0));
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j)
            if (odd[i] == odd[j]) chi[i][j] = uniform(rng, -bound, bound);
    return std::make_shared<GradedSpace>(labels, odd, chi);
}

// ---------------------------------------------------------------------------

Report combinatorial_identities(const SuiteConfig& cfg) {
    Rng rng = stream(cfg, 1);
    const int n = trials_or(cfg, 200);
    Report rep;

    Tally aside, vandermonde, general, negative, m_aside, m_vandermonde, m_general, m_product;
    for (int t = 0; t < n; ++t) {
        const Rational z = random_rational(rng), w = random_rational(rng);
        const int k = uniform(rng, 0, 8);
        aside.sample(binom(z, k) == binom(z - 1, k) + binom_or_zero(z - 1, k - 1),
                     [&] { return "z=" + q(z) + " k=" + std::to_string(k); });

        Rational sum = 0;
        for (int j = 0; j <= k; ++j) sum += binom(z, j) * binom(w, k - j);
        vandermonde.sample(binom(z + w, k) == sum,
                           [&] { return "z=" + q(z) + " w=" + q(w) + " k=" + std::to_string(k); });

        const int groups = uniform(rng, 2, 4);
        std::vector<Rational> zs;
        Rational total = 0;
        for (int i = 0; i < groups; ++i) {
            zs.push_back(random_rational(rng));
            total += zs.back();
        }
        Rational gsum = 0;
        for (const auto& p : ordered_partitions(k, groups)) {
            Rational term = 1;
            for (int i = 0; i < groups; ++i) term *= binom(zs[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(i)]);
            gsum += term;
        }
        general.sample(binom(total, k) == gsum, [&] { return "k=" + std::to_string(k) + " groups=" + std::to_string(groups); });

        const Rational sign = k % 2 ? -1 : 1;
        negative.sample(binom(-z, k) == sign * binom(z + k - 1, k), [&] { return "z=" + q(z) + " k=" + std::to_string(k); });

        // Multinomial forms, sum of ks at most 6.
        const std::vector<int> ks = random_ks(rng, uniform(rng, 1, 3), 6);
        Rational rhs = multinom(z - 1, ks);
        for (std::size_t i = 0; i < ks.size(); ++i) {
            if (ks[i] == 0) continue;
            std::vector<int> lowered = ks;
            --lowered[i];
            rhs += multinom(z - 1, lowered);
        }
        m_aside.sample(multinom(z, ks) == rhs, [&] { return "z=" + q(z) + " ks=" + join(ks); });

        Rational msum = 0;
        for_each_split(ks, 2, [&](const std::vector<std::vector<int>>& split) {
            std::vector<int> p, r;
            for (const auto& s : split) {
                p.push_back(s[0]);
                r.push_back(s[1]);
            }
            msum += multinom(z, p) * multinom(w, r);
        });
        m_vandermonde.sample(multinom(z + w, ks) == msum, [&] { return "z=" + q(z) + " w=" + q(w) + " ks=" + join(ks); });

        const int mg = uniform(rng, 2, 3);
        std::vector<Rational> mz(zs.begin(), zs.begin() + std::min<int>(mg, groups));
        while (static_cast<int>(mz.size()) < mg) mz.push_back(random_rational(rng));
        Rational mtotal = 0;
        for (const auto& x : mz) mtotal += x;
        Rational gmsum = 0;
        for_each_split(ks, mg, [&](const std::vector<std::vector<int>>& split) {
            Rational term = 1;
            for (int j = 0; j < mg; ++j) {
                std::vector<int> column;
                for (const auto& s : split) column.push_back(s[static_cast<std::size_t>(j)]);
                term *= multinom(mz[static_cast<std::size_t>(j)], column);
            }
            gmsum += term;
        });
        m_general.sample(multinom(mtotal, ks) == gmsum, [&] { return "ks=" + join(ks) + " groups=" + std::to_string(mg); });

        // Multinomial as an iterated binomial product.
        Rational prod = 1, shift = 0;
        for (int kk : ks) {
            prod *= binom(z - shift, kk);
            shift += kk;
        }
        m_product.sample(multinom(z, ks) == prod, [&] { return "z=" + q(z) + " ks=" + join(ks); });
    }
    aside.emit(rep, "binomial/one-set-aside");
    vandermonde.emit(rep, "binomial/vandermonde");
    general.emit(rep, "binomial/generalized-vandermonde");
    negative.emit(rep, "binomial/negative");
    m_aside.emit(rep, "multinomial/one-set-aside");
    m_vandermonde.emit(rep, "multinomial/vandermonde");
    m_general.emit(rep, "multinomial/generalized-vandermonde");
    m_product.emit(rep, "multinomial/binomial-product");
    return rep;
}

Report fiber_and_reindexing(const SuiteConfig& cfg) {
    Rng rng = stream(cfg, 2);
    Report rep;
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= 6; ++m) {
            std::map<Partition, long> fibers;
            for (const auto& p : ordered_partitions(n, m)) ++fibers[forget(p)];
            bool sizes_ok = true;
            std::string bad;
            std::map<Partition, Rational> f;
            for (const auto& lambda : partitions_of(n)) {
                const Rational expected = multinom(m, lambda.multiplicities());
                const long got = fibers.count(lambda) ? fibers[lambda] : 0;
                if (expected != got) {
                    sizes_ok = false;
                    bad = to_string(lambda) + ": " + std::to_string(got) + " vs " + q(expected);
                }
                f[lambda] = random_rational(rng);
            }
            const std::string tag = "n=" + std::to_string(n) + ",m=" + std::to_string(m);
            rep.add("fiber-size[" + tag + "]", sizes_ok, bad);

            Rational lhs = 0, rhs = 0;
            for (const auto& p : ordered_partitions(n, m)) lhs += f.at(forget(p));
            for (const auto& lambda : partitions_of(n)) rhs += multinom(m, lambda.multiplicities()) * f.at(lambda);
            rep.add("reindexing[" + tag + "]", lhs == rhs, lhs == rhs ? "" : q(lhs) + " vs " + q(rhs));
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Heisenberg algebra

Report pq_relations_for(const SpacePtr& space, int nmax) { return check_pq_relations(space, nmax); }

Report pq_relations(const SuiteConfig& cfg) {
    Report rep;
    const std::vector<std::pair<std::string, std::vector<bool>>> shapes{
        {"even", {false}}, {"odd", {true}}, {"even-even", {false, false}}, {"odd-odd", {true, true}},
        {"mixed", {false, true}}};
    for (const auto& [name, odd] : shapes)
        for (int s = 0; s < 5; ++s) {
            const SpacePtr space = random_space(odd, 3, cfg.seed * 1000 + 37 * static_cast<std::uint64_t>(s) + odd.size());
            const Report r = check_pq_relations(space, 4);
            const std::string id = "pq-relations[" + name + ",form=" + std::to_string(s) + "]";
            std::string detail = std::to_string(r.records.size()) + " relation instances";
            for (const auto& rec : r.records)
                if (!rec.pass) {
                    detail += "; first failure " + rec.id + " " + rec.detail;
                    break;
                }
            rep.add(id, r.all_pass() && !r.records.empty(), detail);
        }
    return rep;
}

Report decomposition_vs_exponentiation(const SuiteConfig& cfg) {
    Rng rng = stream(cfg, 4);
    Report rep;
    const int vectors = trials_or(cfg, 20);
    for (int t = 0; t < vectors; ++t) {
        const SpacePtr space = random_space({false, false}, 3, cfg.seed * 7919 + static_cast<std::uint64_t>(t));
        std::vector<Rational> v{random_rational(rng), random_rational(rng)};
        bool ok = true;
        std::string detail = "v=(" + q(v[0]) + "," + q(v[1]) + ")";
        for (Side side : {Side::P, Side::Q})
            for (int n = 0; n <= 4; ++n) {
                const HeisElement lhs = pq_of_vector(space, side, v, n);
                const HeisElement rhs = pq_by_exponentiation(space, side, v, n);
                if (!(lhs == rhs)) {
                    ok = false;
                    detail += std::string(" differs at ") + (side == Side::P ? "p" : "q") + "(" + std::to_string(n) + ")";
                }
            }
        rep.add("decomposition[vector=" + std::to_string(t) + "]", ok, detail);
    }
    return rep;
}

Report filtered_dims_for(const SpacePtr& space, int nmax) {
    Report rep;
    for (int n = 0; n <= nmax; ++n) {
        const std::size_t a = filtered_count(space, Presentation::A, n);
        const std::size_t p = filtered_count(space, Presentation::PQ, n);
        const std::size_t r = pq_monomial_rank(space, n);
        rep.add("filtered[n=" + std::to_string(n) + "]", a == p && p == r,
                "A=" + std::to_string(a) + " PQ=" + std::to_string(p) + " rank=" + std::to_string(r));
    }
    return rep;
}

Report filtered_dims(const SuiteConfig& cfg) {
    Report rep;
    const std::vector<std::pair<std::string, std::vector<bool>>> shapes{
        {"even", {false}}, {"odd", {true}}, {"even-even", {false, false}}, {"odd-odd", {true, true}},
        {"mixed", {false, true}}};
    for (const auto& [name, odd] : shapes) {
        const Report r = filtered_dims_for(random_space(odd, 3, cfg.seed + odd.size()), 5);
        for (const auto& rec : r.records) rep.add(name + "/" + rec.id, rec.pass, rec.detail);
    }
    return rep;
}

Report fock_checks_for(const SpacePtr& space, int max_degree) {
    Report rep;
    std::vector<FockState> states;
    for (int d = 0; d <= max_degree; ++d)
        for (const auto& m : fock_basis(space, d)) {
            FockState s(space);
            s.add_term(m, 1);
            states.push_back(s);
        }
    const int l = static_cast<int>(space->rank());
    const int top = std::max(1, max_degree);

    Tally heis, same;
    for (int i = 0; i < l; ++i)
        for (int j = 0; j < l; ++j)
            for (int m = 1; m <= top; ++m)
                for (int n = 1; n <= top; ++n)
                    for (const auto& s : states) {
                        const auto ann = HeisElement::gen(space, i, -m), cre = HeisElement::gen(space, j, n);
                        const FockState lhs = fock_apply(ann, fock_apply(cre, s)) - fock_apply(cre, fock_apply(ann, s));
                        const Rational c = m == n ? Rational(m) * space->chi(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) : Rational(0);
                        // Graded commutator: the sign only matters between two odd generators.
                        const bool both_odd = space->odd(static_cast<std::size_t>(i)) && space->odd(static_cast<std::size_t>(j));
                        const FockState graded = both_odd ? fock_apply(ann, fock_apply(cre, s)) + fock_apply(cre, fock_apply(ann, s)) : lhs;
                        heis.sample(graded == s * c, [&] {
                            return "i=" + std::to_string(i) + " j=" + std::to_string(j) + " m=" + std::to_string(m) +
                                   " n=" + std::to_string(n) + " on " + to_string(s);
                        });
                        for (int sign : {1, -1}) {
                            const auto x = HeisElement::gen(space, i, sign * m), y = HeisElement::gen(space, j, sign * n);
                            const FockState xy = fock_apply(x, fock_apply(y, s));
                            const FockState yx = fock_apply(y, fock_apply(x, s));
                            same.sample(both_odd ? (xy + yx).is_zero() : xy == yx, [&] { return "on " + to_string(s); });
                        }
                    }
    heis.emit(rep, "fock/heisenberg");
    same.emit(rep, "fock/same-sign");

    if (l == 1 && !space->odd(0)) {
        // Polynomial model: a(n) = x_n, a(-n) = n chi d/dx_n.
        auto to_poly = [](const FockState& s) {
            oracle::Poly p;
            for (const auto& [mono, c] : s.terms()) {
                std::vector<int> e;
                for (const auto& g : mono.gens) {
                    if (e.size() < static_cast<std::size_t>(g.level)) e.resize(static_cast<std::size_t>(g.level), 0);
                    ++e[static_cast<std::size_t>(g.level - 1)];
                }
                p[e] += c;
            }
            return p;
        };
        Tally model;
        for (const auto& s : states)
            for (int k = -top; k <= top; ++k) {
                if (k == 0) continue;
                const oracle::Poly expected = oracle::fock_op(to_poly(s), k, space->chi(0, 0));
                const oracle::Poly got = to_poly(fock_apply(HeisElement::gen(space, 0, k), s));
                model.sample(expected == got, [&] { return "a(" + std::to_string(k) + ") on " + to_string(s); });
            }
        model.emit(rep, "fock/polynomial-model");
    }
    return rep;
}

Report fock_representation(const SuiteConfig&) {
    Report rep;
    const SpacePtr space = std::make_shared<GradedSpace>(std::vector<std::string>{"e"}, std::vector<bool>{false},
                                                         std::vector<std::vector<Rational>>{{Rational(1)}});
    const std::vector<std::size_t> expected{1, 1, 2, 3, 5, 7};
    for (int n = 0; n <= 5; ++n) {
        const std::size_t d = fock_basis(space, n).size();
        rep.add("fock-dim[n=" + std::to_string(n) + "]", d == expected[static_cast<std::size_t>(n)], std::to_string(d));
    }
    rep.append(fock_checks_for(space, 4));
    const SpacePtr scaled_form = std::make_shared<GradedSpace>(
        std::vector<std::string>{"e"}, std::vector<bool>{false}, std::vector<std::vector<Rational>>{{Rational(-2, 3)}});
    for (const auto& r : fock_checks_for(scaled_form, 4).records) rep.add("chi=-2/3/" + r.id, r.pass, r.detail);
    return rep;
}

// ---------------------------------------------------------------------------
// Hochschild homology

Report hochschild_dims(const SuiteConfig&) {
    Report rep;
    const CatPtr point = point_cat();
    for (int n = 1; n <= 4; ++n) {
        std::vector<std::vector<int>> types;
        for (const auto& p : oracle::all_perms(n)) types.push_back(oracle::cycle_type(p));
        std::sort(types.begin(), types.end());
        const std::size_t classes = static_cast<std::size_t>(std::unique(types.begin(), types.end()) - types.begin());
        const std::size_t d = hh_dim(sym_power(point, n)->cat(), 0, 3);
        rep.add("HH0[Sym^" + std::to_string(n) + " point]", d == classes,
                std::to_string(d) + " (conjugacy classes " + std::to_string(classes) + ")");
    }
    for (int n = 2; n <= 3; ++n) {
        const std::size_t d = hh_dim(sym_power(point, n)->cat(), -1, 4);
        rep.add("HH-1[Sym^" + std::to_string(n) + " point]", d == 0, std::to_string(d));
    }
    return rep;
}

Report chain_maps(const SuiteConfig& cfg) {
    Rng rng = stream(cfg, 8);
    const int n = trials_or(cfg, 100);
    Report rep;
    const CatPtr d1 = dual_numbers_cat(1), d0 = dual_numbers_cat(0), dm = dual_numbers_cat(-1), tp = two_points_cat();
    const SymPtr s2d1 = sym_power(d1, 2), s3d1 = sym_power(d1, 3), s2pt = sym_power(point_cat(), 2);

    {
        const std::vector<CatPtr> cats{d1, dm, d0, tp, s2pt->cat(), s2d1->cat()};
        std::vector<CatPtr> ops;
        for (const auto& c : cats) ops.push_back(opposite_cat(c));
        Tally t;
        for (int i = 0; i < n; ++i) {
            const std::size_t k = static_cast<std::size_t>(i) % cats.size();
            const Chain x = random_chain(cats[k], nullptr, 4, 3, rng);
            t.sample_checked(
                [&] {
                    return commutes_with_d(t, [&](const Chain& c) { return op_chain(c, ops[k]); }, x) &&
                           op_chain(op_chain(x, ops[k]), cats[k]) == x;
                },
                [&] { return to_string(x); });
        }
        t.emit(rep, "op_chain", true);
    }
    {
        std::vector<FunctorPtr> functors;
        for (int g = 0; g < s2d1->action->group->size(); ++g) functors.push_back(group_autoequiv(s2d1->sym, g));
        for (int g = 0; g < s3d1->action->group->size(); ++g) functors.push_back(group_autoequiv(s3d1->sym, g));
        const SymPtr s1d1 = sym_power(d1, 1);
        functors.push_back(sym_inclusion(s1d1, s1d1, s2d1).functor);
        functors.push_back(identity_functor(tp));
        Tally t;
        for (int i = 0; i < n; ++i) {
            const auto& F = functors[static_cast<std::size_t>(i) % functors.size()];
            const Chain x = random_chain(F->source, nullptr, 3, 3, rng);
            t.sample_checked([&] { return commutes_with_d(t, [&](const Chain& c) { return push_chain(*F, c); }, x); },
                             [&] { return to_string(x); });
        }
        t.emit(rep, "push_chain", true);
    }
    {
        const auto& G = *s2d1->action->group;
        const CatPtr power = s2d1->power->cat;
        Tally t;
        for (int i = 0; i < n; ++i) {
            const int g = i % G.size(), h = (i / G.size()) % G.size();
            const int conj = G.mul(G.mul(h, g), G.inv(h));
            const auto& twist = s2d1->action->act[static_cast<std::size_t>(g)];
            const auto& H = *s2d1->action->act[static_cast<std::size_t>(h)];
            const auto& target = s2d1->action->act[static_cast<std::size_t>(conj)];
            const NatTransform ident = identity_components(H, *twist);
            const Chain x = random_chain(power, twist, 3, 3, rng);
            t.sample_checked(
                [&] { return commutes_with_d(t, [&](const Chain& c) { return eta_chain(H, ident, c, target); }, x); },
                [&] { return to_string(x); });
        }
        t.emit(rep, "eta_chain", true);
    }
    {
        const std::vector<std::pair<CatPtr, CatPtr>> pairs{{d1, d1}, {d1, tp}, {d0, d1}, {dm, d1}, {d1, dm}};
        std::vector<TensorPtr> products;
        for (const auto& [a, b] : pairs) products.push_back(tensor_product({a, b}));
        Tally t;
        for (int i = 0; i < n; ++i) {
            const std::size_t k = static_cast<std::size_t>(i) % pairs.size();
            const Chain x = random_chain(pairs[k].first, nullptr, 3, 2, rng);
            const Chain y = random_chain(pairs[k].second, nullptr, 3, 2, rng);
            t.sample_checked(
                [&] {
                    const Rational sign = x.degree() % 2 ? -1 : 1;
                    const Chain lhs = differential(kunneth(x, y, products[k]));
                    if (!lhs.is_zero()) t.witness();
                    return lhs == kunneth(differential(x), y, products[k]) + kunneth(x, differential(y), products[k]) * sign;
                },
                [&] { return to_string(x) + " x " + to_string(y); });
        }
        t.emit(rep, "kunneth", true);
    }
    {
        const std::vector<SymPtr> syms{s2d1, s3d1};
        Tally t;
        for (int i = 0; i < n; ++i) {
            const SymPtr& s = syms[static_cast<std::size_t>(i) % syms.size()];
            const int g = (i / 2) % s->action->group->size();
            const Chain x = random_chain(s->power->cat, s->action->act[static_cast<std::size_t>(g)], 3, 3, rng);
            t.sample_checked([&] { return commutes_with_d(t, [&](const Chain& c) { return xi_chain(s->sym, g, c); }, x); },
                             [&] { return to_string(x); });
        }
        t.emit(rep, "xi_chain", true);
    }
    {
        std::vector<SymPtr> syms;
        for (const auto& c : {d1, dm, dual_numbers_cat(2)})
            for (int k = 1; k <= 3; ++k) syms.push_back(sym_power(c, k));
        std::vector<FunctorPtr> twists;
        for (const auto& s : syms) twists.push_back(long_cycle_twist(s));
        Tally tg, tf;
        for (int i = 0; i < n; ++i) {
            const std::size_t k = static_cast<std::size_t>(i) % syms.size();
            const auto& s = syms[k];
            const Chain x = random_chain(s->base, nullptr, 3, 3, rng);
            tg.sample_checked(
                [&] { return commutes_with_d(tg, [&](const Chain& c) { return g_map(c, s->power, twists[k]); }, x); },
                [&] { return to_string(x); });
            // Adding g(x) makes nonzero differentials of f-images common.
            const Chain y = random_chain(s->power->cat, twists[k], 3, 3, rng) + g_map(x, s->power, twists[k]);
            tf.sample_checked([&] { return commutes_with_d(tf, [&](const Chain& c) { return f_map(c, s->power); }, y); },
                              [&] { return to_string(y); });
        }
        tg.emit(rep, "g_map", true);
        tf.emit(rep, "f_map", true);
    }
    return rep;
}

Report homotopy_identity(const SuiteConfig& cfg) {
    Rng rng = stream(cfg, 9);
    const int n = trials_or(cfg, 100);
    const std::vector<EnvelopePtr> envs{additive_envelope(two_points_cat(), {{0, 1}}),
                                        additive_envelope(dual_numbers_cat(1), {{0, 0}}),
                                        additive_envelope(dual_numbers_cat(-1), {{0, 0}}),
                                        additive_envelope(dual_numbers_cat(2), {{0, 0}, {0, 0, 0}})};
    std::vector<Decomposition> decs;
    for (const auto& e : envs) {
        decs.push_back(envelope_decomposition(*e));
        validate_decomposition(*e->cat, decs.back());
    }
    Tally homotopy, chain_map;
    for (int i = 0; i < n; ++i) {
        const std::size_t k = static_cast<std::size_t>(i) % envs.size();
        const Chain x = random_chain(envs[k]->cat, nullptr, 3, 3, rng);
        homotopy.sample_checked(
            [&] {
                const Chain moved = x - redcts(x, decs[k]);
                if (!moved.is_zero()) homotopy.witness();
                return differential(redcts_homotopy(x, decs[k])) + redcts_homotopy(differential(x), decs[k]) == moved;
            },
            [&] { return to_string(x); });
        chain_map.sample_checked([&] { return commutes_with_d(chain_map, [&](const Chain& c) { return redcts(c, decs[k]); }, x); },
                                 [&] { return to_string(x); });
    }
    Report rep;
    homotopy.emit(rep, "redcts/homotopy", true);
    chain_map.emit(rep, "redcts/chain-map", true);
    return rep;
}

Report f_after_g(const SuiteConfig& cfg) {
    Rng rng = stream(cfg, 10);
    Report rep;
    const CatPtr point = point_cat();
    for (const auto& base : {dual_numbers_cat(1), dual_numbers_cat(-1), two_points_cat()})
        for (int k = 1; k <= 4; ++k) {
            const SymPtr s = sym_power(base, k);
            const FunctorPtr t = long_cycle_twist(s);
            Tally tally;
            for (int i = 0; i < 10; ++i) {
                const Chain x = random_chain(base, nullptr, 1, 3, rng);
                tally.sample_checked([&] { return f_map(g_map(x, s->power, t), s->power) == x; },
                                     [&] { return to_string(x); });
            }
            tally.emit(rep, "fg/length-1[" + base->name() + ",n=" + std::to_string(k) + "]");
        }
    for (int k = 1; k <= 3; ++k) {
        const SymPtr s = sym_power(point, k);
        const FunctorPtr t = long_cycle_twist(s);
        for (int d : {0, -1}) {
            HomologySpace h(point, d, 4);
            bool ok = true;
            for (const auto& b : h.basis()) ok = ok && h.equal(f_map(g_map(b, s->power, t), s->power), b);
            rep.add("fg/HH" + std::to_string(d) + "[point,n=" + std::to_string(k) + "]", ok,
                    "dim " + std::to_string(h.dim()));
        }
    }
    return rep;
}

Report psi_long_cycle(const SuiteConfig&) {
    Report rep;
    const CatPtr point = point_cat();
    const Chain id = euler_class(point, 0).rep;
    for (int n = 1; n <= 4; ++n) {
        const SymPtr s = sym_power(point, n);
        const int t = s->action->group->find_perm(long_cycle(n));
        HomologySpace h(s->cat(), 0, 3);
        const Chain psi = psi_n(id, s);
        rep.add("psi[n=" + std::to_string(n) + "]", h.is_closed(psi) && h.equal(psi, group_element_chain(s, t)),
                to_string(psi));
    }
    return rep;
}

Report euler_pairings(const SuiteConfig&) {
    Report rep;
    const CatPtr point = point_cat();
    for (int n = 1; n <= 4; ++n) {
        const SymPtr s = sym_power(point, n);
        const auto& G = *s->action->group;
        const int t = G.find_perm(long_cycle(n));
        const Chain tc = group_element_chain(s, t);
        const Rational v = euler_pairing(tc, tc);
        rep.add("<t,t>[n=" + std::to_string(n) + "]", v == n, to_string(v));
        if (n == 2) {
            const Rational w = euler_pairing(group_element_chain(s, G.identity), tc);
            rep.add("<e,t>[n=2]", w == 0, to_string(w));
        }
        bool all = true;
        std::string bad;
        for (int a = 0; a < G.size(); ++a)
            for (int b = 0; b < G.size(); ++b) {
                const Rational got = euler_pairing(group_element_chain(s, a), group_element_chain(s, b));
                const long want = oracle::class_pairing(G.perms[static_cast<std::size_t>(a)], G.perms[static_cast<std::size_t>(b)]);
                if (got != want && all) {
                    all = false;
                    bad = G.labels[static_cast<std::size_t>(a)] + "," + G.labels[static_cast<std::size_t>(b)] + ": " +
                          to_string(got) + " vs " + std::to_string(want);
                }
            }
        rep.add("class-function-oracle[n=" + std::to_string(n) + "]", all, bad);
    }
    return rep;
}

Report point_operator_oracle(int nmax) {
    Report rep;
    const FockSpaceHH f(point_cat(), nmax);
    const Chain& alpha = f.alpha_basis().at(0);
    std::vector<std::map<std::vector<int>, std::size_t>> where(static_cast<std::size_t>(nmax) + 1);
    std::vector<std::vector<std::vector<int>>> types(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n)
        for (std::size_t i = 0; i < f.slice(n).basis().size(); ++i) {
            const auto type = class_of(f, n, f.slice(n).basis()[i]);
            if (!type) {
                rep.add("oracle/basis[n=" + std::to_string(n) + "]", false, "basis element is not a group element");
                return rep;
            }
            where[static_cast<std::size_t>(n)][*type] = i;
            types[static_cast<std::size_t>(n)].push_back(*type);
        }
    for (int ho = 0; ho < nmax; ++ho)
        for (int n = 1; ho + n <= nmax; ++n) {
            const std::string tag = "[n=" + std::to_string(n) + ",ho=" + std::to_string(ho) + "]";
            const auto& src = types[static_cast<std::size_t>(ho)];
            const auto& big = types[static_cast<std::size_t>(ho + n)];
            SparseMat cre(big.size(), src.size()), ann(src.size(), big.size());
            for (std::size_t j = 0; j < src.size(); ++j)
                cre.add(where[static_cast<std::size_t>(ho + n)].at(oracle::create(src[j], n)), j, 1);
            for (std::size_t j = 0; j < big.size(); ++j)
                for (const auto& [type, c] : oracle::annihilate(oracle::with_cycle_type(big[j]), ho, n))
                    if (c != 0) ann.add(where[static_cast<std::size_t>(ho)].at(type), j, c);
            rep.add("oracle/creation" + tag, f.creation(alpha, n, ho) == cre, to_string(f.creation(alpha, n, ho)));
            rep.add("oracle/annihilation" + tag, f.annihilation(alpha, n, ho) == ann,
                    to_string(f.annihilation(alpha, n, ho)));
        }
    return rep;
}

Report operator_relations(const SuiteConfig&) {
    Report rep;
    const CatPtr point = point_cat(), tp = two_points_cat();
    for (const auto& r : heisenberg_report(point, 4).records) rep.add("point/" + r.id, r.pass, r.detail);
    for (const auto& r : adjointness_report(point, 3).records) rep.add("point/" + r.id, r.pass, r.detail);
    for (const auto& r : point_operator_oracle(4).records) rep.add("point/" + r.id, r.pass, r.detail);
    for (const auto& r : heisenberg_report(tp, 3).records) rep.add("two-points/" + r.id, r.pass, r.detail);
    for (const auto& r : adjointness_report(tp, 3).records) rep.add("two-points/" + r.id, r.pass, r.detail);
    return rep;
}

Report fock_identification_suite(const SuiteConfig&) {
    Report rep;
    for (const auto& r : fock_identification(point_cat(), 4).records) rep.add("point/" + r.id, r.pass, r.detail);
    for (const auto& r : fock_identification(two_points_cat(), 3).records) rep.add("two-points/" + r.id, r.pass, r.detail);
    return rep;
}

Report restriction_square(const SuiteConfig&) {
    Report rep;
    struct Case {
        CatPtr base;
        int n;
        std::string name;
        GroupPtr sub;
    };
    const CatPtr point = point_cat(), tp = two_points_cat();
    std::vector<Case> cases;
    for (const auto& base : {point, tp}) {
        cases.push_back({base, 2, "trivial", permutation_group({{0, 1}})});
        cases.push_back({base, 2, "S2", symmetric_group(2)});
        cases.push_back({base, 3, "trivial", permutation_group({{0, 1, 2}})});
        cases.push_back({base, 3, "S2xS1", young_subgroup(2, 1)});
        cases.push_back({base, 3, "S3", symmetric_group(3)});
    }
    for (const auto& cs : cases) {
        const SymPtr s = sym_power(cs.base, cs.n);
        const auto& G = *s->action->group;
        const SemidirectPtr small = sym_subgroup(s, cs.sub);
        const auto emb = embed_subgroup(*cs.sub, G);
        const Cosets cos = make_cosets(G, *cs.sub, emb, default_coset_reps(G, emb));
        HomologySpace target(small->cat, 0, 2);
        const CatPtr power = s->power->cat;

        bool ok = true;
        std::string bad;
        int checked = 0;
        for (int g = 0; g < G.size(); ++g) {
            HomologySpace twisted(power, 0, 2, s->action->act[static_cast<std::size_t>(g)]);
            for (const auto& alpha : twisted.basis()) {
                const Chain lhs = restrict_chain(s->sym, small, cos, xi_chain(s->sym, g, alpha));
                Chain rhs(small->cat);
                for (std::size_t qi = 0; qi < cos.reps.size(); ++qi) {
                    if (cos.act[static_cast<std::size_t>(g)][qi] != static_cast<int>(qi)) continue;
                    const int h = cos.h[static_cast<std::size_t>(g)][qi];
                    const int r_inv = G.inv(cos.reps[qi]);
                    const LinFunctor& R = *s->action->act[static_cast<std::size_t>(r_inv)];
                    const Chain moved = eta_chain(R, identity_components(R, *s->action->act[static_cast<std::size_t>(g)]), alpha,
                                                  small->action->act[static_cast<std::size_t>(h)]);
                    rhs += xi_chain(small, h, moved);
                }
                ++checked;
                if (!target.is_closed(lhs) || !target.equal(lhs, rhs)) {
                    if (ok) bad = "g=" + G.labels[static_cast<std::size_t>(g)] + " alpha=" + to_string(alpha);
                    ok = false;
                }
            }
        }
        rep.add("res-xi[" + cs.base->name() + ",S" + std::to_string(cs.n) + "," + cs.name + "]", ok && checked > 0,
                ok ? std::to_string(checked) + " classes" : bad);
    }
    for (const auto& base : {point, tp})
        for (int n = 1; n <= 3; ++n) {
            const SymPtr s = sym_power(base, n);
            HomologySpace h(s->cat(), 0, 2);
            bool ok = true;
            for (int g = 0; g < s->action->group->size(); ++g) {
                const FunctorPtr F = group_autoequiv(s->sym, g);
                for (const auto& b : h.basis()) ok = ok && h.equal(push_chain(*F, b), b);
            }
            rep.add("triviality[" + base->name() + ",n=" + std::to_string(n) + "]", ok, "dim " + std::to_string(h.dim()));
        }
    return rep;
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all{
        {1, "combinatorial identities", combinatorial_identities},
        {2, "fiber sizes and reindexing", fiber_and_reindexing},
        {3, "PQ relations from A-generators", pq_relations},
        {4, "basis decomposition versus exponentiation", decomposition_vs_exponentiation},
        {5, "filtered monomial counts", filtered_dims},
        {6, "Fock representation", fock_representation},
        {7, "Hochschild dimensions of symmetric powers", hochschild_dims},
        {8, "chain maps commute with differentials", chain_maps},
        {9, "continuous-chain homotopy", homotopy_identity},
        {10, "f after g is the identity", f_after_g},
        {11, "psi of the identity is the long cycle", psi_long_cycle},
        {12, "Euler pairings", euler_pairings},
        {13, "operator relations on symmetric powers", operator_relations},
        {14, "Fock identification", fock_identification_suite},
        {15, "restriction square and triviality", restriction_square},
    };
    return all;
}

const Criterion& criterion(int number) {
    for (const auto& c : criteria())
        if (c.number == number) return c;
    throw OutOfRange("no criterion " + std::to_string(number));
}

}  // namespace heis::suites

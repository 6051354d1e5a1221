#include <algorithm>
#include <functional>

#include "heis/hochschild.hpp"

namespace heis {

namespace {

int parity_sign(long k) { return (k % 2 != 0) ? -1 : 1; }

SparseVec unit(int m) { return SparseVec{{m, Rational(1)}}; }

// Expands a tuple of combinations of factor morphisms into a combination of tensor morphisms.
SparseVec tensor_vec(const TensorCat& t, const std::vector<SparseVec>& parts) {
    std::map<int, Rational> acc;
    std::vector<int> cur(parts.size());
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& c) {
        if (i == parts.size()) {
            acc[t.morphism_id(cur)] += c;
            return;
        }
        for (const auto& [m, v] : parts[i]) {
            cur[i] = m;
            rec(i + 1, c * v);
        }
    };
    rec(0, Rational(1));
    return sparse_from_map(acc);
}

// Sign of the permutation sorting `order` (a rearrangement of 0..k-1) when item i has parity odd[i].
int koszul_sign(const std::vector<int>& order, const std::vector<bool>& odd) {
    long swaps = 0;
    for (std::size_t a = 0; a < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b)
            if (order[a] > order[b] && odd[order[a]] && odd[order[b]]) ++swaps;
    return parity_sign(swaps);
}

void require_untwisted(const Chain& c, const char* what) {
    if (c.twist()) throw TwistedUnsupported(std::string(what) + " takes untwisted chains");
}

}  // namespace

// Keeps a_0 in front and reverses the rest; a literal full reversal would move
// the distinguished factor and fail to commute with the wrap-around term.
Chain op_chain(const Chain& c, const CatPtr& op) {
    require_untwisted(c, "op_chain");
    if (op->num_morphisms() != c.cat()->num_morphisms() || op->num_objects() != c.cat()->num_objects())
        throw CategoryMismatch("op_chain target is not the opposite category");
    const LinCat& A = *c.cat();
    Chain out(op);
    for (const auto& [b, v] : c.terms()) {
        const long n = static_cast<long>(b.size()) - 1;
        long swaps = n * (n + 1) / 2;
        for (std::size_t i = 1; i < b.size(); ++i)
            for (std::size_t j = i + 1; j < b.size(); ++j) swaps += static_cast<long>(A.degree(b[i])) * A.degree(b[j]);
        BasicChain r{b[0]};
        for (std::size_t i = b.size() - 1; i >= 1; --i) r.push_back(b[i]);
        out.add(r, v * parity_sign(swaps));
    }
    return out;
}

Chain push_chain(const LinFunctor& f, const Chain& c, const FunctorPtr& target_twist) {
    if (f.source != c.cat()) throw CategoryMismatch("functor source differs from the chain category");
    Chain out(f.target, target_twist);
    for (const auto& [b, v] : c.terms()) {
        std::vector<SparseVec> parts;
        for (int m : b) parts.push_back(f.on_morphism(m));
        add_expanded(out, parts, v);
    }
    return out;
}

Chain eta_chain(const LinFunctor& h, const NatTransform& eta, const Chain& c, const FunctorPtr& target_twist) {
    if (h.source != c.cat()) throw CategoryMismatch("functor source differs from the chain category");
    if (eta.component.size() != c.cat()->num_objects())
        throw ShapeMismatch("natural transformation needs one component per object");
    const LinCat& A = *c.cat();
    Chain out(h.target, target_twist);
    for (const auto& [b, v] : c.terms()) {
        std::vector<SparseVec> parts;
        const int x0 = A.src(b.back());
        parts.push_back(h.target->compose(eta.component[static_cast<std::size_t>(x0)], h.on_morphism(b[0])));
        for (std::size_t i = 1; i < b.size(); ++i) parts.push_back(h.on_morphism(b[i]));
        add_expanded(out, parts, v);
    }
    return out;
}

Chain kunneth(const Chain& x, const Chain& y, const TensorPtr& ab, const FunctorPtr& twist) {
    if (ab->factors.size() != 2 || ab->factors[0] != x.cat() || ab->factors[1] != y.cat())
        throw CategoryMismatch("kunneth target must be the tensor of the two chain categories");
    const LinCat& A = *x.cat();
    const LinCat& B = *y.cat();
    Chain out(ab->cat, twist);
    for (const auto& [a, ca] : x.terms()) {
        for (const auto& [b, cb] : y.terms()) {
            const std::size_t n = a.size() - 1, m = b.size() - 1;
            long total_a = 0;
            for (int f : a) total_a += A.degree(f);
            // mask[k] = true when slot k (after the first) takes the next a-factor
            std::vector<bool> mask(n + m, false);
            std::fill(mask.begin(), mask.begin() + static_cast<long>(n), true);
            std::sort(mask.begin(), mask.end());
            do {
                std::vector<SparseVec> parts;
                parts.push_back(tensor_vec(*ab, {unit(a[0]), unit(b[0])}));
                int obj_a = A.src(a[0]), obj_b = B.src(b[0]);
                std::size_t i = 1, j = 1;
                // b_0 passes a_1..a_n; the b-tail suspensions pass every a
                long exponent = static_cast<long>(B.degree(b[0])) * (total_a - A.degree(a[0])) +
                                total_a * static_cast<long>(m);
                for (bool take_a : mask) {
                    if (take_a) {
                        // shuffle sign and Koszul sign for each b_l already left of a_i
                        for (std::size_t l = 1; l < j; ++l)
                            exponent += 1 + static_cast<long>(A.degree(a[i])) * B.degree(b[l]);
                        parts.push_back(tensor_vec(*ab, {unit(a[i]), B.identity(obj_b)}));
                        obj_a = A.src(a[i]);
                        ++i;
                    } else {
                        parts.push_back(tensor_vec(*ab, {A.identity(obj_a), unit(b[j])}));
                        obj_b = B.src(b[j]);
                        ++j;
                    }
                }
                add_expanded(out, parts, ca * cb * parity_sign(exponent));
            } while (std::next_permutation(mask.begin(), mask.end()));
        }
    }
    return out;
}

Chain xi_chain(const SemidirectPtr& s, int g, const Chain& c) {
    if (c.cat() != s->base) throw CategoryMismatch("xi_chain expects a chain over the base category");
    const GroupAction& act = *s->action;
    const bool twist_ok = c.twist() ? c.twist() == act.act.at(static_cast<std::size_t>(g))
                                    : g == act.group->identity;
    if (!twist_ok) throw CategoryMismatch("chain is not twisted by the given group element");
    const int ginv = act.group->inv(g);
    const int e = act.group->identity;
    Chain out(s->cat);
    for (const auto& [b, v] : c.terms()) {
        std::vector<SparseVec> parts;
        parts.push_back(s->with_group(act.of(ginv).on_morphism(b[0]), ginv));
        for (std::size_t i = 1; i < b.size(); ++i) parts.push_back(unit(s->morphism_id(b[i], e)));
        add_expanded(out, parts, v);
    }
    return out;
}

std::map<int, Chain> baranovsky_forward(const SemidirectPtr& s, const Chain& c) {
    if (c.cat() != s->cat) throw CategoryMismatch("baranovsky_forward expects a chain over the semidirect product");
    require_untwisted(c, "baranovsky_forward");
    const GroupAction& act = *s->action;
    const FiniteGroup& G = *act.group;
    std::map<int, Chain> out;
    for (const auto& [b, v] : c.terms()) {
        std::vector<SparseVec> parts;
        int prefix = G.identity;
        for (int m : b) {
            parts.push_back(act.of(prefix).on_morphism(s->alpha_of(m)));
            prefix = G.mul(prefix, s->group_of(m));
        }
        const int sector = G.inv(prefix);
        auto it = out.find(sector);
        if (it == out.end())
            it = out.emplace(sector, Chain(s->base, act.act.at(static_cast<std::size_t>(sector)))).first;
        add_expanded(it->second, parts, v);
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// ---------------------------------------------------------------------------
// Object decompositions

Decomposition trivial_decomposition(const LinCat& cat) {
    Decomposition dec(cat.num_objects());
    for (std::size_t a = 0; a < cat.num_objects(); ++a) {
        const int o = static_cast<int>(a);
        dec[a].push_back(Summand{o, cat.identity(o), cat.identity(o)});
    }
    return dec;
}

Decomposition envelope_decomposition(const Envelope& env) {
    const LinCat& E = *env.cat;
    Decomposition dec(E.num_objects());
    for (std::size_t o = 0; o < E.num_objects(); ++o) {
        const auto& terms = env.sums[o];
        const int obj = static_cast<int>(o);
        if (terms.size() == 1) {
            dec[o].push_back(Summand{obj, E.identity(obj), E.identity(obj)});
            continue;
        }
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const int x = env.singleton(terms[k]);
            const int id = env.base->identity_basis(terms[k]);
            const int row = static_cast<int>(k);
            dec[o].push_back(Summand{x, unit(env.entry_id(x, obj, row, 0, id)), unit(env.entry_id(obj, x, 0, row, id))});
        }
    }
    return dec;
}

namespace {

bool all_between(const LinCat& cat, const SparseVec& v, int from, int to) {
    for (const auto& [m, c] : v)
        if (cat.src(m) != from || cat.tgt(m) != to || cat.degree(m) != 0) return false;
    return true;
}

}  // namespace

void validate_decomposition(const LinCat& cat, const Decomposition& dec) {
    if (dec.size() != cat.num_objects()) throw InvalidDecomposition("one summand list per object is required");
    for (std::size_t a = 0; a < dec.size(); ++a) {
        const int obj = static_cast<int>(a);
        if (dec[a].empty()) throw InvalidDecomposition("object without summands");
        SparseVec total;
        for (std::size_t s = 0; s < dec[a].size(); ++s) {
            const Summand& x = dec[a][s];
            if (!all_between(cat, x.iota, x.object, obj) || !all_between(cat, x.pi, obj, x.object))
                throw InvalidDecomposition("inclusion or projection has the wrong endpoints");
            for (std::size_t t = 0; t < dec[a].size(); ++t) {
                const Summand& y = dec[a][t];
                SparseVec p = cat.compose(y.pi, x.iota);
                const SparseVec expect = s == t ? cat.identity(x.object) : SparseVec{};
                if (p != expect) throw InvalidDecomposition("summands are not orthogonal idempotents");
            }
            sparse_axpy(total, 1, cat.compose(x.iota, x.pi));
        }
        if (total != cat.identity(obj)) throw InvalidDecomposition("summands do not add up to the identity");
    }
}

Chain redcts(const Chain& c, const Decomposition& dec) {
    require_untwisted(c, "redcts");
    const LinCat& A = *c.cat();
    Chain out(c.cat());
    for (const auto& [b, v] : c.terms()) {
        const std::size_t len = b.size();
        // object x_k = tgt(b[k]); choose a summand at each
        std::vector<std::size_t> choice(len, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == len) {
                std::vector<SparseVec> parts;
                for (std::size_t i = 0; i < len; ++i) {
                    const auto& here = dec[static_cast<std::size_t>(A.tgt(b[i]))][choice[i]];
                    const std::size_t nxt = (i + 1) % len;
                    const auto& there = dec[static_cast<std::size_t>(A.tgt(b[nxt]))][choice[nxt]];
                    parts.push_back(A.compose(here.pi, A.compose(unit(b[i]), there.iota)));
                    if (parts.back().empty()) return;
                }
                add_expanded(out, parts, v);
                return;
            }
            const auto& options = dec[static_cast<std::size_t>(A.tgt(b[k]))];
            for (std::size_t s = 0; s < options.size(); ++s) {
                choice[k] = s;
                rec(k + 1);
            }
        };
        rec(0);
    }
    return out;
}

// For a_0 x .. x a_n: sum over i of
//   (-1)^{i+1} (pi_{t_0} a_0) x a_1 x .. x a_i x iota_{t_{i+1}} x (pi a_{i+1} iota) x .. x (pi_{t_n} a_n iota_{t_0})
// with summands t_0 and t_{i+1}..t_n chosen freely.
Chain redcts_homotopy(const Chain& c, const Decomposition& dec) {
    require_untwisted(c, "redcts_homotopy");
    const LinCat& A = *c.cat();
    Chain out(c.cat());
    for (const auto& [b, v] : c.terms()) {
        const std::size_t n = b.size() - 1;
        auto obj = [&](std::size_t k) { return static_cast<std::size_t>(A.tgt(b[k % (n + 1)])); };
        for (std::size_t i = 0; i <= n; ++i) {
            const Rational sign = parity_sign(static_cast<long>(i) + 1);
            // chosen[k] for k = 0 and k = i+1..n
            std::vector<std::size_t> chosen(n + 1, 0);
            std::function<void(std::size_t)> rec = [&](std::size_t k) {
                if (k == n + 1) {
                    auto summand = [&](std::size_t slot) -> const Summand& {
                        return dec[obj(slot)][chosen[slot % (n + 1)]];
                    };
                    std::vector<SparseVec> parts;
                    parts.push_back(A.compose(summand(0).pi, unit(b[0])));
                    for (std::size_t l = 1; l <= i; ++l) parts.push_back(unit(b[l]));
                    parts.push_back(summand(i + 1).iota);
                    for (std::size_t l = i + 1; l <= n; ++l)
                        parts.push_back(A.compose(summand(l).pi, A.compose(unit(b[l]), summand(l + 1).iota)));
                    for (const auto& p : parts)
                        if (p.empty()) return;
                    add_expanded(out, parts, v * sign);
                    return;
                }
                if (k >= 1 && k <= i) {
                    rec(k + 1);
                    return;
                }
                for (std::size_t s = 0; s < dec[obj(k)].size(); ++s) {
                    chosen[k] = s;
                    rec(k + 1);
                }
            };
            rec(0);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Restriction to a subgroup

std::vector<int> embed_subgroup(const FiniteGroup& H, const FiniteGroup& G) {
    std::vector<int> emb;
    for (int h = 0; h < H.size(); ++h) {
        const int g = H.perms.empty() ? -1 : G.find_perm(H.perms[static_cast<std::size_t>(h)]);
        if (g < 0) throw BadCosets("subgroup element " + H.labels[static_cast<std::size_t>(h)] + " not found");
        emb.push_back(g);
    }
    return emb;
}

std::vector<int> default_coset_reps(const FiniteGroup& G, const std::vector<int>& embedding) {
    std::vector<bool> covered(static_cast<std::size_t>(G.size()), false);
    std::vector<int> reps;
    for (int g = 0; g < G.size(); ++g) {
        const int r = reps.empty() ? G.identity : g;
        if (covered[static_cast<std::size_t>(r)]) continue;
        reps.push_back(r);
        for (int h : embedding) covered[static_cast<std::size_t>(G.mul(r, h))] = true;
        if (r != g) --g;
    }
    return reps;
}

Cosets make_cosets(const FiniteGroup& G, const FiniteGroup& H, const std::vector<int>& embedding,
                   const std::vector<int>& reps) {
    if (embedding.size() != static_cast<std::size_t>(H.size())) throw BadCosets("embedding size mismatch");
    if (reps.empty() || reps[0] != G.identity) throw BadCosets("the first representative must be the identity");
    if (reps.size() * embedding.size() != static_cast<std::size_t>(G.size()))
        throw BadCosets("wrong number of coset representatives");
    std::vector<int> in_h(static_cast<std::size_t>(G.size()), -1);
    for (std::size_t h = 0; h < embedding.size(); ++h) in_h[static_cast<std::size_t>(embedding[h])] = static_cast<int>(h);
    std::vector<int> coset_of(static_cast<std::size_t>(G.size()), -1);
    for (std::size_t q = 0; q < reps.size(); ++q)
        for (int h : embedding) {
            auto& slot = coset_of[static_cast<std::size_t>(G.mul(reps[q], h))];
            if (slot >= 0) throw BadCosets("two representatives lie in the same coset");
            slot = static_cast<int>(q);
        }
    Cosets out;
    out.reps = reps;
    out.embedding = embedding;
    out.act.assign(static_cast<std::size_t>(G.size()), std::vector<int>(reps.size()));
    out.h.assign(static_cast<std::size_t>(G.size()), std::vector<int>(reps.size()));
    for (int g = 0; g < G.size(); ++g)
        for (std::size_t q = 0; q < reps.size(); ++q) {
            const int gr = G.mul(g, reps[q]);
            const int target = coset_of[static_cast<std::size_t>(gr)];
            out.act[static_cast<std::size_t>(g)][q] = target;
            const int h = G.mul(G.inv(reps[static_cast<std::size_t>(target)]), gr);
            out.h[static_cast<std::size_t>(g)][q] = in_h[static_cast<std::size_t>(h)];
        }
    return out;
}

// Res(alpha_0, g_0) x .. x Res(alpha_m, g_m), keeping only the continuous part:
// over cosets q fixed by g_0..g_m, with t_0 = q and t_{k+1} = g_k^{-1}.t_k,
// the k-th factor is (r_{t_k}^{-1} alpha_k, h_{g_k, t_{k+1}}).
Chain restrict_chain(const SemidirectPtr& big, const SemidirectPtr& small, const Cosets& cosets, const Chain& c) {
    if (c.cat() != big->cat) throw CategoryMismatch("restrict_chain expects a chain over the larger semidirect product");
    require_untwisted(c, "restrict_chain");
    if (small->base != big->base) throw CategoryMismatch("restriction must keep the base category");
    const FiniteGroup& G = *big->action->group;
    Chain out(small->cat);
    const std::size_t nq = cosets.reps.size();
    for (const auto& [b, v] : c.terms()) {
        for (std::size_t q = 0; q < nq; ++q) {
            std::vector<SparseVec> parts;
            std::size_t t = q;
            for (int m : b) {
                const int g = big->group_of(m);
                const std::size_t next = static_cast<std::size_t>(cosets.act[static_cast<std::size_t>(G.inv(g))][t]);
                const int rinv = G.inv(cosets.reps[t]);
                const int h = cosets.h[static_cast<std::size_t>(g)][next];
                parts.push_back(small->with_group(big->action->of(rinv).on_morphism(big->alpha_of(m)), h));
                t = next;
            }
            if (t != q) continue;
            add_expanded(out, parts, v);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Long-cycle maps. A matrix chain has m rows; row r is a morphism of A^{(x)n}
// whose entries are read column by column, top to bottom, then on to the
// next column; the last entry wraps to the first through the long cycle.

Chain matrix_chain(const TensorPtr& power, const FunctorPtr& t, const std::vector<std::vector<int>>& rows,
                   const Rational& c) {
    BasicChain b;
    for (const auto& r : rows) b.push_back(power->morphism_id(r));
    if (!is_composable(*power->cat, t.get(), b)) throw ShapeMismatch("matrix rows are not composable");
    return Chain::basic(power->cat, b, c, t);
}

namespace {

const CatPtr& power_base(const TensorPtr& power) {
    for (const auto& f : power->factors)
        if (f != power->factors.front()) throw CategoryMismatch("expected a tensor power of one category");
    return power->factors.front();
}

}  // namespace

// Sum over column choices c with c_0 = 0; a_k goes to the k-th non-identity
// slot in column-major order, every other slot is an identity on the object
// of the next a in that order. Sign: the permutation sign of rows versus
// chain order times the Koszul sign of the entries.
Chain g_map(const Chain& c, const TensorPtr& power, const FunctorPtr& t) {
    require_untwisted(c, "g_map");
    const CatPtr& base = power_base(power);
    if (c.cat() != base) throw CategoryMismatch("g_map expects a chain over the base of the power");
    const LinCat& A = *base;
    const int n = static_cast<int>(power->factors.size());
    Chain out(power->cat, t);
    for (const auto& [b, v] : c.terms()) {
        const std::size_t m = b.size();
        std::vector<int> col(m, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t r) {
            if (r < m) {
                for (int j = 0; j < (r == 0 ? 1 : n); ++j) {
                    col[r] = j;
                    rec(r + 1);
                }
                return;
            }
            // positions sorted column-major: rank[r] = index of a placed in row r
            std::vector<int> order(m);
            for (std::size_t r2 = 0; r2 < m; ++r2) order[r2] = static_cast<int>(r2);
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                return std::pair(col[static_cast<std::size_t>(x)], x) < std::pair(col[static_cast<std::size_t>(y)], y);
            });
            std::vector<int> rank(m);
            for (std::size_t k = 0; k < m; ++k) rank[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
            // object at slot (r, j) for an identity: target of the next a in column-major order
            auto next_target = [&](std::size_t r2, int j) {
                int best = -1;
                for (std::size_t k = 0; k < m; ++k) {
                    const auto p = static_cast<std::size_t>(order[k]);
                    if (std::pair(col[p], p) > std::pair(j, r2)) {
                        best = static_cast<int>(k);
                        break;
                    }
                }
                if (best < 0) best = 0;
                return A.tgt(b[static_cast<std::size_t>(best)]);
            };
            std::vector<SparseVec> rows;
            std::vector<bool> odd(m);
            for (std::size_t k = 0; k < m; ++k) odd[k] = A.degree(b[k]) % 2 != 0;
            for (std::size_t r2 = 0; r2 < m; ++r2) {
                std::vector<SparseVec> entries;
                for (int j = 0; j < n; ++j) {
                    if (j == col[r2]) entries.push_back(unit(b[static_cast<std::size_t>(rank[r2])]));
                    else entries.push_back(A.identity(next_target(r2, j)));
                }
                rows.push_back(tensor_vec(*power, entries));
            }
            add_expanded(out, rows, v * perm_sign(rank) * koszul_sign(rank, odd));
        };
        rec(0);
    }
    return out;
}

// (1/n) sum_i (X_i o a_{0,i}) x a_{1,i} x .. x a_{m-1,i}, where X_i composes the
// entries of columns i+1, .., i-1 (cyclically) along the column-major path.
// Sign: Koszul sign of moving the graded entries from row-major order into
// that order.
Chain f_map(const Chain& mc, const TensorPtr& power) {
    const CatPtr& base = power_base(power);
    if (mc.cat() != power->cat) throw CategoryMismatch("f_map expects a chain over the tensor power");
    const LinCat& A = *base;
    const std::size_t n = power->factors.size();
    Chain out(base);
    const Rational scale = Rational(1, static_cast<long>(n));
    for (const auto& [b, v] : mc.terms()) {
        const std::size_t m = b.size();
        std::vector<std::vector<int>> e(m);
        for (std::size_t r = 0; r < m; ++r) e[r] = power->morphism_tuple(b[r]);
        auto entry_id = [&](std::size_t r, std::size_t j) { return static_cast<int>(r * n + j); };
        std::vector<bool> odd(m * n, false);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t j = 0; j < n; ++j) odd[static_cast<std::size_t>(entry_id(r, j))] = A.degree(e[r][j]) % 2 != 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<int> order;
            SparseVec first;
            bool started = false;
            for (std::size_t dj = 1; dj < n; ++dj) {
                const std::size_t j = (i + dj) % n;
                for (std::size_t r = 0; r < m; ++r) {
                    order.push_back(entry_id(r, j));
                    first = started ? A.compose(first, unit(e[r][j])) : unit(e[r][j]);
                    started = true;
                }
            }
            order.push_back(entry_id(0, i));
            first = started ? A.compose(first, unit(e[0][i])) : unit(e[0][i]);
            if (first.empty()) continue;
            std::vector<SparseVec> parts{first};
            for (std::size_t r = 1; r < m; ++r) {
                order.push_back(entry_id(r, i));
                parts.push_back(unit(e[r][i]));
            }
            add_expanded(out, parts, v * scale * koszul_sign(order, odd));
        }
    }
    return out;
}

Chain psi_n(const Chain& c, const SymPtr& sym) {
    if (!differential(c).is_zero()) throw NotClosed("psi_n needs a closed chain");
    const FiniteGroup& G = *sym->action->group;
    const int t = G.find_perm(long_cycle(sym->n));
    const FunctorPtr& twist = sym->action->act.at(static_cast<std::size_t>(t));
    return xi_chain(sym->sym, t, g_map(c, sym->power, twist));
}

// ---------------------------------------------------------------------------
// Euler class and pairing

HHClass euler_class(const CatPtr& cat, int object) {
    Chain c(cat);
    add_expanded(c, {cat->identity(object)}, 1);
    return HHClass::of(c);
}

// Supertrace over Hom(b, a) of phi -> f o phi o g, extended bilinearly.
Rational euler_pairing(const Chain& x, const Chain& y) {
    if (x.cat() != y.cat()) throw CategoryMismatch("pairing chains over different categories");
    const LinCat& A = *x.cat();
    Rational total = 0;
    for (const auto& [bf, cf] : x.terms()) {
        if (bf.size() != 1) throw UnsupportedRepresentative("pairing needs length-1 representatives");
        if (A.degree(bf[0]) != 0) throw DegreeMismatch("pairing is defined on degree-0 classes");
        for (const auto& [bg, cg] : y.terms()) {
            if (bg.size() != 1) throw UnsupportedRepresentative("pairing needs length-1 representatives");
            if (A.degree(bg[0]) != 0) throw DegreeMismatch("pairing is defined on degree-0 classes");
            const int a = A.tgt(bf[0]), b = A.src(bg[0]);
            for (int phi : A.hom(b, a)) {
                SparseVec img = A.compose(unit(bf[0]), A.compose(unit(phi), unit(bg[0])));
                total += cf * cg * parity_sign(A.degree(phi)) * sparse_get(img, phi);
            }
        }
    }
    return total;
}

}  // namespace heis

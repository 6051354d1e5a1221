#include "heis/dgcat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace heis {

namespace {

std::uint64_t pair_key(int g, int f) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) |
           static_cast<std::uint32_t>(f);
}

const std::vector<int> kEmpty;

SparseVec single(int m, const Rational& c = 1) { return SparseVec{{m, c}}; }

int koszul(int a, int b) { return ((a & 1) && (b & 1)) ? -1 : 1; }

}  // namespace

// ---------------------------------------------------------------------------
// LinCat

int LinCat::add_object(std::string label) {
    objects_.push_back(std::move(label));
    identity_.emplace_back();
    into_.emplace_back();
    out_.emplace_back();
    return static_cast<int>(objects_.size()) - 1;
}

int LinCat::add_morphism(int src, int tgt, int degree, std::string label) {
    if (src < 0 || tgt < 0 || static_cast<std::size_t>(src) >= objects_.size() ||
        static_cast<std::size_t>(tgt) >= objects_.size())
        throw InvalidCategory("morphism endpoints out of range");
    int id = static_cast<int>(morphisms_.size());
    morphisms_.push_back({src, tgt, degree, std::move(label)});
    differential_.emplace_back();
    hom_[{src, tgt}].push_back(id);
    into_[static_cast<std::size_t>(tgt)].push_back(id);
    out_[static_cast<std::size_t>(src)].push_back(id);
    return id;
}

void LinCat::set_identity(int object, int morphism) { set_identity(object, single(morphism)); }

void LinCat::set_identity(int object, SparseVec value) {
    identity_.at(static_cast<std::size_t>(object)) = std::move(value);
}

void LinCat::set_differential(int morphism, SparseVec value) {
    differential_.at(static_cast<std::size_t>(morphism)) = std::move(value);
}

void LinCat::set_composition(int g, int f, SparseVec value) {
    if (src(g) != tgt(f)) throw InvalidCategory("composition of non-composable morphisms");
    std::erase_if(value, [](const auto& e) { return e.second == 0; });
    if (value.empty()) composition_.erase(pair_key(g, f));
    else composition_[pair_key(g, f)] = std::move(value);
}

void LinCat::fill_identity_compositions() {
    for (std::size_t a = 0; a < objects_.size(); ++a) {
        int id = identity_basis(static_cast<int>(a));
        for (int f : into_[a]) set_composition(id, f, single(f));
        for (int g : out_[a]) set_composition(g, id, single(g));
    }
}

int LinCat::identity_basis(int a) const {
    const SparseVec& id = identity(a);
    if (id.size() != 1 || id[0].second != 1)
        throw InvalidCategory("identity of " + object_label(a) + " is not a basis morphism");
    return id[0].first;
}

bool LinCat::is_identity(int m) const {
    const SparseVec& id = identity(src(m));
    return id.size() == 1 && id[0].first == m && id[0].second == 1;
}

const std::vector<int>& LinCat::hom(int a, int b) const {
    auto it = hom_.find({a, b});
    return it == hom_.end() ? kEmpty : it->second;
}

SparseVec LinCat::d(const SparseVec& x) const {
    SparseVec out;
    for (const auto& [m, c] : x) sparse_axpy(out, c, d(m));
    return out;
}

SparseVec LinCat::compose(int g, int f) const {
    if (src(g) != tgt(f))
        throw CategoryMismatch("cannot compose " + morphism(g).label + " after " + morphism(f).label);
    auto it = composition_.find(pair_key(g, f));
    return it == composition_.end() ? SparseVec{} : it->second;
}

SparseVec LinCat::compose(const SparseVec& g, const SparseVec& f) const {
    std::map<int, Rational> acc;
    for (const auto& [mg, cg] : g)
        for (const auto& [mf, cf] : f) {
            if (src(mg) != tgt(mf)) continue;
            auto it = composition_.find(pair_key(mg, mf));
            if (it == composition_.end()) continue;
            Rational c = cg * cf;
            for (const auto& [k, v] : it->second) acc[k] += c * v;
        }
    return sparse_from_map(acc);
}

bool LinCat::concentrated_in_degree_zero() const {
    return std::all_of(morphisms_.begin(), morphisms_.end(), [](const auto& m) { return m.degree == 0; });
}

int LinCat::find_object(const std::string& label) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
        if (objects_[i] == label) return static_cast<int>(i);
    return -1;
}

int LinCat::find_morphism(const std::string& label) const {
    for (std::size_t i = 0; i < morphisms_.size(); ++i)
        if (morphisms_[i].label == label) return static_cast<int>(i);
    return -1;
}

Report LinCat::check() const {
    Report rep;
    auto homogeneous = [&](const SparseVec& v, int s, int t, int deg) {
        return std::all_of(v.begin(), v.end(), [&](const auto& e) {
            const auto& m = morphism(e.first);
            return m.src == s && m.tgt == t && m.degree == deg;
        });
    };
    bool ok_id = true, ok_d = true, ok_dd = true, ok_unit = true, ok_deg = true, ok_leib = true,
         ok_assoc = true;
    for (std::size_t a = 0; a < objects_.size(); ++a) {
        const int ai = static_cast<int>(a);
        const SparseVec& id = identity_[a];
        if (id.empty() || !homogeneous(id, ai, ai, 0) || !d(id).empty()) ok_id = false;
    }
    for (std::size_t m = 0; m < morphisms_.size(); ++m) {
        const auto& b = morphisms_[m];
        const int mi = static_cast<int>(m);
        if (!homogeneous(d(mi), b.src, b.tgt, b.degree + 1)) ok_d = false;
        if (!d(d(mi)).empty()) ok_dd = false;
        if (ok_id) {
            if (compose(identity(b.tgt), single(mi)) != single(mi)) ok_unit = false;
            if (compose(single(mi), identity(b.src)) != single(mi)) ok_unit = false;
        }
    }
    for (std::size_t f = 0; f < morphisms_.size(); ++f) {
        const int fi = static_cast<int>(f);
        for (int g : out_of(tgt(fi))) {
            SparseVec gf = compose(g, fi);
            if (!homogeneous(gf, src(fi), tgt(g), degree(g) + degree(fi))) ok_deg = false;
            SparseVec lhs = d(gf);
            SparseVec rhs = compose(d(g), single(fi));
            sparse_axpy(rhs, degree(g) % 2 ? -1 : 1, compose(single(g), d(fi)));
            if (lhs != rhs) ok_leib = false;
            for (int h : out_of(tgt(g))) {
                if (compose(compose(single(h), single(g)), single(fi)) !=
                    compose(single(h), gf))
                    ok_assoc = false;
            }
        }
    }
    rep.add(name_ + "/identities", ok_id);
    rep.add(name_ + "/differential-degree", ok_d);
    rep.add(name_ + "/d-squared", ok_dd);
    rep.add(name_ + "/unit-laws", ok_unit);
    rep.add(name_ + "/composition-degree", ok_deg);
    rep.add(name_ + "/leibniz", ok_leib);
    rep.add(name_ + "/associativity", ok_assoc);
    return rep;
}

void LinCat::validate() const {
    for (const auto& r : check().records)
        if (!r.pass) throw InvalidCategory(r.id);
}

std::string to_string(const LinCat& c, const SparseVec& x) {
    if (x.empty()) return "0";
    std::string s;
    for (const auto& [m, v] : x) {
        if (!s.empty()) s += v < 0 ? " - " : " + ";
        else if (v < 0) s += "-";
        Rational a = abs(v);
        if (a != 1) s += to_string(a) + "*";
        s += c.morphism(m).label;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Functors and natural transformations

SparseVec LinFunctor::apply(const SparseVec& x) const {
    SparseVec out;
    for (const auto& [m, c] : x) sparse_axpy(out, c, on_morphism(m));
    return out;
}

Report LinFunctor::check() const {
    Report rep;
    const LinCat& S = *source;
    const LinCat& T = *target;
    bool ok_shape = object_map.size() == S.num_objects() && morphism_map.size() == S.num_morphisms();
    bool ok_hom = true, ok_d = true, ok_comp = true, ok_id = true;
    if (ok_shape) {
        for (std::size_t m = 0; m < S.num_morphisms(); ++m) {
            const int mi = static_cast<int>(m);
            for (const auto& [k, v] : morphism_map[m]) {
                (void)v;
                if (T.src(k) != on_object(S.src(mi)) || T.tgt(k) != on_object(S.tgt(mi)) ||
                    T.degree(k) != S.degree(mi))
                    ok_hom = false;
            }
            if (T.d(on_morphism(mi)) != apply(S.d(mi))) ok_d = false;
            for (int g : S.out_of(S.tgt(mi)))
                if (apply(S.compose(g, mi)) != T.compose(on_morphism(g), on_morphism(mi))) ok_comp = false;
        }
        for (std::size_t a = 0; a < S.num_objects(); ++a)
            if (apply(S.identity(static_cast<int>(a))) != T.identity(on_object(static_cast<int>(a))))
                ok_id = false;
    }
    rep.add("functor/shape", ok_shape);
    rep.add("functor/hom-placement", ok_hom);
    rep.add("functor/commutes-with-d", ok_d);
    rep.add("functor/composition", ok_comp);
    rep.add("functor/identities", ok_id);
    return rep;
}

bool LinFunctor::operator==(const LinFunctor& o) const {
    return source == o.source && target == o.target && object_map == o.object_map &&
           morphism_map == o.morphism_map;
}

FunctorPtr identity_functor(const CatPtr& c) {
    auto f = std::make_shared<LinFunctor>();
    f->source = c;
    f->target = c;
    f->object_map.resize(c->num_objects());
    std::iota(f->object_map.begin(), f->object_map.end(), 0);
    for (std::size_t m = 0; m < c->num_morphisms(); ++m) f->morphism_map.push_back(single(static_cast<int>(m)));
    return f;
}

FunctorPtr compose_functors(const FunctorPtr& g, const FunctorPtr& f) {
    if (f->target != g->source) throw CategoryMismatch("functors are not composable");
    auto h = std::make_shared<LinFunctor>();
    h->source = f->source;
    h->target = g->target;
    for (int a : f->object_map) h->object_map.push_back(g->on_object(a));
    for (const auto& v : f->morphism_map) h->morphism_map.push_back(g->apply(v));
    return h;
}

Report NatTransform::check() const {
    Report rep;
    const LinCat& S = *from->source;
    const LinCat& T = *from->target;
    bool ok_comp = component.size() == S.num_objects();
    bool ok_nat = true;
    if (ok_comp) {
        for (std::size_t a = 0; a < S.num_objects(); ++a) {
            const SparseVec& e = component[a];
            for (const auto& [k, v] : e) {
                (void)v;
                if (T.src(k) != from->on_object(static_cast<int>(a)) ||
                    T.tgt(k) != to->on_object(static_cast<int>(a)) || T.degree(k) != 0)
                    ok_comp = false;
            }
            if (!T.d(e).empty()) ok_comp = false;
        }
        for (std::size_t m = 0; m < S.num_morphisms(); ++m) {
            const int mi = static_cast<int>(m);
            SparseVec lhs = T.compose(to->on_morphism(mi), component[static_cast<std::size_t>(S.src(mi))]);
            SparseVec rhs = T.compose(component[static_cast<std::size_t>(S.tgt(mi))], from->on_morphism(mi));
            if (lhs != rhs) ok_nat = false;
        }
    }
    rep.add("nat/components", ok_comp);
    rep.add("nat/naturality", ok_nat);
    return rep;
}

// ---------------------------------------------------------------------------
// Groups

std::vector<int> perm_compose(const std::vector<int>& s, const std::vector<int>& t) {
    std::vector<int> r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) r[i] = s[static_cast<std::size_t>(t[i])];
    return r;
}

std::vector<int> perm_inverse(const std::vector<int>& s) {
    std::vector<int> r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
    return r;
}

int perm_sign(const std::vector<int>& s) {
    int sign = 1;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] > s[j]) sign = -sign;
    return sign;
}

std::string perm_label(const std::vector<int>& s) {
    std::string out;
    std::vector<bool> seen(s.size(), false);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (seen[i] || s[i] == static_cast<int>(i)) continue;
        out += "(";
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += " ";
            out += std::to_string(j + 1);
            first = false;
            j = static_cast<std::size_t>(s[j]);
        }
        out += ")";
    }
    return out.empty() ? "e" : out;
}

std::vector<int> long_cycle(int n) {
    std::vector<int> t(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = (i + 1) % n;
    return t;
}

int FiniteGroup::find_perm(const std::vector<int>& p) const {
    for (std::size_t g = 0; g < perms.size(); ++g)
        if (perms[g] == p) return static_cast<int>(g);
    return -1;
}

int FiniteGroup::find(const std::string& label) const {
    for (std::size_t g = 0; g < labels.size(); ++g)
        if (labels[g] == label) return static_cast<int>(g);
    return -1;
}

GroupPtr permutation_group(const std::vector<std::vector<int>>& perms) {
    auto G = std::make_shared<FiniteGroup>();
    G->perms = perms;
    const std::size_t n = perms.size();
    G->table.assign(n, std::vector<int>(n, -1));
    G->inverse.assign(n, -1);
    G->identity = -1;
    for (std::size_t g = 0; g < n; ++g) {
        G->labels.push_back(perm_label(perms[g]));
        std::vector<int> id(perms[g].size());
        std::iota(id.begin(), id.end(), 0);
        if (perms[g] == id) G->identity = static_cast<int>(g);
    }
    if (G->identity < 0) throw Error("permutation set lacks the identity");
    for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
            int k = G->find_perm(perm_compose(perms[g], perms[h]));
            if (k < 0) throw Error("permutation set is not closed");
            G->table[g][h] = k;
        }
        G->inverse[g] = G->find_perm(perm_inverse(perms[g]));
    }
    return G;
}

GroupPtr trivial_group() { return permutation_group({std::vector<int>{}}); }

GroupPtr symmetric_group(int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> all;
    do all.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return permutation_group(all);
}

GroupPtr young_subgroup(int h, int n) {
    GroupPtr a = symmetric_group(h), b = symmetric_group(n);
    std::vector<std::vector<int>> perms;
    for (const auto& s : a->perms)
        for (const auto& t : b->perms) {
            std::vector<int> p = s;
            for (int x : t) p.push_back(h + x);
            perms.push_back(p);
        }
    return permutation_group(perms);
}

GroupPtr product_group(const GroupPtr& g, const GroupPtr& h) {
    auto G = std::make_shared<FiniteGroup>();
    const int ng = g->size(), nh = h->size();
    const bool perm = !g->perms.empty() && !h->perms.empty();
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < nh; ++b) {
            G->labels.push_back("(" + g->labels[static_cast<std::size_t>(a)] + "," +
                                h->labels[static_cast<std::size_t>(b)] + ")");
            G->inverse.push_back(g->inv(a) * nh + h->inv(b));
            std::vector<int> row;
            for (int c = 0; c < ng; ++c)
                for (int d = 0; d < nh; ++d) row.push_back(g->mul(a, c) * nh + h->mul(b, d));
            G->table.push_back(row);
            if (perm) {
                std::vector<int> p = g->perms[static_cast<std::size_t>(a)];
                const int off = static_cast<int>(p.size());
                for (int x : h->perms[static_cast<std::size_t>(b)]) p.push_back(off + x);
                G->perms.push_back(p);
            }
        }
    G->identity = g->identity * nh + h->identity;
    return G;
}

Report GroupAction::check() const {
    Report rep;
    bool ok = static_cast<int>(act.size()) == group->size();
    bool ok_func = true, ok_mul = true, ok_id = true;
    if (ok) {
        for (const auto& f : act)
            if (f->source != cat || f->target != cat || !f->check().all_pass()) ok_func = false;
        for (int g = 0; g < group->size(); ++g)
            for (int h = 0; h < group->size(); ++h) {
                FunctorPtr gh = compose_functors(act[static_cast<std::size_t>(g)], act[static_cast<std::size_t>(h)]);
                const LinFunctor& prod = of(group->mul(g, h));
                if (gh->object_map != prod.object_map || gh->morphism_map != prod.morphism_map) ok_mul = false;
            }
        FunctorPtr id = identity_functor(cat);
        if (of(group->identity).morphism_map != id->morphism_map ||
            of(group->identity).object_map != id->object_map)
            ok_id = false;
    }
    rep.add("action/size", ok);
    rep.add("action/functors", ok_func);
    rep.add("action/multiplicative", ok_mul);
    rep.add("action/unit", ok_id);
    return rep;
}

ActionPtr trivial_action(const CatPtr& c) {
    auto a = std::make_shared<GroupAction>();
    a->group = trivial_group();
    a->cat = c;
    a->act.push_back(identity_functor(c));
    return a;
}

ActionPtr restrict_action(const ActionPtr& act, const GroupPtr& sub, const std::vector<int>& embedding) {
    auto a = std::make_shared<GroupAction>();
    a->group = sub;
    a->cat = act->cat;
    for (int g : embedding) a->act.push_back(act->act.at(static_cast<std::size_t>(g)));
    return a;
}

// ---------------------------------------------------------------------------
// Tensor products

namespace {

std::vector<int> unrank(int id, const std::vector<int>& radix) {
    std::vector<int> t(radix.size());
    for (std::size_t i = radix.size(); i-- > 0;) {
        t[i] = id % radix[i];
        id /= radix[i];
    }
    return t;
}

int rank_of(const std::vector<int>& t, const std::vector<int>& radix) {
    int id = 0;
    for (std::size_t i = 0; i < radix.size(); ++i) id = id * radix[i] + t[i];
    return id;
}

std::string tuple_label(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
    return s + ")";
}

// Expand a product of combinations c_1 x .. x c_n into tuples.
void expand_tuples(const std::vector<SparseVec>& parts,
                   const std::function<void(const std::vector<int>&, const Rational&)>& emit) {
    std::vector<int> cur(parts.size());
    std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& c) {
        if (i == parts.size()) {
            emit(cur, c);
            return;
        }
        for (const auto& [m, v] : parts[i]) {
            cur[i] = m;
            rec(i + 1, c * v);
        }
    };
    rec(0, Rational(1));
}

}  // namespace

std::vector<int> TensorCat::object_tuple(int a) const { return unrank(a, object_radix); }
std::vector<int> TensorCat::morphism_tuple(int m) const { return unrank(m, morphism_radix); }
int TensorCat::object_id(const std::vector<int>& t) const { return rank_of(t, object_radix); }
int TensorCat::morphism_id(const std::vector<int>& t) const { return rank_of(t, morphism_radix); }

TensorPtr tensor_product(const std::vector<CatPtr>& factors) {
    auto T = std::make_shared<TensorCat>();
    T->factors = factors;
    std::string name;
    for (const auto& f : factors) {
        T->object_radix.push_back(static_cast<int>(f->num_objects()));
        T->morphism_radix.push_back(static_cast<int>(f->num_morphisms()));
        name += (name.empty() ? "" : "*") + f->name();
    }
    auto C = std::make_shared<LinCat>(factors.empty() ? "unit" : name);
    const int nobj = std::accumulate(T->object_radix.begin(), T->object_radix.end(), 1, std::multiplies<>());
    const int nmor = std::accumulate(T->morphism_radix.begin(), T->morphism_radix.end(), 1, std::multiplies<>());
    const std::size_t k = factors.size();
    for (int a = 0; a < nobj; ++a) {
        auto t = unrank(a, T->object_radix);
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < k; ++i) parts.push_back(factors[i]->object_label(t[i]));
        C->add_object(tuple_label(parts));
    }
    for (int m = 0; m < nmor; ++m) {
        auto t = unrank(m, T->morphism_radix);
        std::vector<int> s(k), g(k);
        int deg = 0;
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < k; ++i) {
            const auto& b = factors[i]->morphism(t[i]);
            s[i] = b.src;
            g[i] = b.tgt;
            deg += b.degree;
            parts.push_back(b.label);
        }
        C->add_morphism(rank_of(s, T->object_radix), rank_of(g, T->object_radix), deg, tuple_label(parts));
    }
    for (int a = 0; a < nobj; ++a) {
        auto t = unrank(a, T->object_radix);
        std::vector<SparseVec> parts;
        for (std::size_t i = 0; i < k; ++i) parts.push_back(factors[i]->identity(t[i]));
        std::map<int, Rational> acc;
        expand_tuples(parts, [&](const std::vector<int>& tu, const Rational& c) {
            acc[rank_of(tu, T->morphism_radix)] += c;
        });
        C->set_identity(a, sparse_from_map(acc));
    }
    for (int m = 0; m < nmor; ++m) {
        auto t = unrank(m, T->morphism_radix);
        std::map<int, Rational> acc;
        int before = 0;
        for (std::size_t i = 0; i < k; ++i) {
            const int sign = (before % 2) ? -1 : 1;
            for (const auto& [dm, c] : factors[i]->d(t[i])) {
                auto u = t;
                u[i] = dm;
                acc[rank_of(u, T->morphism_radix)] += c * sign;
            }
            before += factors[i]->degree(t[i]);
        }
        C->set_differential(m, sparse_from_map(acc));
    }
    // Composition: f o g over all componentwise composable pairs.
    for (int gi = 0; gi < nmor; ++gi) {
        auto g = unrank(gi, T->morphism_radix);
        std::vector<int> f(k);
        std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == k) {
                int sign = 1;
                std::vector<SparseVec> parts(k);
                for (std::size_t a = 0; a < k; ++a) {
                    parts[a] = factors[a]->compose(f[a], g[a]);
                    if (parts[a].empty()) return;
                    for (std::size_t b = a + 1; b < k; ++b)
                        sign *= koszul(factors[b]->degree(f[b]), factors[a]->degree(g[a]));
                }
                std::map<int, Rational> acc;
                expand_tuples(parts, [&](const std::vector<int>& tu, const Rational& c) {
                    acc[rank_of(tu, T->morphism_radix)] += c * sign;
                });
                C->set_composition(rank_of(f, T->morphism_radix), gi, sparse_from_map(acc));
                return;
            }
            for (int fm : factors[i]->out_of(factors[i]->tgt(g[i]))) {
                f[i] = fm;
                rec(i + 1);
            }
        };
        rec(0);
    }
    T->cat = C;
    return T;
}

CatPtr tensor_cat(const CatPtr& a, const CatPtr& b) { return tensor_product({a, b})->cat; }

FunctorPtr tensor_functor(const TensorPtr& source, const TensorPtr& target,
                          const std::vector<FunctorPtr>& parts) {
    if (parts.size() != source->factors.size() || parts.size() != target->factors.size())
        throw ShapeMismatch("tensor functor arity");
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i]->source != source->factors[i] || parts[i]->target != target->factors[i])
            throw CategoryMismatch("tensor functor factor mismatch");
    auto F = std::make_shared<LinFunctor>();
    F->source = source->cat;
    F->target = target->cat;
    for (std::size_t a = 0; a < source->cat->num_objects(); ++a) {
        auto t = source->object_tuple(static_cast<int>(a));
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = parts[i]->on_object(t[i]);
        F->object_map.push_back(target->object_id(t));
    }
    for (std::size_t m = 0; m < source->cat->num_morphisms(); ++m) {
        auto t = source->morphism_tuple(static_cast<int>(m));
        std::vector<SparseVec> images;
        for (std::size_t i = 0; i < t.size(); ++i) images.push_back(parts[i]->on_morphism(t[i]));
        std::map<int, Rational> acc;
        expand_tuples(images, [&](const std::vector<int>& tu, const Rational& c) {
            acc[target->morphism_id(tu)] += c;
        });
        F->morphism_map.push_back(sparse_from_map(acc));
    }
    return F;
}

// ---------------------------------------------------------------------------

CatPtr opposite_cat(const CatPtr& a) {
    auto C = std::make_shared<LinCat>(a->name() + "^op");
    for (std::size_t o = 0; o < a->num_objects(); ++o) C->add_object(a->object_label(static_cast<int>(o)));
    for (std::size_t m = 0; m < a->num_morphisms(); ++m) {
        const auto& b = a->morphism(static_cast<int>(m));
        C->add_morphism(b.tgt, b.src, b.degree, b.label);
    }
    for (std::size_t o = 0; o < a->num_objects(); ++o) C->set_identity(static_cast<int>(o), a->identity(static_cast<int>(o)));
    for (std::size_t m = 0; m < a->num_morphisms(); ++m) C->set_differential(static_cast<int>(m), a->d(static_cast<int>(m)));
    // f o^op g = (-1)^{|f||g|} g o f
    for (std::size_t g = 0; g < a->num_morphisms(); ++g) {
        const int gi = static_cast<int>(g);
        for (int f : a->out_of(a->tgt(gi))) {
            // in A: f o g defined; in A^op: g o^op f
            SparseVec v = a->compose(f, gi);
            C->set_composition(gi, f, sparse_scaled(v, koszul(a->degree(f), a->degree(gi))));
        }
    }
    return C;
}

// ---------------------------------------------------------------------------
// Semidirect products and symmetric powers

SparseVec SemidirectCat::with_group(const SparseVec& alpha, int g) const {
    SparseVec out;
    out.reserve(alpha.size());
    for (const auto& [m, c] : alpha) out.emplace_back(morphism_id(m, g), c);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
}

SemidirectPtr semidirect(const ActionPtr& act, const std::string& name) {
    if (!act->check().all_pass()) throw ActionMismatch("not a strict group action on " + act->cat->name());
    auto S = std::make_shared<SemidirectCat>();
    S->base = act->cat;
    S->action = act;
    const LinCat& A = *act->cat;
    const FiniteGroup& G = *act->group;
    auto C = std::make_shared<LinCat>(name.empty() ? A.name() + "#G" : name);
    for (std::size_t o = 0; o < A.num_objects(); ++o) C->add_object(A.object_label(static_cast<int>(o)));
    for (int g = 0; g < G.size(); ++g) {
        const LinFunctor& ginv = act->of(G.inv(g));
        for (std::size_t m = 0; m < A.num_morphisms(); ++m) {
            const auto& b = A.morphism(static_cast<int>(m));
            C->add_morphism(ginv.on_object(b.src), b.tgt, b.degree,
                            "(" + b.label + "," + G.labels[static_cast<std::size_t>(g)] + ")");
        }
    }
    S->cat = C;  // with_group only needs base sizes
    for (std::size_t o = 0; o < A.num_objects(); ++o)
        C->set_identity(static_cast<int>(o), S->with_group(A.identity(static_cast<int>(o)), G.identity));
    for (int g = 0; g < G.size(); ++g)
        for (std::size_t m = 0; m < A.num_morphisms(); ++m)
            C->set_differential(S->morphism_id(static_cast<int>(m), g), S->with_group(A.d(static_cast<int>(m)), g));
    // (a1, g1) o (a2, g2) = (a1 o g1(a2), g1 g2)
    const std::size_t N = C->num_morphisms();
    for (std::size_t m2 = 0; m2 < N; ++m2) {
        const int m2i = static_cast<int>(m2);
        const int a2 = S->alpha_of(m2i), g2 = S->group_of(m2i);
        for (int m1 : C->out_of(C->tgt(m2i))) {
            const int a1 = S->alpha_of(m1), g1 = S->group_of(m1);
            SparseVec v = A.compose(SparseVec{{a1, Rational(1)}}, act->of(g1).on_morphism(a2));
            C->set_composition(m1, m2i, S->with_group(v, G.mul(g1, g2)));
        }
    }
    return S;
}

FunctorPtr group_autoequiv(const SemidirectPtr& s, int g) {
    const FiniteGroup& G = *s->action->group;
    const LinFunctor& act = s->action->of(g);
    auto F = std::make_shared<LinFunctor>();
    F->source = s->cat;
    F->target = s->cat;
    F->object_map = act.object_map;
    for (std::size_t m = 0; m < s->cat->num_morphisms(); ++m) {
        const int a = s->alpha_of(static_cast<int>(m)), f = s->group_of(static_cast<int>(m));
        F->morphism_map.push_back(s->with_group(act.on_morphism(a), G.mul(G.mul(g, f), G.inv(g))));
    }
    return F;
}

NatTransform autoequiv_iso(const SemidirectPtr& s, int g) {
    NatTransform eta;
    eta.from = identity_functor(s->cat);
    eta.to = group_autoequiv(s, g);
    const LinFunctor& act = s->action->of(g);
    for (std::size_t a = 0; a < s->cat->num_objects(); ++a)
        eta.component.push_back(s->with_group(s->base->identity(act.on_object(static_cast<int>(a))), g));
    return eta;
}

ActionPtr permutation_action(const TensorPtr& power, const GroupPtr& perm_group) {
    auto act = std::make_shared<GroupAction>();
    act->group = perm_group;
    act->cat = power->cat;
    const LinCat& P = *power->cat;
    for (const auto& sigma : perm_group->perms) {
        if (sigma.size() != power->factors.size()) throw ActionMismatch("permutation size != tensor arity");
        const std::size_t n = sigma.size();
        const auto sinv = perm_inverse(sigma);
        auto F = std::make_shared<LinFunctor>();
        F->source = power->cat;
        F->target = power->cat;
        for (std::size_t a = 0; a < P.num_objects(); ++a) {
            auto t = power->object_tuple(static_cast<int>(a));
            std::vector<int> u(n);
            for (std::size_t k = 0; k < n; ++k) u[k] = t[static_cast<std::size_t>(sinv[k])];
            F->object_map.push_back(power->object_id(u));
        }
        for (std::size_t m = 0; m < P.num_morphisms(); ++m) {
            auto t = power->morphism_tuple(static_cast<int>(m));
            std::vector<int> u(n);
            for (std::size_t k = 0; k < n; ++k) u[k] = t[static_cast<std::size_t>(sinv[k])];
            int sign = 1;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (sigma[i] > sigma[j])
                        sign *= koszul(power->factors[i]->degree(t[i]), power->factors[j]->degree(t[j]));
            F->morphism_map.push_back(SparseVec{{power->morphism_id(u), Rational(sign)}});
        }
        act->act.push_back(F);
    }
    return act;
}

SymPtr sym_power(const CatPtr& a, int n) {
    if (n < 0) throw OutOfRange("symmetric power of negative order");
    auto S = std::make_shared<SymPower>();
    S->n = n;
    S->base = a;
    S->power = tensor_product(std::vector<CatPtr>(static_cast<std::size_t>(n), a));
    S->action = permutation_action(S->power, symmetric_group(n));
    S->sym = semidirect(S->action, "Sym" + std::to_string(n) + "(" + a->name() + ")");
    return S;
}

SemidirectPtr sym_subgroup(const SymPtr& s, const GroupPtr& sub) {
    return semidirect(permutation_action(s->power, sub));
}

namespace {

SymInclusion block_inclusion(const SymPtr& h, const SymPtr& n, const TensorPtr& total_power,
                             const SemidirectPtr& target) {
    SymInclusion inc;
    inc.source = tensor_product({h->cat(), n->cat()});
    auto F = std::make_shared<LinFunctor>();
    F->source = inc.source->cat;
    F->target = target->cat;
    const FiniteGroup& G = *target->action->group;
    for (std::size_t o = 0; o < inc.source->cat->num_objects(); ++o) {
        auto pr = inc.source->object_tuple(static_cast<int>(o));
        auto x = h->power->object_tuple(pr[0]);
        auto y = n->power->object_tuple(pr[1]);
        x.insert(x.end(), y.begin(), y.end());
        F->object_map.push_back(total_power->object_id(x));
    }
    const FiniteGroup& Gh = *h->action->group;
    const FiniteGroup& Gn = *n->action->group;
    for (std::size_t m = 0; m < inc.source->cat->num_morphisms(); ++m) {
        auto pr = inc.source->morphism_tuple(static_cast<int>(m));
        const int ma = pr[0], mb = pr[1];
        auto x = h->power->morphism_tuple(h->sym->alpha_of(ma));
        auto y = n->power->morphism_tuple(n->sym->alpha_of(mb));
        x.insert(x.end(), y.begin(), y.end());
        std::vector<int> p = Gh.perms[static_cast<std::size_t>(h->sym->group_of(ma))];
        for (int v : Gn.perms[static_cast<std::size_t>(n->sym->group_of(mb))]) p.push_back(h->n + v);
        const int g = G.find_perm(p);
        if (g < 0) throw ActionMismatch("block permutation missing from the target group");
        F->morphism_map.push_back(SparseVec{{target->morphism_id(total_power->morphism_id(x), g), Rational(1)}});
    }
    inc.functor = F;
    return inc;
}

}  // namespace

SymInclusion sym_inclusion(const SymPtr& h, const SymPtr& n, const SymPtr& total) {
    if (total->n != h->n + n->n || h->base != total->base || n->base != total->base)
        throw CategoryMismatch("inclusion needs Sym^h, Sym^n and Sym^(h+n) of one category");
    return block_inclusion(h, n, total->power, total->sym);
}

SymInclusion young_inclusion(const SymPtr& h, const SymPtr& n, const SymPtr& total,
                             const SemidirectPtr& young) {
    if (young->base != total->power->cat) throw CategoryMismatch("subgroup category over another tensor power");
    return block_inclusion(h, n, total->power, young);
}

// ---------------------------------------------------------------------------
// Fixtures

CatPtr point_cat() {
    auto C = std::make_shared<LinCat>("point");
    int a = C->add_object("a");
    int id = C->add_morphism(a, a, 0, "id");
    C->set_identity(a, id);
    C->fill_identity_compositions();
    return C;
}

CatPtr dual_numbers_cat(int eps_degree) {
    auto C = std::make_shared<LinCat>("dual" + std::to_string(eps_degree));
    int a = C->add_object("a");
    int id = C->add_morphism(a, a, 0, "id");
    C->add_morphism(a, a, eps_degree, "eps");
    C->set_identity(a, id);
    C->fill_identity_compositions();
    return C;
}

CatPtr two_points_cat() {
    auto C = std::make_shared<LinCat>("two-points");
    for (const char* name : {"x", "y"}) {
        int o = C->add_object(name);
        C->set_identity(o, C->add_morphism(o, o, 0, std::string("id_") + name));
    }
    C->fill_identity_compositions();
    return C;
}

CatPtr acyclic_pair_cat() {
    auto C = std::make_shared<LinCat>("acyclic-pair");
    int a = C->add_object("a");
    int id = C->add_morphism(a, a, 0, "id");
    int x = C->add_morphism(a, a, -1, "x");
    int y = C->add_morphism(a, a, 0, "y");
    C->set_identity(a, id);
    C->set_differential(x, SparseVec{{y, Rational(1)}});
    C->fill_identity_compositions();
    return C;
}

int Envelope::entry_id(int object_from, int object_to, int row, int col, int base_morphism) const {
    auto it = entry_index.find({object_from, object_to, row, col, base_morphism});
    if (it == entry_index.end()) throw CategoryMismatch("no such matrix entry");
    return it->second;
}

EnvelopePtr additive_envelope(const CatPtr& a, const std::vector<std::vector<int>>& extra_sums) {
    auto E = std::make_shared<Envelope>();
    E->base = a;
    for (std::size_t o = 0; o < a->num_objects(); ++o) E->sums.push_back({static_cast<int>(o)});
    for (const auto& s : extra_sums) {
        if (s.empty()) throw InvalidCategory("empty direct sum");
        E->sums.push_back(s);
    }
    auto C = std::make_shared<LinCat>("add(" + a->name() + ")");
    for (const auto& s : E->sums) {
        std::string label;
        for (int o : s) label += (label.empty() ? "" : "+") + a->object_label(o);
        C->add_object(label);
    }
    const int nobj = static_cast<int>(E->sums.size());
    for (int X = 0; X < nobj; ++X)
        for (int Y = 0; Y < nobj; ++Y) {
            const auto& xs = E->sums[static_cast<std::size_t>(X)];
            const auto& ys = E->sums[static_cast<std::size_t>(Y)];
            for (std::size_t r = 0; r < ys.size(); ++r)
                for (std::size_t c = 0; c < xs.size(); ++c)
                    for (int b : a->hom(xs[c], ys[r])) {
                        std::string label = "[" + std::to_string(r) + "," + std::to_string(c) + ":" +
                                            a->morphism(b).label + "]";
                        int id = C->add_morphism(X, Y, a->degree(b), label);
                        E->entries.push_back({static_cast<int>(r), static_cast<int>(c), b});
                        E->entry_index[{X, Y, static_cast<int>(r), static_cast<int>(c), b}] = id;
                    }
        }
    auto lift = [&](int X, int Y, int r, int c, const SparseVec& v) {
        SparseVec out;
        for (const auto& [b, k] : v) out.emplace_back(E->entry_id(X, Y, r, c, b), k);
        std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
        return out;
    };
    for (int X = 0; X < nobj; ++X) {
        SparseVec id;
        const auto& xs = E->sums[static_cast<std::size_t>(X)];
        for (std::size_t i = 0; i < xs.size(); ++i)
            sparse_axpy(id, 1, lift(X, X, static_cast<int>(i), static_cast<int>(i), a->identity(xs[i])));
        C->set_identity(X, id);
    }
    for (std::size_t m = 0; m < C->num_morphisms(); ++m) {
        const auto& e = E->entries[m];
        const auto& b = C->morphism(static_cast<int>(m));
        C->set_differential(static_cast<int>(m), lift(b.src, b.tgt, e.row, e.col, a->d(e.base)));
    }
    // [r,c:f] o [r',c':g] = delta_{c,r'} [r,c':f o g]
    for (std::size_t g = 0; g < C->num_morphisms(); ++g) {
        const int gi = static_cast<int>(g);
        const auto& eg = E->entries[g];
        for (int f : C->out_of(C->tgt(gi))) {
            const auto& ef = E->entries[static_cast<std::size_t>(f)];
            if (ef.col != eg.row) continue;
            SparseVec v = a->compose(ef.base, eg.base);
            C->set_composition(f, gi, lift(C->src(gi), C->tgt(f), ef.row, eg.col, v));
        }
    }
    E->cat = C;
    return E;
}

}  // namespace heis

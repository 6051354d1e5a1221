#include <doctest.h>

#include <fstream>
#include <sstream>

#include "heis/dgcat.hpp"
#include "heis/hochschild.hpp"
#include "heis/spec_io.hpp"

using namespace heis;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SparseVec unit(int m, Rational c = 1) { return sparse_from_map({{m, c}}); }

}  // namespace

TEST_CASE("fixtures satisfy the category axioms") {
    for (const auto& c : {point_cat(), two_points_cat(), acyclic_pair_cat(), dual_numbers_cat(0),
                          dual_numbers_cat(1), dual_numbers_cat(-1)})
        CHECK_MESSAGE(c->check().all_pass(), c->name());
    const auto p = point_cat();
    CHECK(p->num_objects() == 1);
    CHECK(p->num_morphisms() == 1);
    CHECK(p->concentrated_in_degree_zero());
    CHECK(p->is_identity(p->identity_basis(0)));

    const auto two = two_points_cat();
    CHECK(two->hom(0, 1).empty());
    CHECK(two->hom(1, 1).size() == 1);
    CHECK_THROWS_AS(two->compose(two->identity_basis(0), two->identity_basis(1)), CategoryMismatch);

    const auto ac = acyclic_pair_cat();
    const int x = ac->find_morphism("x"), y = ac->find_morphism("y");
    CHECK(ac->degree(x) == -1);
    CHECK(ac->d(x) == unit(y));
    CHECK(ac->compose(x, y).empty());
    CHECK_FALSE(ac->concentrated_in_degree_zero());

    const auto d1 = dual_numbers_cat(1);
    const int eps = d1->find_morphism("eps");
    CHECK(d1->compose(eps, eps).empty());
    CHECK(d1->degree(eps) == 1);
}

TEST_CASE("validation rejects broken categories") {
    LinCat c("broken");
    const int a = c.add_object("a");
    const int id = c.add_morphism(a, a, 0, "id");
    const int x = c.add_morphism(a, a, 1, "x");
    c.set_identity(a, id);
    c.fill_identity_compositions();
    c.set_differential(x, unit(x));  // degree 1 -> degree 1: wrong degree, and d^2 != 0
    CHECK_FALSE(c.check().all_pass());
    CHECK_THROWS_AS(c.validate(), InvalidCategory);
}

TEST_CASE("Koszul sign in tensor products") {
    const auto d1 = dual_numbers_cat(1);
    const auto t = tensor_product({d1, d1});
    const int id = d1->find_morphism("id"), eps = d1->find_morphism("eps");
    const int eps_id = t->morphism_id({eps, id}), id_eps = t->morphism_id({id, eps});
    const int eps_eps = t->morphism_id({eps, eps});
    CHECK(t->cat->compose(eps_id, id_eps) == unit(eps_eps));
    CHECK(t->cat->compose(id_eps, eps_id) == unit(eps_eps, -1));
    CHECK(t->cat->check().all_pass());
    CHECK(t->morphism_tuple(eps_id) == std::vector<int>{eps, id});
    CHECK(t->object_id(t->object_tuple(0)) == 0);

    // even generators commute without sign
    const auto d0 = dual_numbers_cat(0);
    const auto t0 = tensor_product({d0, d0});
    const int a = t0->morphism_id({1, 0}), b = t0->morphism_id({0, 1});
    CHECK(t0->cat->compose(a, b) == t0->cat->compose(b, a));
}

TEST_CASE("opposite category") {
    const auto ac = acyclic_pair_cat();
    const auto op = opposite_cat(ac);
    CHECK(op->check().all_pass());
    CHECK(op->num_morphisms() == ac->num_morphisms());
    for (std::size_t m = 0; m < ac->num_morphisms(); ++m) {
        const int i = static_cast<int>(m);
        CHECK(op->src(i) == ac->tgt(i));
        CHECK(op->degree(i) == ac->degree(i));
        CHECK(op->d(i) == ac->d(i));
    }
    const auto two = two_points_cat();
    CHECK(opposite_cat(opposite_cat(two))->check().all_pass());
}

TEST_CASE("permutation groups") {
    const auto s3 = symmetric_group(3);
    CHECK(s3->size() == 6);
    for (int g = 0; g < s3->size(); ++g) {
        CHECK(s3->mul(g, s3->inv(g)) == s3->identity);
        for (int h = 0; h < s3->size(); ++h)
            CHECK(perm_sign(s3->perms[s3->mul(g, h)]) == perm_sign(s3->perms[g]) * perm_sign(s3->perms[h]));
    }
    CHECK(long_cycle(3) == std::vector<int>{1, 2, 0});
    CHECK(perm_label(long_cycle(3)) == "(1 2 3)");
    CHECK(perm_label({0, 1}) == "e");
    CHECK(perm_inverse(long_cycle(3)) == std::vector<int>{2, 0, 1});
    CHECK(perm_compose(long_cycle(3), perm_inverse(long_cycle(3))) == std::vector<int>{0, 1, 2});
    CHECK(young_subgroup(1, 2)->size() == 2);
    CHECK(young_subgroup(2, 2)->size() == 4);
    CHECK(product_group(symmetric_group(2), s3)->size() == 12);
    CHECK(trivial_group()->size() == 1);
    CHECK(s3->find_perm({9, 9, 9}) == -1);
}

TEST_CASE("permutation actions compose like the group") {
    for (const auto& base : {point_cat(), dual_numbers_cat(1), two_points_cat()})
        for (int n = 1; n <= 3; ++n) {
            const auto G = symmetric_group(n);
            const auto act = permutation_action(tensor_product(std::vector<CatPtr>(static_cast<std::size_t>(n), base)), G);
            CHECK(act->check().all_pass());
            for (int g = 0; g < G->size(); ++g)
                for (int h = 0; h < G->size(); ++h)
                    CHECK(*compose_functors(act->act[g], act->act[h]) == *act->act[G->mul(g, h)]);
        }
}

TEST_CASE("odd factors pick up a sign under the swap") {
    const auto d1 = dual_numbers_cat(1);
    const auto power = tensor_product({d1, d1});
    const auto act = permutation_action(power, symmetric_group(2));
    const int swap = act->group->find_perm({1, 0});
    const int eps = d1->find_morphism("eps");
    CHECK(act->of(swap).on_morphism(power->morphism_id({eps, eps})) == unit(power->morphism_id({eps, eps}), -1));
    const int id = d1->find_morphism("id");
    CHECK(act->of(swap).on_morphism(power->morphism_id({eps, id})) == unit(power->morphism_id({id, eps})));
}

TEST_CASE("symmetric powers and semidirect products") {
    CHECK(sym_power(point_cat(), 2)->cat()->num_morphisms() == 2);
    CHECK(sym_power(point_cat(), 3)->cat()->num_morphisms() == 6);
    CHECK(sym_power(point_cat(), 3)->cat()->num_objects() == 1);
    const auto s = sym_power(two_points_cat(), 2);
    CHECK(s->cat()->num_objects() == 4);
    CHECK(s->cat()->num_morphisms() == 8);
    CHECK(s->cat()->check().all_pass());
    const int xy = s->power->object_id({0, 1}), yx = s->power->object_id({1, 0});
    CHECK(s->cat()->hom(xy, yx).size() == 1);
    CHECK(s->cat()->hom(xy, xy).size() == 1);

    const auto d = sym_power(dual_numbers_cat(1), 2);
    CHECK(d->cat()->check().all_pass());
    const SemidirectCat& sd = *d->sym;
    const int m = sd.morphism_id(3, 1);
    CHECK(sd.alpha_of(m) == 3);
    CHECK(sd.group_of(m) == 1);
}

TEST_CASE("group elements act by autoequivalences isomorphic to the identity") {
    for (const auto& base : {point_cat(), two_points_cat(), dual_numbers_cat(1)})
        for (int n = 2; n <= 3; ++n) {
            const auto s = sym_power(base, n);
            const auto& G = *s->action->group;
            for (int g = 0; g < G.size(); ++g) {
                const auto F = group_autoequiv(s->sym, g);
                CHECK(F->check().all_pass());
                CHECK(autoequiv_iso(s->sym, g).check().all_pass());
                for (int h = 0; h < G.size(); ++h)
                    CHECK(*compose_functors(F, group_autoequiv(s->sym, h)) == *group_autoequiv(s->sym, G.mul(g, h)));
            }
            CHECK(*group_autoequiv(s->sym, G.identity) == *identity_functor(s->cat()));
        }
}

TEST_CASE("restricted actions and subgroup categories") {
    const auto s = sym_power(point_cat(), 3);
    const auto young = young_subgroup(1, 2);
    const auto sub = sym_subgroup(s, young);
    CHECK(sub->cat->num_morphisms() == 2);
    CHECK(sub->cat->check().all_pass());
    const auto emb = embed_subgroup(*young, *s->action->group);
    CHECK(restrict_action(s->action, young, emb)->check().all_pass());
}

TEST_CASE("symmetric power inclusions are functors") {
    const auto base = dual_numbers_cat(1);
    const auto s1 = sym_power(base, 1), s2 = sym_power(base, 2), s3 = sym_power(base, 3);
    const SymInclusion inc = sym_inclusion(s1, s2, s3);
    CHECK(inc.functor->check().all_pass());
    const auto young = sym_subgroup(s3, young_subgroup(1, 2));
    CHECK(young_inclusion(s1, s2, s3, young).functor->check().all_pass());
}

TEST_CASE("additive envelope") {
    const auto env = additive_envelope(two_points_cat(), {{0, 1}, {0, 0}});
    CHECK(env->cat->num_objects() == 4);
    CHECK(env->cat->check().all_pass());
    // End(x + x) is 2x2 matrices over End(x)
    CHECK(env->cat->hom(3, 3).size() == 4);
    CHECK(env->cat->hom(2, 3).size() == 2);
    CHECK(env->cat->identity(3).size() == 2);
}

TEST_CASE("category files") {
    const CategorySpec swap = load_category(HEIS_DATA_DIR "/two-points-swap.json");
    REQUIRE(swap.action);
    CHECK(swap.cat->num_objects() == 2);
    CHECK(swap.action->group->size() == 2);
    const auto sd = semidirect(swap.action);
    CHECK(sd->cat->check().all_pass());
    CHECK(sd->cat->hom(0, 1).size() == 1);

    const CategorySpec dual = parse_category(slurp(HEIS_DATA_DIR "/dual-odd.json"));
    CHECK_FALSE(dual.action);
    CHECK(dual.cat->check().all_pass());
    CHECK(dual.cat->degree(dual.cat->find_morphism("eps")) == 1);

    CHECK(load_category("dual-numbers:-1").cat->degree(1) == -1);
    CHECK(load_category("sym:point:3").cat->num_morphisms() == 6);
    CHECK_THROWS_AS(load_category("sym:point:x"), ParseError);
    CHECK_THROWS_AS(load_category("no-such-file.json"), ParseError);
    CHECK_THROWS_AS(parse_category(R"({"objects": ["a"], "homs": [{"label": "f", "src": "a", "tgt": "b"}]})"), ParseError);
    CHECK_THROWS_AS(parse_category(R"({"objects": ["a"]})"), ParseError);
    // an identity that is missing fails validation
    CHECK_THROWS_AS(parse_category(R"({"objects": ["a"], "homs": [{"label": "f", "src": "a", "tgt": "a"}]})"),
                    InvalidCategory);
    // the action must be a functor
    CHECK_THROWS_AS(parse_category(R"({"objects": ["x", "y"],
        "homs": [{"label": "ix", "src": "x", "tgt": "x", "identity": true},
                 {"label": "iy", "src": "y", "tgt": "y", "identity": true}],
        "action": {"elements": [
            {"perm": [0, 1], "objects": {"x": "x", "y": "y"}, "morphisms": {"ix": {"ix": 1}, "iy": {"iy": 1}}},
            {"perm": [1, 0], "objects": {"x": "y", "y": "x"}, "morphisms": {"ix": {"ix": 1}, "iy": {"iy": 1}}}]}})"),
                    ActionMismatch);
}

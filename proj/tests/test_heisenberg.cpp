#include <doctest.h>

#include <random>

#include "heis/heisenberg.hpp"
#include "heis/spec_io.hpp"
#include "suites.hpp"

using namespace heis;

namespace {

SpacePtr space_of(std::vector<bool> odd, std::vector<std::vector<Rational>> chi) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < odd.size(); ++i) labels.push_back(std::string(1, static_cast<char>('e' + i)));
    return std::make_shared<GradedSpace>(labels, odd, chi);
}

SpacePtr even1(Rational chi = 1) { return space_of({false}, {{chi}}); }
SpacePtr odd1(Rational chi = 1) { return space_of({true}, {{chi}}); }

HeisElement mono(const SpacePtr& s, std::vector<AGen> gens, Rational c = 1) {
    HeisElement e(s);
    e.add_term(NormalMonomial{std::move(gens)}, c);
    return e;
}

HeisElement a(const SpacePtr& s, int i, int n) { return HeisElement::gen(s, i, n); }

}  // namespace

TEST_CASE("graded space rejects cross-parity pairings") {
    CHECK_THROWS_AS(space_of({false, true}, {{1, 1}, {0, 1}}), ParityViolation);
    CHECK_NOTHROW(space_of({false, true}, {{1, 0}, {0, 1}}));
    CHECK_THROWS_AS(even1()->index_of("zz"), UnknownBasisIndex);
}

TEST_CASE("normal form examples") {
    const auto s = even1(Rational(3, 2));
    const Rational chi = s->chi(0, 0);
    CHECK(normal_form(s, {{0, -2}, {0, 2}}) == mono(s, {{0, 2}, {0, -2}}) + HeisElement::scalar(s, 2 * chi));
    CHECK(normal_form(odd1(), {{0, 1}, {0, 1}}).is_zero());
    CHECK(normal_form(s, {{0, -1}, {0, 1}, {0, 1}}) == mono(s, {{0, 1}, {0, 1}, {0, -1}}) + mono(s, {{0, 1}}, 2 * chi));
    CHECK_THROWS_AS(normal_form(s, {{3, 1}}), UnknownBasisIndex);
}

TEST_CASE("normal form is idempotent on normal monomials") {
    const auto s = space_of({false, true}, {{2, 0}, {0, -1}});
    const HeisElement x = normal_form(s, {{1, 2}, {0, -3}, {0, 1}, {1, -1}});
    for (const auto& [m, c] : x.terms()) CHECK(normal_form(s, m.gens, c) == mono(s, m.gens, c));
}

TEST_CASE("odd generators anticommute") {
    const auto s = space_of({true, true}, {{1, 2}, {-1, 0}});
    CHECK(normal_form(s, {{1, 1}, {0, 1}}) == mono(s, {{0, 1}, {1, 1}}, -1));
    // a_f(-1) a_e(1) = -a_e(1) a_f(-1) + chi(f, e)
    CHECK(normal_form(s, {{1, -1}, {0, 1}}) == mono(s, {{0, 1}, {1, -1}}, -1) + HeisElement::scalar(s, -1));
}

TEST_CASE("mul examples") {
    const auto s = even1(5);
    const HeisElement one = HeisElement::scalar(s, 1);
    const HeisElement x = a(s, 0, 2) + a(s, 0, -1);
    CHECK(mul(one, x) == x);
    CHECK(mul(a(s, 0, 1), a(s, 0, 2)) == mono(s, {{0, 1}, {0, 2}}));
    CHECK(mul(a(s, 0, -1), a(s, 0, 1) + a(s, 0, 2)) ==
          mono(s, {{0, 1}, {0, -1}}) + HeisElement::scalar(s, 5) + mono(s, {{0, 2}, {0, -1}}));
    CHECK_THROWS_AS(mul(a(s, 0, 1), a(even1(), 0, 1)), SpaceMismatch);
}

TEST_CASE("mul is associative on random elements") {
    const auto s = space_of({false, true}, {{1, 0}, {0, 2}});
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> idx(0, 1), lev(-3, 3), coef(-3, 3);
    auto random_element = [&] {
        HeisElement e(s);
        for (int t = 0; t < 3; ++t) {
            std::vector<AGen> w;
            for (int k = 0; k < 2; ++k) {
                int l = 0;
                while (l == 0) l = lev(rng);
                w.push_back({idx(rng), l});
            }
            e += normal_form(s, w, coef(rng));
        }
        return e;
    };
    for (int t = 0; t < 30; ++t) {
        const HeisElement x = random_element(), y = random_element(), z = random_element();
        CHECK(mul(mul(x, y), z) == mul(x, mul(y, z)));
    }
}

TEST_CASE("rewriting is confluent under random step order") {
    const auto s = space_of({false, true}, {{2, 0}, {0, -3}});
    std::mt19937_64 words(21), steps(99);
    std::uniform_int_distribution<int> len(1, 6), idx(0, 1), lev(-3, 3);
    for (int t = 0; t < 200; ++t) {
        std::vector<AGen> w;
        const int n = len(words);
        for (int k = 0; k < n; ++k) {
            int l = 0;
            while (l == 0) l = lev(words);
            w.push_back({idx(words), l});
        }
        const HeisElement fixed = normal_form(s, w);
        CHECK(normal_form(s, w, 1, &steps) == fixed);
        CHECK(normal_form(s, w, 1, &steps) == fixed);
    }
}

TEST_CASE("a_of_vector") {
    const auto s = space_of({false, false}, {{1, 0}, {0, 1}});
    CHECK(a_of_vector(s, {0, 1}, 3) == a(s, 1, 3));
    CHECK(a_of_vector(s, {2, 0}, 1) == a(s, 0, 1) * 2);
    CHECK(a_of_vector(s, {1, 1}, -2) == a(s, 0, -2) + a(s, 1, -2));
    const auto mixed = load_space("rank2-mixed");
    CHECK_THROWS_AS(a_of_vector(mixed, {1, 1}, 1), MixedParity);
    CHECK_NOTHROW(a_of_vector(mixed, {0, 1}, 1));
}

TEST_CASE("pq_elem examples") {
    const auto s = even1();
    CHECK(pq_elem(s, Side::P, 0, 0) == HeisElement::scalar(s, 1));
    CHECK(pq_elem(s, Side::P, 0, 2) == a(s, 0, 2) * Rational(1, 2) + mono(s, {{0, 1}, {0, 1}}, Rational(1, 2)));
    CHECK(pq_elem(s, Side::P, 0, 3) == a(s, 0, 3) * Rational(1, 3) + mono(s, {{0, 1}, {0, 2}}, Rational(1, 2)) +
                                           mono(s, {{0, 1}, {0, 1}, {0, 1}}, Rational(1, 6)));
    const auto o = odd1();
    CHECK(pq_elem(o, Side::Q, 0, 4) == a(o, 0, -4));
    CHECK(pq_elem(o, Side::P, 0, 2) == a(o, 0, 2));
}

TEST_CASE("pq_of_vector examples") {
    const auto s = even1();
    const HeisElement two_e = pq_of_vector(s, Side::P, {2}, 2);
    CHECK(two_e == pq_elem(s, Side::P, 0, 2) * 2 + mul(pq_elem(s, Side::P, 0, 1), pq_elem(s, Side::P, 0, 1)));
    CHECK(two_e == a(s, 0, 2) + mono(s, {{0, 1}, {0, 1}}, 2));
    for (int n = 1; n <= 3; ++n) CHECK(pq_of_vector(s, Side::Q, {0}, n).is_zero());
    const auto o = space_of({true, true}, {{1, 0}, {0, 1}});
    CHECK(pq_of_vector(o, Side::Q, {1, 1}, 3) == pq_elem(o, Side::Q, 0, 3) + pq_elem(o, Side::Q, 1, 3));
    CHECK_THROWS_AS(pq_of_vector(load_space("rank2-mixed"), Side::P, {1, 1}, 2), MixedParity);
}

TEST_CASE("PQ relations hold for the documented spaces") {
    CHECK(check_pq_relations(even1(), 2).all_pass());
    const Report odd = check_pq_relations(odd1(), 2);
    CHECK(odd.all_pass());
    CHECK(odd.records.size() > 4);
    CHECK(check_pq_relations(load_space("rank2-mixed"), 3).all_pass());
    CHECK_THROWS_AS(check_pq_relations(even1(), 0), OutOfRange);
}

TEST_CASE("decomposition agrees with exponentiation") {
    CHECK(suites::decomposition_vs_exponentiation({7, 5}).all_pass());
    const auto s = space_of({false, false}, {{1, 2}, {2, -1}});
    for (int n = 0; n <= 3; ++n)
        for (Side side : {Side::P, Side::Q})
            CHECK(pq_of_vector(s, side, {Rational(1, 2), -3}, n) == pq_by_exponentiation(s, side, {Rational(1, 2), -3}, n));
}

TEST_CASE("filtered counts") {
    const auto s = even1();
    CHECK(filtered_count(s, Presentation::A, 2) == 8);
    CHECK(filtered_count(s, Presentation::PQ, 2) == 8);
    CHECK(filtered_count(odd1(), Presentation::A, 0) == 1);
    CHECK(filtered_count(load_space("rank2-mixed"), Presentation::PQ, 0) == 1);
    CHECK(suites::filtered_dims_for(load_space("rank2-mixed"), 4).all_pass());
}

TEST_CASE("Fock action examples") {
    const auto s = even1(Rational(-2, 3));
    const Rational chi = s->chi(0, 0);
    const FockState vac = vacuum(s);
    CHECK(fock_apply(a(s, 0, -1), vac).is_zero());
    for (int n = 1; n <= 3; ++n) CHECK(fock_apply(a(s, 0, -n), fock_apply(a(s, 0, n), vac)) == vac * (n * chi));
    const FockState sq = fock_apply(a(s, 0, 1), fock_apply(a(s, 0, 1), vac));
    CHECK(fock_apply(a(s, 0, -1), sq) == fock_apply(a(s, 0, 1), vac) * (2 * chi));
    CHECK(fock_basis(s, 4).size() == 5);
    CHECK(fock_basis(odd1(), 3).size() == 2);  // a(3), a(1)a(2)
}

TEST_CASE("Fock operator identities on mixed and random spaces") {
    CHECK(suites::fock_checks_for(load_space("rank2-mixed"), 3).all_pass());
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL})
        CHECK(suites::fock_checks_for(suites::random_space({false, true}, 3, seed), 3).all_pass());
}

TEST_CASE("twisting the form") {
    const auto s = even1();
    const TwistResult same = twist_form(s, {{1}}, {{1}});
    CHECK(same.twisted->chi(0, 0) == 1);
    const TwistResult doubled = twist_form(s, {{2}}, {{1}});
    CHECK(doubled.twisted->chi(0, 0) == 2);
    CHECK(check_twist(doubled, 3).all_pass());

    const auto r2 = space_of({false, false}, {{1, 2}, {3, 4}});
    const TwistResult swapped = twist_form(r2, {{0, 1}, {1, 0}}, {{1, 0}, {0, 1}});
    CHECK(swapped.twisted->chi(0, 0) == 3);
    CHECK(swapped.twisted->chi(0, 1) == 4);
    CHECK(swapped.twisted->chi(1, 0) == 1);
    CHECK(check_twist(swapped, 2).all_pass());

    CHECK_THROWS_AS(twist_form(r2, {{1, 1}, {1, 1}}, {{1, 0}, {0, 1}}), SingularMatrix);
    CHECK_THROWS_AS(twist_form(load_space("rank2-mixed"), {{1, 1}, {0, 1}}, {{1, 0}, {0, 1}}), ParityViolation);
}

TEST_CASE("expression parsing") {
    const auto s = load_space("rank1-even");
    CHECK(normal_form_symbolic(s, "a[e,-2]*a[e,2]") == "a[e,2]*a[e,-2] + 2*chi[e,e]");
    CHECK(normal_form_symbolic(s, " a[ e , -2 ] * a[e,2] ") == "a[e,2]*a[e,-2] + 2*chi[e,e]");
    CHECK(parse_expression(s, "a[e,-2]*a[e,2]") == mono(s, {{0, 2}, {0, -2}}) + HeisElement::scalar(s, 2));
    CHECK(parse_expression(s, "p[e,2]") == pq_elem(s, Side::P, 0, 2));
    CHECK(parse_expression(s, "3/2*q[e,1] - a[e,-1]") == a(s, 0, -1) * Rational(1, 2));
    CHECK(parse_expression(s, "(a[e,1] + 1)*(a[e,1] - 1)") == mono(s, {{0, 1}, {0, 1}}) - HeisElement::scalar(s, 1));
    CHECK_THROWS_AS(parse_expression(s, "a[e,0]"), ParseError);
    CHECK_THROWS_AS(parse_expression(s, "a[e,1"), ParseError);
    CHECK_THROWS_AS(parse_expression(s, "a[e,1]*"), ParseError);
    CHECK_THROWS_AS(parse_expression(s, "p[e,-1]"), ParseError);
    CHECK_THROWS_AS(parse_expression(s, "a[x,1]"), UnknownBasisIndex);
}

TEST_CASE("space files") {
    const auto s = parse_space(R"({"basis": ["u", "v"], "parity": ["odd", "odd"], "chi": [["1/2", "0"], [0, "-3"]]})");
    CHECK(s->rank() == 2);
    CHECK(s->odd(1));
    CHECK(s->chi(0, 0) == Rational(1, 2));
    CHECK(s->chi(1, 1) == -3);
    CHECK_THROWS_AS(parse_space("{"), ParseError);
    CHECK_THROWS_AS(parse_space(R"({"basis": ["u"], "chi": [["1"]]})"), ParseError);
    CHECK_THROWS_AS(parse_space(R"({"basis": ["u"], "parity": ["weird"], "chi": [["1"]]})"), ParseError);
    CHECK_THROWS_AS(parse_space(R"({"basis": ["u","v"], "parity": ["odd","even"], "chi": [["1","1"],["0","1"]]})"),
                    ParityViolation);
    CHECK_THROWS_AS(load_space("/nonexistent/space.spec"), ParseError);
    CHECK_THROWS_AS(load_space("/nonexistent/rank1-even.spec"), ParseError);
    CHECK(load_space("rank1-odd.spec")->odd(0));
    CHECK(load_space(HEIS_DATA_DIR "/rank1-even.spec")->chi(0, 0) == 1);
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cohit/maps.hpp"
#include "cohit/steenrod.hpp"

using namespace cohit;

namespace {
Monomial mono(std::initializer_list<Exp> e) { return Monomial(std::vector<Exp>(e)); }

Monomial random_monomial(std::mt19937& rng, int m, Exp max_exp) {
    std::vector<Exp> e(std::size_t(m), 0);
    for (auto& x : e) x = rng() % (max_exp + 1);
    return Monomial(std::move(e));
}
}  // namespace

TEST_CASE("kameko halving on monomials", "[maps]") {
    CHECK(kameko_down(mono({3, 5, 1, 1, 1}))->exps() == std::vector<Exp>{1, 2, 0, 0, 0});
    CHECK_FALSE(kameko_down(mono({2, 1})));
    CHECK(kameko_down(mono({1, 1, 1, 1, 1}))->exps() == std::vector<Exp>{0, 0, 0, 0, 0});
}

TEST_CASE("kameko doubling", "[maps]") {
    CHECK(kameko_up(mono({1, 0})) == mono({3, 1}));
    CHECK(kameko_up(Monomial::constant(5)) == mono({1, 1, 1, 1, 1}));
}

TEST_CASE("halving undoes doubling exactly", "[maps]") {
    std::mt19937 rng(4);
    for (int m = 1; m <= 6; ++m)
        for (int t = 0; t < 100; ++t) {
            Monomial u = random_monomial(rng, m, 19);
            auto down = kameko_down(kameko_up(u));
            REQUIRE(down);
            CHECK(*down == u);
        }
}

TEST_CASE("polynomial kameko maps respect degree bookkeeping", "[maps]") {
    Polynomial f(mono({3, 1}));
    Polynomial up = kameko_up(f);
    CHECK(up.degree() == 2 * 4 + 2);
    CHECK(kameko_down(up) == f);
    CHECK_THROWS_AS(kameko_down(Polynomial(2, 3)), std::invalid_argument);  // parity
    CHECK_THROWS_AS(kameko_down(Polynomial(5, 3)), std::invalid_argument);  // degree < m
}

TEST_CASE("variable inclusion", "[maps]") {
    CHECK(include_variable(1, 2, mono({3})) == mono({0, 3}));
    CHECK(include_variable(2, 3, mono({2, 1})) == mono({2, 0, 1}));
    CHECK(include_variable(3, 3, mono({1, 1})) == mono({1, 1, 0}));
}

TEST_CASE("variable projection", "[maps]") {
    SECTION("substitute one target") {
        IndexPair p{1, {2}};
        CHECK(project_variable(p, mono({1, 2})) == Polynomial(mono({3})));
    }
    SECTION("empty target list kills the variable") {
        IndexPair p{1, {}};
        CHECK(project_variable(p, mono({1, 2})).zero());
        CHECK(project_variable(p, mono({0, 2})) == Polynomial(mono({2})));
    }
    SECTION("projection undoes inclusion") {
        IndexPair p{2, {3}};
        Monomial x = mono({2, 1});
        CHECK(project_variable(p, include_variable(2, 3, x)) == Polynomial(x));
    }
    SECTION("multinomial expansion over two targets") {
        // x_1^3 -> (x_1 + x_2)^3 = sum over bit routings of {1,2}
        IndexPair p{1, {2, 3}};
        Polynomial img = project_variable(p, mono({3, 0, 0}));
        Polynomial want(2, 3);
        want.toggle(mono({3, 0}));
        want.toggle(mono({2, 1}));
        want.toggle(mono({1, 2}));
        want.toggle(mono({0, 3}));
        CHECK(img == want);
    }
}

TEST_CASE("projection undoes inclusion for every matching pair", "[maps]") {
    std::mt19937 rng(8);
    for (int m = 2; m <= 5; ++m)
        for (const IndexPair& pair : IndexPair::all(m))
            for (int t = 0; t < 10; ++t) {
                Monomial x = random_monomial(rng, m - 1, 9);
                CHECK(project_variable(pair, include_variable(pair.l, m, x)) == Polynomial(x));
            }
}

TEST_CASE("inclusion and projection commute with the squares", "[maps]") {
    std::mt19937 rng(15);
    for (int m = 2; m <= 4; ++m)
        for (int t = 0; t < 30; ++t) {
            Monomial x = random_monomial(rng, m - 1, 6);
            Monomial y = random_monomial(rng, m, 6);
            unsigned long long k = rng() % 5;
            for (int l = 1; l <= m; ++l)
                CHECK(sq(k, include_variable(l, m, Polynomial(x))) ==
                      include_variable(l, m, sq(k, Polynomial(x))));
            auto pairs = IndexPair::all(m);
            const IndexPair& pair = pairs[rng() % pairs.size()];
            CHECK(sq(k, project_variable(pair, Polynomial(y))) ==
                  project_variable(pair, sq(k, Polynomial(y))));
        }
}

TEST_CASE("projection never raises the weight", "[maps]") {
    std::mt19937 rng(21);
    for (int m = 2; m <= 5; ++m)
        for (int t = 0; t < 60; ++t) {
            Monomial x = random_monomial(rng, m, 15);
            auto pairs = IndexPair::all(m);
            const IndexPair& pair = pairs[rng() % pairs.size()];
            Weight wx = Weight::of(x);
            Polynomial img = project_variable(pair, x);
            for (const Monomial& term : img.terms())
                CHECK(Weight::of(term) <= wx);
        }
}

TEST_CASE("spike lift", "[maps]") {
    SECTION("empty target list is the inclusion") {
        for (int l = 1; l <= 3; ++l) {
            IndexPair p{l, {}};
            auto img = spike_lift(p, 3, mono({2, 1}));
            REQUIRE(img);
            CHECK(*img == include_variable(l, 3, mono({2, 1})));
        }
    }
    SECTION("hand-evaluated lift") {
        IndexPair p{1, {2}};
        auto img = spike_lift(p, 3, mono({3, 0}));
        REQUIRE(img);
        CHECK(*img == mono({1, 2, 0}));
    }
    SECTION("bit condition failure gives zero") {
        IndexPair p{1, {2}};
        CHECK_FALSE(spike_lift(p, 3, mono({2, 0})));
    }
    SECTION("degree preserved whenever nonzero") {
        std::mt19937 rng(30);
        for (int m = 2; m <= 5; ++m)
            for (int t = 0; t < 80; ++t) {
                Monomial x = random_monomial(rng, m - 1, 31);
                auto pairs = IndexPair::all(m);
                const IndexPair& pair = pairs[rng() % pairs.size()];
                if (auto img = spike_lift(pair, m, x)) CHECK(img->degree() == x.degree());
            }
    }
}

TEST_CASE("candidate lifts", "[maps]") {
    SECTION("inclusion images of a single monomial") {
        auto c = candidate_lifts({mono({3})}, 2);
        REQUIRE(c.zero_part.size() == 2);
        CHECK(c.zero_part[0] == mono({3, 0}));
        CHECK(c.zero_part[1] == mono({0, 3}));
    }
    SECTION("empty input") {
        auto c = candidate_lifts({}, 4);
        CHECK(c.zero_part.empty());
        CHECK(c.positive_part.empty());
    }
    SECTION("mixed degrees rejected") {
        CHECK_THROWS_AS(candidate_lifts({mono({3}), mono({2})}, 2), std::invalid_argument);
    }
    SECTION("positive part has all exponents positive and right degree") {
        auto c = candidate_lifts({mono({3, 4}), mono({5, 2})}, 3);
        for (const Monomial& x : c.positive_part) {
            CHECK(x.all_positive());
            CHECK(x.degree() == 7);
        }
    }
}

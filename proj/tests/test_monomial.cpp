#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "cohit/monomial.hpp"

using namespace cohit;

namespace {
Monomial mono(std::initializer_list<Exp> e) { return Monomial(std::vector<Exp>(e)); }

Monomial random_monomial(std::mt19937& rng, int m, int max_total_deg) {
    std::uniform_int_distribution<int> d(0, max_total_deg);
    std::vector<Exp> e(std::size_t(m), 0);
    for (auto& x : e) x = Exp(d(rng) / m);
    return Monomial(std::move(e));
}
}  // namespace

TEST_CASE("weight vector of known monomials", "[monomial]") {
    // x1^31 x2^7 x3^3 in five variables
    CHECK(Weight::of(mono({31, 7, 3, 0, 0})).entries == std::vector<int>{3, 3, 2, 1, 1});
    // x1 x2 x3 x4 x5^14
    CHECK(Weight::of(mono({1, 1, 1, 1, 14})).entries == std::vector<int>{4, 1, 1, 1});
    // constant
    CHECK(Weight::of(mono({0, 0, 0})).entries.empty());
}

TEST_CASE("weight degree equals monomial degree", "[monomial]") {
    std::mt19937 rng(2);
    for (int m = 1; m <= 6; ++m)
        for (int t = 0; t < 200; ++t) {
            Monomial x = random_monomial(rng, m, 40 * m);
            CHECK(Weight::of(x).degree() == x.degree());
        }
}

TEST_CASE("order compares weights first, then exponents", "[monomial]") {
    // equal weights (1,1); exponent vectors decide
    CHECK(compare(mono({1, 2}), mono({2, 1})) == std::strong_ordering::less);
    // deg 7: weight of x1^7 is (1,1,1) < (3,2) = weight of x1^3 x2^3 x3
    CHECK(compare(mono({7, 0, 0}), mono({3, 3, 1})) == std::strong_ordering::less);
    CHECK(compare(mono({3, 2, 1}), mono({3, 2, 1})) == std::strong_ordering::equal);
    CHECK_THROWS_AS(compare(mono({1, 0}), mono({2, 0})), std::invalid_argument);
    CHECK_THROWS_AS(compare(mono({1, 0}), mono({1, 0, 0})), std::invalid_argument);
}

TEST_CASE("order is total: antisymmetric and transitive on random triples", "[monomial]") {
    std::mt19937 rng(7);
    auto all = enumerate_monomials(3, 9);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int t = 0; t < 500; ++t) {
        const Monomial &a = all[pick(rng)], &b = all[pick(rng)], &c = all[pick(rng)];
        auto ab = compare(a, b), ba = compare(b, a);
        if (ab == std::strong_ordering::less) CHECK(ba == std::strong_ordering::greater);
        if (ab == std::strong_ordering::equal) CHECK(a == b);
        if (compare(a, b) != std::strong_ordering::greater &&
            compare(b, c) != std::strong_ordering::greater)
            CHECK(compare(a, c) != std::strong_ordering::greater);
    }
}

TEST_CASE("alpha and beta", "[monomial]") {
    CHECK(alpha(0) == 0);
    CHECK(alpha(0b101101) == 4);
    CHECK(beta(0) == 0);
    CHECK(beta(18) == 2);
    CHECK(beta(7) == 1);
    CHECK(beta(41) == 3);
    CHECK(beta(5) == 3);
    CHECK(beta(12) == 4);
    for (unsigned long long n = 0; n <= 300; ++n) {
        int b = beta(n);
        CHECK(alpha(n + (unsigned long long)(b)) <= b);
        for (int k = 0; k < b; ++k) CHECK(alpha(n + (unsigned long long)(k)) > k);
    }
}

TEST_CASE("enumerate_monomials counts and order", "[monomial]") {
    CHECK(enumerate_monomials(2, 3).size() == 4);
    CHECK(enumerate_monomials(5, 18).size() == 7315);   // C(22,4)
    CHECK(enumerate_monomials(5, 41).size() == 148995); // C(45,4)
    auto all = enumerate_monomials(3, 6);
    for (std::size_t i = 0; i + 1 < all.size(); ++i)
        CHECK(compare(all[i], all[i + 1]) == std::strong_ordering::greater);
    CHECK_THROWS_AS(enumerate_monomials(6, 200), std::length_error);
}

TEST_CASE("minimal spikes", "[monomial]") {
    auto s41 = minimal_spike(5, 41);
    REQUIRE(s41);
    CHECK(s41->exps() == std::vector<Exp>{31, 7, 3, 0, 0});
    auto s18 = minimal_spike(5, 18);
    REQUIRE(s18);
    CHECK(s18->exps() == std::vector<Exp>{15, 3, 0, 0, 0});
    CHECK_FALSE(minimal_spike(2, 5));  // beta(5) = 3 > 2
}

TEST_CASE("minimal spike exists iff beta(n) <= m, and has minimal weight", "[monomial]") {
    for (int m = 1; m <= 5; ++m)
        for (unsigned long long n = 1; n <= 60; ++n) {
            auto s = minimal_spike(m, n);
            CHECK(bool(s) == (beta(n) <= m));
            if (!s) continue;
            CHECK(s->degree() == n);
            CHECK(s->is_spike());
            // strictly decreasing except possibly the last two positive ones
            const auto& e = s->exps();
            std::size_t last = 0;
            for (std::size_t j = 0; j < e.size(); ++j)
                if (e[j]) last = j;
            for (std::size_t j = 0; j + 1 <= last; ++j) {
                if (j + 1 == last)
                    CHECK(e[j] >= e[j + 1]);
                else
                    CHECK(e[j] > e[j + 1]);
            }
            // exhaustively minimal among spikes of that degree (spikes are
            // enumerated directly: every exponent is of the form 2^d - 1)
            Weight ws = Weight::of(*s);
            std::vector<Exp> parts;
            for (int d = 0; (Exp(1) << d) - 1 <= n; ++d) parts.push_back((Exp(1) << d) - 1);
            std::vector<Exp> cur(std::size_t(m), 0);
            std::function<void(int, unsigned long long)> rec = [&](int j, unsigned long long rest) {
                if (j == m) {
                    if (rest == 0) CHECK(ws <= Weight::of(Monomial(cur)));
                    return;
                }
                for (Exp p : parts) {
                    if (p > rest) break;
                    cur[std::size_t(j)] = p;
                    rec(j + 1, rest - p);
                }
                cur[std::size_t(j)] = 0;
            };
            rec(0, n);
        }
}

TEST_CASE("polynomial xor-set semantics", "[monomial]") {
    Polynomial p(2, 3);
    p.toggle(mono({1, 2}));
    p.toggle(mono({3, 0}));
    p.toggle(mono({1, 2}));
    REQUIRE(p.term_count() == 1);
    CHECK(p.terms()[0] == mono({3, 0}));
    CHECK_THROWS_AS(p.toggle(mono({1, 1})), std::invalid_argument);
    Polynomial q(2, 3);
    q.toggle(mono({3, 0}));
    q.toggle(mono({0, 3}));
    p += q;
    REQUIRE(p.term_count() == 1);
    CHECK(p.terms()[0] == mono({0, 3}));
}

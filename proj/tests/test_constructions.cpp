#include <doctest.h>

#include <random>

#include "cdu/constructions.hpp"
#include "cdu/ddt.hpp"
#include "cdu/errors.hpp"
#include "oracles.hpp"

using namespace cdu;

TEST_CASE("power-family constructions match pow") {
    auto K = make_field(2, 4);
    auto G = cons::gold(K, 1);
    for (elem_t x = 0; x < 16; ++x) CHECK(G(x) == K->pow(x, 3));
    auto Ks = cons::kasami(make_field(2, 6), 2);  // exponent 2^4 - 2^2 + 1 = 13
    for (elem_t x = 0; x < 64; ++x) CHECK(Ks(x) == Ks.ctx()->pow(x, 13));
    auto I = cons::inverse_perm(K);
    CHECK(I(0) == 0);
    for (elem_t x = 1; x < 16; ++x) CHECK(I(x) == K->inv(x));
    auto ones = cons::power_map(K, 0);
    for (elem_t x = 0; x < 16; ++x) CHECK(ones(x) == 1);
    CHECK_THROWS_AS((void)cons::gold(K, 0), Error);
    CHECK_THROWS_AS((void)cons::gold(K, 4), Error);
    CHECK_THROWS_AS((void)cons::gold(make_field(3, 2), 1), Error);
    CHECK_THROWS_AS((void)cons::kasami(make_field(3, 2), 1), Error);
}

TEST_CASE("two-piece modification selects by membership") {
    auto K = make_field(2, 4);
    auto view = K->subfield(2);
    FuncTable f = cons::power_map(K, 2), g = cons::power_map(K, 3);
    FuncTable F = cons::piecewise_two(f, g, 2);
    for (elem_t x = 0; x < 16; ++x) CHECK(F(x) == (view->contains(x) ? f(x) : g(x)));
}

TEST_CASE("two-piece modification equals its polynomial form") {
    // F = g + (f - g) * u where u = 1 - (x^(p^s) - x)^(q-1) indicates the
    // subfield: an independent closed form for the same function.
    for (auto [p, n, s] : {std::tuple{2u, 4u, 2u}, {3u, 2u, 1u}}) {
        CAPTURE(p);
        auto K = make_field(p, n);
        std::mt19937_64 rng(41);
        FuncTable f = oracle::random_closed(K, s, rng);
        FuncTable g = oracle::random_table(K, rng);
        FuncTable F = cons::piecewise_two(f, g, s);
        const elem_t q = K->order();
        std::uint64_t ps = 1;
        for (std::uint32_t i = 0; i < s; ++i) ps *= p;
        UnivariatePoly t;  // x^(p^s) - x
        t.coeffs.assign(ps + 1, 0);
        t.coeffs[1] = K->neg(1);
        t.coeffs[ps] = 1;
        UnivariatePoly u = poly_pow(*K, t, q - 1);
        for (elem_t x = 0; x < q; ++x) {
            elem_t ind = K->sub(1, poly_eval(*K, u, x));
            elem_t expect = K->add(g(x), K->mul(ind, K->sub(f(x), g(x))));
            CHECK(F(x) == expect);
        }
    }
}

TEST_CASE("two-piece modification rejects escaping pieces") {
    auto K = make_field(2, 4);
    std::vector<std::uint32_t> vals(16, 0);
    vals[0] = 2;  // 2 is outside the prime subfield {0,1}
    FuncTable f(K, vals);
    CHECK_THROWS_AS((void)cons::piecewise_two(f, FuncTable::identity(K), 1), Error);
    CHECK_THROWS_AS(
        (void)cons::piecewise_two(FuncTable::identity(make_field(2, 3)),
                                  FuncTable::identity(K), 1),
        Error);
}

TEST_CASE("three-piece modification nests the two subfields") {
    auto K = make_field(2, 6);
    FuncTable f = cons::power_map(K, 2), g = cons::power_map(K, 4), h = cons::gold(K, 2);
    FuncTable F = cons::piecewise_three(f, g, h, 2, 3);
    auto v2 = K->subfield(2), v3 = K->subfield(3);
    for (elem_t x = 0; x < 64; ++x) {
        if (v3->contains(x))
            CHECK(F(x) == f(x));  // the degree-t subfield wins everywhere on it
        else if (v2->contains(x))
            CHECK(F(x) == g(x));
        else
            CHECK(F(x) == h(x));
    }
    CHECK_THROWS_AS((void)cons::piecewise_three(f, g, h, 2, 4), Error);  // gcd != 1
}

TEST_CASE("chain modification paints from the inside out") {
    auto K = make_field(2, 4);
    cons::PieceSpec spec;
    spec.ks = {1, 2, 4};
    spec.fs = {FuncTable::identity(K), cons::power_map(K, 2), cons::power_map(K, 3)};
    FuncTable F = cons::piecewise_chain(spec);
    auto v1 = K->subfield(1), v2 = K->subfield(2);
    for (elem_t x = 0; x < 16; ++x) {
        if (v1->contains(x))
            CHECK(F(x) == x);
        else if (v2->contains(x))
            CHECK(F(x) == K->pow(x, 2));
        else
            CHECK(F(x) == K->pow(x, 3));
    }
    // a two-link chain is exactly the two-piece modification
    cons::PieceSpec two;
    two.ks = {2, 4};
    two.fs = {cons::power_map(K, 2), cons::power_map(K, 3)};
    CHECK(cons::piecewise_chain(two).values() ==
          cons::piecewise_two(cons::power_map(K, 2), cons::power_map(K, 3), 2).values());
}

TEST_CASE("chain validation rejects malformed ladders") {
    auto K = make_field(2, 4);
    auto mk = [&](std::vector<std::uint32_t> ks, std::size_t m) {
        cons::PieceSpec s;
        s.ks = std::move(ks);
        for (std::size_t i = 0; i < m; ++i) s.fs.push_back(FuncTable::identity(K));
        return s;
    };
    CHECK_THROWS_AS((void)cons::piecewise_chain(mk({}, 0)), Error);
    CHECK_THROWS_AS((void)cons::piecewise_chain(mk({2, 4}, 1)), Error);
    CHECK_THROWS_AS((void)cons::piecewise_chain(mk({2, 2, 4}, 3)), Error);  // not increasing
    CHECK_THROWS_AS((void)cons::piecewise_chain(mk({1, 3, 4}, 3)), Error);  // 3 nmid 4
    CHECK_THROWS_AS((void)cons::piecewise_chain(mk({1, 2}, 2)), Error);     // top != n
}

TEST_CASE("shifted gold map adds the shift on the subfield only") {
    auto K = make_field(2, 6);
    const elem_t alpha = 58;  // inside the degree-2 subfield
    FuncTable G = cons::gold_shift(K, 2, 1, alpha);
    auto view = K->subfield(2);
    for (elem_t x = 0; x < 64; ++x) {
        elem_t base = K->pow(x, 3);
        CHECK(G(x) == (view->contains(x) ? K->add(base, alpha) : base));
    }
    CHECK_THROWS_AS((void)cons::gold_shift(K, 2, 1, 0), Error);
    CHECK_THROWS_AS((void)cons::gold_shift(K, 2, 1, 2), Error);  // 2 not in subfield
}

TEST_CASE("coordinate-wise combination applies one piece per coordinate") {
    auto K = make_field(2, 4);
    auto view = K->subfield(2);
    const DualProjection& proj = view->projection();
    FuncTable f1 = cons::power_map(K, 2), f2 = cons::power_map(K, 3);
    FuncTable F = cons::concat(proj, {f1, f2});
    for (elem_t a : view->elements())
        for (elem_t b : view->elements())
            CHECK(F(proj.combine({a, b})) == proj.combine({f1(a), f2(b)}));
    CHECK_THROWS_AS((void)cons::concat(proj, {f1}), Error);
    // a piece that moves subfield points outside is rejected
    std::vector<std::uint32_t> vals(16);
    for (elem_t x = 0; x < 16; ++x) vals[x] = (std::uint32_t)x;
    vals[0] = 2;
    CHECK_THROWS_AS((void)cons::concat(proj, {FuncTable(K, vals), f2}), Error);
}

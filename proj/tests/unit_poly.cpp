#include <doctest.h>

#include "loewy/poly.hpp"
#include "loewy/prng.hpp"

using namespace loewy;

namespace {
FieldPolynomial poly3(std::vector<uint8_t> c) { return FieldPolynomial(3, std::move(c)); }
}

TEST_CASE("poly arithmetic") {
    auto f = poly3({1, 1});        // 1 + x
    auto g = poly3({2, 1});        // 2 + x = x - 1
    auto prod = f * g;             // x^2 + 3x + 2 = x^2 + 2
    CHECK(prod == poly3({2, 0, 1}));
    auto [q, r] = prod.divmod(f);
    CHECK(q == g);
    CHECK(r.is_zero());
    CHECK(poly_gcd(prod, f) == f.monic());
}

TEST_CASE("factor x^2 - 1 over GF(3)") {
    auto f = poly3({2, 0, 1}); // x^2 + 2 = x^2 - 1
    auto fac = factor_poly(f);
    REQUIRE(fac.size() == 2);
    CHECK(fac[0].first == poly3({1, 1}));  // x + 1
    CHECK(fac[1].first == poly3({2, 1}));  // x + 2 = x - 1
    CHECK(fac[0].second == 1);
    CHECK(fac[1].second == 1);
}

TEST_CASE("x^2 + 1 irreducible over GF(3)") {
    CHECK(poly_is_irreducible(poly3({1, 0, 1})));
    CHECK(!poly_is_irreducible(poly3({2, 0, 1})));
}

TEST_CASE("factorization with multiplicities and p-th powers") {
    auto x = FieldPolynomial::x_power(3, 1);
    auto f = (x + poly3({1})) * (x + poly3({1})) * (x + poly3({1})) * (x + poly3({2})) * poly3({1, 0, 1});
    auto fac = factor_poly(f);
    size_t total = 0;
    FieldPolynomial rebuilt = poly3({1});
    for (auto& [g, m] : fac) {
        total += m * g.degree();
        for (size_t i = 0; i < m; ++i) rebuilt = rebuilt * g;
    }
    CHECK(total == static_cast<size_t>(f.degree()));
    CHECK(rebuilt == f.monic());
    bool saw_cubed = false;
    for (auto& [g, m] : fac)
        if (g == poly3({1, 1}) && m == 3) saw_cubed = true;
    CHECK(saw_cubed);
}

TEST_CASE("min_poly of identity is x - 1") {
    auto id = FieldMatrix::identity(3, 4);
    CHECK(min_poly(id) == poly3({2, 1}));
    CHECK(char_poly(id) == poly3({2, 1}) * poly3({2, 1}) * poly3({2, 1}) * poly3({2, 1}));
}

TEST_CASE("char_poly and min_poly agree with structure on random matrices") {
    Rng rng(404);
    for (int trial = 0; trial < 8; ++trial) {
        size_t n = 2 + rng.below(9);
        FieldMatrix m(3, n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m.set(i, j, rng.trit());
        auto cp = char_poly(m);
        CHECK(cp.degree() == static_cast<int>(n));
        CHECK(cp.is_monic());
        CHECK(poly_eval(cp, m).is_zero());    // Cayley-Hamilton
        auto mp = min_poly(m);
        CHECK(poly_eval(mp, m).is_zero());
        CHECK(cp.divmod(mp).second.is_zero()); // min divides char
        // nullity of m equals multiplicity count of factor x in min/char consistency
        auto fac = factor_poly(cp);
        FieldPolynomial rebuilt = FieldPolynomial::constant(3, 1);
        for (auto& [g, mult] : fac)
            for (size_t i = 0; i < mult; ++i) rebuilt = rebuilt * g;
        CHECK(rebuilt == cp);
    }
}

TEST_CASE("char_poly on p=5") {
    Rng rng(11);
    FieldMatrix m(5, 6, 6);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) m.set(i, j, static_cast<uint8_t>(rng.below(5)));
    auto cp = char_poly(m);
    CHECK(poly_eval(cp, m).is_zero());
}

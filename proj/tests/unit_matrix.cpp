#include <doctest.h>

#include "loewy/matrix.hpp"
#include "loewy/prng.hpp"

using namespace loewy;

namespace {

FieldMatrix random_matrix(uint32_t p, size_t r, size_t c, Rng& rng) {
    FieldMatrix m(p, r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            m.set(i, j, static_cast<uint8_t>(rng.below(p)));
    return m;
}

FieldMatrix naive_product(const FieldMatrix& a, const FieldMatrix& b) {
    auto c = naive::mat_mul(a.p(), a.unpack(), a.rows(), a.cols(), b.unpack(),
                            b.rows(), b.cols());
    return FieldMatrix::from_entries(a.p(), a.rows(), b.cols(), c);
}

} // namespace

TEST_CASE("gf3 packed roundtrip") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        size_t r = 1 + rng.below(40), c = 1 + rng.below(130);
        auto m = random_matrix(3, r, c, rng);
        auto e = m.unpack();
        auto m2 = FieldMatrix::from_entries(3, r, c, e);
        CHECK(m == m2);
    }
}

TEST_CASE("identity and zero multiplication") {
    auto id = FieldMatrix::identity(3, 3);
    Rng rng(11);
    auto m = random_matrix(3, 3, 3, rng);
    CHECK(mat_mul(id, m) == m);
    CHECK(mat_mul(m, id) == m);
    FieldMatrix z(3, 3, 3);
    CHECK(mat_mul(m, z).is_zero());
    // [[2]] * [[2]] = [[1]] over GF(3)
    auto two = FieldMatrix::from_entries(3, 1, 1, {2});
    CHECK(mat_mul(two, two).get(0, 0) == 1);
}

TEST_CASE("packed multiply matches naive reference") {
    Rng rng(123);
    for (int trial = 0; trial < 12; ++trial) {
        size_t m = 1 + rng.below(70), k = 1 + rng.below(90), n = 1 + rng.below(140);
        auto a = random_matrix(3, m, k, rng);
        auto b = random_matrix(3, k, n, rng);
        CHECK(mat_mul(a, b) == naive_product(a, b));
    }
}

TEST_CASE("multiplication associativity and distributivity") {
    Rng rng(99);
    for (int trial = 0; trial < 6; ++trial) {
        auto a = random_matrix(3, 17, 23, rng);
        auto b = random_matrix(3, 23, 11, rng);
        auto c = random_matrix(3, 11, 29, rng);
        CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
        auto b2 = random_matrix(3, 23, 11, rng);
        CHECK(mat_mul(a, b + b2) == mat_mul(a, b) + mat_mul(a, b2));
    }
}

TEST_CASE("rref basics") {
    // [[1,2],[2,1]] over GF(3) has rank 1
    auto m = FieldMatrix::from_entries(3, 2, 2, {1, 2, 2, 1});
    auto e = m.rref();
    CHECK(e.rank == 1);
    CHECK(FieldMatrix::identity(3, 3).rref().rank == 3);
    CHECK(FieldMatrix(3, 4, 4).rref().rank == 0);
    // idempotent
    auto e2 = e.reduced.rref();
    CHECK(e2.reduced == e.reduced);
}

TEST_CASE("rref matches naive reference and rank-nullity holds") {
    Rng rng(2024);
    for (int trial = 0; trial < 10; ++trial) {
        size_t r = 1 + rng.below(60), c = 1 + rng.below(80);
        auto m = random_matrix(3, r, c, rng);
        auto bytes = m.unpack();
        std::vector<size_t> piv;
        size_t nrank = naive::rref(3, bytes, r, c, &piv);
        auto e = m.rref();
        CHECK(e.rank == nrank);
        CHECK(e.pivots == piv);
        auto red = FieldMatrix::from_entries(3, r, c, bytes).row_slice(0, nrank);
        CHECK(e.reduced == red);
        auto ns = m.nullspace();
        CHECK(ns.rows() == c - e.rank);
        if (ns.rows()) CHECK(mat_mul(ns, m.transposed()).is_zero());
    }
}

TEST_CASE("nullspace examples") {
    auto m = FieldMatrix::from_entries(3, 2, 2, {1, 2, 2, 1});
    auto ns = m.nullspace();
    REQUIRE(ns.rows() == 1);
    CHECK(ns.get(0, 0) == 1);
    CHECK(ns.get(0, 1) == 1);
    CHECK(FieldMatrix::identity(3, 5).nullspace().rows() == 0);
    CHECK(FieldMatrix(3, 2, 2).nullspace().rows() == 2);
}

TEST_CASE("inverse") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_matrix(3, 12, 12, rng);
        auto inv = m.inverse();
        if (m.rref().rank == 12) {
            REQUIRE(inv.has_value());
            CHECK(mat_mul(m, *inv).is_identity());
        } else {
            CHECK(!inv.has_value());
        }
    }
}

TEST_CASE("generic p path (p = 5)") {
    Rng rng(31);
    auto a = random_matrix(5, 9, 9, rng);
    auto b = random_matrix(5, 9, 9, rng);
    CHECK(mat_mul(a, b) == naive_product(a, b));
    auto ns = a.nullspace();
    CHECK(ns.rows() + a.rank() == 9);
}

TEST_CASE("vec_mat agrees with mat_mul") {
    Rng rng(77);
    auto v = random_matrix(3, 3, 40, rng);
    auto m = random_matrix(3, 40, 31, rng);
    auto full = mat_mul(v, m);
    for (size_t r = 0; r < 3; ++r) {
        auto row = vec_mat(v, r, m);
        for (size_t j = 0; j < 31; ++j) CHECK(row.get(0, j) == full.get(r, j));
    }
}

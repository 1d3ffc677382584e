#include <doctest.h>

#include "loewy/meataxe.hpp"

#include <algorithm>

using namespace loewy;

namespace {

std::shared_ptr<const GroupSpec> an(size_t n) {
    return std::make_shared<GroupSpec>(alternating_group(n));
}

std::vector<std::pair<std::string, size_t>> chop_multiset(const ModulePtr& m,
                                                          uint64_t seed = 1) {
    SimpleCatalog cat;
    cat.p = m->p;
    cat.group_name = m->group->name;
    auto series = chop(m, cat, seed);
    return series.factors;
}

} // namespace

TEST_CASE("spin basics") {
    auto g = an(5);
    auto m = perm_module(g, 3);
    FieldMatrix zero(3, 1, 5);
    CHECK(spin(zero, *m).rows() == 0);
    FieldMatrix ones(3, 1, 5);
    for (size_t j = 0; j < 5; ++j) ones.set(0, j, 1);
    CHECK(spin(ones, *m).rows() == 1);
    FieldMatrix e0(3, 1, 5);
    e0.set(0, 0, 1);
    CHECK(spin(e0, *m).rows() == 5);
    // idempotent: spinning the result returns itself
    auto s = spin(e0, *m);
    CHECK(spin(s, *m) == s);
}

TEST_CASE("regular module of C3 chops to three trivials") {
    auto c3 = an(3); // cyclic of order 3 acting on 3 points = regular module
    auto m = perm_module(c3, 3);
    auto factors = chop_multiset(m);
    REQUIRE(factors.size() == 1);
    CHECK(factors[0].first == "1");
    CHECK(factors[0].second == 3);
}

TEST_CASE("perm module factors for small alternating groups") {
    // A5 on 5 points mod 3: 1 + 4
    auto f5 = chop_multiset(perm_module(an(5), 3));
    REQUIRE(f5.size() == 2);
    CHECK(f5[0] == std::pair<std::string, size_t>{"1", 1});
    CHECK(f5[1] == std::pair<std::string, size_t>{"4", 1});
    // A9 on 9 points mod 3 (3 | 9): 1, 1, 7
    auto f9 = chop_multiset(perm_module(an(9), 3));
    REQUIRE(f9.size() == 2);
    CHECK(f9[0] == std::pair<std::string, size_t>{"1", 2});
    CHECK(f9[1] == std::pair<std::string, size_t>{"7", 1});
    // A8 2-subsets: 1, 7, 7, 13
    auto f28 = chop_multiset(k_subsets_module(an(8), 2, 3));
    REQUIRE(f28.size() == 3);
    CHECK(f28[0] == std::pair<std::string, size_t>{"1", 1});
    CHECK(f28[1] == std::pair<std::string, size_t>{"13", 1});
    CHECK(f28[2] == std::pair<std::string, size_t>{"7", 2});
}

TEST_CASE("chop determinism") {
    auto m = k_subsets_module(an(6), 2, 3);
    SimpleCatalog c1, c2;
    c1.p = c2.p = 3;
    auto s1 = chop(m, c1, 99);
    auto s2 = chop(m, c2, 99);
    CHECK(s1.factors == s2.factors);
    CHECK(s1.leaves_in_order == s2.leaves_in_order);
    SimpleCatalog c3;
    c3.p = 3;
    auto s3 = chop(m, c3, 100);
    CHECK(s1.factors == s3.factors); // same multiset whatever the seed
}

TEST_CASE("norton certificates re-verify") {
    auto m = k_subsets_module(an(7), 2, 3); // 21-dim
    auto leaves = chop_factors(m, 5);
    size_t checked = 0;
    for (const auto& leaf : leaves) {
        if (leaf.factor->dim > 1) {
            CHECK(verify_norton(*leaf.factor, leaf.norton_word));
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("chop of a direct sum is the multiset union") {
    auto g = an(5);
    auto a = perm_module(g, 3);
    auto b = k_subsets_module(g, 2, 3);
    SimpleCatalog cat;
    cat.p = 3;
    auto sa = chop(a, cat, 7);
    auto sb = chop(b, cat, 7);
    auto ss = chop(direct_sum(a, b), cat, 7);
    std::map<std::string, size_t> expect;
    for (auto& [l, c] : sa.factors) expect[l] += c;
    for (auto& [l, c] : sb.factors) expect[l] += c;
    std::map<std::string, size_t> got(ss.factors.begin(), ss.factors.end());
    CHECK(got == expect);
}

TEST_CASE("isomorphism: identity and conjugated copies") {
    auto g = an(5);
    auto m = perm_module(g, 3);
    auto leaves = chop_factors(m, 3);
    ModulePtr four;
    for (auto& l : leaves)
        if (l.factor->dim == 4) four = l.factor;
    REQUIRE(four);
    auto self = module_isomorphism(*four, *four, 17);
    REQUIRE(self.has_value());
    // conjugate by a random invertible matrix
    FieldMatrix T(3, 4, 4);
    Rng rng(55);
    do {
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) T.set(i, j, rng.trit());
    } while (!T.inverse());
    auto Ti = *T.inverse();
    std::vector<FieldMatrix> conj;
    for (const auto& a : four->action) conj.push_back(mat_mul(mat_mul(T, a), Ti));
    auto twisted = make_module(four->group, 3, conj, prov::Atom{"conj"}, "conj");
    auto iso = module_isomorphism(*four, *twisted, 17);
    REQUIRE(iso.has_value());
    for (size_t gi = 0; gi < four->action.size(); ++gi)
        CHECK(mat_mul(four->action[gi], *iso) == mat_mul(*iso, twisted->action[gi]));
    // self-duality of the 4-dim simple of A5
    auto d = dual(four);
    CHECK(module_isomorphism(*four, *d, 17).has_value());
}

TEST_CASE("peakwords for the A5 catalog") {
    SimpleCatalog cat;
    cat.p = 3;
    cat.group_name = "A5";
    auto g = an(5);
    chop(perm_module(g, 3), cat, 1);
    chop(k_subsets_module(g, 2, 3), cat, 1);
    peakword_search(cat, 1);
    for (const auto& e : cat.entries()) {
        REQUIRE(e.peakword.has_value());
        FieldMatrix ev = e.peakword->eval(*e.rep);
        CHECK(e.rep->dim - ev.rank() == e.end_dim);
        for (const auto& other : cat.entries()) {
            if (other.label == e.label) continue;
            FieldMatrix evo = e.peakword->eval(*other.rep);
            CHECK(evo.rank() == other.rep->dim); // invertible elsewhere
        }
    }
}

TEST_CASE("word serialization round trip") {
    Rng rng(8);
    for (int t = 0; t < 10; ++t) {
        AlgebraWord w = random_word(rng, 2);
        auto s = w.to_string();
        AlgebraWord back = AlgebraWord::parse(s, 2);
        auto m = perm_module(an(5), 3);
        CHECK(w.eval(*m) == back.eval(*m));
    }
}

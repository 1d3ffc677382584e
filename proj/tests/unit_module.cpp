#include <doctest.h>

#include "loewy/module.hpp"

using namespace loewy;

namespace {

std::shared_ptr<const GroupSpec> an(size_t n) {
    return std::make_shared<GroupSpec>(alternating_group(n));
}

std::shared_ptr<const GroupSpec> embedded_in(const GroupSpec& h, size_t degree) {
    auto out = std::make_shared<GroupSpec>();
    out->name = h.name;
    out->degree = degree;
    for (const auto& g : h.generators) out->generators.push_back(g.extended(degree));
    return out;
}

} // namespace

TEST_CASE("perm module basics") {
    auto g = an(5);
    auto m = perm_module(g, 3);
    CHECK(m->dim == 5);
    CHECK(satisfies_generator_relations(*m));
    for (const auto& a : m->action) {
        for (size_t i = 0; i < 5; ++i) {
            size_t count = 0;
            for (size_t j = 0; j < 5; ++j)
                if (a.get(i, j)) ++count;
            CHECK(count == 1);
        }
    }
}

TEST_CASE("k-subsets dimensions") {
    CHECK(k_subsets_module(an(10), 2, 3)->dim == 45);
    CHECK(k_subsets_module(an(10), 3, 3)->dim == 120);
    CHECK(k_subsets_module(an(8), 2, 3)->dim == 28);
}

TEST_CASE("tensor, dual, direct sum") {
    auto g = an(5);
    auto m = perm_module(g, 3);
    auto t = tensor(m, m);
    CHECK(t->dim == 25);
    CHECK(satisfies_generator_relations(*t));
    auto d = dual(m);
    CHECK(satisfies_generator_relations(*d));
    auto dd = dual(d);
    for (size_t i = 0; i < m->action.size(); ++i) CHECK(dd->action[i] == m->action[i]);
    auto s = direct_sum(m, d);
    CHECK(s->dim == 10);
    CHECK(satisfies_generator_relations(*s));
}

TEST_CASE("element evaluation multiplicative") {
    auto g = an(6);
    auto m = k_subsets_module(g, 2, 3);
    auto x = Permutation::from_cycles("(1 2 3 4 5)", 6);
    auto y = Permutation::from_cycles("(2 4 6)", 6);
    auto mx = element_matrix(*m, x);
    auto my = element_matrix(*m, y);
    CHECK(element_matrix(*m, x * y) == mat_mul(mx, my));
}

TEST_CASE("restriction") {
    auto g = an(6);
    auto h = an(5);
    auto m = perm_module(g, 3);
    auto r = restrict_module(m, h);
    CHECK(r->dim == 6);
    CHECK(satisfies_generator_relations(*r));
    // restricting the permutation module keeps permutation matrices
    for (const auto& a : r->action) {
        for (size_t i = 0; i < 6; ++i) {
            size_t count = 0;
            for (size_t j = 0; j < 6; ++j)
                if (a.get(i, j)) ++count;
            CHECK(count == 1);
        }
    }
}

TEST_CASE("induction dimension and relations") {
    auto g6full = alternating_group(6);
    auto g6 = an(6);
    auto h5 = an(5);
    auto emb = embedded_in(*h5, 6);
    auto cd = std::make_shared<CosetData>(g6full, *emb);
    auto triv = trivial_module(h5, 3);
    auto ind = induce_module(triv, g6, cd);
    CHECK(ind->dim == 6);
    CHECK(satisfies_generator_relations(*ind));
    // induced trivial = permutation module on cosets: permutation matrices
    for (const auto& a : ind->action)
        for (size_t i = 0; i < 6; ++i) {
            size_t cnt = 0;
            for (size_t j = 0; j < 6; ++j)
                if (a.get(i, j)) ++cnt;
            CHECK(cnt == 1);
        }
    auto m5 = perm_module(h5, 3);
    auto ind5 = induce_module(m5, g6, cd);
    CHECK(ind5->dim == 30);
    CHECK(satisfies_generator_relations(*ind5));
    // element evaluation through induced provenance stays multiplicative
    auto x = Permutation::from_cycles("(1 2 3 4 5)", 6);
    auto y = Permutation::from_cycles("(1 6)(2 3)", 6);
    CHECK(element_matrix(*ind5, x * y) ==
          mat_mul(element_matrix(*ind5, x), element_matrix(*ind5, y)));
}

TEST_CASE("sub_quotient on fixed vector") {
    auto g = an(5);
    auto m = perm_module(g, 3);
    FieldMatrix ones(3, 1, 5);
    for (size_t j = 0; j < 5; ++j) ones.set(0, j, 1);
    auto sq = sub_quotient(m, ones);
    CHECK(sq.sub->dim == 1);
    CHECK(sq.quotient->dim == 4);
    CHECK(satisfies_generator_relations(*sq.quotient));
    for (const auto& a : sq.sub->action) CHECK(a.is_identity());
    // zero-dimensional basis: sub empty, quotient whole
    auto sq0 = sub_quotient(m, FieldMatrix(3, 0, 5));
    CHECK(sq0.sub->dim == 0);
    CHECK(sq0.quotient->dim == 5);
}

TEST_CASE("sign characters of the Klein four group in A4") {
    auto v4 = std::make_shared<GroupSpec>();
    v4->name = "V4";
    v4->degree = 4;
    v4->generators = {Permutation::from_cycles("(1 2)(3 4)", 4),
                      Permutation::from_cycles("(1 3)(2 4)", 4)};
    auto chars = sign_characters(v4, 3);
    CHECK(chars.size() == 4);
    for (const auto& c : chars) {
        CHECK(c->dim == 1);
        CHECK(satisfies_generator_relations(*c));
    }
}

TEST_CASE("dim(34 x 41) = 1394 style dimension arithmetic") {
    // tensor dimension is the product without building A10-sized objects here
    auto g = an(5);
    auto a = perm_module(g, 3);
    auto b = k_subsets_module(g, 2, 3);
    CHECK(tensor(a, b)->dim == a->dim * b->dim);
}

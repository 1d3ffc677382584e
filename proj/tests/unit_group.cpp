#include <doctest.h>

#include "loewy/group.hpp"

#include <map>
#include <set>

using namespace loewy;

namespace {

// exhaustive closure; the brute-force oracle for small degree
std::set<Permutation> enumerate_group(const GroupSpec& g) {
    std::set<Permutation> out{Permutation(g.degree)};
    std::vector<Permutation> queue{Permutation(g.degree)};
    while (!queue.empty()) {
        Permutation x = queue.back();
        queue.pop_back();
        for (const auto& gen : g.generators) {
            Permutation y = x * gen;
            if (out.insert(y).second) queue.push_back(y);
        }
    }
    return out;
}

} // namespace

TEST_CASE("permutation basics") {
    auto p = Permutation::from_cycles("(1 2 3)(4 5)", 6);
    CHECK(p(0) == 1);
    CHECK(p(3) == 4);
    CHECK(p(5) == 5);
    CHECK(p.to_cycles() == "(1 2 3)(4 5)");
    CHECK(!p.is_even());
    CHECK(p.order() == 6);
    auto q = Permutation::from_cycles("(1 2)", 6);
    // left-to-right composition: (p*q)(0): p:0->1, q:1->0
    CHECK((p * q)(0) == 0);
    CHECK((p * p.inverse()).is_identity());
}

TEST_CASE("alternating group orders") {
    CHECK(alternating_group(3).generators.size() == 1);
    std::map<size_t, unsigned long long> expect{
        {3, 3}, {4, 12}, {5, 60}, {6, 360}, {7, 2520}, {8, 20160}, {9, 181440}, {10, 1814400}};
    for (auto [n, ord] : expect) {
        auto g = alternating_group(n);
        for (const auto& gen : g.generators) CHECK(gen.is_even());
        StabChain chain(g);
        CHECK(chain.order() == ord);
    }
}

TEST_CASE("membership against exhaustive enumeration, degree <= 6") {
    for (size_t n : {4, 5, 6}) {
        auto g = alternating_group(n);
        StabChain chain(g);
        auto all = enumerate_group(g);
        CHECK(all.size() == chain.order());
        // every even permutation of degree n is a member, odd ones are not
        std::vector<uint32_t> img(n);
        for (size_t i = 0; i < n; ++i) img[i] = static_cast<uint32_t>(i);
        size_t members = 0, total = 0;
        do {
            auto p = Permutation::from_images(img);
            ++total;
            bool inside = chain.contains(p);
            CHECK(inside == (all.count(p) > 0));
            CHECK(inside == p.is_even());
            if (inside) ++members;
        } while (std::next_permutation(img.begin(), img.end()));
        CHECK(members == chain.order());
        CHECK(total == members * 2);
    }
}

TEST_CASE("factorization reconstructs the element") {
    auto g = alternating_group(7);
    StabChain chain(g);
    auto x = Permutation::from_cycles("(1 3 5)(2 4 6)", 7);
    auto f = chain.factor(x);
    REQUIRE(f.has_value());
    Permutation acc(7);
    for (const auto& [lvl, pt] : f->factors) acc = acc * chain.transversal(lvl, pt);
    CHECK(acc == x);
    CHECK(!chain.contains(Permutation::from_cycles("(1 2)", 7)));
}

TEST_CASE("coset data for A5 < A6 and factorization identity") {
    auto g6 = alternating_group(6);
    auto g5 = alternating_group(5);
    GroupSpec embedded;
    embedded.name = g5.name;
    embedded.degree = 6;
    for (const auto& gen : g5.generators) embedded.generators.push_back(gen.extended(6));
    CosetData cd(g6, embedded);
    CHECK(cd.index() == 6);
    StabChain hchain(embedded);
    for (size_t i = 0; i < cd.index(); ++i)
        for (size_t gi = 0; gi < g6.generators.size(); ++gi) {
            const auto& mv = cd.action(i, gi);
            // t_i * gen = h * t_j exactly
            CHECK(cd.rep(i) * g6.generators[gi] == mv.hpart * cd.rep(mv.target));
            CHECK(hchain.contains(mv.hpart));
        }
}

TEST_CASE("coset keys identify cosets") {
    auto g = alternating_group(6);
    auto h = alternating_group(5);
    GroupSpec emb;
    emb.name = h.name;
    emb.degree = 6;
    for (const auto& gen : h.generators) emb.generators.push_back(gen.extended(6));
    StabChain hc(emb);
    auto all = enumerate_group(emb);
    auto x = Permutation::from_cycles("(1 2 3 4 5)", 6);
    auto key = hc.min_coset_key(x);
    for (const auto& h_el : all) CHECK(hc.min_coset_key(h_el * x) == key);
    auto y = Permutation::from_cycles("(1 6 2)", 6);
    CHECK(hc.min_coset_key(y) != key);
}

TEST_CASE("sylow-2 of A8 coset count") {
    auto g = alternating_group(8);
    // elementary: the subgroup below has order 64 and sits inside A8
    GroupSpec syl;
    syl.name = "syl2a8";
    syl.degree = 8;
    syl.generators = {
        Permutation::from_cycles("(1 3)(2 4)", 8),
        Permutation::from_cycles("(1 2)(3 4)", 8),
        Permutation::from_cycles("(1 5)(2 6)(3 7)(4 8)", 8),
        Permutation::from_cycles("(1 2)(5 6)", 8),
    };
    StabChain sc(syl);
    CHECK(sc.order() == 64);
    CosetData cd(g, syl);
    CHECK(cd.index() == 315);
    auto probe = Permutation::from_cycles("(1 2 3)", 8);
    auto [j, hpart] = cd.locate(probe * cd.rep(10));
    CHECK(hpart * cd.rep(j) == probe * cd.rep(10));
}

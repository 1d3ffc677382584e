#pragma once

#include "loewy/matrix.hpp"
#include "loewy/module.hpp"
#include "loewy/prng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace loewy {

// Element of the group algebra as an expression over the module's generator
// symbols g1..gk, the identity, sums, products and scalar multiples.
class AlgebraWord {
public:
    struct Node {
        enum Kind : uint8_t { Gen, One, Add, Mul, Scale } kind;
        uint32_t a = 0, b = 0; // children (node indices) or generator index
        uint8_t scalar = 1;    // for Scale
    };

    AlgebraWord() = default;

    static AlgebraWord gen(uint32_t i);
    static AlgebraWord one();
    AlgebraWord operator+(const AlgebraWord& o) const;
    AlgebraWord operator*(const AlgebraWord& o) const;
    AlgebraWord scaled(uint8_t c) const;

    bool empty() const { return nodes_.empty(); }
    uint64_t seed() const { return seed_; }
    void set_seed(uint64_t s) { seed_ = s; }

    FieldMatrix eval(const ModuleRep& m) const;

    std::string to_string() const;                       // "(g1*g2+2*g1+1)"
    static AlgebraWord parse(const std::string& s, size_t ngens);

private:
    std::vector<Node> nodes_; // root is the last node
    uint64_t seed_ = 0;

    uint32_t append(const AlgebraWord& other); // returns new index of other's root
};

// Random algebra element in the spec'd shape: a sum of 1-3 scaled products of
// 1-8 generator factors, plus an optional constant term.
AlgebraWord random_word(Rng& rng, size_t ngens);

} // namespace loewy

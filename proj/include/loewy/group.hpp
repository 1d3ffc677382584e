#pragma once

#include "loewy/perm.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace loewy {

struct GroupSpec {
    std::string name;
    size_t degree = 0;
    std::vector<Permutation> generators;
};

// Standard generator pair: (0 1 2) plus an n-cycle (n odd) or (n-1)-cycle
// fixing 0 (n even).
GroupSpec alternating_group(size_t n);

// A factor in a strong-generator definition: index into the strong generator
// list (the first k entries are the original group generators), with a sign.
struct DefFactor {
    uint32_t sgen;
    int8_t exp; // +1 or -1
};

struct StrongGen {
    Permutation perm;
    std::vector<DefFactor> def; // empty for original generators
};

// One stabilizer-chain level: base point, its orbit under the level's strong
// generators, and a Schreier tree (t_point = t_parent * s^exp).
struct ChainLevel {
    uint32_t base = 0;
    std::vector<uint32_t> orbit; // discovery order, orbit[0] == base
    struct Edge {
        uint32_t parent;
        uint32_t sgen;
        int8_t exp;
    };
    std::map<uint32_t, Edge> tree; // keyed by non-base orbit point
    std::vector<uint32_t> sgens;   // strong generators active at this level
};

// Factorization of a group element into chain transversal elements:
// g = t[L-1] * ... * t[1] * t[0], where t[i] is the transversal element of
// level levels[i] hitting point delta[i].
struct ChainFactorization {
    std::vector<std::pair<uint32_t, uint32_t>> factors; // (level, point), leftmost first
};

// Deterministic Schreier-Sims chain with base (0, 1, ..., degree-1), trivial
// levels pruned. Strong generators carry definitions over earlier strong
// generators so module evaluation can run over the DAG.
class StabChain {
public:
    explicit StabChain(const GroupSpec& g);

    const GroupSpec& group() const { return spec_; }
    unsigned long long order() const { return order_; }
    bool contains(const Permutation& p) const;
    std::optional<ChainFactorization> factor(const Permutation& p) const;

    const std::vector<StrongGen>& strong_gens() const { return sgens_; }
    const std::vector<ChainLevel>& levels() const { return levels_; }
    // transversal element of `level` with t(base) = point, as a permutation
    Permutation transversal(size_t level, uint32_t point) const;
    // the path of strong-gen factors whose product is that transversal element
    std::vector<DefFactor> transversal_path(size_t level, uint32_t point) const;

    // Lexicographically minimal image tuple over the right coset (this group)*g;
    // canonical key for coset identification.
    std::vector<uint32_t> min_coset_key(const Permutation& g) const;

private:
    GroupSpec spec_;
    std::vector<StrongGen> sgens_;
    std::vector<ChainLevel> levels_;
    unsigned long long order_ = 1;

    void build();
};

std::shared_ptr<const StabChain> chain_for(const GroupSpec& g); // cached

// Right-coset data for H <= G: transversal (BFS products of G's generators,
// t[0] = identity), canonical keys, and the action table
// t[i] * gen = h * t[j] with h in H.
class CosetData {
public:
    CosetData(const GroupSpec& g, const GroupSpec& h);

    const GroupSpec& big() const { return g_; }
    const GroupSpec& small() const { return h_; }
    size_t index() const { return transversal_.size(); }
    const Permutation& rep(size_t i) const { return transversal_[i]; }

    struct Move {
        uint32_t target;   // j
        Permutation hpart; // h = t_i * gen * t_j^{-1}
    };
    const Move& action(size_t coset, size_t gen) const { return table_[coset][gen]; }

    // coset index and H-part of an arbitrary element: g = h * t_j
    std::pair<size_t, Permutation> locate(const Permutation& g) const;

    // BFS discovery edge of coset j > 0: (parent coset, generator index), with
    // t_j = t_parent * gen exactly
    const std::vector<std::pair<uint32_t, uint32_t>>& bfs_parents() const {
        return bfs_parent_;
    }

private:
    GroupSpec g_, h_;
    std::shared_ptr<const StabChain> hchain_;
    std::vector<Permutation> transversal_;
    std::vector<std::pair<uint32_t, uint32_t>> bfs_parent_;
    std::vector<std::vector<Move>> table_;
    std::map<std::vector<uint32_t>, size_t> key_to_index_;
};

} // namespace loewy

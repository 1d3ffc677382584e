#pragma once

#include "loewy/module.hpp"
#include "loewy/words.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loewy {

// Smallest invariant subspace containing the seed rows, echelonized.
FieldMatrix spin(const FieldMatrix& seeds, const ModuleRep& m);

// Standard-basis spin from seed vectors: basis rows are the raw image
// vectors in discovery order (independent seeds first), with the spanning
// tree and, optionally, the reduction relations. Root nodes carry
// parent == UINT32_MAX and gen == seed ordinal.
struct StandardBasis {
    FieldMatrix rows;                                    // dim(subspace) x dim(M)
    std::vector<std::pair<uint32_t, uint32_t>> tree;
    struct Relation {
        uint32_t node;
        uint32_t gen;
        FieldMatrix coeffs; // 1 x rows, b_node * g = coeffs * rows
    };
    std::vector<Relation> relations;
    size_t seed_count = 0;
};
StandardBasis standard_basis(const FieldMatrix& seeds, const ModuleRep& m,
                             bool want_relations);

// --- chop ---

struct ChopLeaf {
    ModulePtr factor;          // irreducible, with provenance into the input
    AlgebraWord norton_word;   // certifying word (nullity >= 1 on the factor)
};

struct ChopBudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Las Vegas chop into irreducible factors (composition order: submodule
// factors before quotient factors). Deterministic for a fixed seed.
std::vector<ChopLeaf> chop_factors(const ModulePtr& m, uint64_t seed,
                                   size_t word_budget = 200);

// Independent re-check of an irreducibility certificate.
bool verify_norton(const ModuleRep& m, const AlgebraWord& w);

// --- isomorphism ---

// Both inputs must be irreducible. Returns the intertwiner X with
// rho_a(g) X = X rho_b(g) when isomorphic.
std::optional<FieldMatrix> module_isomorphism(const ModuleRep& a, const ModuleRep& b,
                                              uint64_t seed);

// --- catalog ---

struct SimpleEntry {
    std::string label;
    ModulePtr rep;
    size_t end_dim = 1;              // dim of the endomorphism field
    std::optional<AlgebraWord> peakword;
    std::string block;               // filled once blocks are known
};

class SimpleCatalog {
public:
    uint32_t p = 3;
    std::string group_name;
    mutable std::map<std::string, std::string> dual_cache;
    mutable bool dual_ready = false;

    const std::vector<SimpleEntry>& entries() const { return entries_; }
    std::vector<SimpleEntry>& entries() { return entries_; }
    const SimpleEntry& by_label(const std::string& label) const;
    bool has_label(const std::string& label) const;
    std::vector<size_t> dims() const;

    // identify an irreducible module against the catalog, appending it when
    // new; labels are "dim" or "dim_k" by discovery order
    std::pair<size_t, bool> identify(const ModulePtr& irreducible, uint64_t seed);

    // certified endomorphism-field dimension; also records nullity-1 words it
    // finds along the way as peakword candidates
    static size_t end_dim_of(const ModuleRep& simple, uint64_t seed);

private:
    std::vector<SimpleEntry> entries_;
};

// per-entry words w with stable nullity end_dim on the owner and nullity 0 on
// every other entry in the same block slice (whole catalog when blocks are
// not yet assigned)
void peakword_search(SimpleCatalog& catalog, uint64_t seed, size_t word_budget = 4000);

// composition-series record
struct CompositionSeries {
    std::vector<std::pair<std::string, size_t>> factors; // label -> multiplicity
    size_t total_dim = 0;
    std::vector<std::string> leaves_in_order;            // chop tree leaves
};
CompositionSeries chop(const ModulePtr& m, SimpleCatalog& catalog, uint64_t seed);

} // namespace loewy

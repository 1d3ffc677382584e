#pragma once

#include "loewy/homs.hpp"
#include "loewy/meataxe.hpp"
#include "loewy/module.hpp"

#include <map>
#include <string>
#include <vector>

namespace loewy {

using LabelMultiset = std::vector<std::pair<std::string, size_t>>; // sorted by label

struct LoewyReport {
    std::string module_name;
    bool socle_direction = false;           // false: L_i (head first)
    std::vector<LabelMultiset> layers;      // L_1.. or S_1.. (socle: bottom first)
    size_t total_dim = 0;
};

// multiset of labels in soc(M), and the socle basis
struct SocleInfo {
    FieldMatrix basis;
    LabelMultiset labels;
};

// catalog must provide peakworded simples of M's group (self-dual labels are
// resolved through the catalog's duality map)
SocleInfo socle(const ModulePtr& m, const SimpleCatalog& cat, uint64_t seed);
FieldMatrix radical_basis(const ModulePtr& m, const SimpleCatalog& cat, uint64_t seed);

LoewyReport loewy_series(const ModulePtr& m, const SimpleCatalog& cat, uint64_t seed);
LoewyReport socle_series(const ModulePtr& m, const SimpleCatalog& cat, uint64_t seed);

// label of the dual simple, verified by explicit isomorphism
std::map<std::string, std::string> duality_map(const SimpleCatalog& cat, uint64_t seed);

// M = ker(e^s) + im(e^s) for stabilized s; both invariant
struct FittingSplit {
    ModulePtr kernel_part;
    ModulePtr image_part;
};
FittingSplit fitting_split(const ModulePtr& m, const FieldMatrix& endo);

// complete decomposition into indecomposable summands via primitive
// idempotents of End(M); Las Vegas certification (full basis + 50 random
// samples checked nilpotent-or-invertible after scalar shift)
struct Decomposition {
    std::vector<ModulePtr> summands; // each with Summand provenance into m
};
Decomposition decompose(const ModulePtr& m, const HomOptions& opt, uint64_t seed);

// shape rendering of a Loewy report
struct ShapeDescriptor {
    enum Kind { Simple, Semisimple, Uniserial3, Diamond, Layered } kind;
    std::vector<std::string> parts; // notation pieces
    std::string text;               // e.g. "U(1;7;1)", "D(84;1,41;84)"
};
ShapeDescriptor classify_shape(const LoewyReport& report);

struct BlockSpec {
    std::string label;   // e.g. "B0"
    std::vector<std::string> simples;
    int defect = -1;     // informational
};

// block of a label set; throws if labels straddle blocks
const BlockSpec& block_of(const std::vector<BlockSpec>& blocks,
                          const LabelMultiset& factors);

// abstract finite-dimensional algebra over GF(p) with a distinguished basis
struct AbstractAlgebra {
    uint32_t p = 3;
    size_t k = 0;
    std::vector<std::vector<std::vector<uint8_t>>> mult; // mult[i][j] = coords of e_i e_j
    std::vector<uint8_t> one;

    std::vector<uint8_t> mul(const std::vector<uint8_t>& a,
                             const std::vector<uint8_t>& b) const;
    FieldMatrix right_regular(const std::vector<uint8_t>& a) const;
    bool is_nilpotent(const std::vector<uint8_t>& a) const;
    bool is_invertible(const std::vector<uint8_t>& a) const;
};

// orthogonal primitive idempotents summing to 1 (deterministic per seed)
std::vector<std::vector<uint8_t>> primitive_idempotents(const AbstractAlgebra& alg,
                                                        uint64_t seed);

} // namespace loewy

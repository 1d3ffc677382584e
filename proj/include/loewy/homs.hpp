#pragma once

#include "loewy/meataxe.hpp"
#include "loewy/module.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace loewy {

// Basis of Hom_G(M, N); each map is a dim(M) x dim(N) matrix intertwining the
// actions (row convention: morphism applied as v -> v * map).
struct HomBasis {
    ModulePtr source, target;
    std::vector<FieldMatrix> maps;
    size_t dim() const { return maps.size(); }
};

struct HomOptions {
    const SimpleCatalog* catalog = nullptr; // enables the peakword fast path
    size_t dense_cap = 6000;                // max dim(M)*dim(N) for dense solve
    size_t cyclic_cap = 800;                // max dims for the cyclic backend
    uint64_t seed = 1;
};

// Multi-backend Hom computation:
//  - sources with anchored provenance (sign character / induced / summand /
//    quotient chains) recurse through Frobenius reciprocity,
//  - catalog simples with peakwords use stable-kernel seeding,
//  - cyclic sources materialize tree-word relations,
//  - small pairs fall back to the dense linear solve.
HomBasis hom_space(const ModulePtr& m, const ModulePtr& n, const HomOptions& opt);

size_t hom_dim(const ModulePtr& m, const ModulePtr& n, const HomOptions& opt);

// dense reference path, available whenever dim(M)*dim(N) <= cap
HomBasis hom_space_dense(const ModulePtr& m, const ModulePtr& n);

// Endomorphisms of M presented behind a handle so big induced modules never
// materialize their full endomorphism matrices.
class EndHandle {
public:
    virtual ~EndHandle() = default;
    virtual size_t algebra_dim() const = 0;
    virtual size_t module_dim() const = 0;
    // row * E_r
    virtual FieldMatrix apply(const FieldMatrix& row, size_t r) const = 0;
    // sum_r coeffs[r] * E_r as a full matrix
    virtual FieldMatrix materialize(const std::vector<uint8_t>& coeffs) const = 0;
};

std::unique_ptr<EndHandle> end_handle(const ModulePtr& m, const HomOptions& opt);

} // namespace loewy

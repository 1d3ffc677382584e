#pragma once

#include "loewy/group.hpp"
#include "loewy/matrix.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

namespace loewy {

struct ModuleRep;
using ModulePtr = std::shared_ptr<const ModuleRep>;

// How a module came to be. The hom engine walks these chains, so anything a
// projective is built from must keep its links.
namespace prov {

struct Atom {
    std::string desc;
};

// 1-dimensional sign character of a 3'-subgroup; values on every element.
struct SignChar {
    std::shared_ptr<const GroupSpec> subgroup; // at its own degree
    std::map<Permutation, uint8_t> value;      // 1 or p-1
    std::string label;
};

struct Induced {
    ModulePtr sub;                          // module of the small group
    std::shared_ptr<const CosetData> cosets; // small group at big degree
};

struct Summand {
    ModulePtr parent;
    FieldMatrix iota; // dim x parent.dim, rows = basis of the summand
    FieldMatrix pi;   // parent.dim x dim, iota * pi = identity
};

struct SubOf {
    ModulePtr parent;
    FieldMatrix iota; // dim x parent.dim (invariant subspace basis)
};

struct QuotientOf {
    ModulePtr parent;
    FieldMatrix proj;    // parent.dim x dim
    FieldMatrix section; // dim x parent.dim, section * proj = identity
    FieldMatrix kernel;  // basis of the killed submodule
};

struct Restricted {
    ModulePtr parent; // module of the bigger group
};

using Any = std::variant<Atom, SignChar, Induced, Summand, SubOf, QuotientOf, Restricted>;

} // namespace prov

// An FG-module: one invertible matrix per group generator, row vectors acting
// on the right.
struct ModuleRep {
    std::shared_ptr<const GroupSpec> group;
    uint32_t p = 3;
    size_t dim = 0;
    std::vector<FieldMatrix> action;
    std::vector<FieldMatrix> action_inv;
    prov::Any provenance = prov::Atom{"?"};
    std::string note;

    mutable std::mutex eval_mu;
    mutable std::map<std::vector<uint32_t>, FieldMatrix> eval_cache; // by images
    mutable std::map<uint32_t, FieldMatrix> sgen_cache;
};

ModulePtr make_module(std::shared_ptr<const GroupSpec> group, uint32_t p,
                      std::vector<FieldMatrix> action, prov::Any provenance,
                      std::string note);

// matrix of an arbitrary group element on the module; g at the module group's
// degree
FieldMatrix element_matrix(const ModuleRep& m, const Permutation& g);

// a permutation of larger degree fixing the tail, cut down to `degree`
Permutation truncate_perm(const Permutation& g, size_t degree);

// ---- constructions ----

ModulePtr perm_module(std::shared_ptr<const GroupSpec> g, uint32_t p);
ModulePtr k_subsets_module(std::shared_ptr<const GroupSpec> g, size_t k, uint32_t p);
ModulePtr tensor(const ModulePtr& a, const ModulePtr& b);
ModulePtr dual(const ModulePtr& m);
ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b);
ModulePtr trivial_module(std::shared_ptr<const GroupSpec> g, uint32_t p);
// sign character module of a 3'-subgroup (dim 1); values must be consistent
ModulePtr sign_char_module(std::shared_ptr<const GroupSpec> h, uint32_t p,
                           const std::map<Permutation, uint8_t>& values,
                           std::string label);

// restriction to a subgroup given at its own degree; the embedding extends
// permutations by fixed points (the chain's point-stabilizer convention)
ModulePtr restrict_module(const ModulePtr& m, std::shared_ptr<const GroupSpec> h);

// induction along prepared coset data (cosets.small() is m->group extended)
ModulePtr induce_module(const ModulePtr& m, std::shared_ptr<const GroupSpec> g,
                        std::shared_ptr<const CosetData> cosets);

struct SubQuotient {
    ModulePtr sub;
    ModulePtr quotient;
};
// basis rows must span a G-invariant subspace (checked)
SubQuotient sub_quotient(const ModulePtr& m, const FieldMatrix& basis);

// split into the summand spanned by `basis` rows given a complement; both
// invariant; returns the summand with iota/pi provenance
ModulePtr summand_module(const ModulePtr& m, const FieldMatrix& basis,
                         const FieldMatrix& complement);

// all sign characters of a subgroup (trivial one first), enumerated from the
// generator sign patterns that extend to homomorphisms into {±1}
std::vector<ModulePtr> sign_characters(std::shared_ptr<const GroupSpec> h, uint32_t p);

// order of each generator's matrix divides the permutation's order
bool satisfies_generator_relations(const ModuleRep& m);

} // namespace loewy

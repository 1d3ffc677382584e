#pragma once

#include "loewy/config.hpp"
#include "loewy/structure.hpp"

#include <map>
#include <string>
#include <vector>

namespace loewy {

// square integer table indexed by simple labels
struct LabeledTable {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> entries;

    int at(const std::string& row, const std::string& col) const;
    bool symmetric() const;
};

// ext1(S, T) = multiplicity of T in the second Loewy layer of P_S
LabeledTable ext_table(const std::map<std::string, LoewyReport>& pim_loewy,
                       const std::vector<std::string>& labels);

// cartan[S][T] = multiplicity of T among the composition factors of P_S
LabeledTable cartan_table(const std::map<std::string, LoewyReport>& pim_loewy,
                          const std::vector<std::string>& labels);

struct DxDReport {
    bool consistent = true;
    std::vector<std::string> violations; // per-entry mismatch notes
    LabeledTable dtd;                    // D^T D
};
DxDReport verify_dxd(const DecompositionTable& d, const LabeledTable& cartan);

// connected components of the Cartan linkage graph (block validation)
std::vector<std::vector<std::string>> cartan_linkage_classes(const LabeledTable& c);

} // namespace loewy

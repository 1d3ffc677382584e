#pragma once

#include "loewy/group.hpp"
#include "loewy/structure.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace loewy {

struct ChainLevelConfig {
    std::string name;
    size_t degree = 0;
    std::vector<std::string> generator_cycles;
    std::vector<BlockSpec> blocks;                  // labels per block
    std::vector<size_t> expected_dims;              // catalog completeness target
    std::map<std::string, size_t> allowed_end_dims; // entries allowed end_dim > 1
    std::vector<std::string> pim_targets;           // labels needing projectives

    GroupSpec group() const;
};

struct DecompositionTable {
    std::vector<std::string> char_labels; // ordinary character labels (rows)
    std::vector<std::string> col_labels;  // simple labels
    std::vector<std::vector<int>> rows;
};

struct PipelineConfig {
    std::string name;
    uint32_t p = 3;
    uint64_t master_seed = 1;
    size_t dimension_budget = 30000;
    std::vector<ChainLevelConfig> chain; // bottom (smallest group) first
    // projective seeding: a 3'-subgroup of the bottom chain group
    std::string seed_subgroup_name;
    std::vector<std::string> seed_subgroup_cycles;
    DecompositionTable decomposition; // for the top group
    std::vector<std::pair<std::string, std::string>> two_step_pairs; // (head, socle)

    static PipelineConfig load(const std::filesystem::path& path);
    const ChainLevelConfig& level(const std::string& name) const;
};

} // namespace loewy

#pragma once

#include "loewy/config.hpp"
#include "loewy/structure.hpp"
#include "loewy/tables.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace loewy {

struct PipelineOptions {
    std::filesystem::path out_dir;
    std::filesystem::path goldens_dir;
    uint64_t seed = 1;
    size_t budget = 30000;
    bool long_run = false;
};

// One chain level's working state.
struct LevelState {
    ChainLevelConfig cfg;
    std::shared_ptr<const GroupSpec> group;
    SimpleCatalog catalog;
    std::map<std::string, ModulePtr> pims;           // label -> projective cover
    std::map<std::string, LoewyReport> pim_loewy;
    std::map<std::string, LoewyReport> pim_socle;
};

// a decomposition summand classified for reports
struct SummandReport {
    std::string type; // "simple" | "pim" | "layers"
    std::string label;
    std::vector<std::vector<std::string>> layers; // expanded labels per layer
    size_t dim = 0;
};

class Pipeline {
public:
    Pipeline(PipelineConfig cfg, PipelineOptions opt);

    // empty selector = full stage order
    int run(std::vector<std::string> stages);

    void stage_discover();
    void stage_build_pims();
    void stage_ext();
    void stage_cartan();
    int stage_verify();

    LevelState& level(const std::string& name);
    const PipelineConfig& config() const { return cfg_; }
    const PipelineOptions& options() const { return opt_; }

    // shared helpers (used by the CLI op commands too)
    std::vector<SummandReport> classify_summands(const std::string& group,
                                                 const std::vector<ModulePtr>& parts,
                                                 uint64_t seed);
    std::shared_ptr<const CosetData> cosets_up(size_t lower_idx); // level i -> i+1

private:
    PipelineConfig cfg_;
    PipelineOptions opt_;
    std::vector<LevelState> levels_;
    std::map<size_t, std::shared_ptr<const CosetData>> cosets_;

    void ensure_catalogs();
    void ensure_pims();
    bool catalogs_ready_ = false;
    bool pims_ready_ = false;

    void persist_catalog(const LevelState& lv);
    bool load_catalog(LevelState& lv);
    void persist_pim(const LevelState& lv, const std::string& label);
    void write_op_reports();
    void write_two_step_reports();
    void build_level_pims(size_t idx);
    unsigned long long sylow_p_order(const GroupSpec& g) const;
};

// multiset layers -> expanded sorted label lists (for reports/goldens)
std::vector<std::vector<std::string>> expand_layers(const LoewyReport& rep);

} // namespace loewy

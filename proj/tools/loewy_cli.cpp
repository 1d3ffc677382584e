#include <CLI11.hpp>

#include "loewy/goldens.hpp"
#include "loewy/parallel.hpp"
#include "loewy/pipeline.hpp"
#include "loewy/render.hpp"
#include "loewy/textio.hpp"

#include <json.hpp>

#include <iostream>

using namespace loewy;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// exit codes: 0 success, 1 verification failure, 2 input error,
// 3 budget/retry exhaustion
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "artifacts";
    uint64_t seed = 1;
    size_t budget = 30000;
    int jobs = 0;
    bool long_run = false;
};

Pipeline make_pipeline(const CommonOpts& c, const std::string& goldens = "") {
    auto cfg = PipelineConfig::load(c.config_path);
    PipelineOptions opt;
    opt.out_dir = c.out_dir;
    opt.seed = c.seed ? c.seed : cfg.master_seed;
    opt.budget = c.budget;
    opt.long_run = c.long_run;
    if (!goldens.empty()) opt.goldens_dir = goldens;
    if (c.jobs > 0) set_job_count(c.jobs);
    return Pipeline(std::move(cfg), std::move(opt));
}

ModulePtr load_module_file(Pipeline& pipe, const std::string& group,
                           const std::string& path) {
    auto& lv = pipe.level(group);
    return module_from_text(read_file(path), lv.group);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computation engine for modular representations of "
                 "alternating-group chains"};
    app.require_subcommand(1);

    CommonOpts common;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", common.config_path, "pipeline config (json)")
            ->required();
        cmd->add_option("--out", common.out_dir, "artifacts directory");
        cmd->add_option("--seed", common.seed, "master PRNG seed (default 1)");
        cmd->add_option("--budget", common.budget, "dimension budget (default 30000)");
        cmd->add_option("--jobs", common.jobs, "worker threads");
        cmd->add_flag("--long", common.long_run, "enable long-running stages");
    };

    // run
    auto* run = app.add_subcommand("run", "run pipeline stages");
    add_common(run);
    std::vector<std::string> stages;
    std::string run_goldens;
    run->add_option("--stage", stages,
                    "stage selector: discover-simples build-pims ext-table cartan verify "
                    "(empty = full order)");
    run->add_option("--goldens", run_goldens, "goldens directory (for the verify stage)");

    // op
    auto* op = app.add_subcommand("op", "apply one operation to module files");
    add_common(op);
    std::string verb, group, group_to, out_file;
    std::vector<std::string> files;
    op->add_option("verb", verb,
                   "chop | loewy | induce | restrict | tensor | dual | decompose")
        ->required();
    op->add_option("files", files, "module file(s) in the MODTXT format")->required();
    op->add_option("--group", group, "group of the input module(s)")->required();
    op->add_option("--to", group_to, "target group (induce/restrict)");
    op->add_option("--result", out_file, "output path for module results");

    // verify
    auto* ver = app.add_subcommand("verify", "compare artifacts against goldens");
    std::string goldens_dir, artifacts_dir;
    ver->add_option("--goldens", goldens_dir, "goldens directory")->required();
    ver->add_option("--artifacts", artifacts_dir, "artifacts directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("verify")) {
            auto outcomes = run_verify(goldens_dir, artifacts_dir);
            int fails = write_verify_report(outcomes, artifacts_dir);
            return fails ? kExitVerify : 0;
        }
        if (app.got_subcommand("run")) {
            auto pipe = make_pipeline(common, run_goldens);
            int rc = pipe.run(stages);
            return rc ? kExitVerify : 0;
        }
        if (app.got_subcommand("op")) {
            auto pipe = make_pipeline(common);
            // operations need catalogs (and pims for loewy labeling shortcuts)
            pipe.stage_discover();
            auto& lv = pipe.level(group);
            HomOptions hopt;
            hopt.catalog = &lv.catalog;
            hopt.seed = common.seed;
            const uint64_t seed = derive_seed(common.seed, "op:" + verb);
            if (verb == "chop") {
                auto m = load_module_file(pipe, group, files.at(0));
                auto series = chop(m, lv.catalog, seed);
                json j;
                j["module"] = files.at(0);
                j["factors"] = json::array();
                for (auto& [label, mult] : series.factors)
                    j["factors"].push_back({{"label", label}, {"multiplicity", mult}});
                std::cout << j.dump(2) << "\n";
                return 0;
            }
            if (verb == "loewy") {
                auto m = load_module_file(pipe, group, files.at(0));
                auto rep = loewy_series(m, lv.catalog, seed);
                std::cout << render_loewy(rep);
                return 0;
            }
            if (verb == "decompose") {
                auto m = load_module_file(pipe, group, files.at(0));
                auto dec = decompose(m, hopt, seed);
                auto parts = pipe.classify_summands(group, dec.summands, seed);
                json j = json::array();
                for (size_t i = 0; i < parts.size(); ++i) {
                    json p;
                    p["dim"] = parts[i].dim;
                    p["type"] = parts[i].type;
                    if (!parts[i].label.empty()) p["label"] = parts[i].label;
                    if (!parts[i].layers.empty()) p["layers"] = parts[i].layers;
                    if (!out_file.empty()) {
                        auto path = out_file + "." + std::to_string(i) + ".mod";
                        atomic_write(path, module_to_text(*dec.summands[i]));
                        p["file"] = path;
                    }
                    j.push_back(p);
                }
                std::cout << j.dump(2) << "\n";
                return 0;
            }
            if (verb == "tensor") {
                auto a = load_module_file(pipe, group, files.at(0));
                auto b = load_module_file(pipe, group, files.at(1));
                auto t = tensor(a, b);
                atomic_write(out_file.empty() ? "tensor.mod" : out_file,
                             module_to_text(*t));
                return 0;
            }
            if (verb == "dual") {
                auto a = load_module_file(pipe, group, files.at(0));
                atomic_write(out_file.empty() ? "dual.mod" : out_file,
                             module_to_text(*dual(a)));
                return 0;
            }
            if (verb == "restrict" || verb == "induce") {
                if (group_to.empty())
                    throw std::invalid_argument("--to required for " + verb);
                auto m = load_module_file(pipe, group, files.at(0));
                ModulePtr result;
                if (verb == "restrict") {
                    auto& target = pipe.level(group_to);
                    result = restrict_module(m, target.group);
                } else {
                    // find the chain step group -> group_to
                    size_t idx = 0;
                    for (; idx < pipe.config().chain.size(); ++idx)
                        if (pipe.config().chain[idx].name == group) break;
                    if (idx + 1 >= pipe.config().chain.size() ||
                        pipe.config().chain[idx + 1].name != group_to)
                        throw std::invalid_argument(
                            "induce only along consecutive chain levels");
                    auto& target = pipe.level(group_to);
                    result = induce_module(m, target.group, pipe.cosets_up(idx));
                }
                atomic_write(out_file.empty() ? (verb + ".mod") : out_file,
                             module_to_text(*result));
                return 0;
            }
            throw std::invalid_argument("unknown op verb " + verb);
        }
    } catch (const ChopBudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}

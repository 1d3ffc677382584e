#include "loewy/config.hpp"

#include "loewy/textio.hpp"

#include <json.hpp>

namespace loewy {

using nlohmann::json;

GroupSpec ChainLevelConfig::group() const {
    GroupSpec g;
    g.name = name;
    g.degree = degree;
    for (const auto& s : generator_cycles)
        g.generators.push_back(Permutation::from_cycles(s, degree));
    return g;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    json j = json::parse(read_file(path));
    PipelineConfig out;
    out.name = j.at("name").get<std::string>();
    out.p = j.at("p").get<uint32_t>();
    out.master_seed = j.value("master_seed", uint64_t{1});
    out.dimension_budget = j.value("dimension_budget", size_t{30000});
    for (const auto& lv : j.at("chain")) {
        ChainLevelConfig c;
        c.name = lv.at("name").get<std::string>();
        c.degree = lv.at("degree").get<size_t>();
        for (const auto& g : lv.at("generators")) c.generator_cycles.push_back(g);
        for (const auto& b : lv.at("blocks")) {
            BlockSpec bs;
            bs.label = b.at("label").get<std::string>();
            bs.defect = b.value("defect", -1);
            for (const auto& s : b.at("simples")) bs.simples.push_back(s);
            c.blocks.push_back(std::move(bs));
        }
        for (const auto& d : lv.at("expected_dims")) c.expected_dims.push_back(d);
        if (lv.contains("allowed_end_dims"))
            for (auto it = lv["allowed_end_dims"].begin();
                 it != lv["allowed_end_dims"].end(); ++it)
                c.allowed_end_dims[it.key()] = it.value().get<size_t>();
        if (lv.contains("pim_targets"))
            for (const auto& s : lv.at("pim_targets")) c.pim_targets.push_back(s);
        out.chain.push_back(std::move(c));
    }
    out.seed_subgroup_name = j.at("seed_subgroup").at("name").get<std::string>();
    for (const auto& s : j.at("seed_subgroup").at("generators"))
        out.seed_subgroup_cycles.push_back(s);
    if (j.contains("decomposition_matrix")) {
        const auto& d = j["decomposition_matrix"];
        for (const auto& s : d.at("col_labels"))
            out.decomposition.col_labels.push_back(s);
        for (const auto& row : d.at("rows")) {
            out.decomposition.char_labels.push_back(row.at("char").get<std::string>());
            std::vector<int> entries;
            for (const auto& e : row.at("entries")) entries.push_back(e.get<int>());
            out.decomposition.rows.push_back(std::move(entries));
        }
    }
    if (j.contains("two_step_pairs"))
        for (const auto& pr : j["two_step_pairs"])
            out.two_step_pairs.emplace_back(pr.at(0).get<std::string>(),
                                            pr.at(1).get<std::string>());
    return out;
}

const ChainLevelConfig& PipelineConfig::level(const std::string& name) const {
    for (const auto& c : chain)
        if (c.name == name) return c;
    throw std::out_of_range("no chain level " + name);
}

} // namespace loewy

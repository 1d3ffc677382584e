#include "loewy/goldens.hpp"

#include "loewy/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <map>
#include <set>

namespace loewy {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// canonical form of a layers array: sorted labels per layer
std::vector<std::vector<std::string>> norm_layers(const json& layers) {
    std::vector<std::vector<std::string>> out;
    for (const auto& layer : layers) {
        std::vector<std::string> l;
        for (const auto& s : layer) l.push_back(s.get<std::string>());
        std::sort(l.begin(), l.end());
        out.push_back(std::move(l));
    }
    return out;
}

std::string layers_str(const std::vector<std::vector<std::string>>& layers) {
    std::string s = "[";
    for (size_t i = 0; i < layers.size(); ++i) {
        if (i) s += " | ";
        for (size_t k = 0; k < layers[i].size(); ++k) {
            if (k) s += " ";
            s += layers[i][k];
        }
    }
    return s + "]";
}

// normalized descriptor of one summand for multiset comparison
std::string summand_key(const json& s) {
    const std::string type = s.at("type").get<std::string>();
    if (type == "simple" || type == "pim")
        return type + ":" + s.at("label").get<std::string>();
    return "layers:" + layers_str(norm_layers(s.at("layers")));
}

struct Verifier {
    fs::path artifacts;
    std::vector<GoldenOutcome> outcomes;
    std::map<fs::path, json> cache;

    const json* artifact(const fs::path& rel) {
        auto it = cache.find(rel);
        if (it != cache.end()) return it->second.is_null() ? nullptr : &it->second;
        fs::path full = artifacts / rel;
        if (!fs::exists(full)) {
            cache[rel] = json();
            return nullptr;
        }
        cache[rel] = json::parse(read_file(full));
        return &cache[rel];
    }

    void emit(const std::string& id, GoldenOutcome::Status st, std::string detail = "") {
        outcomes.push_back(GoldenOutcome{id, st, std::move(detail)});
    }

    void check_pims(const json& g) {
        const std::string group = g.at("group").get<std::string>();
        for (const auto& item : g.at("items")) {
            const std::string label = item.at("label").get<std::string>();
            const std::string id = "pims/" + group + "/P_" + label;
            const bool noted = item.contains("note");
            fs::path rel = fs::path("pims") / group / ("P_" + label + ".meta.json");
            const json* meta = artifact(rel);
            if (!meta) {
                emit(id, GoldenOutcome::Missing, "artifact " + rel.string() + " missing");
                continue;
            }
            bool ok = true;
            std::string detail;
            if (item.contains("dim") &&
                meta->at("dim").get<size_t>() != item.at("dim").get<size_t>()) {
                ok = false;
                detail = "dim " + std::to_string(meta->at("dim").get<size_t>()) +
                         " expected " + std::to_string(item.at("dim").get<size_t>());
            }
            auto got = norm_layers(meta->at("loewy_layers"));
            auto want = norm_layers(item.at("layers"));
            if (got != want) {
                ok = false;
                // first differing layer
                for (size_t i = 0; i < std::max(got.size(), want.size()); ++i) {
                    auto gs = i < got.size() ? layers_str({got[i]}) : "(none)";
                    auto ws = i < want.size() ? layers_str({want[i]}) : "(none)";
                    if (gs != ws) {
                        detail = "layer " + std::to_string(i + 1) + ": computed " + gs +
                                 " expected " + ws;
                        break;
                    }
                }
            }
            if (!ok) emit(id, GoldenOutcome::Fail, detail);
            else if (noted)
                emit(id, GoldenOutcome::PassNoted, item.at("note").get<std::string>());
            else emit(id, GoldenOutcome::Pass);
        }
    }

    void check_ops(const json& g) {
        const std::string op = g.at("op").get<std::string>();
        const std::string from = g.at("from").get<std::string>();
        const std::string to = g.at("to").get<std::string>();
        fs::path rel = fs::path("reports") / "ops" / (op + "-" + from + "-" + to + ".json");
        const json* rep = artifact(rel);
        for (const auto& item : g.at("items")) {
            const std::string mod = item.at("module").get<std::string>();
            const std::string id = op + "/" + from + "->" + to + "/" + mod;
            if (!rep) {
                emit(id, GoldenOutcome::Missing, "artifact " + rel.string() + " missing");
                continue;
            }
            const json* found = nullptr;
            for (const auto& it2 : rep->at("items"))
                if (it2.at("module").get<std::string>() == mod) found = &it2;
            if (!found) {
                emit(id, GoldenOutcome::Fail, "module missing from report");
                continue;
            }
            std::multiset<std::string> got, want;
            for (const auto& s : found->at("summands")) got.insert(summand_key(s));
            for (const auto& s : item.at("summands")) want.insert(summand_key(s));
            if (got != want) {
                std::string detail = "computed {";
                for (const auto& s : got) detail += " " + s;
                detail += " } expected {";
                for (const auto& s : want) detail += " " + s;
                detail += " }";
                emit(id, GoldenOutcome::Fail, detail);
            } else if (item.contains("note")) {
                emit(id, GoldenOutcome::PassNoted, item.at("note").get<std::string>());
            } else {
                emit(id, GoldenOutcome::Pass);
            }
        }
    }

    void check_table(const json& g) {
        const std::string table = g.at("table").get<std::string>();
        const std::string id = "tables/" + table;
        fs::path rel = fs::path("tables") / (table + ".json");
        const json* t = artifact(rel);
        if (!t) {
            emit(id, GoldenOutcome::Missing, "artifact " + rel.string() + " missing");
            return;
        }
        auto glabels = g.at("labels");
        if (t->at("labels") != glabels) {
            emit(id, GoldenOutcome::Fail, "label order differs");
            return;
        }
        const auto& got = t->at("entries");
        const auto& want = g.at("entries");
        std::string detail;
        bool ok = true;
        for (size_t i = 0; i < want.size() && ok; ++i)
            for (size_t j = 0; j < want[i].size() && ok; ++j)
                if (got[i][j] != want[i][j]) {
                    ok = false;
                    detail = "entry (" + glabels[i].get<std::string>() + "," +
                             glabels[j].get<std::string>() + "): computed " +
                             got[i][j].dump() + " expected " + want[i][j].dump();
                }
        if (!ok) {
            emit(id, GoldenOutcome::Fail, detail);
            return;
        }
        // row-level source discrepancies: verify the printed row really
        // disagrees with the computed (= corrected) one
        if (g.contains("printed_discrepancies")) {
            for (const auto& d : g.at("printed_discrepancies")) {
                const std::string row = d.at("row").get<std::string>();
                size_t ri = 0;
                for (; ri < glabels.size(); ++ri)
                    if (glabels[ri].get<std::string>() == row) break;
                if (got[ri] == d.at("as_printed"))
                    emit(id + "/row-" + row, GoldenOutcome::Fail,
                         "computed row equals the printed row; expected the "
                         "corrected one");
                else
                    emit(id + "/row-" + row, GoldenOutcome::PassNoted,
                         d.at("note").get<std::string>());
            }
        }
        if (g.contains("note"))
            emit(id, GoldenOutcome::PassNoted, g.at("note").get<std::string>());
        else emit(id, GoldenOutcome::Pass);
    }

    void check_two_step(const json& g) {
        fs::path rel = fs::path("reports") / "two-step.json";
        const json* rep = artifact(rel);
        for (const auto& item : g.at("items")) {
            const std::string id = "two-step/" + item.at("head").get<std::string>() +
                                   "-over-" + item.at("socle").get<std::string>();
            if (!rep) {
                emit(id, GoldenOutcome::Missing, "artifact " + rel.string() + " missing");
                continue;
            }
            const json* found = nullptr;
            for (const auto& it2 : rep->at("items"))
                if (it2.at("head") == item.at("head") &&
                    it2.at("socle") == item.at("socle"))
                    found = &it2;
            if (!found) {
                emit(id, GoldenOutcome::Fail, "pair missing from report");
                continue;
            }
            if (norm_layers(found->at("layers")) != norm_layers(item.at("layers")))
                emit(id, GoldenOutcome::Fail,
                     "computed " + layers_str(norm_layers(found->at("layers"))) +
                         " expected " + layers_str(norm_layers(item.at("layers"))));
            else emit(id, GoldenOutcome::Pass);
        }
    }

    void check_global(const json& g) {
        fs::path rel = fs::path("tables") / "global.json";
        const json* t = artifact(rel);
        if (!t) {
            emit("global", GoldenOutcome::Missing, "artifact missing");
            return;
        }
        bool ok = t->at("group_order") == g.at("group_order") &&
                  t->at("sum_dim_times_pim_dim") == g.at("group_order") &&
                  t->at("sylow_p") == g.at("sylow_p") &&
                  t->at("all_pim_dims_divisible_by_sylow") == true;
        emit("global", ok ? GoldenOutcome::Pass : GoldenOutcome::Fail,
             ok ? "" : "group-order identity violated: " + t->dump());
    }
};

} // namespace

std::vector<GoldenOutcome> run_verify(const fs::path& goldens_dir,
                                      const fs::path& artifacts_dir) {
    Verifier v;
    v.artifacts = artifacts_dir;
    if (!fs::exists(goldens_dir)) {
        v.emit("goldens", GoldenOutcome::Missing,
               "goldens directory " + goldens_dir.string() + " missing");
        return v.outcomes;
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(goldens_dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
        v.emit("goldens", GoldenOutcome::PassNoted, "no goldens: vacuous pass");
    for (const auto& f : files) {
        json g = json::parse(read_file(f));
        const std::string kind = g.value("kind", "");
        if (kind == "pims") v.check_pims(g);
        else if (kind == "ops") v.check_ops(g);
        else if (kind == "table") v.check_table(g);
        else if (kind == "two-step") v.check_two_step(g);
        else if (kind == "global") v.check_global(g);
        else v.emit(f.filename().string(), GoldenOutcome::Fail, "unknown golden kind");
    }
    return v.outcomes;
}

int write_verify_report(const std::vector<GoldenOutcome>& outcomes,
                        const fs::path& artifacts_dir) {
    json j = json::array();
    std::string txt;
    int fails = 0;
    for (const auto& o : outcomes) {
        std::string status;
        switch (o.status) {
        case GoldenOutcome::Pass: status = "pass"; break;
        case GoldenOutcome::PassNoted: status = "pass (source discrepancy noted)"; break;
        case GoldenOutcome::Fail: status = "FAIL"; ++fails; break;
        case GoldenOutcome::Missing: status = "FAIL (missing)"; ++fails; break;
        }
        json o2;
        o2["id"] = o.id;
        o2["status"] = status;
        o2["detail"] = o.detail;
        j.push_back(o2);
        txt += status + "  " + o.id + (o.detail.empty() ? "" : "  -- " + o.detail) + "\n";
        std::cout << status << "  " << o.id
                  << (o.detail.empty() ? "" : "  -- " + o.detail) << "\n";
    }
    atomic_write(artifacts_dir / "verify" / "report.json", j.dump(2) + "\n");
    atomic_write(artifacts_dir / "verify" / "report.txt", txt);
    return fails;
}

} // namespace loewy

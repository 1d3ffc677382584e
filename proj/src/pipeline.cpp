#include "loewy/pipeline.hpp"

#include "loewy/goldens.hpp"
#include "loewy/render.hpp"
#include "loewy/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <iostream>
#include <set>

namespace loewy {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json layers_json(const LoewyReport& rep) {
    json out = json::array();
    for (const auto& layer : rep.layers) {
        json l = json::array();
        std::vector<std::string> expanded;
        for (const auto& [lab, c] : layer)
            for (size_t i = 0; i < c; ++i) expanded.push_back(lab);
        std::sort(expanded.begin(), expanded.end());
        for (auto& s : expanded) l.push_back(s);
        out.push_back(std::move(l));
    }
    return out;
}

} // namespace

std::vector<std::vector<std::string>> expand_layers(const LoewyReport& rep) {
    std::vector<std::vector<std::string>> out;
    for (const auto& layer : rep.layers) {
        std::vector<std::string> expanded;
        for (const auto& [lab, c] : layer)
            for (size_t i = 0; i < c; ++i) expanded.push_back(lab);
        std::sort(expanded.begin(), expanded.end());
        out.push_back(std::move(expanded));
    }
    return out;
}

Pipeline::Pipeline(PipelineConfig cfg, PipelineOptions opt)
    : cfg_(std::move(cfg)), opt_(std::move(opt)) {
    for (const auto& lc : cfg_.chain) {
        LevelState lv;
        lv.cfg = lc;
        lv.group = std::make_shared<GroupSpec>(lc.group());
        lv.catalog.p = cfg_.p;
        lv.catalog.group_name = lc.name;
        levels_.push_back(std::move(lv));
    }
}

LevelState& Pipeline::level(const std::string& name) {
    for (auto& lv : levels_)
        if (lv.cfg.name == name) return lv;
    throw std::out_of_range("no level " + name);
}

unsigned long long Pipeline::sylow_p_order(const GroupSpec& g) const {
    auto chain = chain_for(g);
    unsigned long long order = chain->order();
    unsigned long long syl = 1;
    while (order % cfg_.p == 0) {
        order /= cfg_.p;
        syl *= cfg_.p;
    }
    return syl;
}

std::shared_ptr<const CosetData> Pipeline::cosets_up(size_t lower_idx) {
    auto it = cosets_.find(lower_idx);
    if (it != cosets_.end()) return it->second;
    const GroupSpec& lo = *levels_[lower_idx].group;
    const GroupSpec& hi = *levels_[lower_idx + 1].group;
    GroupSpec embedded;
    embedded.name = lo.name;
    embedded.degree = hi.degree;
    for (const auto& g : lo.generators)
        embedded.generators.push_back(g.extended(hi.degree));
    auto cd = std::make_shared<CosetData>(hi, embedded);
    cosets_[lower_idx] = cd;
    return cd;
}

// ---- discover ----

void Pipeline::persist_catalog(const LevelState& lv) {
    json index;
    index["group"] = lv.cfg.name;
    index["p"] = cfg_.p;
    json entries = json::array();
    for (const auto& e : lv.catalog.entries()) {
        json je;
        je["label"] = e.label;
        je["dim"] = e.rep->dim;
        je["end_dim"] = e.end_dim;
        je["block"] = e.block;
        je["peakword"] = e.peakword ? e.peakword->to_string() : "";
        entries.push_back(je);
        atomic_write(opt_.out_dir / "catalog" / lv.cfg.name / (e.label + ".mod"),
                     module_to_text(*e.rep));
    }
    index["entries"] = entries;
    atomic_write(opt_.out_dir / "catalog" / lv.cfg.name / "index.json",
                 index.dump(2) + "\n");
}

bool Pipeline::load_catalog(LevelState& lv) {
    fs::path index_path = opt_.out_dir / "catalog" / lv.cfg.name / "index.json";
    if (!fs::exists(index_path)) return false;
    json index = json::parse(read_file(index_path));
    for (const auto& je : index.at("entries")) {
        SimpleEntry e;
        e.label = je.at("label").get<std::string>();
        e.end_dim = je.at("end_dim").get<size_t>();
        e.block = je.at("block").get<std::string>();
        auto text = read_file(opt_.out_dir / "catalog" / lv.cfg.name / (e.label + ".mod"));
        auto mod = module_from_text(text, lv.group);
        e.rep = make_module(lv.group, cfg_.p, mod->action, prov::Atom{"catalog"},
                            lv.cfg.name + " simple " + e.label);
        std::string pw = je.at("peakword").get<std::string>();
        if (!pw.empty())
            e.peakword = AlgebraWord::parse(pw, lv.group->generators.size());
        lv.catalog.entries().push_back(std::move(e));
    }
    return !lv.catalog.entries().empty();
}

void Pipeline::stage_discover() {
    for (auto& lv : levels_) {
        if (load_catalog(lv)) {
            std::cout << "[discover] " << lv.cfg.name << ": loaded "
                      << lv.catalog.entries().size() << " simples\n";
            continue;
        }
        const uint64_t seed = derive_seed(opt_.seed, "discover:" + lv.cfg.name);
        std::vector<ModulePtr> seeds;
        seeds.push_back(perm_module(lv.group, cfg_.p));
        for (size_t k = 2; k <= 3; ++k) {
            // C(n, k)
            size_t dim = 1;
            for (size_t i = 0; i < k; ++i) dim = dim * (lv.group->degree - i) / (i + 1);
            if (dim <= opt_.budget) seeds.push_back(k_subsets_module(lv.group, k, cfg_.p));
        }
        for (const auto& s : seeds)
            chop(s, lv.catalog, derive_seed(seed, "seed:" + s->note));
        auto expected = lv.cfg.expected_dims;
        std::sort(expected.begin(), expected.end());
        std::set<std::pair<std::string, std::string>> tried;
        while (lv.catalog.dims() != expected) {
            // smallest untried tensor pair within budget
            struct Cand {
                size_t dimprod;
                std::string la, lb;
                ModulePtr a, b;
            };
            std::vector<Cand> cands;
            for (const auto& ea : lv.catalog.entries())
                for (const auto& eb : lv.catalog.entries()) {
                    if (eb.label < ea.label) continue;
                    size_t dp = ea.rep->dim * eb.rep->dim;
                    if (dp > opt_.budget || dp < 2) continue;
                    if (tried.count({ea.label, eb.label})) continue;
                    cands.push_back(Cand{dp, ea.label, eb.label, ea.rep, eb.rep});
                }
            if (cands.empty())
                throw std::runtime_error(lv.cfg.name +
                                         ": tensor closure exhausted before the "
                                         "expected simples were found");
            std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
                return std::tie(x.dimprod, x.la, x.lb) < std::tie(y.dimprod, y.la, y.lb);
            });
            const auto& c = cands.front();
            tried.insert({c.la, c.lb});
            std::cout << "[discover] " << lv.cfg.name << ": chopping " << c.la
                      << " (x) " << c.lb << " (dim " << c.dimprod << ")\n";
            chop(tensor(c.a, c.b), lv.catalog,
                 derive_seed(seed, "tensor:" + c.la + "x" + c.lb));
        }
        // detach catalog reps from their construction chains
        for (auto& e : lv.catalog.entries())
            e.rep = make_module(lv.group, cfg_.p, e.rep->action, prov::Atom{"catalog"},
                                lv.cfg.name + " simple " + e.label);
        // end_dim policy
        for (auto& e : lv.catalog.entries()) {
            auto it = lv.cfg.allowed_end_dims.find(e.label);
            const size_t allowed = it == lv.cfg.allowed_end_dims.end() ? 1 : it->second;
            if (e.end_dim != allowed)
                throw std::runtime_error(
                    lv.cfg.name + " simple " + e.label + " has endomorphism field of " +
                    "dimension " + std::to_string(e.end_dim) +
                    " (expected " + std::to_string(allowed) +
                    "); not absolutely irreducible over the prime field");
        }
        // block assignment from config
        for (auto& e : lv.catalog.entries()) {
            bool found = false;
            for (const auto& b : lv.cfg.blocks)
                if (std::find(b.simples.begin(), b.simples.end(), e.label) !=
                    b.simples.end()) {
                    e.block = b.label;
                    found = true;
                }
            if (!found)
                throw std::runtime_error(lv.cfg.name + " simple " + e.label +
                                         " missing from the block configuration");
        }
        // self-duality data must exist (verified map)
        duality_map(lv.catalog, derive_seed(seed, "duality"));
        peakword_search(lv.catalog, derive_seed(seed, "peak"));
        persist_catalog(lv);
        std::cout << "[discover] " << lv.cfg.name << ": catalog complete ("
                  << lv.catalog.entries().size() << " simples)\n";
    }
    catalogs_ready_ = true;
}

void Pipeline::ensure_catalogs() {
    if (!catalogs_ready_) stage_discover();
}

// ---- build-pims ----

void Pipeline::persist_pim(const LevelState& lv, const std::string& label) {
    const auto& mod = lv.pims.at(label);
    atomic_write(opt_.out_dir / "pims" / lv.cfg.name / ("P_" + label + ".mod"),
                 module_to_text(*mod));
    json meta;
    meta["label"] = label;
    meta["dim"] = mod->dim;
    meta["loewy_layers"] = layers_json(lv.pim_loewy.at(label));
    meta["socle_layers"] = layers_json(lv.pim_socle.at(label));
    atomic_write(opt_.out_dir / "pims" / lv.cfg.name / ("P_" + label + ".meta.json"),
                 meta.dump(2) + "\n");
    atomic_write(opt_.out_dir / "reports" / "pims" / lv.cfg.name / ("P_" + label + ".txt"),
                 render_loewy(lv.pim_loewy.at(label)));
}

namespace {

// head label of an indecomposable summand, from its Loewy report
std::optional<std::string> simple_head(const LoewyReport& rep) {
    if (rep.layers.empty()) return std::nullopt;
    const auto& head = rep.layers.front();
    if (head.size() != 1 || head[0].second != 1) return std::nullopt;
    return head[0].first;
}

} // namespace

void Pipeline::build_level_pims(size_t idx) {
    LevelState& lv = levels_[idx];
    const uint64_t seed = derive_seed(opt_.seed, "pims:" + lv.cfg.name);
    const auto sylow = sylow_p_order(*lv.group);
    HomOptions hopt;
    hopt.catalog = &lv.catalog;
    hopt.seed = seed;

    auto record_summands = [&](const std::vector<ModulePtr>& parts) {
        for (const auto& z : parts) {
            auto rep = loewy_series(z, lv.catalog, derive_seed(seed, "loewy"));
            auto head = simple_head(rep);
            if (!head) continue;
            if (lv.pims.count(*head)) continue;
            if (z->dim % sylow != 0)
                throw std::runtime_error("summand with simple head " + *head +
                                         " has dim not divisible by the Sylow order");
            auto socle_rep = socle_series(z, lv.catalog, derive_seed(seed, "socle"));
            // projective invariants: Loewy = reversed socle, head = socle = S
            auto rev = socle_rep.layers;
            std::reverse(rev.begin(), rev.end());
            if (rev != rep.layers)
                throw std::runtime_error("P_" + *head +
                                         ": Loewy and reversed socle series differ");
            if (socle_rep.layers.front() != rep.layers.front())
                throw std::runtime_error("P_" + *head + ": head and socle differ");
            lv.pims[*head] = z;
            lv.pim_loewy[*head] = std::move(rep);
            lv.pim_socle[*head] = std::move(socle_rep);
            std::cout << "[pims] " << lv.cfg.name << ": P_" << *head << " (dim "
                      << z->dim << ")\n";
        }
    };

    // defect-zero blocks: the simple is its own projective cover
    for (const auto& e : lv.catalog.entries()) {
        if (e.rep->dim % sylow == 0 && !lv.pims.count(e.label)) {
            auto rep = loewy_series(e.rep, lv.catalog, seed);
            lv.pims[e.label] = e.rep;
            lv.pim_loewy[e.label] = rep;
            lv.pim_socle[e.label] = socle_series(e.rep, lv.catalog, seed);
            std::cout << "[pims] " << lv.cfg.name << ": P_" << e.label
                      << " = simple (defect 0)\n";
        }
    }

    auto targets_left = [&]() {
        std::vector<std::string> out;
        for (const auto& t : lv.cfg.pim_targets)
            if (!lv.pims.count(t)) out.push_back(t);
        return out;
    };

    if (idx == 0) {
        // seed level: induce the sign characters of the 3'-subgroup
        GroupSpec syl;
        syl.name = cfg_.seed_subgroup_name;
        syl.degree = lv.group->degree;
        for (const auto& s : cfg_.seed_subgroup_cycles)
            syl.generators.push_back(Permutation::from_cycles(s, syl.degree));
        auto sylchain = chain_for(syl);
        if (sylchain->order() % cfg_.p == 0)
            throw std::runtime_error("seed subgroup order divisible by p");
        auto cd = std::make_shared<CosetData>(*lv.group, syl);
        auto sylspec = std::make_shared<GroupSpec>(syl);
        auto chars = sign_characters(sylspec, cfg_.p);
        for (const auto& lambda : chars) {
            if (targets_left().empty()) break;
            auto ind = induce_module(lambda, lv.group, cd);
            auto dec = decompose(ind, hopt, derive_seed(seed, "dec:" + lambda->note));
            record_summands(dec.summands);
        }
    } else {
        LevelState& below = levels_[idx - 1];
        auto cd = cosets_up(idx - 1);
        // process targets deterministically; each induction may cover several
        for (const auto& target : lv.cfg.pim_targets) {
            if (lv.pims.count(target)) continue;
            // composition factors of target restricted to the level below
            auto restr = restrict_module(lv.catalog.by_label(target).rep,
                                         below.group);
            auto series = chop(restr, below.catalog, derive_seed(seed, "restr:" + target));
            // candidate anchors: projectives below whose head occurs in series
            struct Cand {
                size_t ind_dim;
                std::string label;
            };
            std::vector<Cand> cands;
            for (const auto& [lab, mult] : series.factors) {
                if (!below.pims.count(lab)) continue;
                cands.push_back(Cand{below.pims.at(lab)->dim * cd->index(), lab});
            }
            if (cands.empty())
                throw std::runtime_error("no anchor below for target " + target);
            std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
                return std::tie(a.ind_dim, a.label) < std::tie(b.ind_dim, b.label);
            });
            const auto& chosen = cands.front();
            std::cout << "[pims] " << lv.cfg.name << ": target " << target
                      << " via Ind(P_" << chosen.label << ") dim " << chosen.ind_dim
                      << "\n";
            auto ind = induce_module(below.pims.at(chosen.label), lv.group, cd);
            auto dec = decompose(ind, hopt, derive_seed(seed, "dec:" + chosen.label));
            record_summands(dec.summands);
            if (!lv.pims.count(target))
                throw std::runtime_error("induction of P_" + chosen.label +
                                         " did not yield P_" + target);
        }
    }
    auto missing = targets_left();
    if (!missing.empty()) {
        std::string msg = lv.cfg.name + ": projective covers missing for:";
        for (const auto& t : missing) msg += " " + t;
        throw std::runtime_error(msg);
    }
    for (const auto& [label, mod] : lv.pims) persist_pim(lv, label);
}

void Pipeline::stage_build_pims() {
    ensure_catalogs();
    for (size_t i = 0; i < levels_.size(); ++i) build_level_pims(i);
    pims_ready_ = true;
    write_op_reports();
    if (opt_.long_run) write_two_step_reports();
}

void Pipeline::ensure_pims() {
    if (!pims_ready_) stage_build_pims();
}

std::vector<SummandReport> Pipeline::classify_summands(const std::string& group,
                                                       const std::vector<ModulePtr>& parts,
                                                       uint64_t seed) {
    LevelState& lv = level(group);
    std::vector<SummandReport> out;
    for (const auto& z : parts) {
        SummandReport r;
        r.dim = z->dim;
        auto rep = loewy_series(z, lv.catalog, seed);
        auto expanded = expand_layers(rep);
        if (expanded.size() == 1 && expanded[0].size() == 1) {
            r.type = "simple";
            r.label = expanded[0][0];
        } else {
            auto head = simple_head(rep);
            std::optional<std::string> pim_label;
            if (head && lv.pim_loewy.count(*head) &&
                lv.pim_loewy.at(*head).layers == rep.layers &&
                lv.pims.at(*head)->dim == z->dim)
                pim_label = *head;
            if (pim_label) {
                r.type = "pim";
                r.label = *pim_label;
            } else {
                r.type = "layers";
            }
            r.layers = expanded;
        }
        out.push_back(std::move(r));
    }
    // deterministic order: by dim then content
    std::sort(out.begin(), out.end(), [](const SummandReport& a, const SummandReport& b) {
        return std::tie(a.dim, a.type, a.label, a.layers) <
               std::tie(b.dim, b.type, b.label, b.layers);
    });
    return out;
}

namespace {

json summand_json(const SummandReport& r) {
    json j;
    j["type"] = r.type;
    j["dim"] = r.dim;
    if (r.type == "simple" || r.type == "pim") j["label"] = r.label;
    if (!r.layers.empty()) j["layers"] = r.layers;
    return j;
}

std::string summand_text(const SummandReport& r) {
    if (r.type == "simple") return r.label;
    if (r.type == "pim") return "P_" + r.label;
    std::string s = "[";
    for (size_t i = 0; i < r.layers.size(); ++i) {
        if (i) s += " | ";
        for (size_t k = 0; k < r.layers[i].size(); ++k) {
            if (k) s += " ";
            s += r.layers[i][k];
        }
    }
    return s + "]";
}

} // namespace

void Pipeline::write_op_reports() {
    // restrictions level i+1 -> i and inductions level i -> i+1
    for (size_t i = 0; i + 1 < levels_.size(); ++i) {
        LevelState& lo = levels_[i];
        LevelState& hi = levels_[i + 1];
        const uint64_t seed = derive_seed(opt_.seed, "ops:" + hi.cfg.name);
        HomOptions lo_opt;
        lo_opt.catalog = &lo.catalog;
        lo_opt.seed = seed;
        json restr_items = json::array();
        std::string restr_txt;
        for (const auto& e : hi.catalog.entries()) {
            auto r = restrict_module(e.rep, lo.group);
            auto dec = decompose(r, lo_opt, derive_seed(seed, "restr:" + e.label));
            auto parts = classify_summands(lo.cfg.name, dec.summands,
                                           derive_seed(seed, "cls:" + e.label));
            json item;
            item["module"] = e.label;
            json summands = json::array();
            std::string line = e.label + " | ";
            for (size_t k = 0; k < parts.size(); ++k) {
                summands.push_back(summand_json(parts[k]));
                if (k) line += " + ";
                line += summand_text(parts[k]);
            }
            item["summands"] = summands;
            restr_items.push_back(item);
            restr_txt += line + "\n";
        }
        json restr;
        restr["op"] = "restrict";
        restr["from"] = hi.cfg.name;
        restr["to"] = lo.cfg.name;
        restr["items"] = restr_items;
        const std::string rname = "restrict-" + hi.cfg.name + "-" + lo.cfg.name;
        atomic_write(opt_.out_dir / "reports" / "ops" / (rname + ".json"),
                     restr.dump(2) + "\n");
        atomic_write(opt_.out_dir / "reports" / "ops" / (rname + ".txt"), restr_txt);

        HomOptions hi_opt;
        hi_opt.catalog = &hi.catalog;
        hi_opt.seed = seed;
        auto cd = cosets_up(i);
        json ind_items = json::array();
        std::string ind_txt;
        for (const auto& e : lo.catalog.entries()) {
            auto ind = induce_module(e.rep, hi.group, cd);
            HomOptions opt2 = hi_opt;
            opt2.catalog = &lo.catalog; // the induced end runs over the lower group
            auto dec = decompose(ind, opt2, derive_seed(seed, "ind:" + e.label));
            auto parts = classify_summands(hi.cfg.name, dec.summands,
                                           derive_seed(seed, "icls:" + e.label));
            json item;
            item["module"] = e.label;
            json summands = json::array();
            std::string line = e.label + " ^ | ";
            for (size_t k = 0; k < parts.size(); ++k) {
                summands.push_back(summand_json(parts[k]));
                if (k) line += " + ";
                line += summand_text(parts[k]);
            }
            item["summands"] = summands;
            ind_items.push_back(item);
            ind_txt += line + "\n";
        }
        json indj;
        indj["op"] = "induce";
        indj["from"] = lo.cfg.name;
        indj["to"] = hi.cfg.name;
        indj["items"] = ind_items;
        const std::string iname = "induce-" + lo.cfg.name + "-" + hi.cfg.name;
        atomic_write(opt_.out_dir / "reports" / "ops" / (iname + ".json"),
                     indj.dump(2) + "\n");
        atomic_write(opt_.out_dir / "reports" / "ops" / (iname + ".txt"), ind_txt);
    }
}

void Pipeline::write_two_step_reports() {
    if (cfg_.two_step_pairs.empty() || levels_.size() < 2) return;
    // pairs live one level below the top
    LevelState& lo = levels_[levels_.size() - 2];
    LevelState& hi = levels_.back();
    const uint64_t seed = derive_seed(opt_.seed, "two-step");
    auto cd = cosets_up(levels_.size() - 2);
    json items = json::array();
    std::string txt;
    for (const auto& [head, socle_label] : cfg_.two_step_pairs) {
        // E = P_head / rad^2, then kill every socle component except one T
        const auto& P = lo.pims.at(head);
        FieldMatrix rad = radical_basis(P, lo.catalog, seed);
        auto sub = sub_quotient(P, rad).sub;
        FieldMatrix rad2 = radical_basis(sub, lo.catalog, seed);
        // rad^2 in P's coordinates
        const auto* subprov = std::get_if<prov::SubOf>(&sub->provenance);
        FieldMatrix rad2_in_p = mat_mul(rad2, subprov->iota);
        auto mod2 = sub_quotient(P, rad2_in_p).quotient; // P / rad^2
        // kill socle components other than the target
        HomOptions lopt;
        lopt.catalog = &lo.catalog;
        lopt.seed = seed;
        std::vector<FieldMatrix> kill;
        for (const auto& e : lo.catalog.entries()) {
            if (e.label == socle_label) continue;
            auto hs = hom_space(e.rep, mod2, lopt);
            for (const auto& phi : hs.maps) kill.push_back(phi);
        }
        ModulePtr ext2 = mod2;
        if (!kill.empty()) {
            FieldMatrix killed = FieldMatrix::vstack(kill).rref().reduced;
            ext2 = sub_quotient(mod2, killed).quotient;
        }
        // sanity: two layers [head],[socle]
        auto lrep = loewy_series(ext2, lo.catalog, seed);
        auto expanded = expand_layers(lrep);
        if (expanded.size() != 2 || expanded[0] != std::vector<std::string>{head} ||
            expanded[1] != std::vector<std::string>{socle_label})
            throw std::runtime_error("two-step module construction failed for " +
                                     head + "/" + socle_label);
        auto ind = induce_module(ext2, hi.group, cd);
        HomOptions hopt;
        hopt.catalog = &lo.catalog;
        hopt.seed = seed;
        auto dec = decompose(ind, hopt, derive_seed(seed, "dec:" + head + socle_label));
        // principal-block cut: components whose factors lie in the first block
        const auto& principal = hi.cfg.blocks.front();
        std::vector<ModulePtr> cut;
        for (const auto& z : dec.summands) {
            auto zl = loewy_series(z, hi.catalog, seed);
            LabelMultiset all;
            std::map<std::string, size_t> counts;
            for (const auto& layer : zl.layers)
                for (const auto& [lab, c] : layer) counts[lab] += c;
            for (const auto& [lab, c] : counts) all.emplace_back(lab, c);
            const auto& blk = block_of(hi.cfg.blocks, all);
            if (blk.label == principal.label) cut.push_back(z);
        }
        if (cut.size() != 1)
            throw std::runtime_error("two-step induction: principal cut not a single "
                                     "summand for " + head + "/" + socle_label);
        auto rep = loewy_series(cut[0], hi.catalog, seed);
        json item;
        item["head"] = head;
        item["socle"] = socle_label;
        item["layers"] = layers_json(rep);
        item["dim"] = cut[0]->dim;
        items.push_back(item);
        txt += "[" + head + " / " + socle_label + "] induced, principal cut:\n";
        txt += render_loewy(rep) + "\n";
    }
    json out;
    out["items"] = items;
    atomic_write(opt_.out_dir / "reports" / "two-step.json", out.dump(2) + "\n");
    atomic_write(opt_.out_dir / "reports" / "two-step.txt", txt);
}

// ---- tables ----

void Pipeline::stage_ext() {
    ensure_pims();
    LevelState& top = levels_.back();
    const auto labels = cfg_.decomposition.col_labels;
    auto ext = ext_table(top.pim_loewy, labels);
    json j;
    j["group"] = top.cfg.name;
    j["labels"] = ext.labels;
    j["entries"] = ext.entries;
    atomic_write(opt_.out_dir / "tables" / "ext.json", j.dump(2) + "\n");
}

void Pipeline::stage_cartan() {
    ensure_pims();
    LevelState& top = levels_.back();
    const auto labels = cfg_.decomposition.col_labels;
    auto cartan = cartan_table(top.pim_loewy, labels);
    json j;
    j["group"] = top.cfg.name;
    j["labels"] = cartan.labels;
    j["entries"] = cartan.entries;
    atomic_write(opt_.out_dir / "tables" / "cartan.json", j.dump(2) + "\n");
    auto dxd = verify_dxd(cfg_.decomposition, cartan);
    json dj;
    dj["consistent"] = dxd.consistent;
    dj["violations"] = dxd.violations;
    dj["dtd_entries"] = dxd.dtd.entries;
    atomic_write(opt_.out_dir / "tables" / "dxd.json", dj.dump(2) + "\n");
    // blocks from linkage
    auto classes = cartan_linkage_classes(cartan);
    json bj;
    bj["classes"] = classes;
    atomic_write(opt_.out_dir / "tables" / "blocks.json", bj.dump(2) + "\n");
    // global identities
    unsigned long long total = 0;
    bool divisible = true;
    const auto sylow = sylow_p_order(*top.group);
    for (const auto& e : top.catalog.entries()) {
        total += static_cast<unsigned long long>(e.rep->dim) *
                 top.pims.at(e.label)->dim;
        if (top.pims.at(e.label)->dim % sylow) divisible = false;
    }
    json gj;
    gj["group"] = top.cfg.name;
    gj["group_order"] = chain_for(*top.group)->order();
    gj["sum_dim_times_pim_dim"] = total;
    gj["sylow_p"] = sylow;
    gj["all_pim_dims_divisible_by_sylow"] = divisible;
    atomic_write(opt_.out_dir / "tables" / "global.json", gj.dump(2) + "\n");
}

int Pipeline::stage_verify() {
    if (opt_.goldens_dir.empty())
        throw std::invalid_argument("verify stage needs a goldens directory");
    auto outcomes = run_verify(opt_.goldens_dir, opt_.out_dir);
    return write_verify_report(outcomes, opt_.out_dir);
}

int Pipeline::run(std::vector<std::string> stages) {
    if (stages.empty()) {
        stages = {"discover-simples", "build-pims", "ext-table", "cartan"};
        if (!opt_.goldens_dir.empty()) stages.push_back("verify");
    }
    int rc = 0;
    for (const auto& s : stages) {
        if (s == "discover-simples") stage_discover();
        else if (s == "build-pims") stage_build_pims();
        else if (s == "ext-table") stage_ext();
        else if (s == "cartan") stage_cartan();
        else if (s == "verify") rc = stage_verify() ? 1 : rc;
        else throw std::invalid_argument("unknown stage " + s);
    }
    return rc;
}

} // namespace loewy

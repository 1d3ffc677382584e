#include "loewy/group.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <stdexcept>

namespace loewy {

GroupSpec alternating_group(size_t n) {
    if (n < 3) throw std::invalid_argument("alternating_group needs n >= 3");
    Permutation a = Permutation::from_cycles("(1 2 3)", n);
    Permutation b;
    if (n % 2 == 1) {
        std::vector<uint32_t> img(n);
        for (size_t i = 0; i < n; ++i) img[i] = static_cast<uint32_t>((i + 1) % n);
        b = Permutation::from_images(img);
    } else {
        std::vector<uint32_t> img(n);
        img[0] = 0;
        for (size_t i = 1; i < n; ++i) img[i] = static_cast<uint32_t>(i % (n - 1) + 1);
        b = Permutation::from_images(img);
    }
    GroupSpec g;
    g.name = "A" + std::to_string(n);
    g.degree = n;
    g.generators.push_back(a);
    if (b != a) g.generators.push_back(b);
    return g;
}

StabChain::StabChain(const GroupSpec& g) : spec_(g) {
    if (g.generators.empty()) throw std::invalid_argument("no generators");
    for (const auto& p : g.generators)
        if (p.degree() != g.degree) throw std::invalid_argument("generator degree mismatch");
    build();
}

namespace {

// first base position (in ascending point order) moved by p, as a point
std::optional<uint32_t> first_moved(const Permutation& p) {
    for (uint32_t i = 0; i < p.degree(); ++i)
        if (p(i) != i) return i;
    return std::nullopt;
}

} // namespace

void StabChain::build() {
    const size_t n = spec_.degree;

    auto recompute_orbit = [&](ChainLevel& lv) {
        lv.orbit.clear();
        lv.tree.clear();
        lv.orbit.push_back(lv.base);
        std::vector<char> seen(n, 0);
        seen[lv.base] = 1;
        for (size_t qi = 0; qi < lv.orbit.size(); ++qi) {
            const uint32_t pt = lv.orbit[qi];
            for (uint32_t sg : lv.sgens) {
                const uint32_t to = sgens_[sg].perm(pt);
                if (!seen[to]) {
                    seen[to] = 1;
                    lv.orbit.push_back(to);
                    lv.tree[to] = ChainLevel::Edge{pt, sg, 1};
                }
            }
        }
    };

    // insert a strong generator into every level it stabilizes down to, creating
    // levels as needed; returns the deepest level index it was added to.
    auto insert_sgen = [&](uint32_t sgid) -> size_t {
        const Permutation& p = sgens_[sgid].perm;
        size_t lvl = 0;
        for (;; ++lvl) {
            if (lvl == levels_.size()) {
                auto mv = first_moved(p);
                assert(mv.has_value());
                // create new levels (ascending base points) until p's first moved
                // point has a level
                ChainLevel nl;
                nl.base = *mv;
                levels_.push_back(nl);
            }
            if (levels_[lvl].base > spec_.degree)
                throw std::logic_error("bad level");
            // p must fix the bases of all earlier levels by construction
            levels_[lvl].sgens.push_back(sgid);
            recompute_orbit(levels_[lvl]);
            if (p(levels_[lvl].base) != levels_[lvl].base) return lvl;
            // p fixes this base: belongs deeper too
        }
    };

    // base points must be ascending for canonical coset keys: ensure new
    // levels created in ascending order of first-moved points. Since
    // insert_sgen only appends a level when the gen fixes all existing bases,
    // and the new base is the first point it moves, ascending order can be
    // violated only if that point is below an existing base; rebuild in that
    // case is avoided by choosing the first moved point *after* the previous
    // base. For permutation groups with base (0,1,...) this is exactly the
    // first moved point overall, because the gen fixes all earlier bases and
    // levels exist for every earlier moved point of earlier gens. Guarded by
    // the assert below.
    for (size_t i = 0; i < spec_.generators.size(); ++i) {
        // dedupe identical generators but keep indices aligned with spec
        sgens_.push_back(StrongGen{spec_.generators[i], {}});
    }
    for (uint32_t i = 0; i < sgens_.size(); ++i)
        if (!sgens_[i].perm.is_identity()) insert_sgen(i);
    for (size_t i = 1; i < levels_.size(); ++i)
        assert(levels_[i - 1].base < levels_[i].base);

    // transversal path at a level (strong-gen factors, base-most first)
    auto path_of = [&](const ChainLevel& lv, uint32_t point) {
        std::vector<DefFactor> path;
        uint32_t cur = point;
        while (cur != lv.base) {
            const auto& e = lv.tree.at(cur);
            path.push_back(DefFactor{e.sgen, e.exp});
            cur = e.parent;
        }
        std::reverse(path.begin(), path.end());
        return path;
    };
    auto perm_of_path = [&](const std::vector<DefFactor>& path) {
        Permutation r(n);
        for (const auto& f : path) {
            const Permutation& s = sgens_[f.sgen].perm;
            r = (f.exp > 0) ? r * s : r * s.inverse();
        }
        return r;
    };

    // Schreier-Sims closure, deepest level first
    size_t i = levels_.size();
    while (i-- > 0) {
        bool restart = false;
        ChainLevel& lv = levels_[i];
        for (size_t oi = 0; oi < lv.orbit.size() && !restart; ++oi) {
            const uint32_t delta = lv.orbit[oi];
            auto tpath = path_of(lv, delta);
            Permutation tdelta = perm_of_path(tpath);
            for (size_t si = 0; si < lv.sgens.size() && !restart; ++si) {
                const uint32_t sg = lv.sgens[si];
                const Permutation& s = sgens_[sg].perm;
                const uint32_t image = s(delta);
                auto t2path = path_of(lv, image);
                Permutation t2 = perm_of_path(t2path);
                Permutation schreier = tdelta * s * t2.inverse();
                if (schreier.is_identity()) continue;
                // definition of the Schreier generator
                std::vector<DefFactor> def = tpath;
                def.push_back(DefFactor{sg, 1});
                for (auto it = t2path.rbegin(); it != t2path.rend(); ++it)
                    def.push_back(DefFactor{it->sgen, static_cast<int8_t>(-it->exp)});
                // sift through deeper levels
                Permutation r = schreier;
                for (size_t j = i + 1; j < levels_.size() && !r.is_identity(); ++j) {
                    ChainLevel& dl = levels_[j];
                    const uint32_t img = r(dl.base);
                    if (img == dl.base) continue;
                    if (!dl.tree.count(img)) break; // not in orbit: residue stays
                    auto upath = path_of(dl, img);
                    Permutation u = perm_of_path(upath);
                    r = r * u.inverse();
                    for (auto it = upath.rbegin(); it != upath.rend(); ++it)
                        def.push_back(DefFactor{it->sgen, static_cast<int8_t>(-it->exp)});
                }
                if (r.is_identity()) continue;
                sgens_.push_back(StrongGen{r, def});
                const uint32_t sgid = static_cast<uint32_t>(sgens_.size() - 1);
                // insert at levels i+1.. (r fixes bases 0..i)
                size_t lvl = i + 1;
                for (;; ++lvl) {
                    if (lvl == levels_.size()) {
                        auto mv = first_moved(r);
                        assert(mv.has_value());
                        ChainLevel nl;
                        nl.base = *mv;
                        assert(levels_.empty() || nl.base > levels_.back().base);
                        levels_.push_back(nl);
                    }
                    levels_[lvl].sgens.push_back(sgid);
                    recompute_orbit(levels_[lvl]);
                    if (r(levels_[lvl].base) != levels_[lvl].base) break;
                }
                i = lvl + 1; // redo from the deepest touched level
                restart = true;
            }
        }
        if (restart) continue;
    }

    order_ = 1;
    for (const auto& lv : levels_) order_ *= lv.orbit.size();
}

Permutation StabChain::transversal(size_t level, uint32_t point) const {
    auto path = transversal_path(level, point);
    Permutation r(spec_.degree);
    for (const auto& f : path) {
        const Permutation& s = sgens_[f.sgen].perm;
        r = (f.exp > 0) ? r * s : r * s.inverse();
    }
    return r;
}

std::vector<DefFactor> StabChain::transversal_path(size_t level, uint32_t point) const {
    const ChainLevel& lv = levels_.at(level);
    std::vector<DefFactor> path;
    uint32_t cur = point;
    while (cur != lv.base) {
        const auto& e = lv.tree.at(cur);
        path.push_back(DefFactor{e.sgen, e.exp});
        cur = e.parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::optional<ChainFactorization> StabChain::factor(const Permutation& p) const {
    if (p.degree() != spec_.degree) return std::nullopt;
    Permutation r = p;
    std::vector<std::pair<uint32_t, uint32_t>> factors; // accumulated, peel order
    for (size_t lvl = 0; lvl < levels_.size(); ++lvl) {
        const uint32_t img = r(levels_[lvl].base);
        if (img == levels_[lvl].base) continue;
        if (!levels_[lvl].tree.count(img)) return std::nullopt;
        factors.emplace_back(static_cast<uint32_t>(lvl), img);
        r = r * transversal(lvl, img).inverse();
    }
    if (!r.is_identity()) return std::nullopt;
    // g = t_last * ... * t_first (deepest peel leftmost)
    std::reverse(factors.begin(), factors.end());
    ChainFactorization out;
    out.factors = std::move(factors);
    return out;
}

bool StabChain::contains(const Permutation& p) const {
    return factor(p).has_value();
}

std::vector<uint32_t> StabChain::min_coset_key(const Permutation& g) const {
    Permutation cur = g;
    for (size_t lvl = 0; lvl < levels_.size(); ++lvl) {
        const ChainLevel& lv = levels_[lvl];
        uint32_t best_pt = lv.orbit[0];
        uint32_t best_img = cur(best_pt);
        for (uint32_t o : lv.orbit) {
            if (cur(o) < best_img) {
                best_img = cur(o);
                best_pt = o;
            }
        }
        if (best_pt != lv.base) cur = transversal(lvl, best_pt) * cur;
    }
    return cur.images();
}

std::shared_ptr<const StabChain> chain_for(const GroupSpec& g) {
    static std::mutex mu;
    static std::map<std::pair<size_t, std::vector<std::vector<uint32_t>>>,
                    std::shared_ptr<const StabChain>>
        cache;
    std::vector<std::vector<uint32_t>> key;
    for (const auto& p : g.generators) key.push_back(p.images());
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({g.degree, key});
    if (it != cache.end()) return it->second;
    auto chain = std::make_shared<StabChain>(g);
    cache[{g.degree, key}] = chain;
    return chain;
}

CosetData::CosetData(const GroupSpec& g, const GroupSpec& h) : g_(g), h_(h) {
    if (h.degree != g.degree)
        throw std::invalid_argument("subgroup must be given at the big group's degree");
    hchain_ = chain_for(h);
    auto gchain = chain_for(g);
    for (const auto& hg : h.generators)
        if (!gchain->contains(hg))
            throw std::invalid_argument("not a subgroup: generator outside the group");
    const size_t expected = static_cast<size_t>(gchain->order() / hchain_->order());

    transversal_.push_back(Permutation(g.degree));
    bfs_parent_.emplace_back(UINT32_MAX, UINT32_MAX);
    key_to_index_[hchain_->min_coset_key(transversal_[0])] = 0;
    for (size_t i = 0; i < transversal_.size(); ++i) {
        table_.emplace_back();
        for (size_t gi = 0; gi < g.generators.size(); ++gi) {
            Permutation x = transversal_[i] * g.generators[gi];
            auto key = hchain_->min_coset_key(x);
            auto it = key_to_index_.find(key);
            size_t j;
            if (it == key_to_index_.end()) {
                j = transversal_.size();
                transversal_.push_back(x);
                bfs_parent_.emplace_back(static_cast<uint32_t>(i),
                                         static_cast<uint32_t>(gi));
                key_to_index_[key] = j;
            } else {
                j = it->second;
            }
            Permutation hpart = x * transversal_[j].inverse();
            if (!hchain_->contains(hpart))
                throw std::logic_error("coset factorization failed");
            table_[i].push_back(Move{static_cast<uint32_t>(j), hpart});
        }
    }
    if (transversal_.size() != expected)
        throw std::logic_error("coset enumeration found wrong index");
}

std::pair<size_t, Permutation> CosetData::locate(const Permutation& g) const {
    auto key = hchain_->min_coset_key(g);
    auto it = key_to_index_.find(key);
    if (it == key_to_index_.end())
        throw std::invalid_argument("element not in the group");
    Permutation hpart = g * transversal_[it->second].inverse();
    if (!hchain_->contains(hpart))
        throw std::invalid_argument("element not in the group (H-part check)");
    return {it->second, hpart};
}

} // namespace loewy

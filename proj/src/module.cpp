#include "loewy/module.hpp"

#include <algorithm>
#include <functional>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace loewy {

namespace {

std::vector<FieldMatrix> invert_all(const std::vector<FieldMatrix>& mats) {
    std::vector<FieldMatrix> out;
    out.reserve(mats.size());
    for (const auto& m : mats) {
        auto inv = m.inverse();
        if (!inv) throw std::invalid_argument("action matrix not invertible");
        out.push_back(std::move(*inv));
    }
    return out;
}

} // namespace

ModulePtr make_module(std::shared_ptr<const GroupSpec> group, uint32_t p,
                      std::vector<FieldMatrix> action, prov::Any provenance,
                      std::string note) {
    if (action.size() != group->generators.size())
        throw std::invalid_argument("one action matrix per generator required");
    auto m = std::make_shared<ModuleRep>();
    m->group = std::move(group);
    m->p = p;
    m->dim = action.empty() ? 0 : action[0].rows();
    for (const auto& a : action)
        if (a.rows() != m->dim || a.cols() != m->dim || a.p() != p)
            throw std::invalid_argument("action matrix shape mismatch");
    m->action = std::move(action);
    m->action_inv = invert_all(m->action);
    m->provenance = std::move(provenance);
    m->note = std::move(note);
    return m;
}

Permutation truncate_perm(const Permutation& g, size_t degree) {
    if (g.degree() < degree) throw std::invalid_argument("truncate: too short");
    std::vector<uint32_t> img(degree);
    for (size_t i = degree; i < g.degree(); ++i)
        if (g(static_cast<uint32_t>(i)) != i)
            throw std::invalid_argument("truncate: tail not fixed");
    for (size_t i = 0; i < degree; ++i) {
        img[i] = g(static_cast<uint32_t>(i));
        if (img[i] >= degree) throw std::invalid_argument("truncate: not closed");
    }
    return Permutation::from_images(img);
}

namespace {

FieldMatrix eval_via_chain(const ModuleRep& m, const Permutation& g);

FieldMatrix eval_uncached(const ModuleRep& m, const Permutation& g) {
    const size_t deg = m.group->degree;
    if (g.degree() != deg) throw std::invalid_argument("element degree mismatch");
    if (g.is_identity()) return FieldMatrix::identity(m.p, m.dim);
    for (size_t i = 0; i < m.group->generators.size(); ++i) {
        if (g == m.group->generators[i]) return m.action[i];
        if (g == m.group->generators[i].inverse()) return m.action_inv[i];
    }
    // provenance fast paths
    if (const auto* ind = std::get_if<prov::Induced>(&m.provenance)) {
        const CosetData& cd = *ind->cosets;
        const ModuleRep& v = *ind->sub;
        const size_t dv = v.dim;
        FieldMatrix out(m.p, m.dim, m.dim);
        for (size_t i = 0; i < cd.index(); ++i) {
            auto [j, hbig] = cd.locate(cd.rep(i) * g);
            FieldMatrix hv = element_matrix(v, truncate_perm(hbig, v.group->degree));
            for (size_t r = 0; r < dv; ++r)
                for (size_t c = 0; c < dv; ++c) {
                    uint8_t val = hv.get(r, c);
                    if (val) out.set(i * dv + r, j * dv + c, val);
                }
        }
        return out;
    }
    if (const auto* sc = std::get_if<prov::SignChar>(&m.provenance)) {
        auto it = sc->value.find(g);
        if (it == sc->value.end()) throw std::invalid_argument("element outside subgroup");
        FieldMatrix out(m.p, 1, 1);
        out.set(0, 0, it->second);
        return out;
    }
    if (const auto* s = std::get_if<prov::Summand>(&m.provenance)) {
        FieldMatrix big = element_matrix(*s->parent, g);
        return mat_mul(mat_mul(s->iota, big), s->pi);
    }
    if (const auto* r = std::get_if<prov::Restricted>(&m.provenance)) {
        return element_matrix(*r->parent, g.extended(r->parent->group->degree));
    }
    return eval_via_chain(m, g);
}

FieldMatrix sgen_matrix(const ModuleRep& m, const StabChain& chain, uint32_t sgid) {
    {
        std::lock_guard<std::mutex> lock(m.eval_mu);
        auto it = m.sgen_cache.find(sgid);
        if (it != m.sgen_cache.end()) return it->second;
    }
    const auto& sg = chain.strong_gens()[sgid];
    FieldMatrix out;
    if (sg.def.empty()) {
        // original generator
        bool found = false;
        for (size_t i = 0; i < m.group->generators.size(); ++i)
            if (m.group->generators[i] == sg.perm) {
                out = m.action[i];
                found = true;
                break;
            }
        if (!found) throw std::logic_error("strong generator atom not a group generator");
    } else {
        out = FieldMatrix::identity(m.p, m.dim);
        for (const auto& f : sg.def) {
            FieldMatrix fm = sgen_matrix(m, chain, f.sgen);
            if (f.exp < 0) {
                auto inv = fm.inverse();
                if (!inv) throw std::logic_error("singular strong generator");
                fm = *inv;
            }
            out = mat_mul(out, fm);
        }
    }
    std::lock_guard<std::mutex> lock(m.eval_mu);
    m.sgen_cache.emplace(sgid, out);
    return out;
}

FieldMatrix eval_via_chain(const ModuleRep& m, const Permutation& g) {
    {
        std::lock_guard<std::mutex> lock(m.eval_mu);
        auto it = m.eval_cache.find(g.images());
        if (it != m.eval_cache.end()) return it->second;
    }
    auto chain = chain_for(*m.group);
    auto fact = chain->factor(g);
    if (!fact) throw std::invalid_argument("element not in the module's group");
    FieldMatrix out = FieldMatrix::identity(m.p, m.dim);
    for (const auto& [lvl, pt] : fact->factors) {
        for (const auto& f : chain->transversal_path(lvl, pt)) {
            FieldMatrix fm = sgen_matrix(m, *chain, f.sgen);
            if (f.exp < 0) fm = *fm.inverse();
            out = mat_mul(out, fm);
        }
    }
    std::lock_guard<std::mutex> lock(m.eval_mu);
    if (m.eval_cache.size() < (m.dim > 2000 ? 16 : 64))
        m.eval_cache.emplace(g.images(), out);
    return out;
}

} // namespace

FieldMatrix element_matrix(const ModuleRep& m, const Permutation& g) {
    return eval_uncached(m, g);
}

ModulePtr perm_module(std::shared_ptr<const GroupSpec> g, uint32_t p) {
    const size_t n = g->degree;
    std::vector<FieldMatrix> action;
    for (const auto& perm : g->generators) {
        FieldMatrix a(p, n, n);
        for (size_t i = 0; i < n; ++i) a.set(i, perm(static_cast<uint32_t>(i)), 1);
        action.push_back(std::move(a));
    }
    return make_module(g, p, std::move(action), prov::Atom{"perm-module"},
                       g->name + " natural permutation module");
}

ModulePtr k_subsets_module(std::shared_ptr<const GroupSpec> g, size_t k, uint32_t p) {
    const size_t n = g->degree;
    if (k > n) throw std::invalid_argument("k exceeds degree");
    std::vector<std::vector<uint32_t>> subs;
    std::vector<uint32_t> cur;
    // lexicographic enumeration
    std::function<void(uint32_t)> rec = [&](uint32_t start) {
        if (cur.size() == k) {
            subs.push_back(cur);
            return;
        }
        for (uint32_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    std::map<std::vector<uint32_t>, size_t> idx;
    for (size_t i = 0; i < subs.size(); ++i) idx[subs[i]] = i;
    std::vector<FieldMatrix> action;
    for (const auto& perm : g->generators) {
        FieldMatrix a(p, subs.size(), subs.size());
        for (size_t i = 0; i < subs.size(); ++i) {
            std::vector<uint32_t> img;
            for (uint32_t x : subs[i]) img.push_back(perm(x));
            std::sort(img.begin(), img.end());
            a.set(i, idx.at(img), 1);
        }
        action.push_back(std::move(a));
    }
    return make_module(g, p, std::move(action), prov::Atom{"k-subsets"},
                       g->name + " on " + std::to_string(k) + "-subsets");
}

ModulePtr tensor(const ModulePtr& a, const ModulePtr& b) {
    if (a->group->name != b->group->name || a->p != b->p)
        throw std::invalid_argument("tensor: group/field mismatch");
    std::vector<FieldMatrix> action;
    for (size_t gi = 0; gi < a->action.size(); ++gi) {
        const FieldMatrix &A = a->action[gi], &B = b->action[gi];
        FieldMatrix k(a->p, a->dim * b->dim, a->dim * b->dim);
        for (size_t i1 = 0; i1 < a->dim; ++i1)
            for (size_t j1 = 0; j1 < a->dim; ++j1) {
                const uint8_t v = A.get(i1, j1);
                if (!v) continue;
                for (size_t i2 = 0; i2 < b->dim; ++i2)
                    for (size_t j2 = 0; j2 < b->dim; ++j2) {
                        const uint8_t w = B.get(i2, j2);
                        if (w)
                            k.set(i1 * b->dim + i2, j1 * b->dim + j2,
                                  static_cast<uint8_t>(v * w % a->p));
                    }
            }
        action.push_back(std::move(k));
    }
    return make_module(a->group, a->p, std::move(action), prov::Atom{"tensor"},
                       "tensor(" + a->note + ", " + b->note + ")");
}

ModulePtr dual(const ModulePtr& m) {
    std::vector<FieldMatrix> action;
    for (const auto& inv : m->action_inv) action.push_back(inv.transposed());
    return make_module(m->group, m->p, std::move(action), prov::Atom{"dual"},
                       "dual(" + m->note + ")");
}

ModulePtr direct_sum(const ModulePtr& a, const ModulePtr& b) {
    if (a->group->name != b->group->name || a->p != b->p)
        throw std::invalid_argument("direct_sum: group/field mismatch");
    std::vector<FieldMatrix> action;
    for (size_t gi = 0; gi < a->action.size(); ++gi) {
        FieldMatrix s(a->p, a->dim + b->dim, a->dim + b->dim);
        for (size_t i = 0; i < a->dim; ++i)
            for (size_t j = 0; j < a->dim; ++j) {
                uint8_t v = a->action[gi].get(i, j);
                if (v) s.set(i, j, v);
            }
        for (size_t i = 0; i < b->dim; ++i)
            for (size_t j = 0; j < b->dim; ++j) {
                uint8_t v = b->action[gi].get(i, j);
                if (v) s.set(a->dim + i, a->dim + j, v);
            }
        action.push_back(std::move(s));
    }
    return make_module(a->group, a->p, std::move(action), prov::Atom{"direct-sum"},
                       "sum(" + a->note + ", " + b->note + ")");
}

ModulePtr trivial_module(std::shared_ptr<const GroupSpec> g, uint32_t p) {
    std::vector<FieldMatrix> action(g->generators.size(), FieldMatrix::identity(p, 1));
    return make_module(g, p, std::move(action), prov::Atom{"trivial"},
                       "trivial module of " + g->name);
}

ModulePtr sign_char_module(std::shared_ptr<const GroupSpec> h, uint32_t p,
                           const std::map<Permutation, uint8_t>& values,
                           std::string label) {
    std::vector<FieldMatrix> action;
    for (const auto& gen : h->generators) {
        FieldMatrix a(p, 1, 1);
        a.set(0, 0, values.at(gen));
        action.push_back(std::move(a));
    }
    prov::SignChar sc;
    sc.subgroup = h;
    sc.value = values;
    sc.label = label;
    return make_module(h, p, std::move(action), std::move(sc),
                       "character " + label + " of " + h->name);
}

std::vector<ModulePtr> sign_characters(std::shared_ptr<const GroupSpec> h, uint32_t p) {
    // enumerate all subgroup elements by closure
    std::vector<Permutation> elements{Permutation(h->degree)};
    std::map<Permutation, size_t> index{{elements[0], 0}};
    for (size_t i = 0; i < elements.size(); ++i)
        for (const auto& gen : h->generators) {
            Permutation x = elements[i] * gen;
            if (!index.count(x)) {
                index[x] = elements.size();
                elements.push_back(x);
            }
        }
    const size_t k = h->generators.size();
    std::vector<ModulePtr> out;
    for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
        // candidate signs: bit set -> -1 (= p-1)
        std::map<Permutation, uint8_t> val;
        val[elements[0]] = 1;
        bool ok = true;
        // BFS propagation
        std::vector<Permutation> queue{elements[0]};
        while (!queue.empty() && ok) {
            Permutation x = queue.back();
            queue.pop_back();
            for (size_t gi = 0; gi < k && ok; ++gi) {
                Permutation y = x * h->generators[gi];
                uint8_t s = (mask >> gi) & 1 ? static_cast<uint8_t>(p - 1) : 1;
                uint8_t v = static_cast<uint8_t>(val[x] * s % p);
                auto it = val.find(y);
                if (it == val.end()) {
                    val[y] = v;
                    queue.push_back(y);
                } else if (it->second != v) {
                    ok = false;
                }
            }
        }
        if (ok && val.size() == elements.size()) {
            std::string label = "sgn";
            for (size_t gi = 0; gi < k; ++gi) label += (mask >> gi) & 1 ? '-' : '+';
            out.push_back(sign_char_module(h, p, val, label));
        }
    }
    return out;
}

ModulePtr restrict_module(const ModulePtr& m, std::shared_ptr<const GroupSpec> h) {
    if (h->degree > m->group->degree)
        throw std::invalid_argument("restrict: subgroup degree exceeds group degree");
    auto gchain = chain_for(*m->group);
    std::vector<FieldMatrix> action;
    for (const auto& gen : h->generators) {
        Permutation big = gen.extended(m->group->degree);
        if (!gchain->contains(big))
            throw std::invalid_argument("restrict: not a subgroup (generator outside)");
        action.push_back(element_matrix(*m, big));
    }
    return make_module(h, m->p, std::move(action), prov::Restricted{m},
                       m->note + " restricted to " + h->name);
}

ModulePtr induce_module(const ModulePtr& m, std::shared_ptr<const GroupSpec> g,
                        std::shared_ptr<const CosetData> cosets) {
    if (cosets->big().name != g->name)
        throw std::invalid_argument("induce: coset data for wrong group");
    const size_t dv = m->dim, idx = cosets->index();
    std::vector<FieldMatrix> action;
    for (size_t gi = 0; gi < g->generators.size(); ++gi) {
        FieldMatrix a(m->p, dv * idx, dv * idx);
        for (size_t i = 0; i < idx; ++i) {
            const auto& mv = cosets->action(i, gi);
            FieldMatrix hm =
                element_matrix(*m, truncate_perm(mv.hpart, m->group->degree));
            for (size_t r = 0; r < dv; ++r)
                for (size_t c = 0; c < dv; ++c) {
                    uint8_t v = hm.get(r, c);
                    if (v) a.set(i * dv + r, mv.target * dv + c, v);
                }
        }
        action.push_back(std::move(a));
    }
    return make_module(g, m->p, std::move(action), prov::Induced{m, cosets},
                       m->note + " induced to " + g->name);
}

SubQuotient sub_quotient(const ModulePtr& m, const FieldMatrix& basis) {
    auto ech = basis.rref();
    const size_t r = ech.rank, n = m->dim;
    if (basis.rows() != r)
        throw std::invalid_argument("sub_quotient: basis rows not independent");
    // adapted basis: sub rows then unit rows at free columns
    std::vector<char> piv(n, 0);
    for (size_t c : ech.pivots) piv[c] = 1;
    FieldMatrix C(m->p, n, n);
    for (size_t i = 0; i < r; ++i)
        for (size_t c = 0; c < n; ++c) {
            uint8_t v = ech.reduced.get(i, c);
            if (v) C.set(i, c, v);
        }
    size_t at = r;
    for (size_t c = 0; c < n; ++c)
        if (!piv[c]) C.set(at++, c, 1);
    auto Cinv = C.inverse();
    if (!Cinv) throw std::logic_error("adapted basis singular");
    std::vector<FieldMatrix> sub_action, quot_action;
    for (const auto& a : m->action) {
        FieldMatrix t = mat_mul(mat_mul(C, a), *Cinv);
        for (size_t i = 0; i < r; ++i)
            for (size_t c = r; c < n; ++c)
                if (t.get(i, c))
                    throw std::invalid_argument("sub_quotient: basis not invariant");
        FieldMatrix s(m->p, r, r), q(m->p, n - r, n - r);
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) {
                uint8_t v = t.get(i, j);
                if (v) s.set(i, j, v);
            }
        for (size_t i = r; i < n; ++i)
            for (size_t j = r; j < n; ++j) {
                uint8_t v = t.get(i, j);
                if (v) q.set(i - r, j - r, v);
            }
        sub_action.push_back(std::move(s));
        quot_action.push_back(std::move(q));
    }
    SubQuotient out;
    out.sub = make_module(m->group, m->p, std::move(sub_action),
                          prov::SubOf{m, ech.reduced}, m->note + " [sub]");
    // quotient: proj = columns r.. of Cinv, section = rows r.. of C
    std::vector<size_t> tail;
    for (size_t c = r; c < n; ++c) tail.push_back(c);
    FieldMatrix proj = Cinv->col_select(tail);
    FieldMatrix section = C.row_slice(r, n);
    out.quotient =
        make_module(m->group, m->p, std::move(quot_action),
                    prov::QuotientOf{m, proj, section, ech.reduced}, m->note + " [quot]");
    return out;
}

ModulePtr summand_module(const ModulePtr& m, const FieldMatrix& basis,
                         const FieldMatrix& complement) {
    const size_t r = basis.rows(), n = m->dim;
    if (basis.rows() + complement.rows() != n)
        throw std::invalid_argument("summand: basis + complement must fill the space");
    FieldMatrix C = FieldMatrix::vstack({basis, complement});
    auto Cinv = C.inverse();
    if (!Cinv) throw std::invalid_argument("summand: basis + complement not a basis");
    std::vector<size_t> head(r);
    std::iota(head.begin(), head.end(), 0);
    FieldMatrix pi = Cinv->col_select(head); // n x r
    std::vector<FieldMatrix> action;
    for (const auto& a : m->action) {
        FieldMatrix s = mat_mul(mat_mul(basis, a), pi);
        action.push_back(std::move(s));
    }
    // verify invariance: basis * a * (complement part of Cinv) == 0
    std::vector<size_t> tailc;
    for (size_t c = r; c < n; ++c) tailc.push_back(c);
    FieldMatrix tail_pi = Cinv->col_select(tailc);
    for (const auto& a : m->action)
        if (!mat_mul(mat_mul(basis, a), tail_pi).is_zero())
            throw std::invalid_argument("summand: basis not invariant w.r.t. complement");
    return make_module(m->group, m->p, std::move(action),
                       prov::Summand{m, basis, pi}, m->note + " [summand]");
}

bool satisfies_generator_relations(const ModuleRep& m) {
    for (size_t i = 0; i < m.action.size(); ++i) {
        const size_t ord = m.group->generators[i].order();
        FieldMatrix acc = FieldMatrix::identity(m.p, m.dim);
        for (size_t k = 0; k < ord; ++k) acc = mat_mul(acc, m.action[i]);
        if (!acc.is_identity()) return false;
    }
    return true;
}

} // namespace loewy

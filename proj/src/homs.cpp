#include "loewy/homs.hpp"

#include "loewy/parallel.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>

namespace loewy {

namespace {

// flatten maps to rows, reduce to an independent spanning set
std::vector<FieldMatrix> independent_maps(std::vector<FieldMatrix> maps) {
    if (maps.empty()) return maps;
    const size_t r = maps[0].rows(), c = maps[0].cols();
    FieldMatrix flat(maps[0].p(), maps.size(), r * c);
    for (size_t i = 0; i < maps.size(); ++i)
        for (size_t a = 0; a < r; ++a)
            for (size_t b = 0; b < c; ++b) {
                uint8_t v = maps[i].get(a, b);
                if (v) flat.set(i, a * c + b, v);
            }
    auto ech = flat.rref();
    std::vector<FieldMatrix> out;
    for (size_t i = 0; i < ech.rank; ++i) {
        FieldMatrix m(maps[0].p(), r, c);
        for (size_t a = 0; a < r; ++a)
            for (size_t b = 0; b < c; ++b) {
                uint8_t v = ech.reduced.get(i, a * c + b);
                if (v) m.set(a, b, v);
            }
        out.push_back(std::move(m));
    }
    return out;
}

bool verify_map(const ModuleRep& m, const ModuleRep& n, const FieldMatrix& phi) {
    for (size_t gi = 0; gi < m.action.size(); ++gi)
        if (mat_mul(m.action[gi], phi) != mat_mul(phi, n.action[gi])) return false;
    return true;
}

// Hom from a 1-dim sign character to a module of the same subgroup
std::vector<FieldMatrix> hom_from_sign_char(const ModuleRep& lambda,
                                            const ModuleRep& n) {
    const uint32_t p = n.p;
    std::vector<FieldMatrix> conds;
    for (size_t gi = 0; gi < n.action.size(); ++gi) {
        const uint8_t lam = lambda.action[gi].get(0, 0);
        conds.push_back(n.action[gi] - FieldMatrix::identity(p, n.dim).scaled(lam));
    }
    // y with y * cond == 0 for all: left nullspace of the horizontal stack
    // == nullspace of the vertical stack of transposes
    std::vector<FieldMatrix> tr;
    for (auto& c : conds) tr.push_back(c.transposed());
    FieldMatrix stacked = FieldMatrix::vstack(tr);
    FieldMatrix ys = stacked.nullspace();
    std::vector<FieldMatrix> out;
    for (size_t i = 0; i < ys.rows(); ++i) out.push_back(ys.row_slice(i, i + 1));
    return out;
}

const SimpleEntry* catalog_entry_for(const SimpleCatalog* cat, const ModulePtr& m) {
    if (!cat) return nullptr;
    for (const auto& e : cat->entries())
        if (e.rep.get() == m.get()) return &e;
    return nullptr;
}

// standard bases of catalog simples from their peakword kernels, cached
struct SimpleSeedData {
    StandardBasis sb;
    FieldMatrix rows_inv;
};
const SimpleSeedData& seed_data_for(const SimpleEntry& entry) {
    static std::mutex mu;
    static std::map<const ModuleRep*, SimpleSeedData> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(entry.rep.get());
    if (it != cache.end()) return it->second;
    if (!entry.peakword) throw std::logic_error("peakword missing for " + entry.label);
    FieldMatrix ev = entry.peakword->eval(*entry.rep);
    FieldMatrix ker = ev.left_nullspace();
    if (ker.rows() == 0) throw std::logic_error("peakword kernel empty on owner");
    SimpleSeedData data;
    data.sb = standard_basis(ker.row_slice(0, 1), *entry.rep, true);
    if (data.sb.rows.rows() != entry.rep->dim)
        throw std::logic_error("peakword seed does not generate " + entry.label);
    auto inv = data.sb.rows.inverse();
    if (!inv) throw std::logic_error("standard basis singular");
    data.rows_inv = *inv;
    auto [pos, ok] = cache.emplace(entry.rep.get(), std::move(data));
    return pos->second;
}

// stable left kernel of a word evaluation
FieldMatrix stable_kernel(const FieldMatrix& ev) {
    FieldMatrix cur = ev;
    size_t rank = cur.rank();
    for (;;) {
        FieldMatrix next = mat_mul(cur, cur);
        size_t nrank = next.rank();
        if (nrank == rank) return cur.left_nullspace();
        cur = std::move(next);
        rank = nrank;
    }
}

// Hom(S, N) for a catalog simple S with peakword, via stable-kernel seeding
std::vector<FieldMatrix> hom_from_simple(const SimpleEntry& entry, const ModuleRep& n) {
    const auto& seed = seed_data_for(entry);
    const ModuleRep& s = *entry.rep;
    const uint32_t p = n.p;
    FieldMatrix ev = entry.peakword->eval(n);
    FieldMatrix K = stable_kernel(ev);
    const size_t kdim = K.rows();
    if (kdim == 0) return {};
    const size_t nodes = seed.sb.rows.rows();
    // propagate each kernel basis vector through the standard-basis tree
    // u[i][k] = y_i * W_k
    std::vector<std::vector<FieldMatrix>> u(kdim, std::vector<FieldMatrix>(nodes));
    for (size_t i = 0; i < kdim; ++i) {
        u[i][0] = K.row_slice(i, i + 1);
        for (size_t k = 1; k < nodes; ++k) {
            const auto& [parent, gen] = seed.sb.tree[k];
            u[i][k] = vec_mat(u[i][parent], 0, n.action[gen]);
        }
    }
    // relation constraints on coefficients c in F^kdim
    FieldMatrix constraints(p, 0, kdim);
    for (const auto& rel : seed.sb.relations) {
        if (constraints.rows() == kdim) break; // already forced trivial
        // w_i = u[i][node] * g - sum_k coeffs_k u[i][k]
        FieldMatrix W(p, kdim, n.dim);
        for (size_t i = 0; i < kdim; ++i) {
            FieldMatrix w = vec_mat(u[i][rel.node], 0, n.action[rel.gen]);
            for (size_t k = 0; k < nodes; ++k) {
                const uint8_t c = rel.coeffs.get(0, k);
                if (c) w.row_addin(0, u[i][k], 0, p - c);
            }
            W.row_addin(i, w, 0, 1);
        }
        constraints = FieldMatrix::vstack({constraints, W.transposed()}).rref().reduced;
    }
    FieldMatrix sols = constraints.rows() ? constraints.nullspace()
                                          : FieldMatrix::identity(p, kdim);
    std::vector<FieldMatrix> out;
    for (size_t si = 0; si < sols.rows(); ++si) {
        // map in standard coords, then back to S's own basis
        FieldMatrix img(p, nodes, n.dim);
        for (size_t k = 0; k < nodes; ++k)
            for (size_t i = 0; i < kdim; ++i) {
                const uint8_t c = sols.get(si, i);
                if (c) img.row_addin(k, u[i][k], 0, c);
            }
        FieldMatrix phi = mat_mul(seed.rows_inv, img);
        if (!phi.is_zero()) out.push_back(std::move(phi));
    }
    return out;
}

// Hom via generating seeds and tree-word matrices; for moderate dims
std::vector<FieldMatrix> hom_cyclic(const ModuleRep& m, const ModuleRep& n,
                                    uint64_t seed_val) {
    (void)seed_val;
    const uint32_t p = m.p;
    // greedy generating set: unit vectors outside the current span
    FieldMatrix seeds(p, 1, m.dim);
    seeds.set(0, 0, 1);
    StandardBasis sb = standard_basis(seeds, m, true);
    while (sb.rows.rows() < m.dim) {
        auto ech = sb.rows.rref();
        std::vector<char> piv(m.dim, 0);
        for (size_t c2 : ech.pivots) piv[c2] = 1;
        size_t add = m.dim;
        for (size_t c2 = 0; c2 < m.dim; ++c2)
            if (!piv[c2]) { add = c2; break; }
        if (add == m.dim) throw std::logic_error("hom_cyclic: span bookkeeping broken");
        FieldMatrix grown(p, seeds.rows() + 1, m.dim);
        for (size_t r = 0; r < seeds.rows(); ++r) grown.row_addin(r, seeds, r, 1);
        grown.set(seeds.rows(), add, 1);
        seeds = std::move(grown);
        sb = standard_basis(seeds, m, true);
    }
    const size_t nodes = sb.rows.rows();
    const size_t s = sb.seed_count;
    // tree-word matrices on N with root tracking
    std::vector<FieldMatrix> W(nodes);
    std::vector<uint32_t> root_of(nodes);
    for (size_t k = 0; k < nodes; ++k) {
        const auto& [parent, gen] = sb.tree[k];
        if (parent == UINT32_MAX) {
            W[k] = FieldMatrix::identity(p, n.dim);
            root_of[k] = gen;
        } else {
            W[k] = mat_mul(W[parent], n.action[gen]);
            root_of[k] = root_of[parent];
        }
    }
    // candidates (w_1..w_s) in F^{s*dimN}; intersect relation conditions
    FieldMatrix sols = FieldMatrix::identity(p, s * n.dim);
    for (const auto& rel : sb.relations) {
        if (sols.rows() == 0) break;
        // BigC: s*dimN x dimN
        std::vector<FieldMatrix> blocks(s, FieldMatrix(p, n.dim, n.dim));
        blocks[root_of[rel.node]] = mat_mul(W[rel.node], n.action[rel.gen]);
        for (size_t k = 0; k < nodes; ++k) {
            const uint8_t c2 = rel.coeffs.get(0, k);
            if (c2) blocks[root_of[k]] = blocks[root_of[k]] - W[k].scaled(c2);
        }
        FieldMatrix bigc = FieldMatrix::vstack(blocks);
        FieldMatrix D = mat_mul(sols, bigc);
        FieldMatrix keep = D.left_nullspace();
        sols = keep.rows() ? mat_mul(keep, sols) : FieldMatrix(p, 0, s * n.dim);
    }
    auto rows_inv = sb.rows.inverse();
    if (!rows_inv) throw std::logic_error("standard basis singular");
    std::vector<FieldMatrix> out;
    for (size_t si = 0; si < sols.rows(); ++si) {
        FieldMatrix img(p, nodes, n.dim);
        for (size_t k = 0; k < nodes; ++k) {
            // u_k = w_{root} * W_k
            FieldMatrix wroot(p, 1, n.dim);
            for (size_t c2 = 0; c2 < n.dim; ++c2) {
                uint8_t v = sols.get(si, root_of[k] * n.dim + c2);
                if (v) wroot.set(0, c2, v);
            }
            img.row_addin(k, vec_mat(wroot, 0, W[k]), 0, 1);
        }
        FieldMatrix phi = mat_mul(*rows_inv, img);
        if (!phi.is_zero()) out.push_back(std::move(phi));
    }
    return out;
}

std::vector<FieldMatrix> hom_rec(const ModulePtr& m, const ModulePtr& n,
                                 const HomOptions& opt);

// extension along induction: Hom_H(V, Res N) -> Hom_G(Ind V, N)
std::vector<FieldMatrix> extend_induced(const prov::Induced& ind, const ModulePtr& m,
                                        const ModulePtr& n, const HomOptions& opt) {
    const CosetData& cd = *ind.cosets;
    const ModulePtr& v = ind.sub;
    ModulePtr resn = restrict_module(n, v->group);
    auto base = hom_rec(v, resn, opt);
    if (base.empty()) return {};
    const uint32_t p = n->p;
    const size_t dv = v->dim, idx = cd.index();
    std::vector<FieldMatrix> out(base.size());
    if (dv == 1) {
        // propagate the single row along the BFS tree of the transversal
        parallel_for(0, base.size(), 1, [&](size_t b0, size_t b1) {
            for (size_t b = b0; b < b1; ++b) {
                FieldMatrix phi(p, idx, n->dim);
                phi.row_addin(0, base[b], 0, 1);
                for (size_t j = 1; j < idx; ++j) {
                    const auto& [pi, gi] = cd.bfs_parents()[j];
                    FieldMatrix row = vec_mat(phi, pi, n->action[gi]);
                    phi.row_addin(j, row, 0, 1);
                }
                out[b] = std::move(phi);
            }
        });
        return out;
    }
    // general: block i = phi * rho_N(t_i)
    std::vector<FieldMatrix> tmats(idx);
    for (size_t i = 0; i < idx; ++i) tmats[i] = element_matrix(*n, cd.rep(i));
    parallel_for(0, base.size(), 1, [&](size_t b0, size_t b1) {
        for (size_t b = b0; b < b1; ++b) {
            std::vector<FieldMatrix> blocks(idx);
            for (size_t i = 0; i < idx; ++i) blocks[i] = mat_mul(base[b], tmats[i]);
            out[b] = FieldMatrix::vstack(blocks);
        }
    });
    return out;
}

std::vector<FieldMatrix> hom_rec(const ModulePtr& m, const ModulePtr& n,
                                 const HomOptions& opt) {
    if (m->p != n->p) throw std::invalid_argument("hom: field mismatch");
    if (m->dim == 0 || n->dim == 0) return {};
    // same-group guard for non-provenance paths is implicit: provenance paths
    // handle the subgroup hops themselves.
    if (const auto* sc = std::get_if<prov::SignChar>(&m->provenance)) {
        (void)sc;
        if (m->group->name != n->group->name)
            throw std::invalid_argument("hom: sign-char source group mismatch");
        return hom_from_sign_char(*m, *n);
    }
    if (const auto* ind = std::get_if<prov::Induced>(&m->provenance))
        return extend_induced(*ind, m, n, opt);
    if (const auto* s = std::get_if<prov::Summand>(&m->provenance)) {
        auto base = hom_rec(s->parent, n, opt);
        std::vector<FieldMatrix> cut;
        for (auto& phi : base) cut.push_back(mat_mul(s->iota, phi));
        return independent_maps(std::move(cut));
    }
    if (const auto* q = std::get_if<prov::QuotientOf>(&m->provenance)) {
        auto base = hom_rec(q->parent, n, opt);
        if (base.empty()) return {};
        const uint32_t p = n->p;
        // keep combos killing the kernel
        FieldMatrix constraints(p, 0, base.size());
        {
            std::vector<FieldMatrix> rows;
            for (auto& phi : base) {
                FieldMatrix img = mat_mul(q->kernel, phi); // kdim x dimN
                rows.push_back([&] {
                    FieldMatrix fl(p, 1, img.rows() * img.cols());
                    for (size_t a = 0; a < img.rows(); ++a)
                        for (size_t b2 = 0; b2 < img.cols(); ++b2) {
                            uint8_t vv = img.get(a, b2);
                            if (vv) fl.set(0, a * img.cols() + b2, vv);
                        }
                    return fl;
                }());
            }
            FieldMatrix flat = FieldMatrix::vstack(rows); // base x flattened
            // c with sum c_i row_i = 0
            FieldMatrix combos = flat.transposed().nullspace();
            std::vector<FieldMatrix> out;
            for (size_t ci = 0; ci < combos.rows(); ++ci) {
                FieldMatrix lifted(p, m->dim, n->dim);
                for (size_t b2 = 0; b2 < base.size(); ++b2) {
                    const uint8_t c = combos.get(ci, b2);
                    if (!c) continue;
                    FieldMatrix part = mat_mul(q->section, base[b2]).scaled(c);
                    lifted = lifted + part;
                }
                if (!lifted.is_zero()) out.push_back(std::move(lifted));
            }
            return independent_maps(std::move(out));
        }
    }
    if (const auto* entry = catalog_entry_for(opt.catalog, m)) {
        if (entry->peakword && m->group->name == n->group->name)
            return hom_from_simple(*entry, *n);
    }
    if (m->group->name != n->group->name)
        throw std::invalid_argument("hom: group mismatch without provenance route");
    if (m->dim * n->dim <= opt.dense_cap) {
        auto d = hom_space_dense(m, n);
        return d.maps;
    }
    if (m->dim <= opt.cyclic_cap && n->dim <= opt.cyclic_cap)
        return hom_cyclic(*m, *n, derive_seed(opt.seed, "hom-cyclic"));
    throw std::runtime_error("hom_space: no backend applies (dims " +
                             std::to_string(m->dim) + " x " + std::to_string(n->dim) +
                             ")");
}

} // namespace

HomBasis hom_space_dense(const ModulePtr& m, const ModulePtr& n) {
    const uint32_t p = m->p;
    const size_t dm = m->dim, dn = n->dim, nn = dm * dn;
    std::vector<FieldMatrix> conds;
    for (size_t gi = 0; gi < m->action.size(); ++gi) {
        FieldMatrix c(p, nn, nn);
        const FieldMatrix& A = m->action[gi];
        const FieldMatrix& B = n->action[gi];
        // (A X - X B)[i,j] as linear functional rows over X entries
        for (size_t i = 0; i < dm; ++i)
            for (size_t j = 0; j < dn; ++j) {
                for (size_t k = 0; k < dm; ++k) {
                    uint8_t v = A.get(i, k);
                    if (v)
                        c.set(i * dn + j, k * dn + j,
                              static_cast<uint8_t>((c.get(i * dn + j, k * dn + j) + v) % p));
                }
                for (size_t k = 0; k < dn; ++k) {
                    uint8_t v = B.get(k, j);
                    if (v)
                        c.set(i * dn + j, i * dn + k,
                              static_cast<uint8_t>((c.get(i * dn + j, i * dn + k) + p - v) % p));
                }
            }
        conds.push_back(std::move(c));
    }
    FieldMatrix stacked = FieldMatrix::vstack(conds);
    FieldMatrix sols = stacked.nullspace();
    HomBasis out;
    out.source = m;
    out.target = n;
    for (size_t si = 0; si < sols.rows(); ++si) {
        FieldMatrix phi(p, dm, dn);
        for (size_t i = 0; i < dm; ++i)
            for (size_t j = 0; j < dn; ++j) {
                uint8_t v = sols.get(si, i * dn + j);
                if (v) phi.set(i, j, v);
            }
        out.maps.push_back(std::move(phi));
    }
    return out;
}

HomBasis hom_space(const ModulePtr& m, const ModulePtr& n, const HomOptions& opt) {
    HomBasis out;
    out.source = m;
    out.target = n;
    out.maps = independent_maps(hom_rec(m, n, opt));
    if (m->group->name == n->group->name && m->dim <= 1500 && n->dim <= 1500)
        for (const auto& phi : out.maps)
            if (!verify_map(*m, *n, phi))
                throw std::logic_error("hom_space produced a non-intertwiner");
    return out;
}

size_t hom_dim(const ModulePtr& m, const ModulePtr& n, const HomOptions& opt) {
    return hom_space(m, n, opt).dim();
}

namespace {

class MatrixEnd : public EndHandle {
public:
    MatrixEnd(std::vector<FieldMatrix> mats, size_t dim)
        : mats_(std::move(mats)), dim_(dim) {}
    size_t algebra_dim() const override { return mats_.size(); }
    size_t module_dim() const override { return dim_; }
    FieldMatrix apply(const FieldMatrix& row, size_t r) const override {
        return vec_mat(row, 0, mats_[r]);
    }
    FieldMatrix materialize(const std::vector<uint8_t>& coeffs) const override {
        FieldMatrix out(mats_[0].p(), dim_, dim_);
        for (size_t r = 0; r < mats_.size(); ++r)
            if (coeffs[r]) out = out + mats_[r].scaled(coeffs[r]);
        return out;
    }

private:
    std::vector<FieldMatrix> mats_;
    size_t dim_;
};

// End(Ind V) held as Hom_H(V, Res Ind V) plus the transversal matrices
class InducedEnd : public EndHandle {
public:
    InducedEnd(ModulePtr m, const prov::Induced& ind, std::vector<FieldMatrix> vhoms)
        : m_(std::move(m)), cosets_(ind.cosets), vdim_(ind.sub->dim),
          vhoms_(std::move(vhoms)) {
        tmats_.resize(cosets_->index());
        for (size_t i = 0; i < cosets_->index(); ++i)
            tmats_[i] = element_matrix(*m_, cosets_->rep(i));
    }
    size_t algebra_dim() const override { return vhoms_.size(); }
    size_t module_dim() const override { return m_->dim; }
    FieldMatrix apply(const FieldMatrix& row, size_t r) const override {
        // u * E = sum_i (u_i * phi) * rho(t_i)
        FieldMatrix out(m_->p, 1, m_->dim);
        for (size_t i = 0; i < cosets_->index(); ++i) {
            FieldMatrix ui(m_->p, 1, vdim_);
            bool nz = false;
            for (size_t c = 0; c < vdim_; ++c) {
                uint8_t v = row.get(0, i * vdim_ + c);
                if (v) { ui.set(0, c, v); nz = true; }
            }
            if (!nz) continue;
            FieldMatrix mid = vec_mat(ui, 0, vhoms_[r]); // 1 x dimM
            out = out + vec_mat(mid, 0, tmats_[i]);
        }
        return out;
    }
    FieldMatrix materialize(const std::vector<uint8_t>& coeffs) const override {
        FieldMatrix combo(m_->p, vdim_, m_->dim);
        for (size_t r = 0; r < vhoms_.size(); ++r)
            if (coeffs[r]) combo = combo + vhoms_[r].scaled(coeffs[r]);
        std::vector<FieldMatrix> blocks(cosets_->index());
        parallel_for(0, cosets_->index(), 1, [&](size_t i0, size_t i1) {
            for (size_t i = i0; i < i1; ++i) blocks[i] = mat_mul(combo, tmats_[i]);
        });
        return FieldMatrix::vstack(blocks);
    }

private:
    ModulePtr m_;
    std::shared_ptr<const CosetData> cosets_;
    size_t vdim_;
    std::vector<FieldMatrix> vhoms_; // Hom_H(V, Res M) bases
    std::vector<FieldMatrix> tmats_;
};

} // namespace

std::unique_ptr<EndHandle> end_handle(const ModulePtr& m, const HomOptions& opt) {
    if (const auto* ind = std::get_if<prov::Induced>(&m->provenance)) {
        ModulePtr resm = restrict_module(m, ind->sub->group);
        auto vhoms = hom_rec(ind->sub, resm, opt);
        vhoms = independent_maps(std::move(vhoms));
        if (vhoms.empty()) throw std::logic_error("end_handle: empty End?");
        return std::make_unique<InducedEnd>(m, *ind, std::move(vhoms));
    }
    auto maps = hom_space(m, m, opt).maps;
    return std::make_unique<MatrixEnd>(std::move(maps), m->dim);
}

} // namespace loewy

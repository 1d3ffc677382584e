#include "loewy/structure.hpp"

#include "loewy/poly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace loewy {

namespace {

LabelMultiset sorted_multiset(std::map<std::string, size_t> counts) {
    LabelMultiset out(counts.begin(), counts.end());
    return out;
}

} // namespace

SocleInfo socle(const ModulePtr& m, const SimpleCatalog& cat, uint64_t seed) {
    HomOptions opt;
    opt.catalog = &cat;
    opt.seed = seed;
    std::map<std::string, size_t> counts;
    std::vector<FieldMatrix> images;
    for (const auto& e : cat.entries()) {
        if (e.rep->group->name != m->group->name) continue;
        auto homs = hom_space(e.rep, m, opt);
        if (homs.dim() == 0) continue;
        if (homs.dim() % e.end_dim != 0)
            throw std::logic_error("socle: hom dim not divisible by End dim");
        counts[e.label] = homs.dim() / e.end_dim;
        for (const auto& phi : homs.maps) images.push_back(phi);
    }
    SocleInfo out;
    if (images.empty()) {
        out.basis = FieldMatrix(m->p, 0, m->dim);
    } else {
        out.basis = FieldMatrix::vstack(images).rref().reduced;
    }
    out.labels = sorted_multiset(std::move(counts));
    return out;
}

std::map<std::string, std::string> duality_map(const SimpleCatalog& cat, uint64_t seed) {
    if (cat.dual_ready) return cat.dual_cache;
    std::map<std::string, std::string> out;
    for (const auto& e : cat.entries()) {
        auto d = dual(e.rep);
        bool found = false;
        for (const auto& f : cat.entries()) {
            if (f.rep->dim != e.rep->dim) continue;
            if (module_isomorphism(*d, *f.rep, seed)) {
                out[e.label] = f.label;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::logic_error("duality_map: dual of " + e.label +
                                   " missing from catalog");
    }
    cat.dual_cache = out;
    cat.dual_ready = true;
    return out;
}

FieldMatrix radical_basis(const ModulePtr& m, const SimpleCatalog& cat, uint64_t seed) {
    // rad(M) is the annihilator of soc(M*)
    auto d = dual(m);
    auto soc_dual = socle(d, cat, seed);
    if (soc_dual.basis.rows() == 0)
        throw std::logic_error("radical: dual socle empty on nonzero module");
    return soc_dual.basis.nullspace();
}

namespace {

LabelMultiset dualized(const LabelMultiset& labels,
                       const std::map<std::string, std::string>& dmap) {
    std::map<std::string, size_t> counts;
    for (const auto& [l, c] : labels) counts[dmap.at(l)] += c;
    return sorted_multiset(std::move(counts));
}

} // namespace

LoewyReport loewy_series(const ModulePtr& m, const SimpleCatalog& cat, uint64_t seed) {
    auto dmap = duality_map(cat, seed);
    LoewyReport out;
    out.module_name = m->note;
    out.socle_direction = false;
    out.total_dim = m->dim;
    ModulePtr cur = m;
    while (cur->dim > 0) {
        auto d = dual(cur);
        auto soc_dual = socle(d, cat, seed);
        // L_1(cur) = dual of soc(cur*)
        out.layers.push_back(dualized(soc_dual.labels, dmap));
        if (soc_dual.basis.rows() == cur->dim) break; // semisimple: done
        FieldMatrix rad = soc_dual.basis.nullspace();
        cur = sub_quotient(cur, rad).sub;
    }
    return out;
}

LoewyReport socle_series(const ModulePtr& m, const SimpleCatalog& cat, uint64_t seed) {
    LoewyReport out;
    out.module_name = m->note;
    out.socle_direction = true;
    out.total_dim = m->dim;
    ModulePtr cur = m;
    while (cur->dim > 0) {
        auto s = socle(cur, cat, seed);
        out.layers.push_back(s.labels);
        if (s.basis.rows() == cur->dim) break;
        cur = sub_quotient(cur, s.basis).quotient;
    }
    return out;
}

FittingSplit fitting_split(const ModulePtr& m, const FieldMatrix& endo) {
    FieldMatrix cur = endo;
    size_t rank = cur.rank();
    for (;;) {
        FieldMatrix next = mat_mul(cur, cur);
        const size_t nrank = next.rank();
        if (nrank == rank) break;
        cur = std::move(next);
        rank = nrank;
    }
    FieldMatrix ker = cur.left_nullspace();
    FieldMatrix im = cur.rref().reduced;
    FittingSplit out;
    out.kernel_part = ker.rows() ? summand_module(m, ker, im) : nullptr;
    out.image_part = im.rows() ? summand_module(m, im, ker) : nullptr;
    return out;
}

// ---- abstract algebra ----

std::vector<uint8_t> AbstractAlgebra::mul(const std::vector<uint8_t>& a,
                                          const std::vector<uint8_t>& b) const {
    std::vector<uint32_t> acc(k, 0);
    for (size_t i = 0; i < k; ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < k; ++j) {
            if (!b[j]) continue;
            const uint32_t c = a[i] * b[j] % p;
            const auto& mij = mult[i][j];
            for (size_t t = 0; t < k; ++t)
                acc[t] = (acc[t] + c * mij[t]) % p;
        }
    }
    return std::vector<uint8_t>(acc.begin(), acc.end());
}

FieldMatrix AbstractAlgebra::right_regular(const std::vector<uint8_t>& a) const {
    FieldMatrix r(p, k, k);
    for (size_t j = 0; j < k; ++j) {
        std::vector<uint8_t> ej(k, 0);
        ej[j] = 1;
        auto row = mul(ej, a);
        for (size_t t = 0; t < k; ++t)
            if (row[t]) r.set(j, t, row[t]);
    }
    return r;
}

bool AbstractAlgebra::is_nilpotent(const std::vector<uint8_t>& a) const {
    FieldMatrix r = right_regular(a);
    FieldMatrix acc = r;
    for (size_t i = 0; i < k + 1; ++i) {
        if (acc.is_zero()) return true;
        acc = mat_mul(acc, r);
    }
    return acc.is_zero();
}

bool AbstractAlgebra::is_invertible(const std::vector<uint8_t>& a) const {
    return right_regular(a).rank() == k;
}

namespace {

std::vector<uint8_t> eval_poly_alg(const AbstractAlgebra& alg, const FieldPolynomial& f,
                                   const std::vector<uint8_t>& u) {
    std::vector<uint8_t> acc(alg.k, 0);
    std::vector<uint8_t> pw = alg.one;
    for (size_t i = 0; i <= static_cast<size_t>(std::max(0, f.degree())); ++i) {
        const uint8_t c = f.coeff(i);
        if (c)
            for (size_t t = 0; t < alg.k; ++t)
                acc[t] = static_cast<uint8_t>((acc[t] + c * pw[t]) % alg.p);
        if (i < static_cast<size_t>(f.degree())) pw = alg.mul(pw, u);
    }
    return acc;
}

bool vec_zero(const std::vector<uint8_t>& v) {
    for (uint8_t x : v)
        if (x) return false;
    return true;
}

// split a corner algebra (given in the ambient coords) or conclude local
struct Corner {
    AbstractAlgebra sub;          // structure in its own basis
    FieldMatrix basis;            // rows: corner basis in ambient coords
};

Corner corner_algebra(const AbstractAlgebra& alg, const std::vector<uint8_t>& e) {
    std::vector<FieldMatrix> rows;
    for (size_t i = 0; i < alg.k; ++i) {
        std::vector<uint8_t> ei(alg.k, 0);
        ei[i] = 1;
        auto v = alg.mul(alg.mul(e, ei), e);
        FieldMatrix r(alg.p, 1, alg.k);
        for (size_t t = 0; t < alg.k; ++t)
            if (v[t]) r.set(0, t, v[t]);
        rows.push_back(std::move(r));
    }
    FieldMatrix basis = FieldMatrix::vstack(rows).rref().reduced;
    const size_t kk = basis.rows();
    auto coords_of = [&](const std::vector<uint8_t>& v) {
        // solve x * basis = v
        FieldMatrix aug(alg.p, alg.k, kk + 1);
        FieldMatrix bt = basis.transposed();
        for (size_t r = 0; r < alg.k; ++r) {
            for (size_t c = 0; c < kk; ++c) {
                uint8_t x = bt.get(r, c);
                if (x) aug.set(r, c, x);
            }
            if (v[r]) aug.set(r, kk, v[r]);
        }
        auto ech = aug.rref();
        std::vector<uint8_t> out(kk, 0);
        for (size_t r = 0; r < ech.rank; ++r) {
            if (ech.pivots[r] < kk) out[ech.pivots[r]] = ech.reduced.get(r, kk);
            else if (ech.reduced.get(r, kk))
                throw std::logic_error("corner coords: inconsistent");
        }
        return out;
    };
    Corner out;
    out.basis = basis;
    out.sub.p = alg.p;
    out.sub.k = kk;
    out.sub.mult.assign(kk, std::vector<std::vector<uint8_t>>(kk));
    auto ambient_row = [&](size_t i) {
        std::vector<uint8_t> v(alg.k, 0);
        for (size_t t = 0; t < alg.k; ++t) v[t] = basis.get(i, t);
        return v;
    };
    for (size_t i = 0; i < kk; ++i)
        for (size_t j = 0; j < kk; ++j)
            out.sub.mult[i][j] = coords_of(alg.mul(ambient_row(i), ambient_row(j)));
    out.sub.one = coords_of(e);
    return out;
}

// find a proper idempotent of a (corner) algebra, or conclude it is local
std::optional<std::vector<uint8_t>> split_idempotent(const AbstractAlgebra& alg,
                                                     Rng& rng) {
    std::vector<std::vector<uint8_t>> cands;
    for (size_t i = 0; i < alg.k; ++i) {
        std::vector<uint8_t> ei(alg.k, 0);
        ei[i] = 1;
        cands.push_back(ei);
    }
    for (size_t t = 0; t < 50; ++t) {
        std::vector<uint8_t> v(alg.k);
        for (auto& x : v) x = static_cast<uint8_t>(rng.below(alg.p));
        cands.push_back(std::move(v));
    }
    for (const auto& a : cands) {
        if (vec_zero(a)) continue;
        for (uint32_t lam = 0; lam < alg.p; ++lam) {
            std::vector<uint8_t> u(alg.k);
            for (size_t i = 0; i < alg.k; ++i)
                u[i] = static_cast<uint8_t>(
                    (a[i] + (alg.p - lam) * alg.one[i]) % alg.p);
            if (vec_zero(u)) continue;
            FieldMatrix reg = alg.right_regular(u);
            FieldPolynomial mp = min_poly(reg);
            // mp = x^a * h with h(0) != 0
            size_t aexp = 0;
            while (aexp < static_cast<size_t>(mp.degree()) + 1 && mp.coeff(aexp) == 0)
                ++aexp;
            if (aexp == 0) continue;               // invertible
            FieldPolynomial h = mp.divmod(FieldPolynomial::x_power(alg.p, aexp)).first;
            if (h.degree() == 0) continue;         // nilpotent
            // spectral idempotent q(u), q = x^a * ((x^a)^{-1} mod h) mod mp
            FieldPolynomial xa = FieldPolynomial::x_power(alg.p, aexp);
            FieldPolynomial inv = poly_invmod(xa, h);
            FieldPolynomial q = (xa * inv).divmod(mp).second;
            auto e = eval_poly_alg(alg, q, u);
            if (vec_zero(e) || e == alg.one) continue;
            auto sq = alg.mul(e, e);
            if (sq != e) throw std::logic_error("spectral idempotent not idempotent");
            return e;
        }
    }
    return std::nullopt;
}

} // namespace

std::vector<std::vector<uint8_t>> primitive_idempotents(const AbstractAlgebra& alg,
                                                        uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<uint8_t>> done;
    std::vector<std::vector<uint8_t>> work{alg.one};
    while (!work.empty()) {
        auto e = work.back();
        work.pop_back();
        Corner c = corner_algebra(alg, e);
        auto idem = split_idempotent(c.sub, rng);
        if (!idem) {
            done.push_back(e);
            continue;
        }
        // lift to ambient coords
        std::vector<uint8_t> e1(alg.k, 0);
        for (size_t i = 0; i < c.sub.k; ++i) {
            const uint8_t coeff = (*idem)[i];
            if (!coeff) continue;
            for (size_t t = 0; t < alg.k; ++t)
                e1[t] = static_cast<uint8_t>((e1[t] + coeff * c.basis.get(i, t)) % alg.p);
        }
        std::vector<uint8_t> e2(alg.k);
        for (size_t t = 0; t < alg.k; ++t)
            e2[t] = static_cast<uint8_t>((e[t] + (alg.p - 1) * e1[t]) % alg.p);
        if (alg.mul(e1, e1) != e1 || !vec_zero(alg.mul(e1, e2)) ||
            !vec_zero(alg.mul(e2, e1)))
            throw std::logic_error("idempotent split inconsistent");
        work.push_back(std::move(e1));
        work.push_back(std::move(e2));
    }
    // deterministic order: sort by coords
    std::sort(done.begin(), done.end());
    return done;
}

Decomposition decompose(const ModulePtr& m, const HomOptions& opt, uint64_t seed) {
    Decomposition out;
    if (m->dim == 0) return out;
    auto handle = end_handle(m, opt);
    const size_t k = handle->algebra_dim();
    if (k == 1) {
        out.summands.push_back(m);
        return out;
    }
    const uint32_t p = m->p;
    // probe rows making coordinates injective
    std::vector<size_t> probe;
    FieldMatrix coords(p, 0, 0);
    {
        std::vector<FieldMatrix> rows_per_endo(k, FieldMatrix(p, 0, 0));
        for (size_t row = 0; row < m->dim && probe.size() < m->dim; ++row) {
            probe.push_back(row);
            FieldMatrix unit(p, 1, m->dim);
            unit.set(0, row, 1);
            FieldMatrix cand(p, k, probe.size() * m->dim);
            for (size_t r = 0; r < k; ++r) {
                FieldMatrix img = handle->apply(unit, r);
                // append to the r-th coord row
                FieldMatrix prev = rows_per_endo[r];
                FieldMatrix next(p, 1, probe.size() * m->dim);
                for (size_t c = 0; c < prev.cols(); ++c) {
                    uint8_t v = prev.get(0, c);
                    if (v) next.set(0, c, v);
                }
                for (size_t c = 0; c < m->dim; ++c) {
                    uint8_t v = img.get(0, c);
                    if (v) next.set(0, prev.cols() + c, v);
                }
                rows_per_endo[r] = next;
                cand.row_addin(r, next, 0, 1);
            }
            if (cand.rank() == k) {
                coords = cand;
                break;
            }
        }
        if (coords.rows() == 0)
            throw std::logic_error("decompose: no separating probe rows");
    }
    auto coords_ech = coords.rref();
    auto coords_of = [&](const FieldMatrix& vec) {
        // solve x * coords = vec
        FieldMatrix aug(p, coords.cols(), k + 1);
        FieldMatrix ct = coords.transposed();
        for (size_t r = 0; r < coords.cols(); ++r) {
            for (size_t c = 0; c < k; ++c) {
                uint8_t v = ct.get(r, c);
                if (v) aug.set(r, c, v);
            }
            uint8_t v = vec.get(0, r);
            if (v) aug.set(r, k, v);
        }
        auto ech = aug.rref();
        std::vector<uint8_t> out2(k, 0);
        for (size_t r = 0; r < ech.rank; ++r) {
            if (ech.pivots[r] < k) out2[ech.pivots[r]] = ech.reduced.get(r, k);
            else if (ech.reduced.get(r, k))
                throw std::logic_error("decompose: coords solve inconsistent");
        }
        return out2;
    };
    (void)coords_ech;
    // identity coords
    AbstractAlgebra alg;
    alg.p = p;
    alg.k = k;
    {
        FieldMatrix idvec(p, 1, probe.size() * m->dim);
        for (size_t i = 0; i < probe.size(); ++i) idvec.set(0, i * m->dim + probe[i], 1);
        alg.one = coords_of(idvec);
    }
    // multiplication table: probe(E_i * E_j) via row applications
    alg.mult.assign(k, std::vector<std::vector<uint8_t>>(k));
    for (size_t i = 0; i < k; ++i) {
        // rows of E_i at the probes
        std::vector<FieldMatrix> ei_rows;
        for (size_t pr : probe) {
            FieldMatrix unit(p, 1, m->dim);
            unit.set(0, pr, 1);
            ei_rows.push_back(handle->apply(unit, i));
        }
        for (size_t j = 0; j < k; ++j) {
            FieldMatrix vec(p, 1, probe.size() * m->dim);
            for (size_t t = 0; t < probe.size(); ++t) {
                FieldMatrix row = handle->apply(ei_rows[t], j);
                for (size_t c = 0; c < m->dim; ++c) {
                    uint8_t v = row.get(0, c);
                    if (v) vec.set(0, t * m->dim + c, v);
                }
            }
            alg.mult[i][j] = coords_of(vec);
        }
    }
    auto prims = primitive_idempotents(alg, derive_seed(seed, "idempotents"));
    if (prims.size() == 1) {
        out.summands.push_back(m); // indecomposable (local End certified)
        return out;
    }
    // materialize and slice
    std::vector<FieldMatrix> bases;
    for (const auto& e : prims) {
        FieldMatrix E = handle->materialize(e);
        FieldMatrix img = E.rref().reduced;
        if (img.rows() == 0) throw std::logic_error("decompose: zero idempotent image");
        bases.push_back(std::move(img));
    }
    FieldMatrix C = FieldMatrix::vstack(bases);
    if (C.rows() != m->dim || !C.inverse())
        throw std::logic_error("decompose: idempotent images do not fill the module");
    size_t at = 0;
    for (const auto& b : bases) {
        // complement = all other blocks
        std::vector<FieldMatrix> rest;
        size_t pos = 0;
        for (const auto& b2 : bases) {
            if (pos != at) rest.push_back(b2);
            pos += 1;
        }
        FieldMatrix comp = FieldMatrix::vstack(rest);
        out.summands.push_back(summand_module(m, b, comp));
        ++at;
    }
    return out;
}

ShapeDescriptor classify_shape(const LoewyReport& report) {
    ShapeDescriptor out;
    auto layer_str = [](const LabelMultiset& layer) {
        std::ostringstream os;
        bool first = true;
        for (const auto& [l, c] : layer)
            for (size_t i = 0; i < c; ++i) {
                if (!first) os << ",";
                os << l;
                first = false;
            }
        return os.str();
    };
    const auto& L = report.layers;
    auto layer_size = [](const LabelMultiset& layer) {
        size_t n = 0;
        for (const auto& [l, c] : layer) n += c;
        return n;
    };
    if (L.size() == 1 && layer_size(L[0]) == 1) {
        out.kind = ShapeDescriptor::Simple;
        out.text = layer_str(L[0]);
        return out;
    }
    if (L.size() == 1) {
        out.kind = ShapeDescriptor::Semisimple;
        out.text = layer_str(L[0]);
        return out;
    }
    if (L.size() == 3 && layer_size(L[0]) == 1 && layer_size(L[1]) == 1 &&
        layer_size(L[2]) == 1) {
        out.kind = ShapeDescriptor::Uniserial3;
        out.text = "U(" + layer_str(L[0]) + ";" + layer_str(L[1]) + ";" +
                   layer_str(L[2]) + ")";
        return out;
    }
    if (L.size() == 3 && layer_size(L[0]) == 1 && layer_size(L[1]) == 2 &&
        layer_size(L[2]) == 1) {
        out.kind = ShapeDescriptor::Diamond;
        out.text = "D(" + layer_str(L[0]) + ";" + layer_str(L[1]) + ";" +
                   layer_str(L[2]) + ")";
        return out;
    }
    out.kind = ShapeDescriptor::Layered;
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < L.size(); ++i) {
        if (i) os << " | ";
        os << layer_str(L[i]);
    }
    os << "]";
    out.text = os.str();
    return out;
}

const BlockSpec& block_of(const std::vector<BlockSpec>& blocks,
                          const LabelMultiset& factors) {
    const BlockSpec* found = nullptr;
    for (const auto& [label, count] : factors) {
        const BlockSpec* owner = nullptr;
        for (const auto& b : blocks)
            if (std::find(b.simples.begin(), b.simples.end(), label) != b.simples.end())
                owner = &b;
        if (!owner) throw std::invalid_argument("label " + label + " not in any block");
        if (found && found != owner)
            throw std::invalid_argument("factors straddle blocks");
        found = owner;
    }
    if (!found) throw std::invalid_argument("empty factor list");
    return *found;
}

} // namespace loewy

#include "loewy/meataxe.hpp"

#include "loewy/poly.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <functional>
#include <map>

namespace loewy {

namespace {

// incremental echelon structure for spinning
struct EchelonBasis {
    FieldMatrix rows;               // capacity grows; first `count` rows valid
    std::vector<size_t> pivot_cols;
    size_t count = 0;

    explicit EchelonBasis(uint32_t p, size_t width, size_t capacity)
        : rows(p, capacity, width) {}

    // reduce v in place against the basis; returns pivot column if nonzero
    std::optional<size_t> reduce(FieldMatrix& v, size_t vr) const {
        const uint32_t p = rows.p();
        for (size_t i = 0; i < count; ++i) {
            const uint8_t e = v.get(vr, pivot_cols[i]);
            if (e) v.row_addin(vr, rows, i, p - e);
        }
        for (size_t c = 0; c < v.cols(); ++c)
            if (v.get(vr, c)) return c;
        return std::nullopt;
    }

    // v must be reduced and nonzero at `piv`; normalizes and appends
    void append(FieldMatrix& v, size_t vr, size_t piv) {
        const uint32_t p = rows.p();
        const uint8_t e = v.get(vr, piv);
        if (e != 1) {
            // inverse in GF(p): only p small
            uint32_t inv = 1;
            for (uint32_t c = 1; c < p; ++c)
                if (c * e % p == 1) { inv = c; break; }
            v.row_scale(vr, inv);
        }
        rows.row_addin(count, v, vr, 1);
        pivot_cols.push_back(piv);
        ++count;
    }
};

} // namespace

FieldMatrix spin(const FieldMatrix& seeds, const ModuleRep& m) {
    if (seeds.cols() != m.dim) throw std::invalid_argument("spin: width mismatch");
    EchelonBasis basis(m.p, m.dim, m.dim);
    std::deque<size_t> work;
    FieldMatrix store(m.p, m.dim, m.dim); // reduced representatives to process
    size_t stored = 0;
    auto push = [&](const FieldMatrix& v, size_t vr) {
        FieldMatrix tmp(m.p, 1, m.dim);
        tmp.row_addin(0, v, vr, 1);
        auto piv = basis.reduce(tmp, 0);
        if (!piv) return;
        basis.append(tmp, 0, *piv);
        store.row_addin(stored, tmp, 0, 1);
        work.push_back(stored);
        ++stored;
    };
    for (size_t r = 0; r < seeds.rows(); ++r) push(seeds, r);
    while (!work.empty() && basis.count < m.dim) {
        const size_t idx = work.front();
        work.pop_front();
        for (const auto& a : m.action) {
            FieldMatrix img = vec_mat(store, idx, a);
            push(img, 0);
            if (basis.count == m.dim) break;
        }
    }
    return basis.rows.row_slice(0, basis.count).rref().reduced;
}

StandardBasis standard_basis(const FieldMatrix& seeds, const ModuleRep& m,
                             bool want_relations) {
    if (seeds.rows() == 0 || seeds.cols() != m.dim)
        throw std::invalid_argument("standard_basis: seed rows required");
    if (seeds.is_zero()) throw std::invalid_argument("standard_basis: zero seeds");
    StandardBasis out;
    std::vector<FieldMatrix> raw;                 // std rows
    EchelonBasis ech(m.p, m.dim, m.dim);
    FieldMatrix trans(m.p, m.dim, m.dim);         // ech row i = trans[i] * raw
    auto try_add = [&](const FieldMatrix& v, uint32_t parent, uint32_t gen) -> bool {
        FieldMatrix red(m.p, 1, m.dim);
        red.row_addin(0, v, 0, 1);
        FieldMatrix coeff(m.p, 1, m.dim); // in terms of ech rows
        const uint32_t p = m.p;
        for (size_t i = 0; i < ech.count; ++i) {
            const uint8_t e = red.get(0, ech.pivot_cols[i]);
            if (e) {
                red.row_addin(0, ech.rows, i, p - e);
                coeff.set(0, i, e);
            }
        }
        std::optional<size_t> piv;
        for (size_t c = 0; c < m.dim; ++c)
            if (red.get(0, c)) { piv = c; break; }
        if (!piv) {
            if (want_relations && !(parent == UINT32_MAX)) {
                // b_parent * g = coeff * ech = (coeff * trans) * raw
                FieldMatrix rel = mat_mul(coeff, trans);
                StandardBasis::Relation r;
                r.node = parent;
                r.gen = gen;
                r.coeffs = rel.col_select([&] {
                    std::vector<size_t> idx(raw.size());
                    for (size_t i = 0; i < raw.size(); ++i) idx[i] = i;
                    return idx;
                }());
                out.relations.push_back(std::move(r));
            }
            return false;
        }
        // append raw + echelon with transformation bookkeeping
        const size_t k = raw.size();
        raw.push_back(v);
        out.tree.emplace_back(parent, gen);
        // ech_new = (v - coeff*ech) normalized; trans_new = (unit_k - coeff*trans)/pivot
        FieldMatrix tr(m.p, 1, m.dim);
        tr.set(0, k, 1);
        FieldMatrix adjust = mat_mul(coeff, trans);
        for (size_t c = 0; c < m.dim; ++c) {
            uint8_t a = adjust.get(0, c);
            if (a) tr.set(0, c, static_cast<uint8_t>((tr.get(0, c) + p - a) % p));
        }
        const uint8_t pv = red.get(0, *piv);
        if (pv != 1) {
            uint32_t inv = 1;
            for (uint32_t c = 1; c < p; ++c)
                if (c * pv % p == 1) { inv = c; break; }
            red.row_scale(0, inv);
            tr.row_scale(0, inv);
        }
        ech.rows.row_addin(ech.count, red, 0, 1);
        ech.pivot_cols.push_back(*piv);
        trans.row_addin(ech.count, tr, 0, 1);
        ++ech.count;
        return true;
    };

    for (size_t s = 0; s < seeds.rows(); ++s) {
        FieldMatrix row(m.p, 1, m.dim);
        row.row_addin(0, seeds, s, 1);
        if (try_add(row, UINT32_MAX, static_cast<uint32_t>(s))) out.seed_count++;
    }
    for (size_t i = 0; i < raw.size(); ++i) {
        for (uint32_t gi = 0; gi < m.action.size(); ++gi) {
            FieldMatrix img = vec_mat(raw[i], 0, m.action[gi]);
            try_add(img, static_cast<uint32_t>(i), gi);
        }
    }
    out.rows = FieldMatrix::vstack(raw);
    // relations recorded against a growing basis: pad coefficient rows
    for (auto& rel : out.relations) {
        if (rel.coeffs.cols() < raw.size()) {
            FieldMatrix padded(m.p, 1, raw.size());
            for (size_t c = 0; c < rel.coeffs.cols(); ++c) {
                uint8_t v = rel.coeffs.get(0, c);
                if (v) padded.set(0, c, v);
            }
            rel.coeffs = padded;
        }
    }
    return out;
}

namespace {

// enumerate projective representatives of nonzero vectors in the row space of
// `basis` (first nonzero coefficient = 1); GF(3) only has coefficient 2 after
size_t enumerate_lines(const FieldMatrix& basis,
                       const std::function<bool(const FieldMatrix&)>& visit) {
    const size_t d = basis.rows();
    const uint32_t p = basis.p();
    size_t total = 1;
    for (size_t i = 0; i < d; ++i) total *= p;
    size_t count = 0;
    for (size_t code = 1; code < total; ++code) {
        size_t c = code;
        std::vector<uint8_t> coeff(d);
        for (size_t i = 0; i < d; ++i) {
            coeff[i] = static_cast<uint8_t>(c % p);
            c /= p;
        }
        size_t first = d;
        for (size_t i = 0; i < d; ++i)
            if (coeff[i]) { first = i; break; }
        if (first == d || coeff[first] != 1) continue;
        FieldMatrix v(basis.p(), 1, basis.cols());
        for (size_t i = 0; i < d; ++i)
            if (coeff[i]) v.row_addin(0, basis, i, coeff[i]);
        ++count;
        if (visit(v)) return count;
    }
    return count;
}

struct ChopContext {
    Rng rng;
    size_t word_budget;
    std::vector<ChopLeaf> leaves;
};

void chop_rec(const ModulePtr& m, ChopContext& ctx) {
    const size_t n = m->dim;
    if (n == 0) return;
    if (n == 1) {
        ctx.leaves.push_back(ChopLeaf{m, AlgebraWord::gen(0) + AlgebraWord::one().scaled(2)});
        return;
    }
    const size_t ngens = m->action.size();
    for (size_t attempt = 0; attempt < ctx.word_budget; ++attempt) {
        AlgebraWord w = random_word(ctx.rng, ngens);
        w.set_seed(ctx.rng.state);
        FieldMatrix ev = w.eval(*m);
        FieldMatrix ker = ev.left_nullspace();
        const size_t d = ker.rows();
        if (d == 0 || d == n) continue;
        // try basis kernel vectors
        bool split_found = false;
        for (size_t r = 0; r < d && !split_found; ++r) {
            FieldMatrix sub = spin(ker.row_slice(r, r + 1), *m);
            if (sub.rows() > 0 && sub.rows() < n) {
                auto sq = sub_quotient(m, sub);
                chop_rec(sq.sub, ctx);
                chop_rec(sq.quotient, ctx);
                split_found = true;
            }
        }
        if (split_found) return;
        if (d > 4) continue; // enumeration too large; try another word
        // all kernel lines must spin full for Norton
        bool proper = false;
        FieldMatrix proper_basis;
        enumerate_lines(ker, [&](const FieldMatrix& v) {
            FieldMatrix sub = spin(v, *m);
            if (sub.rows() < n) {
                proper = true;
                proper_basis = sub;
                return true;
            }
            return false;
        });
        if (proper) {
            auto sq = sub_quotient(m, proper_basis);
            chop_rec(sq.sub, ctx);
            chop_rec(sq.quotient, ctx);
            return;
        }
        // dual side: one kernel vector of the transposed evaluation under
        // transposed generators
        std::vector<FieldMatrix> taction;
        for (const auto& a : m->action) taction.push_back(a.transposed());
        FieldMatrix tker = ev.nullspace(); // rows x with x * ev^T = 0
        assert(tker.rows() == d);
        // spin in transpose land
        {
            EchelonBasis basis(m->p, n, n);
            std::deque<size_t> work;
            FieldMatrix store(m->p, n, n);
            size_t stored = 0;
            auto push = [&](const FieldMatrix& v, size_t vr) {
                FieldMatrix tmp(m->p, 1, n);
                tmp.row_addin(0, v, vr, 1);
                auto piv = basis.reduce(tmp, 0);
                if (!piv) return;
                basis.append(tmp, 0, *piv);
                store.row_addin(stored, tmp, 0, 1);
                work.push_back(stored);
                ++stored;
            };
            push(tker, 0);
            while (!work.empty() && basis.count < n) {
                size_t idx = work.front();
                work.pop_front();
                for (const auto& a : taction) push(vec_mat(store, idx, a), 0);
            }
            if (basis.count == n) {
                ctx.leaves.push_back(ChopLeaf{m, w});
                return;
            }
            // proper transposed submodule: its perp is a proper submodule
            FieldMatrix perp = basis.rows.row_slice(0, basis.count).nullspace();
            FieldMatrix sub = spin(perp, *m);
            if (sub.rows() > 0 && sub.rows() < n) {
                auto sq = sub_quotient(m, sub);
                chop_rec(sq.sub, ctx);
                chop_rec(sq.quotient, ctx);
                return;
            }
        }
    }
    throw ChopBudgetExhausted("chop: word budget exhausted at dim " +
                              std::to_string(n));
}

} // namespace

std::vector<ChopLeaf> chop_factors(const ModulePtr& m, uint64_t seed,
                                   size_t word_budget) {
    ChopContext ctx{Rng(seed), word_budget, {}};
    chop_rec(m, ctx);
    return ctx.leaves;
}

bool verify_norton(const ModuleRep& m, const AlgebraWord& w) {
    const size_t n = m.dim;
    if (n == 0) return false;
    if (n == 1) return true;
    FieldMatrix ev = w.eval(m);
    FieldMatrix ker = ev.left_nullspace();
    const size_t d = ker.rows();
    if (d == 0 || d == n) return false;
    bool all_full = true;
    enumerate_lines(ker, [&](const FieldMatrix& v) {
        if (spin(v, m).rows() != n) {
            all_full = false;
            return true;
        }
        return false;
    });
    if (!all_full) return false;
    std::vector<FieldMatrix> taction;
    for (const auto& a : m.action) taction.push_back(a.transposed());
    FieldMatrix tker = ev.nullspace();
    ModuleRep tmod;
    tmod.group = m.group;
    tmod.p = m.p;
    tmod.dim = n;
    tmod.action = taction;
    tmod.action_inv = taction; // unused by spin
    FieldMatrix tspan = spin(tker.row_slice(0, 1), tmod);
    return tspan.rows() == n;
}

std::optional<FieldMatrix> module_isomorphism(const ModuleRep& a, const ModuleRep& b,
                                              uint64_t seed) {
    if (a.dim != b.dim || a.p != b.p || a.action.size() != b.action.size())
        return std::nullopt;
    const size_t n = a.dim;
    if (n == 0) return FieldMatrix(a.p, 0, 0);
    Rng rng(seed);
    for (size_t attempt = 0; attempt < 400; ++attempt) {
        AlgebraWord w = random_word(rng, a.action.size());
        FieldMatrix ea = w.eval(a);
        FieldMatrix ka = ea.left_nullspace();
        const size_t d = ka.rows();
        if (d == 0 || d > 3) continue;
        FieldMatrix eb = w.eval(b);
        FieldMatrix kb = eb.left_nullspace();
        if (kb.rows() != d) return std::nullopt; // distinguishing word
        StandardBasis sa = standard_basis(ka.row_slice(0, 1), a, false);
        if (sa.rows.rows() != n) continue; // seed failed to generate
        auto sainv = sa.rows.inverse();
        if (!sainv) continue;
        // an isomorphism maps ker(w|a) into ker(w|b): try every line of it
        bool some_candidate = false;
        std::optional<FieldMatrix> result;
        enumerate_lines(kb, [&](const FieldMatrix& v) {
            StandardBasis sb = standard_basis(v, b, false);
            if (sb.rows.rows() != n || sa.tree != sb.tree) return false;
            some_candidate = true;
            FieldMatrix X = mat_mul(*sainv, sb.rows);
            for (size_t gi = 0; gi < a.action.size(); ++gi)
                if (mat_mul(a.action[gi], X) != mat_mul(X, b.action[gi])) return false;
            result = X;
            return true;
        });
        if (result) return result;
        // no kernel line of b matches a's seed: not isomorphic
        (void)some_candidate;
        return std::nullopt;
    }
    throw ChopBudgetExhausted("module_isomorphism: no small-kernel word found");
}

const SimpleEntry& SimpleCatalog::by_label(const std::string& label) const {
    for (const auto& e : entries_)
        if (e.label == label) return e;
    throw std::out_of_range("no catalog entry " + label);
}

bool SimpleCatalog::has_label(const std::string& label) const {
    for (const auto& e : entries_)
        if (e.label == label) return true;
    return false;
}

std::vector<size_t> SimpleCatalog::dims() const {
    std::vector<size_t> out;
    for (const auto& e : entries_) out.push_back(e.rep->dim);
    std::sort(out.begin(), out.end());
    return out;
}

size_t SimpleCatalog::end_dim_of(const ModuleRep& simple, uint64_t seed) {
    const size_t n = simple.dim;
    if (n == 1) return 1;
    Rng rng(seed);
    size_t min_nullity = n;
    for (size_t attempt = 0; attempt < 300; ++attempt) {
        AlgebraWord w = random_word(rng, simple.action.size());
        FieldMatrix ev = w.eval(simple);
        // try scalar shifts too
        for (uint32_t lam = 0; lam < simple.p; ++lam) {
            FieldMatrix shifted =
                lam ? ev - FieldMatrix::identity(simple.p, n).scaled(lam) : ev;
            const size_t nullity = n - shifted.rank();
            if (nullity == 1) return 1;
            if (nullity > 0) min_nullity = std::min(min_nullity, nullity);
        }
    }
    // no nullity-1 element found: compute End by the dense solve (feasible for
    // the moderate dims where this happens, e.g. the fused pair)
    if (n <= 128) {
        const uint32_t p = simple.p;
        const size_t nn = n * n;
        std::vector<FieldMatrix> conds;
        for (size_t gi = 0; gi < simple.action.size(); ++gi) {
            // condition: A X - X A = 0, unknown X row-major flattened
            FieldMatrix c(p, nn, nn);
            const FieldMatrix& A = simple.action[gi];
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    // d/dX[k,l] of (A X)[i,j] = A[i,k] delta(l,j)
                    for (size_t k = 0; k < n; ++k) {
                        uint8_t v = A.get(i, k);
                        if (v)
                            c.set(i * n + j, k * n + j,
                                  static_cast<uint8_t>((c.get(i * n + j, k * n + j) + v) % p));
                    }
                    // minus (X A)[i,j]: X[i,k] A[k,j]
                    for (size_t k = 0; k < n; ++k) {
                        uint8_t v = A.get(k, j);
                        if (v)
                            c.set(i * n + j, i * n + k,
                                  static_cast<uint8_t>((c.get(i * n + j, i * n + k) + p - v) % p));
                    }
                }
            conds.push_back(std::move(c));
        }
        FieldMatrix stacked = FieldMatrix::vstack(conds);
        return nn - stacked.rank();
    }
    return min_nullity; // best evidence (even nullities throughout => >= 2)
}

std::pair<size_t, bool> SimpleCatalog::identify(const ModulePtr& irreducible,
                                                uint64_t seed) {
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].rep->dim != irreducible->dim) continue;
        auto iso = module_isomorphism(*entries_[i].rep, *irreducible, seed);
        if (iso) return {i, false};
    }
    // new entry
    size_t same_dim = 0;
    for (const auto& e : entries_)
        if (e.rep->dim == irreducible->dim) ++same_dim;
    SimpleEntry e;
    e.label = std::to_string(irreducible->dim);
    if (same_dim > 0) {
        e.label += "_" + std::to_string(same_dim + 1);
        if (same_dim == 1) {
            // rename the existing plain entry to dim_1
            for (auto& other : entries_)
                if (other.rep->dim == irreducible->dim &&
                    other.label == std::to_string(irreducible->dim))
                    other.label += "_1";
        }
    }
    e.rep = irreducible;
    e.end_dim = end_dim_of(*irreducible, derive_seed(seed, "end-dim:" + e.label));
    entries_.push_back(std::move(e));
    return {entries_.size() - 1, true};
}

void peakword_search(SimpleCatalog& catalog, uint64_t seed, size_t word_budget) {
    auto& entries = catalog.entries();
    if (entries.empty()) return;
    const size_t ngens = entries[0].rep->action.size();
    auto slice_of = [&](size_t i) {
        std::vector<size_t> out;
        for (size_t j = 0; j < entries.size(); ++j)
            if (j != i && (entries[i].block.empty() || entries[j].block.empty() ||
                           entries[j].block == entries[i].block))
                out.push_back(j);
        return out;
    };
    Rng rng(derive_seed(seed, "peakwords:" + catalog.group_name));
    for (size_t attempt = 0; attempt < word_budget; ++attempt) {
        bool all_done = true;
        for (const auto& e : entries)
            if (!e.peakword) all_done = false;
        if (all_done) return;
        AlgebraWord w = random_word(rng, ngens);
        std::vector<FieldMatrix> evals(entries.size());
        for (size_t i = 0; i < entries.size(); ++i) evals[i] = w.eval(*entries[i].rep);
        for (uint32_t lam = 0; lam < catalog.p; ++lam) {
            for (size_t i = 0; i < entries.size(); ++i) {
                if (entries[i].peakword) continue;
                const size_t n = entries[i].rep->dim;
                FieldMatrix shifted =
                    lam ? evals[i] - FieldMatrix::identity(catalog.p, n).scaled(lam)
                        : evals[i];
                const size_t nullity = n - shifted.rank();
                if (nullity != entries[i].end_dim) continue;
                // stability: nullity of the square must match
                FieldMatrix sq = mat_mul(shifted, shifted);
                if (n - sq.rank() != nullity) continue;
                bool isolates = true;
                for (size_t j : slice_of(i)) {
                    const size_t nj = entries[j].rep->dim;
                    FieldMatrix sh =
                        lam ? evals[j] - FieldMatrix::identity(catalog.p, nj).scaled(lam)
                            : evals[j];
                    if (nj - sh.rank() != 0) { isolates = false; break; }
                }
                if (!isolates) continue;
                AlgebraWord pk = lam ? w + AlgebraWord::one().scaled(
                                               static_cast<uint8_t>(catalog.p - lam))
                                     : w;
                pk.set_seed(seed);
                entries[i].peakword = pk;
            }
        }
    }
    for (const auto& e : entries)
        if (!e.peakword)
            throw ChopBudgetExhausted("peakword_search: budget exhausted for " + e.label);
}

CompositionSeries chop(const ModulePtr& m, SimpleCatalog& catalog, uint64_t seed) {
    auto leaves = chop_factors(m, seed);
    CompositionSeries out;
    out.total_dim = m->dim;
    std::map<std::string, size_t> mult;
    size_t check = 0;
    for (const auto& leaf : leaves) {
        auto [idx, added] = catalog.identify(leaf.factor, derive_seed(seed, "identify"));
        mult[catalog.entries()[idx].label]++;
        out.leaves_in_order.push_back(catalog.entries()[idx].label);
        check += leaf.factor->dim;
    }
    if (check != m->dim)
        throw std::logic_error("chop: factor dims do not sum to module dim");
    for (auto& [label, count] : mult) out.factors.emplace_back(label, count);
    return out;
}

} // namespace loewy

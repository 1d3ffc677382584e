#include "loewy/poly.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace loewy {

namespace {
uint32_t inv_mod(uint32_t a, uint32_t p) {
    uint32_t r = 1, e = p - 2;
    uint64_t b = a % p;
    while (e) {
        if (e & 1) r = static_cast<uint32_t>(r * b % p);
        b = b * b % p;
        e >>= 1;
    }
    return r;
}
} // namespace

FieldPolynomial::FieldPolynomial(uint32_t p, std::vector<uint8_t> coeffs)
    : p_(p), c_(std::move(coeffs)) {
    for (auto& c : c_) c = static_cast<uint8_t>(c % p_);
    trim();
}

void FieldPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

FieldPolynomial FieldPolynomial::x_power(uint32_t p, size_t k) {
    std::vector<uint8_t> c(k + 1, 0);
    c[k] = 1;
    return FieldPolynomial(p, std::move(c));
}

FieldPolynomial FieldPolynomial::constant(uint32_t p, uint32_t c) {
    return FieldPolynomial(p, {static_cast<uint8_t>(c % p)});
}

FieldPolynomial FieldPolynomial::monic() const {
    if (c_.empty() || c_.back() == 1) return *this;
    const uint32_t inv = inv_mod(c_.back(), p_);
    std::vector<uint8_t> out(c_.size());
    for (size_t i = 0; i < c_.size(); ++i)
        out[i] = static_cast<uint8_t>(c_[i] * inv % p_);
    return FieldPolynomial(p_, std::move(out));
}

FieldPolynomial FieldPolynomial::operator+(const FieldPolynomial& o) const {
    std::vector<uint8_t> out(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<uint8_t>((coeff(i) + o.coeff(i)) % p_);
    return FieldPolynomial(p_, std::move(out));
}

FieldPolynomial FieldPolynomial::operator-(const FieldPolynomial& o) const {
    std::vector<uint8_t> out(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<uint8_t>((coeff(i) + p_ - o.coeff(i)) % p_);
    return FieldPolynomial(p_, std::move(out));
}

FieldPolynomial FieldPolynomial::operator*(const FieldPolynomial& o) const {
    if (is_zero() || o.is_zero()) return FieldPolynomial(p_, {});
    std::vector<uint32_t> acc(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i])
            for (size_t j = 0; j < o.c_.size(); ++j)
                acc[i + j] = (acc[i + j] + c_[i] * o.c_[j]) % p_;
    std::vector<uint8_t> out(acc.begin(), acc.end());
    return FieldPolynomial(p_, std::move(out));
}

std::pair<FieldPolynomial, FieldPolynomial>
FieldPolynomial::divmod(const FieldPolynomial& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    std::vector<uint8_t> rem = c_;
    std::vector<uint8_t> quot(c_.size() > d.c_.size() ? c_.size() - d.c_.size() + 1 : 1, 0);
    const uint32_t lead_inv = inv_mod(d.c_.back(), p_);
    while (rem.size() >= d.c_.size() && !rem.empty()) {
        if (rem.back() == 0) { rem.pop_back(); continue; }
        const size_t shift = rem.size() - d.c_.size();
        const uint32_t q = rem.back() * lead_inv % p_;
        quot[shift] = static_cast<uint8_t>(q);
        for (size_t i = 0; i < d.c_.size(); ++i)
            rem[shift + i] = static_cast<uint8_t>(
                (rem[shift + i] + (p_ - q * d.c_[i] % p_)) % p_);
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    return {FieldPolynomial(p_, std::move(quot)), FieldPolynomial(p_, std::move(rem))};
}

FieldPolynomial FieldPolynomial::derivative() const {
    if (c_.size() <= 1) return FieldPolynomial(p_, {});
    std::vector<uint8_t> out(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        out[i - 1] = static_cast<uint8_t>(c_[i] * (i % p_) % p_);
    return FieldPolynomial(p_, std::move(out));
}

std::string FieldPolynomial::to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t i = c_.size(); i-- > 0;) {
        if (!c_[i]) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || c_[i] != 1) s += std::to_string(int(c_[i]));
        if (i >= 1) s += "x";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
}

FieldPolynomial poly_gcd(const FieldPolynomial& a, const FieldPolynomial& b) {
    FieldPolynomial f = a, g = b;
    while (!g.is_zero()) {
        auto r = f.divmod(g).second;
        f = g;
        g = r;
    }
    return f.monic();
}

FieldPolynomial poly_lcm(const FieldPolynomial& a, const FieldPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return FieldPolynomial(a.p(), {});
    auto g = poly_gcd(a, b);
    return (a * b).divmod(g).first.monic();
}

FieldPolynomial poly_invmod(const FieldPolynomial& f, const FieldPolynomial& m) {
    // extended euclid on (m, f)
    FieldPolynomial r0 = m, r1 = f.divmod(m).second;
    FieldPolynomial s0(m.p(), {}), s1 = FieldPolynomial::constant(m.p(), 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        FieldPolynomial s2 = s0 - q * s1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
    }
    if (r0.degree() != 0) throw std::invalid_argument("poly_invmod: not coprime");
    const uint32_t c = r0.coeff(0);
    auto inv = FieldPolynomial::constant(m.p(), inv_mod(c, m.p()));
    return (s0 * inv).divmod(m).second;
}

namespace {

// x^(p^k) mod f, by repeated p-th powering of x mod f
FieldPolynomial frobenius_power(const FieldPolynomial& f, const FieldPolynomial& base) {
    const uint32_t p = f.p();
    // base^p mod f by square-and-multiply
    FieldPolynomial acc = FieldPolynomial::constant(p, 1);
    FieldPolynomial sq = base;
    uint32_t e = p;
    while (e) {
        if (e & 1) acc = (acc * sq).divmod(f).second;
        sq = (sq * sq).divmod(f).second;
        e >>= 1;
    }
    return acc;
}

// distinct-power factor extraction for perfect p-th powers: f(x) = g(x^p)
FieldPolynomial pth_root(const FieldPolynomial& f) {
    const uint32_t p = f.p();
    std::vector<uint8_t> out;
    for (size_t i = 0; i <= static_cast<size_t>(f.degree()); i += p)
        out.push_back(f.coeff(i)); // over GF(p), c^(1/p) = c
    return FieldPolynomial(p, std::move(out));
}

void factor_squarefree(const FieldPolynomial& f,
                       std::map<std::string, std::pair<FieldPolynomial, size_t>>& out,
                       size_t mult);

// Berlekamp on a squarefree monic polynomial
void berlekamp(const FieldPolynomial& f,
               std::map<std::string, std::pair<FieldPolynomial, size_t>>& out,
               size_t mult) {
    const uint32_t p = f.p();
    const size_t n = static_cast<size_t>(f.degree());
    if (n == 1) {
        auto key = f.to_string();
        auto it = out.find(key);
        if (it == out.end()) out.emplace(key, std::make_pair(f, mult));
        else it->second.second += mult;
        return;
    }
    // Q matrix: row i = coeffs of x^(i*p) mod f
    FieldMatrix Q(p, n, n);
    FieldPolynomial xp = frobenius_power(f, FieldPolynomial::x_power(p, 1));
    FieldPolynomial cur = FieldPolynomial::constant(p, 1);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) Q.set(i, j, cur.coeff(j));
        cur = (cur * xp).divmod(f).second;
    }
    // kernel of Q - I (rows v with v (Q - I) = 0)
    FieldMatrix QI = Q - FieldMatrix::identity(p, n);
    FieldMatrix kernel = QI.left_nullspace();
    const size_t r = kernel.rows();  // number of irreducible factors
    if (r == 1) {
        auto key = f.monic().to_string();
        auto it = out.find(key);
        if (it == out.end()) out.emplace(key, std::make_pair(f.monic(), mult));
        else it->second.second += mult;
        return;
    }
    // split with a non-constant kernel element
    for (size_t k = 0; k < r; ++k) {
        std::vector<uint8_t> vc(n);
        bool nonconst = false;
        for (size_t j = 0; j < n; ++j) {
            vc[j] = kernel.get(k, j);
            if (j > 0 && vc[j]) nonconst = true;
        }
        if (!nonconst) continue;
        FieldPolynomial v(p, vc);
        for (uint32_t c = 0; c < p; ++c) {
            auto g = poly_gcd(f, v - FieldPolynomial::constant(p, c));
            if (g.degree() > 0 && g.degree() < f.degree()) {
                berlekamp(g, out, mult);
                berlekamp(f.divmod(g).first.monic(), out, mult);
                return;
            }
        }
    }
    throw std::logic_error("berlekamp: failed to split");
}

void factor_squarefree(const FieldPolynomial& f,
                       std::map<std::string, std::pair<FieldPolynomial, size_t>>& out,
                       size_t mult) {
    berlekamp(f, out, mult);
}

} // namespace

std::vector<std::pair<FieldPolynomial, size_t>> factor_poly(const FieldPolynomial& f0) {
    if (f0.is_zero()) throw std::invalid_argument("factor_poly: zero polynomial");
    const uint32_t p = f0.p();
    std::map<std::string, std::pair<FieldPolynomial, size_t>> acc;
    // squarefree decomposition over GF(p), then Berlekamp on each part
    struct Item { FieldPolynomial f; size_t mult; };
    std::vector<Item> work{{f0.monic(), 1}};
    while (!work.empty()) {
        auto [f, mult] = work.back();
        work.pop_back();
        if (f.degree() <= 0) continue;
        auto df = f.derivative();
        if (df.is_zero()) {
            work.push_back({pth_root(f), mult * p});
            continue;
        }
        auto c = poly_gcd(f, df);
        auto w = f.divmod(c).first.monic();
        size_t i = 1;
        while (w.degree() > 0) {
            auto y = poly_gcd(w, c);
            auto fac = w.divmod(y).first.monic(); // multiplicity exactly i
            if (fac.degree() > 0) factor_squarefree(fac, acc, mult * i);
            w = y;
            c = c.divmod(y).first.monic();
            ++i;
        }
        if (c.degree() > 0) work.push_back({c, mult}); // p-th power part, re-enter
    }
    std::vector<std::pair<FieldPolynomial, size_t>> out(acc.size());
    size_t i = 0;
    for (auto& [k, v] : acc) out[i++] = v;
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

bool poly_is_irreducible(const FieldPolynomial& f) {
    if (f.degree() <= 0) return false;
    auto fac = factor_poly(f);
    return fac.size() == 1 && fac[0].second == 1;
}

FieldPolynomial char_poly(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: not square");
    const uint32_t p = m.p();
    const size_t n = m.rows();
    if (n == 0) return FieldPolynomial::constant(p, 1);
    // Hessenberg reduction on a byte copy, then the standard recurrence
    std::vector<uint32_t> a(n * n);
    {
        auto bytes = m.unpack();
        for (size_t i = 0; i < bytes.size(); ++i) a[i] = bytes[i];
    }
    auto at = [&](size_t r, size_t c) -> uint32_t& { return a[r * n + c]; };
    for (size_t c = 0; c + 2 < n || (n >= 2 && c + 2 == n); ++c) {
        if (c + 2 > n) break;
        size_t piv = 0;
        bool found = false;
        for (size_t r = c + 1; r < n; ++r)
            if (at(r, c)) { piv = r; found = true; break; }
        if (!found) continue;
        if (piv != c + 1) {
            for (size_t j = 0; j < n; ++j) std::swap(at(piv, j), at(c + 1, j));
            for (size_t i = 0; i < n; ++i) std::swap(at(i, piv), at(i, c + 1));
        }
        const uint32_t inv = inv_mod(at(c + 1, c), p);
        for (size_t r = c + 2; r < n; ++r) {
            const uint32_t f = at(r, c) * inv % p;
            if (!f) continue;
            for (size_t j = 0; j < n; ++j)
                at(r, j) = (at(r, j) + (p - f) * at(c + 1, j)) % p;
            for (size_t i = 0; i < n; ++i)
                at(i, c + 1) = (at(i, c + 1) + f * at(i, r)) % p;
        }
    }
    // char polys of leading principal Hessenberg minors
    std::vector<std::vector<uint32_t>> cp(n + 1);
    cp[0] = {1};
    for (size_t k = 1; k <= n; ++k) {
        // p_k(x) = (x - a_kk) p_{k-1}(x) - sum_{i<k} a_{ik} (prod_{j=i+1..k-1} a_{j+1,j}... )
        // standard Hessenberg recurrence:
        std::vector<uint32_t> pk(k + 1, 0);
        const uint32_t akk = at(k - 1, k - 1);
        // (x - akk) * cp[k-1]
        for (size_t i = 0; i < cp[k - 1].size(); ++i) {
            pk[i + 1] = (pk[i + 1] + cp[k - 1][i]) % p;
            pk[i] = (pk[i] + (p - akk % p) * cp[k - 1][i]) % p;
        }
        uint32_t beta = 1;
        for (size_t i = k - 1; i >= 1; --i) {
            beta = beta * at(i, i - 1) % p;
            if (!beta) break;
            const uint32_t coeff = beta * at(i - 1, k - 1) % p;
            if (coeff)
                for (size_t j = 0; j < cp[i - 1].size(); ++j)
                    pk[j] = (pk[j] + (p - coeff) * cp[i - 1][j]) % p;
        }
        cp[k] = std::move(pk);
    }
    std::vector<uint8_t> out(cp[n].begin(), cp[n].end());
    return FieldPolynomial(p, std::move(out));
}

FieldPolynomial min_poly(const FieldMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("min_poly: not square");
    const uint32_t p = m.p();
    const size_t n = m.rows();
    FieldPolynomial mp = FieldPolynomial::constant(p, 1);
    // accumulate lcm of local min polys of unit seeds until it annihilates
    FieldMatrix echelon(p, 0, 0);
    std::vector<char> used(n, 0);
    for (size_t s = 0; s < n; ++s) {
        // skip seeds already inside the span annihilated so far: cheap test via evaluation
        FieldMatrix v(p, 1, n);
        v.set(0, s, 1);
        // Krylov from v
        std::vector<FieldMatrix> seq{v};
        FieldMatrix basis = v; // rows
        FieldMatrix cur = v;
        for (;;) {
            cur = mat_mul(cur, m);
            FieldMatrix aug = FieldMatrix::vstack({basis, cur});
            auto e = aug.rref();
            if (e.rank == basis.rows()) {
                // cur is dependent: solve coefficients against seq rows
                FieldMatrix A = FieldMatrix::vstack(seq);
                // solve x A = cur: via rref of [A^T | cur^T]
                FieldMatrix AT = A.transposed();
                FieldMatrix rhs = cur.transposed();
                FieldMatrix aug2(p, n, seq.size() + 1);
                for (size_t r = 0; r < n; ++r) {
                    for (size_t c = 0; c < seq.size(); ++c) aug2.set(r, c, AT.get(r, c));
                    aug2.set(r, seq.size(), rhs.get(r, 0));
                }
                auto e2 = aug2.rref();
                std::vector<uint8_t> coeffs(seq.size() + 1, 0);
                for (size_t r = 0; r < e2.rank; ++r) {
                    if (e2.pivots[r] < seq.size())
                        coeffs[e2.pivots[r]] = e2.reduced.get(r, seq.size());
                }
                // local minpoly: x^k - sum coeffs_i x^i
                std::vector<uint8_t> lp(seq.size() + 1, 0);
                lp[seq.size()] = 1;
                for (size_t i = 0; i < seq.size(); ++i)
                    lp[i] = static_cast<uint8_t>((p - coeffs[i]) % p);
                mp = poly_lcm(mp, FieldPolynomial(p, std::move(lp)));
                break;
            }
            basis = e.reduced;
            seq.push_back(cur);
        }
        if (static_cast<size_t>(mp.degree()) == n) break; // cannot grow further
        // quick exit: check annihilation every few seeds
        if (s % 4 == 3 || s + 1 == n) {
            if (poly_eval(mp, m).is_zero()) break;
        }
    }
    return mp.monic();
}

FieldMatrix poly_eval(const FieldPolynomial& f, const FieldMatrix& m) {
    const size_t n = m.rows();
    FieldMatrix acc(m.p(), n, n);
    // Horner
    for (size_t i = f.coeffs().size(); i-- > 0;) {
        acc = mat_mul(acc, m);
        const uint8_t c = f.coeff(i);
        if (c) acc = acc + FieldMatrix::identity(m.p(), n).scaled(c);
    }
    return acc;
}

} // namespace loewy

#include "loewy/matrix.hpp"

#include "loewy/parallel.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>

namespace loewy {

namespace {

// One GF(3) addition step on 64 packed entries.
// Encoding per entry: 0 -> (l,h) = (0,0), 1 -> (1,0), 2 -> (0,1).
inline void gf3_add64(uint64_t al, uint64_t ah, uint64_t bl, uint64_t bh,
                      uint64_t& cl, uint64_t& ch) {
    const uint64_t t = (al | bh) ^ (ah | bl);
    cl = t ^ (ah | bh);
    ch = t ^ (al | bl);
}

inline void add_rows3(uint64_t* dl, uint64_t* dh, const uint64_t* sl,
                      const uint64_t* sh, size_t w) {
    for (size_t i = 0; i < w; ++i) {
        uint64_t cl, ch;
        gf3_add64(dl[i], dh[i], sl[i], sh[i], cl, ch);
        dl[i] = cl;
        dh[i] = ch;
    }
}

inline uint32_t mod_inverse(uint32_t a, uint32_t p) {
    // p is small and prime
    uint32_t r = 1;
    uint32_t e = p - 2;
    uint64_t base = a % p;
    while (e) {
        if (e & 1) r = static_cast<uint32_t>(r * base % p);
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

} // namespace

FieldMatrix::FieldMatrix(uint32_t p, size_t rows, size_t cols)
    : p_(p), rows_(rows), cols_(cols) {
    if (p < 2) throw std::invalid_argument("field characteristic must be >= 2");
    if (packed()) {
        wpr_ = (cols + 63) / 64;
        bits_.assign(rows * stride(), 0);
    } else {
        bytes_.assign(rows * cols, 0);
    }
}

FieldMatrix FieldMatrix::identity(uint32_t p, size_t n) {
    FieldMatrix m(p, n, n);
    for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

FieldMatrix FieldMatrix::from_entries(uint32_t p, size_t rows, size_t cols,
                                      const std::vector<uint8_t>& entries) {
    if (entries.size() != rows * cols)
        throw std::invalid_argument("entry count mismatch");
    FieldMatrix m(p, rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) m.set(r, c, entries[r * cols + c] % p);
    return m;
}

uint8_t FieldMatrix::get(size_t r, size_t c) const {
    assert(r < rows_ && c < cols_);
    if (packed()) {
        const uint64_t* row = bits_.data() + r * stride();
        const size_t w = c >> 6, b = c & 63;
        const uint64_t l = (row[w] >> b) & 1, h = (row[wpr_ + w] >> b) & 1;
        return static_cast<uint8_t>(l + 2 * h);
    }
    return bytes_[r * cols_ + c];
}

void FieldMatrix::set(size_t r, size_t c, uint8_t v) {
    assert(r < rows_ && c < cols_);
    v = static_cast<uint8_t>(v % p_);
    if (packed()) {
        uint64_t* row = bits_.data() + r * stride();
        const size_t w = c >> 6;
        const uint64_t mask = 1ULL << (c & 63);
        row[w] &= ~mask;
        row[wpr_ + w] &= ~mask;
        if (v == 1) row[w] |= mask;
        if (v == 2) row[wpr_ + w] |= mask;
    } else {
        bytes_[r * cols_ + c] = v;
    }
}

std::vector<uint8_t> FieldMatrix::unpack() const {
    std::vector<uint8_t> out(rows_ * cols_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) out[r * cols_ + c] = get(r, c);
    return out;
}

bool FieldMatrix::is_zero() const {
    if (packed()) {
        for (uint64_t w : bits_)
            if (w) return false;
        return true;
    }
    for (uint8_t b : bytes_)
        if (b) return false;
    return true;
}

bool FieldMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c)
            if (get(r, c) != (r == c ? 1 : 0)) return false;
    return true;
}

bool FieldMatrix::operator==(const FieldMatrix& o) const {
    if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_) return false;
    return packed() ? bits_ == o.bits_ : bytes_ == o.bytes_;
}

FieldMatrix FieldMatrix::transposed() const {
    FieldMatrix t(p_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) {
            uint8_t v = get(r, c);
            if (v) t.set(c, r, v);
        }
    return t;
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& o) const {
    if (p_ != o.p_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape/field mismatch in +");
    FieldMatrix out = *this;
    if (packed()) {
        for (size_t r = 0; r < rows_; ++r) {
            uint64_t* d = out.bits_.data() + r * stride();
            const uint64_t* s = o.bits_.data() + r * stride();
            add_rows3(d, d + wpr_, s, s + wpr_, wpr_);
        }
    } else {
        for (size_t i = 0; i < bytes_.size(); ++i)
            out.bytes_[i] = static_cast<uint8_t>((bytes_[i] + o.bytes_[i]) % p_);
    }
    return out;
}

FieldMatrix FieldMatrix::operator-(const FieldMatrix& o) const {
    return *this + o.scaled(p_ - 1);
}

FieldMatrix FieldMatrix::scaled(uint32_t c) const {
    c %= p_;
    if (c == 1) return *this;
    FieldMatrix out(p_, rows_, cols_);
    if (c == 0) return out;
    if (packed()) {
        // c == 2 over GF(3): swap the planes
        for (size_t r = 0; r < rows_; ++r) {
            const uint64_t* s = bits_.data() + r * stride();
            uint64_t* d = out.bits_.data() + r * stride();
            std::memcpy(d, s + wpr_, wpr_ * 8);
            std::memcpy(d + wpr_, s, wpr_ * 8);
        }
    } else {
        for (size_t i = 0; i < bytes_.size(); ++i)
            out.bytes_[i] = static_cast<uint8_t>(bytes_[i] * c % p_);
    }
    return out;
}

FieldMatrix FieldMatrix::row_slice(size_t r0, size_t r1) const {
    assert(r0 <= r1 && r1 <= rows_);
    FieldMatrix out(p_, r1 - r0, cols_);
    if (packed())
        std::copy(bits_.begin() + r0 * stride(), bits_.begin() + r1 * stride(),
                  out.bits_.begin());
    else
        std::copy(bytes_.begin() + r0 * cols_, bytes_.begin() + r1 * cols_,
                  out.bytes_.begin());
    return out;
}

FieldMatrix FieldMatrix::row_select(const std::vector<size_t>& idx) const {
    FieldMatrix out(p_, idx.size(), cols_);
    for (size_t i = 0; i < idx.size(); ++i) {
        assert(idx[i] < rows_);
        if (packed())
            std::copy(bits_.begin() + idx[i] * stride(),
                      bits_.begin() + (idx[i] + 1) * stride(),
                      out.bits_.begin() + i * stride());
        else
            std::copy(bytes_.begin() + idx[i] * cols_,
                      bytes_.begin() + (idx[i] + 1) * cols_,
                      out.bytes_.begin() + i * cols_);
    }
    return out;
}

FieldMatrix FieldMatrix::col_select(const std::vector<size_t>& idx) const {
    FieldMatrix out(p_, rows_, idx.size());
    for (size_t r = 0; r < rows_; ++r)
        for (size_t i = 0; i < idx.size(); ++i) {
            uint8_t v = get(r, idx[i]);
            if (v) out.set(r, i, v);
        }
    return out;
}

FieldMatrix FieldMatrix::vstack(const std::vector<FieldMatrix>& parts) {
    if (parts.empty()) return {};
    size_t total = 0;
    for (const auto& m : parts) {
        if (m.p() != parts[0].p() || m.cols() != parts[0].cols())
            throw std::invalid_argument("vstack mismatch");
        total += m.rows();
    }
    FieldMatrix out(parts[0].p(), total, parts[0].cols());
    size_t at = 0;
    for (const auto& m : parts) {
        if (out.packed())
            std::copy(m.bits_.begin(), m.bits_.end(),
                      out.bits_.begin() + at * out.stride());
        else
            std::copy(m.bytes_.begin(), m.bytes_.end(),
                      out.bytes_.begin() + at * out.cols_);
        at += m.rows();
    }
    return out;
}

void FieldMatrix::row_addin(size_t dst, const FieldMatrix& src, size_t srow,
                            uint32_t c) {
    c %= p_;
    if (!c) return;
    assert(cols_ == src.cols_ && p_ == src.p_);
    if (packed()) {
        uint64_t* d = bits_.data() + dst * stride();
        const uint64_t* s = src.bits_.data() + srow * src.stride();
        if (c == 1)
            add_rows3(d, d + wpr_, s, s + wpr_, wpr_);
        else
            add_rows3(d, d + wpr_, s + wpr_, s, wpr_);
    } else {
        for (size_t j = 0; j < cols_; ++j) {
            uint32_t v = bytes_[dst * cols_ + j] + c * src.bytes_[srow * cols_ + j];
            bytes_[dst * cols_ + j] = static_cast<uint8_t>(v % p_);
        }
    }
}

void FieldMatrix::row_scale(size_t r, uint32_t c) {
    c %= p_;
    if (c == 1) return;
    if (packed()) {
        uint64_t* row = bits_.data() + r * stride();
        if (c == 0) {
            std::fill(row, row + stride(), 0);
        } else {
            for (size_t i = 0; i < wpr_; ++i) std::swap(row[i], row[wpr_ + i]);
        }
    } else {
        for (size_t j = 0; j < cols_; ++j)
            bytes_[r * cols_ + j] = static_cast<uint8_t>(bytes_[r * cols_ + j] * c % p_);
    }
}

void FieldMatrix::row_swap(size_t a, size_t b) {
    if (a == b) return;
    if (packed()) {
        for (size_t i = 0; i < stride(); ++i)
            std::swap(bits_[a * stride() + i], bits_[b * stride() + i]);
    } else {
        for (size_t j = 0; j < cols_; ++j)
            std::swap(bytes_[a * cols_ + j], bytes_[b * cols_ + j]);
    }
}

void FieldMatrix::clear_padding() {
    if (!packed() || cols_ % 64 == 0) return;
    const uint64_t mask = (1ULL << (cols_ % 64)) - 1;
    for (size_t r = 0; r < rows_; ++r) {
        bits_[r * stride() + wpr_ - 1] &= mask;
        bits_[r * stride() + 2 * wpr_ - 1] &= mask;
    }
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.p() != b.p()) throw std::invalid_argument("field mismatch in mat_mul");
    if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in mat_mul");
    FieldMatrix c(a.p(), a.rows(), b.cols());
    if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return c;
    if (!a.packed()) {
        auto prod = naive::mat_mul(a.p(), a.unpack(), a.rows(), a.cols(),
                                   b.unpack(), b.rows(), b.cols());
        return FieldMatrix::from_entries(a.p(), a.rows(), b.cols(), prod);
    }
    const size_t k = a.cols(), w = c.wpr_, cstride = c.stride(), bstride = b.stride();
    // grease over groups of 4 rows of b: 81 precombined rows per group
    const size_t G = 4;
    const size_t ngroups = (k + G - 1) / G;
    parallel_for(0, a.rows(), 32, [&](size_t r0, size_t r1) {
        std::vector<uint64_t> table(81 * cstride);
        std::vector<uint8_t> digits(G);
        for (size_t g = 0; g < ngroups; ++g) {
            const size_t j0 = g * G, glen = std::min(G, k - j0);
            const size_t combos = static_cast<size_t>(1);
            size_t ncombo = 1;
            for (size_t t = 0; t < glen; ++t) ncombo *= 3;
            (void)combos;
            std::fill(table.begin(), table.begin() + ncombo * cstride, 0);
            // build combos incrementally: combo d = combo(d - t*3^q) + t*row(j0+q)
            size_t pow = 1;
            for (size_t q = 0; q < glen; ++q, pow *= 3) {
                const uint64_t* src = b.bits_.data() + (j0 + q) * bstride;
                // digit t at slot q: combo(d + t*pow) = combo(d + (t-1)*pow) + row
                for (uint32_t t = 1; t <= 2; ++t) {
                    for (size_t d = 0; d < pow; ++d) {
                        const uint64_t* base = table.data() + (d + (t - 1) * pow) * cstride;
                        uint64_t* out = table.data() + (d + t * pow) * cstride;
                        std::memcpy(out, base, cstride * 8);
                        add_rows3(out, out + w, src, src + b.wpr_, w);
                    }
                }
            }
            for (size_t i = r0; i < r1; ++i) {
                size_t d = 0, mul = 1;
                for (size_t q = 0; q < glen; ++q, mul *= 3)
                    d += a.get(i, j0 + q) * mul;
                if (!d) continue;
                uint64_t* dst = c.bits_.data() + i * cstride;
                const uint64_t* src = table.data() + d * cstride;
                add_rows3(dst, dst + w, src, src + w, w);
            }
        }
    });
    return c;
}

FieldMatrix vec_mat(const FieldMatrix& v, size_t r, const FieldMatrix& m) {
    if (v.p() != m.p() || v.cols() != m.rows())
        throw std::invalid_argument("vec_mat mismatch");
    FieldMatrix out(m.p(), 1, m.cols());
    if (!m.packed()) {
        for (size_t j = 0; j < m.cols(); ++j) {
            uint32_t acc = 0;
            for (size_t i = 0; i < m.rows(); ++i)
                acc += v.get(r, i) * m.get(i, j);
            out.set(0, j, static_cast<uint8_t>(acc % m.p()));
        }
        return out;
    }
    for (size_t i = 0; i < m.rows(); ++i) {
        const uint8_t c = v.get(r, i);
        if (c) out.row_addin(0, m, i, c);
    }
    return out;
}

Echelon FieldMatrix::rref() const {
    FieldMatrix work = *this;
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
        size_t pr = rows_;
        for (size_t i = r; i < rows_; ++i)
            if (work.get(i, c)) { pr = i; break; }
        if (pr == rows_) continue;
        work.row_swap(r, pr);
        const uint8_t pv = work.get(r, c);
        if (pv != 1) work.row_scale(r, mod_inverse(pv, p_));
        for (size_t i = 0; i < rows_; ++i) {
            if (i == r) continue;
            const uint8_t e = work.get(i, c);
            if (e) work.row_addin(i, work, r, p_ - e);
        }
        pivots.push_back(c);
        ++r;
    }
    Echelon out;
    out.rank = r;
    out.reduced = work.row_slice(0, r);
    out.pivots = std::move(pivots);
    return out;
}

size_t FieldMatrix::rank() const { return rref().rank; }

FieldMatrix FieldMatrix::nullspace() const {
    // basis of { v : (*this) v^T = 0 }, one row per free column, echelonized
    Echelon e = rref();
    std::vector<char> is_pivot(cols_, 0);
    for (size_t c : e.pivots) is_pivot[c] = 1;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < cols_; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    FieldMatrix basis(p_, free_cols.size(), cols_);
    for (size_t i = 0; i < free_cols.size(); ++i) {
        basis.set(i, free_cols[i], 1);
        for (size_t k = 0; k < e.pivots.size(); ++k) {
            uint8_t v = e.reduced.get(k, free_cols[i]);
            if (v) basis.set(i, e.pivots[k], static_cast<uint8_t>(p_ - v));
        }
    }
    return basis.rref().reduced;
}

std::optional<FieldMatrix> FieldMatrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    FieldMatrix aug(p_, rows_, 2 * cols_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) {
            uint8_t v = get(r, c);
            if (v) aug.set(r, c, v);
        }
        aug.set(r, cols_ + r, 1);
    }
    Echelon e = aug.rref();
    if (e.rank != rows_) return std::nullopt;
    for (size_t i = 0; i < rows_; ++i)
        if (e.pivots[i] != i) return std::nullopt;
    FieldMatrix inv(p_, rows_, cols_);
    for (size_t r = 0; r < rows_; ++r)
        for (size_t c = 0; c < cols_; ++c) {
            uint8_t v = e.reduced.get(r, cols_ + c);
            if (v) inv.set(r, c, v);
        }
    return inv;
}

uint64_t FieldMatrix::content_hash() const {
    uint64_t h = 0xcbf29ce484222325ULL ^ (rows_ * 1000003 + cols_);
    auto mix = [&h](uint64_t x) {
        h ^= x;
        h *= 0x100000001b3ULL;
        h ^= h >> 29;
    };
    if (packed())
        for (uint64_t w : bits_) mix(w);
    else
        for (uint8_t b : bytes_) mix(b);
    return h;
}

namespace naive {

std::vector<uint8_t> mat_mul(uint32_t p, const std::vector<uint8_t>& a, size_t ar,
                             size_t ac, const std::vector<uint8_t>& b, size_t br,
                             size_t bc) {
    if (ac != br) throw std::invalid_argument("naive::mat_mul dimension mismatch");
    std::vector<uint8_t> c(ar * bc, 0);
    for (size_t i = 0; i < ar; ++i)
        for (size_t k = 0; k < ac; ++k) {
            const uint32_t av = a[i * ac + k];
            if (!av) continue;
            for (size_t j = 0; j < bc; ++j)
                c[i * bc + j] =
                    static_cast<uint8_t>((c[i * bc + j] + av * b[k * bc + j]) % p);
        }
    return c;
}

size_t rref(uint32_t p, std::vector<uint8_t>& m, size_t rows, size_t cols,
            std::vector<size_t>* pivots) {
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pr = rows;
        for (size_t i = r; i < rows; ++i)
            if (m[i * cols + c]) { pr = i; break; }
        if (pr == rows) continue;
        if (pr != r)
            for (size_t j = 0; j < cols; ++j) std::swap(m[r * cols + j], m[pr * cols + j]);
        const uint32_t inv = mod_inverse(m[r * cols + c], p);
        if (inv != 1)
            for (size_t j = 0; j < cols; ++j)
                m[r * cols + j] = static_cast<uint8_t>(m[r * cols + j] * inv % p);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const uint32_t e = m[i * cols + c];
            if (!e) continue;
            for (size_t j = 0; j < cols; ++j)
                m[i * cols + j] = static_cast<uint8_t>(
                    (m[i * cols + j] + (p - e) * m[r * cols + j]) % p);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

} // namespace naive

} // namespace loewy

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace loewy {

// Dense matrix over a prime field GF(p).
//
// p = 3 is the hot path: entries are stored bitsliced in two bit planes per
// row (low plane = value 1, high plane = value 2), 64 entries per word pair,
// and all kernels work on the packed form.  Other primes use one byte per
// entry and the generic routines.  Dimensions are fixed at construction.
struct Echelon;

class FieldMatrix {
public:
    FieldMatrix() = default;
    FieldMatrix(uint32_t p, size_t rows, size_t cols);

    static FieldMatrix identity(uint32_t p, size_t n);
    static FieldMatrix from_entries(uint32_t p, size_t rows, size_t cols,
                                    const std::vector<uint8_t>& entries);

    uint32_t p() const { return p_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    uint8_t get(size_t r, size_t c) const;
    void set(size_t r, size_t c, uint8_t v);

    std::vector<uint8_t> unpack() const;          // row-major entries
    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const FieldMatrix& o) const;
    bool operator!=(const FieldMatrix& o) const { return !(*this == o); }

    FieldMatrix transposed() const;
    FieldMatrix operator+(const FieldMatrix& o) const;
    FieldMatrix operator-(const FieldMatrix& o) const;
    FieldMatrix scaled(uint32_t c) const;

    // rows [r0, r1)
    FieldMatrix row_slice(size_t r0, size_t r1) const;
    FieldMatrix row_select(const std::vector<size_t>& idx) const;
    FieldMatrix col_select(const std::vector<size_t>& idx) const;
    static FieldMatrix vstack(const std::vector<FieldMatrix>& parts);

    // dst-row += c * src-row of other matrix (same width)
    void row_addin(size_t dst, const FieldMatrix& src, size_t srow, uint32_t c);
    void row_scale(size_t r, uint32_t c);
    void row_swap(size_t a, size_t b);

    Echelon rref() const;
    size_t rank() const;

    // Rows v with v * (*this)^T = 0, i.e. the column kernel, echelonized.
    FieldMatrix nullspace() const;
    // Rows v with v * (*this) = 0: the kernel of the matrix acting on row
    // vectors (what spinning wants).
    FieldMatrix left_nullspace() const { return transposed().nullspace(); }

    std::optional<FieldMatrix> inverse() const;

    uint64_t content_hash() const;

private:
    uint32_t p_ = 3;
    size_t rows_ = 0, cols_ = 0;
    size_t wpr_ = 0;                    // words per plane per row (p == 3)
    std::vector<uint64_t> bits_;        // p == 3
    std::vector<uint8_t> bytes_;        // p != 3

    bool packed() const { return p_ == 3; }
    size_t stride() const { return 2 * wpr_; }
    friend FieldMatrix mat_mul(const FieldMatrix&, const FieldMatrix&);
    friend FieldMatrix vec_mat(const FieldMatrix&, size_t, const FieldMatrix&);
    friend class RowAccumulator;
    void clear_padding();
};

struct Echelon {
    size_t rank = 0;
    FieldMatrix reduced;            // rank x cols, reduced row-echelon
    std::vector<size_t> pivots;     // pivot column per row
};

// Exact product; throws on dimension or field mismatch.
FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);
// Row r of v times m, as a 1 x m.cols() matrix.
FieldMatrix vec_mat(const FieldMatrix& v, size_t r, const FieldMatrix& m);

// Elementwise reference implementations over byte vectors; the oracle the
// packed kernels are tested against, and the generic path for p != 3.
namespace naive {
std::vector<uint8_t> mat_mul(uint32_t p, const std::vector<uint8_t>& a, size_t ar, size_t ac,
                             const std::vector<uint8_t>& b, size_t br, size_t bc);
// returns rank; reduces `m` (rows x cols) to RREF in place, pivot columns out
size_t rref(uint32_t p, std::vector<uint8_t>& m, size_t rows, size_t cols,
            std::vector<size_t>* pivots);
} // namespace naive

} // namespace loewy

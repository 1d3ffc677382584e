#pragma once

#include "loewy/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace loewy {

// Polynomial over GF(p), coefficients low degree first, normalized so the
// leading coefficient is nonzero (empty vector = zero polynomial).
class FieldPolynomial {
public:
    FieldPolynomial() = default;
    FieldPolynomial(uint32_t p, std::vector<uint8_t> coeffs);

    static FieldPolynomial x_power(uint32_t p, size_t k);      // x^k
    static FieldPolynomial constant(uint32_t p, uint32_t c);

    uint32_t p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<uint8_t>& coeffs() const { return c_; }
    uint8_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    FieldPolynomial monic() const;

    bool operator==(const FieldPolynomial& o) const { return p_ == o.p_ && c_ == o.c_; }

    FieldPolynomial operator+(const FieldPolynomial& o) const;
    FieldPolynomial operator-(const FieldPolynomial& o) const;
    FieldPolynomial operator*(const FieldPolynomial& o) const;
    // (quotient, remainder); divisor must be nonzero
    std::pair<FieldPolynomial, FieldPolynomial> divmod(const FieldPolynomial& d) const;
    FieldPolynomial derivative() const;

    std::string to_string() const;   // human readable, "x^2 + 2x + 1"

private:
    uint32_t p_ = 3;
    std::vector<uint8_t> c_;
    void trim();
};

FieldPolynomial poly_gcd(const FieldPolynomial& a, const FieldPolynomial& b);
FieldPolynomial poly_lcm(const FieldPolynomial& a, const FieldPolynomial& b);
// inverse of f modulo m (coprime required)
FieldPolynomial poly_invmod(const FieldPolynomial& f, const FieldPolynomial& m);

// Complete factorization over GF(p) into monic irreducibles with
// multiplicities (Berlekamp); input must be nonzero.
std::vector<std::pair<FieldPolynomial, size_t>> factor_poly(const FieldPolynomial& f);

bool poly_is_irreducible(const FieldPolynomial& f);

// characteristic polynomial (monic, degree n) via Hessenberg reduction
FieldPolynomial char_poly(const FieldMatrix& m);
// minimal polynomial via Krylov sequences (lcm of local minimal polynomials)
FieldPolynomial min_poly(const FieldMatrix& m);
// f evaluated at a square matrix
FieldMatrix poly_eval(const FieldPolynomial& f, const FieldMatrix& m);

} // namespace loewy

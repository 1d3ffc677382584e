#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace loewy {

// Permutation of {0..n-1}. Products compose left to right: (p*q)(x) = q(p(x)),
// matching row-vector module actions.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(size_t degree);                 // identity
    static Permutation from_images(std::vector<uint32_t> images);
    // cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; "()" = identity
    static Permutation from_cycles(const std::string& s, size_t degree);

    size_t degree() const { return img_.size(); }
    uint32_t operator()(uint32_t x) const { return img_[x]; }
    const std::vector<uint32_t>& images() const { return img_; }

    Permutation operator*(const Permutation& o) const;   // apply *this, then o
    Permutation inverse() const;
    bool is_identity() const;
    bool is_even() const;
    size_t order() const;
    Permutation extended(size_t degree) const;           // pad with fixed points

    std::string to_cycles() const;                       // 1-based
    bool operator==(const Permutation& o) const { return img_ == o.img_; }
    bool operator!=(const Permutation& o) const { return img_ != o.img_; }
    bool operator<(const Permutation& o) const { return img_ < o.img_; }

private:
    std::vector<uint32_t> img_;
};

} // namespace loewy

#include "loewy/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace loewy {

Permutation::Permutation(size_t degree) : img_(degree) {
    std::iota(img_.begin(), img_.end(), 0);
}

Permutation Permutation::from_images(std::vector<uint32_t> images) {
    std::vector<char> seen(images.size(), 0);
    for (uint32_t v : images) {
        if (v >= images.size() || seen[v])
            throw std::invalid_argument("not a bijection");
        seen[v] = 1;
    }
    Permutation p;
    p.img_ = std::move(images);
    return p;
}

Permutation Permutation::from_cycles(const std::string& s, size_t degree) {
    Permutation p(degree);
    size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',') { ++i; continue; }
        if (s[i] != '(') throw std::invalid_argument("bad cycle string: " + s);
        ++i;
        std::vector<uint32_t> cyc;
        std::string num;
        for (; i < s.size() && s[i] != ')'; ++i) {
            if (std::isdigit(static_cast<unsigned char>(s[i]))) num += s[i];
            else if (!num.empty()) { cyc.push_back(std::stoul(num)); num.clear(); }
        }
        if (!num.empty()) cyc.push_back(std::stoul(num));
        if (i == s.size()) throw std::invalid_argument("unclosed cycle: " + s);
        ++i;
        for (uint32_t& x : cyc) {
            if (x == 0 || x > degree) throw std::invalid_argument("point out of range: " + s);
            x -= 1; // 1-based in files
        }
        for (size_t k = 0; k < cyc.size(); ++k) {
            uint32_t from = cyc[k], to = cyc[(k + 1) % cyc.size()];
            if (p.img_[from] != from) throw std::invalid_argument("point repeated: " + s);
            if (cyc.size() > 1) p.img_[from] = to;
        }
    }
    // validate
    return from_images(p.img_);
}

Permutation Permutation::operator*(const Permutation& o) const {
    if (degree() != o.degree()) throw std::invalid_argument("degree mismatch");
    Permutation r;
    r.img_.resize(degree());
    for (size_t i = 0; i < degree(); ++i) r.img_[i] = o.img_[img_[i]];
    return r;
}

Permutation Permutation::inverse() const {
    Permutation r;
    r.img_.resize(degree());
    for (size_t i = 0; i < degree(); ++i) r.img_[img_[i]] = static_cast<uint32_t>(i);
    return r;
}

bool Permutation::is_identity() const {
    for (size_t i = 0; i < degree(); ++i)
        if (img_[i] != i) return false;
    return true;
}

bool Permutation::is_even() const {
    std::vector<char> seen(degree(), 0);
    size_t transpositions = 0;
    for (size_t i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        size_t len = 0;
        for (uint32_t j = static_cast<uint32_t>(i); !seen[j]; j = img_[j]) {
            seen[j] = 1;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

size_t Permutation::order() const {
    std::vector<char> seen(degree(), 0);
    size_t ord = 1;
    for (size_t i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        size_t len = 0;
        for (uint32_t j = static_cast<uint32_t>(i); !seen[j]; j = img_[j]) {
            seen[j] = 1;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

Permutation Permutation::extended(size_t degree) const {
    if (degree < img_.size()) throw std::invalid_argument("cannot shrink degree");
    Permutation r(degree);
    for (size_t i = 0; i < img_.size(); ++i) r.img_[i] = img_[i];
    return r;
}

std::string Permutation::to_cycles() const {
    std::ostringstream out;
    std::vector<char> seen(degree(), 0);
    bool any = false;
    for (size_t i = 0; i < degree(); ++i) {
        if (seen[i] || img_[i] == i) { seen[i] = 1; continue; }
        out << '(';
        bool first = true;
        for (uint32_t j = static_cast<uint32_t>(i); !seen[j]; j = img_[j]) {
            seen[j] = 1;
            if (!first) out << ' ';
            out << (j + 1);
            first = false;
        }
        out << ')';
        any = true;
    }
    return any ? out.str() : "()";
}

} // namespace loewy

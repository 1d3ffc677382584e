#include "loewy/words.hpp"

#include <sstream>
#include <stdexcept>

namespace loewy {

AlgebraWord AlgebraWord::gen(uint32_t i) {
    AlgebraWord w;
    w.nodes_.push_back(Node{Node::Gen, i, 0, 1});
    return w;
}

AlgebraWord AlgebraWord::one() {
    AlgebraWord w;
    w.nodes_.push_back(Node{Node::One, 0, 0, 1});
    return w;
}

uint32_t AlgebraWord::append(const AlgebraWord& other) {
    const uint32_t shift = static_cast<uint32_t>(nodes_.size());
    for (Node n : other.nodes_) {
        if (n.kind == Node::Add || n.kind == Node::Mul) {
            n.a += shift;
            n.b += shift;
        } else if (n.kind == Node::Scale) {
            n.a += shift;
        }
        nodes_.push_back(n);
    }
    return static_cast<uint32_t>(nodes_.size() - 1);
}

AlgebraWord AlgebraWord::operator+(const AlgebraWord& o) const {
    AlgebraWord w = *this;
    const uint32_t left = static_cast<uint32_t>(w.nodes_.size() - 1);
    const uint32_t right = w.append(o);
    w.nodes_.push_back(Node{Node::Add, left, right, 1});
    return w;
}

AlgebraWord AlgebraWord::operator*(const AlgebraWord& o) const {
    AlgebraWord w = *this;
    const uint32_t left = static_cast<uint32_t>(w.nodes_.size() - 1);
    const uint32_t right = w.append(o);
    w.nodes_.push_back(Node{Node::Mul, left, right, 1});
    return w;
}

AlgebraWord AlgebraWord::scaled(uint8_t c) const {
    AlgebraWord w = *this;
    const uint32_t child = static_cast<uint32_t>(w.nodes_.size() - 1);
    w.nodes_.push_back(Node{Node::Scale, child, 0, c});
    return w;
}

FieldMatrix AlgebraWord::eval(const ModuleRep& m) const {
    if (nodes_.empty()) throw std::invalid_argument("empty word");
    std::vector<FieldMatrix> vals(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        switch (n.kind) {
        case Node::Gen:
            if (n.a >= m.action.size()) throw std::invalid_argument("word generator out of range");
            vals[i] = m.action[n.a];
            break;
        case Node::One:
            vals[i] = FieldMatrix::identity(m.p, m.dim);
            break;
        case Node::Add:
            vals[i] = vals[n.a] + vals[n.b];
            break;
        case Node::Mul:
            vals[i] = mat_mul(vals[n.a], vals[n.b]);
            break;
        case Node::Scale:
            vals[i] = vals[n.a].scaled(n.scalar);
            break;
        }
    }
    return vals.back();
}

std::string AlgebraWord::to_string() const {
    if (nodes_.empty()) return "0";
    std::vector<std::string> reps(nodes_.size());
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        switch (n.kind) {
        case Node::Gen: reps[i] = "g" + std::to_string(n.a + 1); break;
        case Node::One: reps[i] = "1"; break;
        case Node::Add: reps[i] = "(" + reps[n.a] + "+" + reps[n.b] + ")"; break;
        case Node::Mul: reps[i] = "(" + reps[n.a] + "*" + reps[n.b] + ")"; break;
        case Node::Scale:
            reps[i] = std::to_string(int(n.scalar)) + "*" + reps[n.a];
            break;
        }
    }
    return reps.back();
}

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    size_t ngens;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    AlgebraWord sum() {
        AlgebraWord acc = product();
        while (true) {
            skip();
            if (eat('+')) acc = acc + product();
            else break;
        }
        return acc;
    }
    AlgebraWord product() {
        AlgebraWord acc = atom();
        while (true) {
            skip();
            if (eat('*')) {
                AlgebraWord rhs = atom();
                acc = acc * rhs;
            } else break;
        }
        return acc;
    }
    AlgebraWord atom() {
        skip();
        if (eat('(')) {
            AlgebraWord inner = sum();
            if (!eat(')')) throw std::invalid_argument("word parse: missing )");
            return inner;
        }
        if (pos < s.size() && s[pos] == 'g') {
            ++pos;
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            uint32_t idx = std::stoul(s.substr(start, pos - start));
            if (idx == 0 || idx > ngens) throw std::invalid_argument("word parse: bad generator");
            return AlgebraWord::gen(idx - 1);
        }
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            uint8_t c = static_cast<uint8_t>(s[pos] - '0');
            ++pos;
            skip();
            if (eat('*')) {
                AlgebraWord rhs = atom();
                return rhs.scaled(c);
            }
            return AlgebraWord::one().scaled(c);
        }
        throw std::invalid_argument("word parse: unexpected input at " + std::to_string(pos));
    }
};

} // namespace

AlgebraWord AlgebraWord::parse(const std::string& s, size_t ngens) {
    Parser p{s, 0, ngens};
    AlgebraWord w = p.sum();
    p.skip();
    if (p.pos != s.size()) throw std::invalid_argument("word parse: trailing input");
    return w;
}

AlgebraWord random_word(Rng& rng, size_t ngens) {
    const size_t terms = 1 + rng.below(3);
    AlgebraWord acc;
    for (size_t t = 0; t < terms; ++t) {
        const size_t factors = 1 + rng.below(8);
        AlgebraWord term = AlgebraWord::gen(static_cast<uint32_t>(rng.below(ngens)));
        for (size_t f = 1; f < factors; ++f)
            term = term * AlgebraWord::gen(static_cast<uint32_t>(rng.below(ngens)));
        const uint8_t c = static_cast<uint8_t>(1 + rng.below(2));
        if (c != 1) term = term.scaled(c);
        acc = t == 0 ? term : acc + term;
    }
    const uint8_t cst = static_cast<uint8_t>(rng.below(3));
    if (cst) acc = acc + AlgebraWord::one().scaled(cst);
    return acc;
}

} // namespace loewy

#pragma once

#include "loewy/structure.hpp"

#include <string>

namespace loewy {

// paper-style rendering: one layer per line, labels ascending by dimension,
// duplicates repeated, layers separated by rule lines
std::string render_loewy(const LoewyReport& report);

// one-line rendering of a shape / multiset
std::string render_multiset(const LabelMultiset& layer);

} // namespace loewy

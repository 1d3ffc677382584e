#include "loewy/tables.hpp"

#include <algorithm>
#include <stdexcept>

namespace loewy {

int LabeledTable::at(const std::string& row, const std::string& col) const {
    auto ri = std::find(labels.begin(), labels.end(), row);
    auto ci = std::find(labels.begin(), labels.end(), col);
    if (ri == labels.end() || ci == labels.end())
        throw std::out_of_range("label not in table");
    return entries[ri - labels.begin()][ci - labels.begin()];
}

bool LabeledTable::symmetric() const {
    for (size_t i = 0; i < labels.size(); ++i)
        for (size_t j = 0; j < labels.size(); ++j)
            if (entries[i][j] != entries[j][i]) return false;
    return true;
}

namespace {

size_t layer_count(const LabelMultiset& layer, const std::string& label) {
    for (const auto& [l, c] : layer)
        if (l == label) return c;
    return 0;
}

} // namespace

LabeledTable ext_table(const std::map<std::string, LoewyReport>& pim_loewy,
                       const std::vector<std::string>& labels) {
    LabeledTable out;
    out.labels = labels;
    for (const auto& s : labels) {
        const auto& rep = pim_loewy.at(s);
        std::vector<int> row;
        for (const auto& t : labels)
            row.push_back(rep.layers.size() > 1
                              ? static_cast<int>(layer_count(rep.layers[1], t))
                              : 0);
        out.entries.push_back(std::move(row));
    }
    return out;
}

LabeledTable cartan_table(const std::map<std::string, LoewyReport>& pim_loewy,
                          const std::vector<std::string>& labels) {
    LabeledTable out;
    out.labels = labels;
    for (const auto& s : labels) {
        const auto& rep = pim_loewy.at(s);
        std::vector<int> row;
        for (const auto& t : labels) {
            size_t total = 0;
            for (const auto& layer : rep.layers) total += layer_count(layer, t);
            row.push_back(static_cast<int>(total));
        }
        out.entries.push_back(std::move(row));
    }
    return out;
}

DxDReport verify_dxd(const DecompositionTable& d, const LabeledTable& cartan) {
    DxDReport out;
    out.dtd.labels = d.col_labels;
    const size_t n = d.col_labels.size();
    out.dtd.entries.assign(n, std::vector<int>(n, 0));
    for (const auto& row : d.rows)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) out.dtd.entries[i][j] += row[i] * row[j];
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const int c = cartan.at(d.col_labels[i], d.col_labels[j]);
            if (c != out.dtd.entries[i][j]) {
                out.consistent = false;
                out.violations.push_back(
                    "entry (" + d.col_labels[i] + "," + d.col_labels[j] +
                    "): cartan " + std::to_string(c) + " vs D^T D " +
                    std::to_string(out.dtd.entries[i][j]));
            }
        }
    if (!cartan.symmetric()) {
        out.consistent = false;
        out.violations.push_back("cartan table not symmetric");
    }
    return out;
}

std::vector<std::vector<std::string>> cartan_linkage_classes(const LabeledTable& c) {
    const size_t n = c.labels.size();
    std::vector<int> comp(n, -1);
    int nc = 0;
    for (size_t i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<size_t> stack{i};
        comp[i] = nc;
        while (!stack.empty()) {
            size_t x = stack.back();
            stack.pop_back();
            for (size_t j = 0; j < n; ++j)
                if (comp[j] < 0 && (c.entries[x][j] || c.entries[j][x])) {
                    comp[j] = nc;
                    stack.push_back(j);
                }
        }
        ++nc;
    }
    std::vector<std::vector<std::string>> out(nc);
    for (size_t i = 0; i < n; ++i) out[comp[i]].push_back(c.labels[i]);
    return out;
}

} // namespace loewy

#include "loewy/render.hpp"

#include <algorithm>
#include <sstream>

namespace loewy {

namespace {

// labels sort by leading dimension, then suffix
bool label_less(const std::string& a, const std::string& b) {
    auto head = [](const std::string& s) {
        size_t i = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        return std::make_pair(std::stoul(s.substr(0, i)), s.substr(i));
    };
    return head(a) < head(b);
}

} // namespace

std::string render_multiset(const LabelMultiset& layer) {
    std::vector<std::string> expanded;
    for (const auto& [l, c] : layer)
        for (size_t i = 0; i < c; ++i) expanded.push_back(l);
    std::sort(expanded.begin(), expanded.end(), label_less);
    std::ostringstream os;
    for (size_t i = 0; i < expanded.size(); ++i) {
        if (i) os << ' ';
        os << expanded[i];
    }
    return os.str();
}

std::string render_loewy(const LoewyReport& report) {
    std::ostringstream os;
    os << report.module_name << "  (dim " << report.total_dim << ")\n";
    for (size_t i = 0; i < report.layers.size(); ++i) {
        if (i) os << "-----\n";
        os << render_multiset(report.layers[i]) << '\n';
    }
    return os.str();
}

} // namespace loewy

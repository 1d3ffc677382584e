#include "loewy/textio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace loewy {

std::string matrix_to_text(const FieldMatrix& m) {
    std::ostringstream out;
    out << m.p() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (size_t r = 0; r < m.rows(); ++r) {
        for (size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << int(m.get(r, c));
        }
        out << '\n';
    }
    return out.str();
}

FieldMatrix matrix_from_text(const std::string& text, size_t* consumed) {
    std::istringstream in(text);
    uint32_t p;
    size_t rows, cols;
    if (!(in >> p >> rows >> cols)) throw std::invalid_argument("bad matrix header");
    FieldMatrix m(p, rows, cols);
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c) {
            int v;
            if (!(in >> v)) throw std::invalid_argument("matrix entries truncated");
            m.set(r, c, static_cast<uint8_t>(v));
        }
    if (consumed) *consumed = static_cast<size_t>(in.tellg());
    return m;
}

std::string module_to_text(const ModuleRep& m) {
    std::ostringstream out;
    out << "MODTXT 1\n";
    out << "p " << m.p << '\n';
    out << "dim " << m.dim << '\n';
    out << "ngens " << m.action.size() << '\n';
    for (const auto& a : m.action) out << matrix_to_text(a);
    return out.str();
}

ModulePtr module_from_text(const std::string& text,
                           std::shared_ptr<const GroupSpec> group) {
    std::istringstream in(text);
    std::string magic;
    int version;
    if (!(in >> magic >> version) || magic != "MODTXT" || version != 1)
        throw std::invalid_argument("not a MODTXT file");
    std::string key;
    uint32_t p;
    size_t dim, ngens;
    if (!(in >> key >> p) || key != "p") throw std::invalid_argument("bad p line");
    if (!(in >> key >> dim) || key != "dim") throw std::invalid_argument("bad dim line");
    if (!(in >> key >> ngens) || key != "ngens")
        throw std::invalid_argument("bad ngens line");
    if (ngens != group->generators.size())
        throw std::invalid_argument("generator count does not match the group");
    std::vector<FieldMatrix> action;
    for (size_t g = 0; g < ngens; ++g) {
        uint32_t mp;
        size_t rows, cols;
        if (!(in >> mp >> rows >> cols)) throw std::invalid_argument("bad matrix header");
        if (mp != p || rows != dim || cols != dim)
            throw std::invalid_argument("matrix header inconsistent with module");
        FieldMatrix m(p, rows, cols);
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) {
                int v;
                if (!(in >> v)) throw std::invalid_argument("matrix entries truncated");
                m.set(r, c, static_cast<uint8_t>(v));
            }
        action.push_back(std::move(m));
    }
    return make_module(group, p, std::move(action), prov::Atom{"loaded"}, "loaded module");
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace loewy

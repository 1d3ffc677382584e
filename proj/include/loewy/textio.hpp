#pragma once

#include "loewy/matrix.hpp"
#include "loewy/module.hpp"

#include <filesystem>
#include <string>

namespace loewy {

// Text matrix format: first line "p rows cols", then `rows` lines of
// space-separated residues.
std::string matrix_to_text(const FieldMatrix& m);
FieldMatrix matrix_from_text(const std::string& text, size_t* consumed = nullptr);

// Module file format, bit-exact:
//   MODTXT 1
//   p <prime>
//   dim <d>
//   ngens <k>
// then k matrices in the text matrix format, in group-generator order.
std::string module_to_text(const ModuleRep& m);
ModulePtr module_from_text(const std::string& text,
                           std::shared_ptr<const GroupSpec> group);

void atomic_write(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

} // namespace loewy

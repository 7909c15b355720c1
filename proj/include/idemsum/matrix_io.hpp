#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "idemsum/numerics.hpp"

namespace idemsum {

// Text format: a "rows cols" header line, then one line per row holding
// cols pairs "re im" separated by single spaces. Values use %.17g.
std::string format_matrix(const CMat& m);
void write_matrix(std::ostream& os, const CMat& m);
CMat read_matrix(std::istream& is);

void save_matrix(const std::filesystem::path& path, const CMat& m);
CMat load_matrix(const std::filesystem::path& path);

}  // namespace idemsum

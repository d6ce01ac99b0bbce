#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "wlc/color_matrix.hpp"

namespace wlc {

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Text format:
//
//   # optional comment lines anywhere
//   wlgraph <n> <r>
//   <n lines of n space-separated positive integers>
//
// r must equal the number of distinct colours in the matrix. Blank lines
// are ignored.

ColorMatrix read_graph(std::istream& in, ColorMatrix::Renumber order = ColorMatrix::Renumber::first_occurrence);
ColorMatrix read_graph_file(const std::filesystem::path& path,
                            ColorMatrix::Renumber order = ColorMatrix::Renumber::first_occurrence);

void write_graph(std::ostream& out, const ColorMatrix& x);

/// Writes to a sibling temporary file and renames it into place, so readers
/// never observe a partial file.
void write_graph_file(const std::filesystem::path& path, const ColorMatrix& x);

/// FNV-1a over n and the cells, printed as 16 hex digits.
std::string digest(const ColorMatrix& x);

}  // namespace wlc

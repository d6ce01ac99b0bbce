#include "wlc/graph_file.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <unistd.h>
#include <unordered_set>
#include <vector>

namespace wlc {

namespace {

bool skippable(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string::npos || line[first] == '#';
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

ColorMatrix read_graph(std::istream& in, ColorMatrix::Renumber order) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  std::size_t r = 0;
  bool have_header = false;
  std::vector<std::int64_t> cells;
  std::size_t rows = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string magic;
      long long hn = 0, hr = 0;
      if (!(ls >> magic >> hn >> hr) || magic != "wlgraph") fail(line_no, "expected header 'wlgraph <n> <r>'");
      std::string extra;
      if (ls >> extra) fail(line_no, "trailing text after header");
      if (hn <= 0 || hr <= 0) fail(line_no, "n and r must be positive");
      n = static_cast<std::size_t>(hn);
      r = static_cast<std::size_t>(hr);
      cells.reserve(n * n);
      have_header = true;
      continue;
    }
    if (rows == n) fail(line_no, "more than " + std::to_string(n) + " matrix rows");
    std::size_t count = 0;
    std::string token;
    while (ls >> token) {
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(token, &used);
      } catch (const std::exception&) {
        fail(line_no, "not an integer: '" + token + "'");
      }
      if (used != token.size()) fail(line_no, "not an integer: '" + token + "'");
      if (value <= 0) fail(line_no, "colours must be positive");
      cells.push_back(value);
      ++count;
    }
    if (count != n) fail(line_no, "expected " + std::to_string(n) + " entries, found " + std::to_string(count));
    ++rows;
  }
  if (!have_header) throw ParseError("missing 'wlgraph' header");
  if (rows != n) throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(rows));

  std::unordered_set<std::int64_t> distinct(cells.begin(), cells.end());
  if (distinct.size() != r) {
    throw ParseError("header declares " + std::to_string(r) + " colours, matrix has " + std::to_string(distinct.size()));
  }
  return ColorMatrix::validate(n, cells, order);
}

ColorMatrix read_graph_file(const std::filesystem::path& path, ColorMatrix::Renumber order) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return read_graph(in, order);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_graph(std::ostream& out, const ColorMatrix& x) {
  const std::size_t n = x.size();
  std::string buf = "wlgraph " + std::to_string(n) + ' ' + std::to_string(x.color_count()) + '\n';
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (v) buf += ' ';
      buf += std::to_string(x(u, v));
    }
    buf += '\n';
  }
  out << buf;
}

void write_graph_file(const std::filesystem::path& path, const ColorMatrix& x) {
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_graph(out, x);
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

std::string digest(const ColorMatrix& x) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(x.size());
  for (auto c : x.cells()) mix(c);
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace wlc

#include <doctest.h>

#include <fstream>
#include <sstream>
#include <unistd.h>

#include "support.hpp"
#include "wlc/graph_file.hpp"

using namespace wlc;
using wlc::testing::grid;

namespace {

ColorMatrix parse(const std::string& text, ColorMatrix::Renumber order = ColorMatrix::Renumber::first_occurrence) {
  std::istringstream in(text);
  return read_graph(in, order);
}

std::string render(const ColorMatrix& x) {
  std::ostringstream out;
  write_graph(out, x);
  return out.str();
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("wlc_graph_file_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("reads the documented format") {
  auto x = parse("# a triangle\nwlgraph 3 2\n1 2 2\n\n2 1 2\n# mid comment\n2 2 1\n");
  CHECK(x == make_fixture("trivial(3)"));

  auto y = parse("wlgraph 2 3\n1 30\n20 1\n", ColorMatrix::Renumber::by_value);
  CHECK(y.to_rows() == std::vector<std::vector<std::int64_t>>{{1, 3}, {2, 1}});
  CHECK(parse("wlgraph 1 1\n7\n").color_count() == 1);
  CHECK(parse("  wlgraph   2 2  \r\n 1  2\r\n2 1\r\n").color_count() == 2);
}

TEST_CASE("rejects malformed input") {
  for (const char* bad : {
           "",
           "# only a comment\n",
           "graph 2 2\n1 2\n2 1\n",
           "wlgraph 2\n1 2\n2 1\n",
           "wlgraph 2 2 extra\n1 2\n2 1\n",
           "wlgraph 0 1\n",
           "wlgraph 2 2\n1 2\n",
           "wlgraph 2 2\n1 2\n2 1\n1 2\n",
           "wlgraph 2 2\n1 2 1\n2 1\n",
           "wlgraph 2 2\n1 x\n2 1\n",
           "wlgraph 2 2\n1 2.5\n2 1\n",
           "wlgraph 2 2\n1 0\n0 1\n",
           "wlgraph 2 2\n1 -2\n-2 1\n",
           "wlgraph 2 3\n1 2\n2 1\n",
           "wlgraph 2 2\n1 99999999999999999999\n2 1\n",
       }) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse(bad), ParseError);
  }
}

TEST_CASE("write then read round-trips") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = wlc::testing::random_matrix(1 + rng() % 12, 1 + rng() % 6, rng());
    // written ids are already canonical, so value order reproduces them
    CHECK(parse(render(x), ColorMatrix::Renumber::by_value) == x);
    CHECK(is_same_partition(parse(render(x)), x));
  }
  CHECK(render(grid({{2, 1}, {1, 2}})) == "wlgraph 2 2\n1 2\n2 1\n");
}

TEST_CASE("file round trip is atomic") {
  const auto dir = scratch_dir();
  const auto path = dir / "g.txt";
  auto x = make_fixture("petersen");
  write_graph_file(path, x);
  CHECK(read_graph_file(path, ColorMatrix::Renumber::by_value) == x);

  // overwrite in place; no temporary files remain
  auto y = make_fixture("cycle5");
  write_graph_file(path, y);
  CHECK(read_graph_file(path, ColorMatrix::Renumber::by_value) == y);
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);

  CHECK_THROWS_AS(read_graph_file(dir / "missing.txt"), ParseError);
  CHECK_THROWS_AS(write_graph_file(dir / "no-such-dir" / "g.txt", x), std::exception);
  std::filesystem::remove_all(dir);
}

TEST_CASE("digest") {
  auto x = make_fixture("path(4)");
  CHECK(digest(x) == digest(make_fixture("path(4)")));
  CHECK(digest(x).size() == 16);
  CHECK(digest(x) != digest(make_fixture("path(5)")));
  CHECK(digest(x) != digest(make_fixture("cycle5")));
}

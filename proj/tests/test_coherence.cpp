#include <doctest.h>

#include "support.hpp"
#include "wlc/classical.hpp"
#include "wlc/coherence.hpp"

using namespace wlc;
using wlc::testing::grid;
using wlc::testing::random_matrix;

namespace {

// Recount the witness straight from the matrix.
std::size_t pair_count(const ColorMatrix& x, Cell uv, Color i, Color j) {
  std::size_t count = 0;
  for (std::size_t w = 0; w < x.size(); ++w) count += x(uv.first, w) == i && x(w, uv.second) == j;
  return count;
}

void check_witness(const ColorMatrix& x, const CoherenceWitness& w) {
  CHECK(x(w.first.first, w.first.second) == w.color);
  CHECK(x(w.second.first, w.second.second) == w.color);
  switch (w.kind) {
    case CoherenceWitness::Kind::loop_arc_clash:
      CHECK((w.first.first == w.first.second) != (w.second.first == w.second.second));
      break;
    case CoherenceWitness::Kind::transpose_split:
      CHECK(x(w.first.second, w.first.first) != x(w.second.second, w.second.first));
      break;
    case CoherenceWitness::Kind::profile_mismatch:
      CHECK(w.first_count != w.second_count);
      CHECK(pair_count(x, w.first, w.left, w.right) == w.first_count);
      CHECK(pair_count(x, w.second, w.left, w.right) == w.second_count);
      break;
  }
}

}  // namespace

TEST_CASE("coherent examples") {
  for (const char* name : {"trivial(1)", "trivial(2)", "trivial(5)", "cyclic(1)", "cyclic(7)", "cycle5", "petersen",
                           "path(2)"}) {
    CAPTURE(name);
    auto report = verify_coherent(make_fixture(name));
    CHECK(report.coherent);
    CHECK_FALSE(report.witness.has_value());
  }
}

TEST_CASE("rainbow P3 is not coherent") {
  auto x = rainbow_refine(make_fixture("path(3)"));
  auto report = verify_coherent(x);
  REQUIRE_FALSE(report.coherent);
  REQUIRE(report.witness.has_value());
  // The loop class is scanned first: the end loops see one edge, the middle loop two.
  CHECK(report.witness->color == x(0, 0));
  CHECK(report.witness->kind == CoherenceWitness::Kind::profile_mismatch);
  check_witness(x, *report.witness);
  CHECK_FALSE(report.witness->describe().empty());
}

TEST_CASE("axiom violations of each kind") {
  SUBCASE("loop and arc share a colour") {
    auto report = verify_coherent(grid({{1, 1}, {1, 1}}));
    REQUIRE(report.witness);
    CHECK(report.witness->kind == CoherenceWitness::Kind::loop_arc_clash);
    check_witness(grid({{1, 1}, {1, 1}}), *report.witness);
  }
  SUBCASE("class not closed under transposition") {
    // Circulant, so every loop sees the same profile; colour 2 holds steps +1 and +2.
    auto x = grid({{1, 2, 2, 3}, {3, 1, 2, 2}, {2, 3, 1, 2}, {2, 2, 3, 1}});
    auto report = verify_coherent(x);
    REQUIRE(report.witness);
    CHECK(report.witness->kind == CoherenceWitness::Kind::transpose_split);
    check_witness(x, *report.witness);
  }
}

TEST_CASE("witnesses are genuine on random inputs") {
  std::mt19937_64 rng(31);
  int incoherent = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto x = random_matrix(1 + rng() % 8, 1 + rng() % 4, rng());
    if (rng() % 2) x = rainbow_refine(x);
    auto report = verify_coherent(x);
    CHECK(report.coherent == !report.witness.has_value());
    if (report.witness) {
      ++incoherent;
      check_witness(x, *report.witness);
    }
  }
  CHECK(incoherent > 100);
}

TEST_CASE("verdict agrees with a stable exact step") {
  // The classical step shares no code with the verifier.
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 150; ++trial) {
    auto x = rainbow_refine(random_matrix(1 + rng() % 10, 1 + rng() % 3, rng()));
    if (trial % 3 == 0) x = classical_closure(x).closure;
    CHECK(verify_coherent(x).coherent == !classical_step(x).refined);
  }
}

TEST_CASE("verdict is invariant under permutation and renaming") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 8;
    auto x = rainbow_refine(random_matrix(n, 1 + rng() % 3, rng()));
    if (trial % 2) x = classical_closure(x).closure;
    const bool verdict = verify_coherent(x).coherent;
    auto perm = wlc::testing::random_permutation(n, rng);
    CHECK(verify_coherent(permute_vertices(x, perm)).coherent == verdict);
    auto rows = x.to_rows();
    for (auto& row : rows)
      for (auto& c : row) c = 1000 - 7 * c;
    CHECK(verify_coherent(ColorMatrix::validate(rows)).coherent == verdict);
  }
}

TEST_CASE("fixtures") {
  CHECK(make_fixture("trivial(4)").color_count() == 2);
  CHECK(make_fixture("cyclic(7)").color_count() == 7);
  CHECK(make_fixture("cycle5").size() == 5);
  CHECK(make_fixture("petersen").size() == 10);
  auto p4 = make_fixture("path(4)");
  CHECK(p4(0, 1) == 2);
  CHECK(p4(0, 2) == 3);
  CHECK(p4(3, 3) == 1);
  CHECK(make_fixture("random(6,3,9)") == make_fixture("random(6,3,9)"));
  CHECK(make_fixture("random(6, 3, 9)") == make_fixture("random(6,3,9)"));

  // Petersen: every vertex has three neighbours.
  auto pet = make_fixture("petersen");
  for (std::size_t u = 0; u < 10; ++u) {
    int deg = 0;
    for (std::size_t v = 0; v < 10; ++v) deg += pet(u, v) == 2;
    CHECK(deg == 3);
  }

  for (const char* bad : {"", "square(3)", "trivial", "trivial(0)", "trivial(2,3)", "random(3,2)", "random(3,0,1)",
                          "path(x)", "cyclic(3", "petersen(1)"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(make_fixture(bad), std::invalid_argument);
  }
}

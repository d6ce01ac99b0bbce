#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "wlc/color_matrix.hpp"

namespace wlc {

using Cell = std::pair<std::size_t, std::size_t>;

/// Why a colouring is not coherent, with two same-coloured cells that
/// demonstrate it.
struct CoherenceWitness {
  enum class Kind {
    loop_arc_clash,     ///< a loop and an arc share a colour
    transpose_split,    ///< the transposes of `first` and `second` differ in colour
    profile_mismatch,   ///< the pair (left, right) occurs a different number of times
  };

  Kind kind = Kind::profile_mismatch;
  Color color = 0;
  Cell first{};
  Cell second{};
  /// profile_mismatch only: the pair and its count at each cell.
  Color left = 0;
  Color right = 0;
  std::size_t first_count = 0;
  std::size_t second_count = 0;

  std::string describe() const;
};

struct CoherenceReport {
  bool coherent = true;
  std::optional<CoherenceWitness> witness;
};

/// Checks the coherent-configuration axioms by direct counting: loop and
/// arc colours disjoint, classes closed under transposition, and for every
/// class the intersection numbers |{w : x(u, w) = i, x(w, v) = j}| do not
/// depend on the choice of (u, v) in the class. The first violation in
/// (colour, row-major cell) order is reported.
CoherenceReport verify_coherent(const ColorMatrix& x);

/// Test corpus. trivial(n): loops 1, arcs 2. cyclic(n): colour of (u, v) is
/// (v - u) mod n. cycle5 / petersen / path(n): loop, edge and non-edge
/// colourings. random(n, r, seed): independent uniform colours in {1..r}.
struct FixtureSpec {
  std::string name;
  std::size_t n = 0;
  std::size_t r = 0;
  std::uint64_t seed = 0;
};

/// Accepts "trivial(5)", "random(10,3,7)", "petersen" and the like.
FixtureSpec parse_fixture(std::string_view text);

ColorMatrix make_fixture(const FixtureSpec& spec);
ColorMatrix make_fixture(std::string_view text);

}  // namespace wlc

#pragma once

// Shared helpers for the test binaries: random inputs and a brute-force
// refinement oracle that shares no code with the library's fingerprint path.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "wlc/coherence.hpp"
#include "wlc/color_matrix.hpp"

namespace wlc::testing {

inline ColorMatrix random_matrix(std::size_t n, std::size_t r, std::uint64_t seed) {
  return make_fixture(FixtureSpec{"random", n, r, seed});
}

inline std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

/// One WL step by direct definition: new colour = (old colour, multiset of
/// (x(u, w), x(w, v))), keyed through std::map so ids follow map order.
inline ColorMatrix oracle_step(const ColorMatrix& x) {
  using Key = std::pair<Color, std::map<std::pair<Color, Color>, int>>;
  const std::size_t n = x.size();
  std::vector<Key> keys(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      Key& k = keys[u * n + v];
      k.first = x(u, v);
      for (std::size_t w = 0; w < n; ++w) ++k.second[{x(u, w), x(w, v)}];
    }
  }
  std::map<Key, Color> ids;
  for (const auto& k : keys) ids.emplace(k, 0);
  Color next = 0;
  for (auto& [k, id] : ids) id = ++next;
  std::vector<Color> cells(n * n);
  for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = ids.at(keys[i]);
  return ColorMatrix::from_canonical(n, std::move(cells));
}

inline ColorMatrix oracle_closure(const ColorMatrix& x) {
  ColorMatrix cur = rainbow_refine(x);
  for (;;) {
    ColorMatrix next = oracle_step(cur);
    if (next.color_count() == cur.color_count()) return cur;
    cur = std::move(next);
  }
}

inline ColorMatrix grid(std::vector<std::vector<std::int64_t>> rows) { return ColorMatrix::validate(rows); }

}  // namespace wlc::testing

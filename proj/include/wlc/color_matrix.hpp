#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace wlc {

using Color = std::uint32_t;

/// Colored complete digraph on n vertices, stored as a dense row-major
/// n x n matrix of colour ids. Colours are always contiguous and
/// surjective onto {1, ..., r}; the loop (u, u) carries the vertex colour.
class ColorMatrix {
public:
  /// How raw colour values are mapped onto {1, ..., r}.
  enum class Renumber {
    first_occurrence,  ///< order of first appearance in row-major scan
    by_value,          ///< preserve the numeric order of the raw values
  };

  ColorMatrix() = default;

  /// Checks a square grid of positive integers and renumbers its colours.
  /// Throws std::invalid_argument on a non-square grid or a non-positive entry.
  static ColorMatrix validate(const std::vector<std::vector<std::int64_t>>& grid,
                              Renumber order = Renumber::first_occurrence);
  static ColorMatrix validate(std::size_t n, std::span<const std::int64_t> cells,
                              Renumber order = Renumber::first_occurrence);

  /// Adopts cells that are already contiguous in {1, ..., r}. Checked.
  static ColorMatrix from_canonical(std::size_t n, std::vector<Color> cells);

  std::size_t size() const noexcept { return n_; }
  std::size_t color_count() const noexcept { return r_; }

  Color operator()(std::size_t u, std::size_t v) const noexcept { return cells_[u * n_ + v]; }
  Color at(std::size_t u, std::size_t v) const;

  std::span<const Color> cells() const noexcept { return cells_; }
  std::vector<std::vector<std::int64_t>> to_rows() const;

  friend bool operator==(const ColorMatrix&, const ColorMatrix&) = default;

private:
  ColorMatrix(std::size_t n, std::size_t r, std::vector<Color> cells)
      : n_{n}, r_{r}, cells_{std::move(cells)} {}

  std::size_t n_ = 0;
  std::size_t r_ = 0;
  std::vector<Color> cells_;
};

struct RefinementOutcome {
  bool refined = false;
  ColorMatrix result;
  /// old_color[c - 1] is the input colour that new colour c was split from.
  std::vector<Color> old_color;
};

struct PartitionView {
  std::size_t class_count = 0;
  /// Cell counts per class, sorted ascending.
  std::vector<std::size_t> class_sizes;

  friend bool operator==(const PartitionView&, const PartitionView&) = default;
};

PartitionView partition_view(const ColorMatrix& x);

/// Cell counts indexed by colour id (entry c - 1 is the size of class c).
std::vector<std::size_t> color_histogram(const ColorMatrix& x);

/// Splits every cell (u, v) into the pair (c(u, v), c(v, u)), and every
/// loop into (c(u, u), r + 1); new ids follow the lexicographic order of
/// the pairs.
ColorMatrix rainbow_refine(const ColorMatrix& x);

/// Vertex colours disjoint from arc colours and every class closed under
/// transposition.
bool is_rainbow(const ColorMatrix& x);

bool is_refinement(const ColorMatrix& fine, const ColorMatrix& coarse);
bool is_same_partition(const ColorMatrix& x, const ColorMatrix& y);

/// Cells of the result are y(perm[u], perm[v]) = x(u, v); colour ids are kept.
ColorMatrix permute_vertices(const ColorMatrix& x, std::span<const std::size_t> perm);

/// True when every loop carries a colour of its own.
bool is_discrete(const ColorMatrix& x);

namespace detail {

/// Assigns ranks to cells ordered by (old colour, key rank); shared tail of refine_by.
RefinementOutcome renumber_sorted(const ColorMatrix& x, std::span<const std::uint32_t> order,
                                  const std::function<bool(std::uint32_t, std::uint32_t)>& same_key);

void require_same_size(const ColorMatrix& a, const ColorMatrix& b);

}  // namespace detail

/// Recolours cell (u, v) by the rank of (x(u, v), values[u * n + v]) among
/// all distinct pairs in lexicographic order. `values` must hold one entry
/// per cell; `less` must be a strict weak order on them.
template <typename T, typename Less = std::less<>>
RefinementOutcome refine_by(const ColorMatrix& x, std::span<const T> values, Less less = {}) {
  const std::size_t cells = x.size() * x.size();
  if (values.size() != cells) {
    throw std::invalid_argument("refine_by: value matrix does not match colour matrix size");
  }
  const auto colors = x.cells();
  std::vector<std::uint32_t> order(cells);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (colors[a] != colors[b]) return colors[a] < colors[b];
    return less(values[a], values[b]);
  });
  return detail::renumber_sorted(x, order, [&](std::uint32_t a, std::uint32_t b) {
    return colors[a] == colors[b] && !less(values[a], values[b]) && !less(values[b], values[a]);
  });
}

template <typename T, typename Less = std::less<>>
RefinementOutcome refine_by(const ColorMatrix& x, const std::vector<T>& values, Less less = {}) {
  return refine_by(x, std::span<const T>{values}, less);
}

}  // namespace wlc

#include "wlc/color_matrix.hpp"

#include <limits>
#include <string>
#include <unordered_map>
#include <utility>

namespace wlc {

namespace {

std::vector<Color> renumber(std::span<const std::int64_t> raw, ColorMatrix::Renumber order,
                            std::size_t& r) {
  std::vector<Color> out(raw.size());
  if (order == ColorMatrix::Renumber::first_occurrence) {
    std::unordered_map<std::int64_t, Color> ids;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      auto [it, inserted] = ids.try_emplace(raw[i], static_cast<Color>(ids.size() + 1));
      out[i] = it->second;
    }
    r = ids.size();
  } else {
    std::vector<std::int64_t> distinct(raw.begin(), raw.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      auto it = std::lower_bound(distinct.begin(), distinct.end(), raw[i]);
      out[i] = static_cast<Color>(it - distinct.begin() + 1);
    }
    r = distinct.size();
  }
  return out;
}

}  // namespace

ColorMatrix ColorMatrix::validate(std::size_t n, std::span<const std::int64_t> cells,
                                  Renumber order) {
  if (n == 0) throw std::invalid_argument("colour matrix must have at least one vertex");
  if (cells.size() != n * n) throw std::invalid_argument("colour matrix is not square");
  for (auto c : cells) {
    if (c <= 0) throw std::invalid_argument("colour ids must be positive, got " + std::to_string(c));
  }
  std::size_t r = 0;
  auto renumbered = renumber(cells, order, r);
  return ColorMatrix{n, r, std::move(renumbered)};
}

ColorMatrix ColorMatrix::validate(const std::vector<std::vector<std::int64_t>>& grid,
                                  Renumber order) {
  const std::size_t n = grid.size();
  std::vector<std::int64_t> flat;
  flat.reserve(n * n);
  for (const auto& row : grid) {
    if (row.size() != n) throw std::invalid_argument("colour matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validate(n, flat, order);
}

ColorMatrix ColorMatrix::from_canonical(std::size_t n, std::vector<Color> cells) {
  if (n == 0 || cells.size() != n * n) {
    throw std::invalid_argument("from_canonical: bad dimensions");
  }
  Color r = 0;
  for (auto c : cells) r = std::max(r, c);
  std::vector<bool> seen(r + 1, false);
  for (auto c : cells) {
    if (c == 0) throw std::invalid_argument("from_canonical: colour 0 is not allowed");
    seen[c] = true;
  }
  if (std::find(seen.begin() + 1, seen.end(), false) != seen.end()) {
    throw std::invalid_argument("from_canonical: colours are not contiguous");
  }
  return ColorMatrix{n, r, std::move(cells)};
}

Color ColorMatrix::at(std::size_t u, std::size_t v) const {
  if (u >= n_ || v >= n_) throw std::out_of_range("ColorMatrix::at");
  return (*this)(u, v);
}

std::vector<std::vector<std::int64_t>> ColorMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> rows(n_, std::vector<std::int64_t>(n_));
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = 0; v < n_; ++v) rows[u][v] = (*this)(u, v);
  return rows;
}

std::vector<std::size_t> color_histogram(const ColorMatrix& x) {
  std::vector<std::size_t> sizes(x.color_count(), 0);
  for (auto c : x.cells()) ++sizes[c - 1];
  return sizes;
}

PartitionView partition_view(const ColorMatrix& x) {
  auto sizes = color_histogram(x);
  std::sort(sizes.begin(), sizes.end());
  return {x.color_count(), std::move(sizes)};
}

namespace detail {

RefinementOutcome renumber_sorted(const ColorMatrix& x, std::span<const std::uint32_t> order,
                                  const std::function<bool(std::uint32_t, std::uint32_t)>& same_key) {
  const auto old = x.cells();
  std::vector<Color> cells(old.size());
  std::vector<Color> parent;
  Color next = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || !same_key(order[i - 1], order[i])) {
      ++next;
      parent.push_back(old[order[i]]);
    }
    cells[order[i]] = next;
  }
  RefinementOutcome out;
  out.refined = next > x.color_count();
  out.result = ColorMatrix::from_canonical(x.size(), std::move(cells));
  out.old_color = std::move(parent);
  return out;
}

void require_same_size(const ColorMatrix& a, const ColorMatrix& b) {
  if (a.size() != b.size()) throw std::invalid_argument("colour matrices differ in size");
}

}  // namespace detail

ColorMatrix rainbow_refine(const ColorMatrix& x) {
  const std::size_t n = x.size();
  const auto loop_marker = static_cast<std::uint64_t>(x.color_count()) + 1;
  std::vector<std::uint64_t> pairs(n * n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const std::uint64_t second = u == v ? loop_marker : x(v, u);
      pairs[u * n + v] = (static_cast<std::uint64_t>(x(u, v)) << 32) | second;
    }
  }
  std::vector<std::uint64_t> keys = pairs;
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<Color> cells(n * n);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    cells[i] = static_cast<Color>(std::lower_bound(keys.begin(), keys.end(), pairs[i]) - keys.begin() + 1);
  }
  return ColorMatrix::from_canonical(n, std::move(cells));
}

bool is_rainbow(const ColorMatrix& x) {
  const std::size_t n = x.size();
  const std::size_t r = x.color_count();
  // 0 = unseen, 1 = loop colour, 2 = arc colour
  std::vector<std::uint8_t> kind(r + 1, 0);
  std::vector<Color> transpose(r + 1, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const Color c = x(u, v);
      const std::uint8_t k = u == v ? 1 : 2;
      if (kind[c] != 0 && kind[c] != k) return false;
      kind[c] = k;
      if (transpose[c] != 0 && transpose[c] != x(v, u)) return false;
      transpose[c] = x(v, u);
    }
  }
  return true;
}

bool is_refinement(const ColorMatrix& fine, const ColorMatrix& coarse) {
  detail::require_same_size(fine, coarse);
  std::vector<Color> image(fine.color_count() + 1, 0);
  const auto f = fine.cells();
  const auto c = coarse.cells();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (image[f[i]] == 0) {
      image[f[i]] = c[i];
    } else if (image[f[i]] != c[i]) {
      return false;
    }
  }
  return true;
}

bool is_same_partition(const ColorMatrix& x, const ColorMatrix& y) {
  detail::require_same_size(x, y);
  return x.color_count() == y.color_count() && is_refinement(x, y);
}

ColorMatrix permute_vertices(const ColorMatrix& x, std::span<const std::size_t> perm) {
  const std::size_t n = x.size();
  if (perm.size() != n) throw std::invalid_argument("permutation has wrong length");
  std::vector<bool> hit(n, false);
  for (auto p : perm) {
    if (p >= n || hit[p]) throw std::invalid_argument("not a permutation");
    hit[p] = true;
  }
  std::vector<Color> cells(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) cells[perm[u] * n + perm[v]] = x(u, v);
  return ColorMatrix::from_canonical(n, std::move(cells));
}

bool is_discrete(const ColorMatrix& x) {
  std::vector<bool> seen(x.color_count() + 1, false);
  for (std::size_t u = 0; u < x.size(); ++u) {
    const Color c = x(u, u);
    if (seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

}  // namespace wlc

#include "wlc/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wlc {

std::string_view stop_reason_name(StopReason r) {
  return r == StopReason::stable ? "stable" : "budget_exhausted";
}

namespace {

// Packs (x(u, w), x(w, v)) so that integer order equals lexicographic pair order.
inline std::uint64_t pack(Color left, Color right) {
  return (static_cast<std::uint64_t>(left) << 32) | right;
}

void fingerprint_into(const ColorMatrix& x, std::size_t u, std::size_t v,
                      std::vector<std::uint64_t>& scratch, Fingerprint& out) {
  const std::size_t n = x.size();
  scratch.resize(n);
  for (std::size_t w = 0; w < n; ++w) scratch[w] = pack(x(u, w), x(w, v));
  std::sort(scratch.begin(), scratch.end());
  out.clear();
  for (std::size_t w = 0; w < n; ++w) {
    if (!out.empty() && pack(out.back().left, out.back().right) == scratch[w]) {
      ++out.back().count;
    } else {
      out.push_back({static_cast<Color>(scratch[w] >> 32), static_cast<Color>(scratch[w] & 0xffffffffu), 1});
    }
  }
}

}  // namespace

FingerprintMatrix noncommutative_product(const ColorMatrix& x) {
  const std::size_t n = x.size();
  FingerprintMatrix a{n, std::vector<Fingerprint>(n * n)};
  std::vector<std::uint64_t> scratch;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) fingerprint_into(x, u, v, scratch, a.cells[u * n + v]);
  return a;
}

RefinementOutcome classical_step(const ColorMatrix& x) {
  const std::size_t n = x.size();
  const std::size_t r = x.color_count();

  // Bucket cells by colour; buckets are already in row-major order.
  std::vector<std::uint32_t> start(r + 1, 0);
  for (auto c : x.cells()) ++start[c];
  std::partial_sum(start.begin(), start.end(), start.begin());
  std::vector<std::uint32_t> by_color(n * n);
  {
    std::vector<std::uint32_t> fill(start.begin(), start.end() - 1);
    const auto cells = x.cells();
    for (std::uint32_t i = 0; i < cells.size(); ++i) by_color[fill[cells[i] - 1]++] = i;
  }

  // Ranking within each class by fingerprint gives the same global order as
  // sorting all (colour, fingerprint) keys at once.
  std::vector<Color> result(n * n);
  std::vector<Color> parent;
  std::vector<Fingerprint> prints;
  std::vector<std::uint32_t> order;
  std::vector<std::uint64_t> scratch;
  Color next = 0;
  for (Color c = 1; c <= r; ++c) {
    const auto first = by_color.begin() + start[c - 1];
    const auto last = by_color.begin() + start[c];
    const std::size_t size = static_cast<std::size_t>(last - first);
    prints.resize(size);
    for (std::size_t i = 0; i < size; ++i) {
      const std::uint32_t cell = first[i];
      fingerprint_into(x, cell / n, cell % n, scratch, prints[i]);
    }
    order.resize(size);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return prints[a] < prints[b]; });
    for (std::size_t i = 0; i < size; ++i) {
      if (i == 0 || prints[order[i - 1]] != prints[order[i]]) {
        ++next;
        parent.push_back(c);
      }
      result[first[order[i]]] = next;
    }
  }

  RefinementOutcome out;
  out.refined = next > r;
  out.result = ColorMatrix::from_canonical(n, std::move(result));
  out.old_color = std::move(parent);
  return out;
}

WlResult classical_closure(const ColorMatrix& x, const StepObserver& observe) {
  WlResult res;
  res.closure = rainbow_refine(x);
  res.trace.push_back(res.closure.color_count());
  if (observe) observe(0, res.closure);

  const std::size_t n = x.size();
  const std::size_t cap = n * n - res.closure.color_count() + 1;
  for (;;) {
    if (res.iterations >= cap) {
      throw InternalError("classical_closure exceeded " + std::to_string(cap) + " steps");
    }
    auto step = classical_step(res.closure);
    ++res.iterations;
    if (step.result.color_count() < res.closure.color_count()) {
      throw InternalError("classical_step lost colour classes");
    }
    res.trace.push_back(step.result.color_count());
    if (!step.refined) {
      if (observe) observe(res.iterations, res.closure);
      break;
    }
    ++res.refining_iterations;
    res.closure = std::move(step.result);
    if (observe) observe(res.iterations, res.closure);
  }
  res.stop_reason = StopReason::stable;
  return res;
}

std::size_t iteration_budget(std::size_t n, double c) {
  if (n == 0) throw std::invalid_argument("iteration_budget: n must be positive");
  if (!(c > 0)) throw std::invalid_argument("iteration_budget: C must be positive");
  if (n == 1) return 1;
  const double raw = c * static_cast<double>(n) * std::log2(static_cast<double>(n));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(raw)));
}

}  // namespace wlc

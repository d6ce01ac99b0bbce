#include "wlc/probabilistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace wlc {

std::int64_t ValueMatrix::max() const {
  return cells.empty() ? 0 : *std::max_element(cells.begin(), cells.end());
}

std::string_view policy_name(StoppingPolicy::Mode mode) {
  return mode == StoppingPolicy::Mode::practical ? "practical" : "theoretical";
}

void validate_params(const RunParams& params) {
  if (params.m < 2) throw std::invalid_argument("m must be at least 2");
  if (params.policy.mode == StoppingPolicy::Mode::practical && params.policy.k < 1) {
    throw std::invalid_argument("k must be at least 1");
  }
  if (params.policy.mode == StoppingPolicy::Mode::theoretical && !(params.policy.c > 0)) {
    throw std::invalid_argument("C must be positive");
  }
}

void check_overflow_guard(std::size_t n, std::int64_t m) {
  const auto bound = static_cast<unsigned __int128>(n) * static_cast<unsigned __int128>(m) *
                     static_cast<unsigned __int128>(m);
  if (m < 0 || bound > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
    throw OverflowError("n * m^2 exceeds the 64-bit range (n = " + std::to_string(n) +
                        ", m = " + std::to_string(m) + ")");
  }
}

RandomSubstitution draw_substitution(std::size_t r, std::int64_t m, RandomStream& rng) {
  if (m < 2) throw std::invalid_argument("draw_substitution: m must be at least 2");
  if (r < 1) throw std::invalid_argument("draw_substitution: need at least one colour");
  RandomSubstitution sub{m, std::vector<std::int64_t>(r), std::vector<std::int64_t>(r)};
  const auto bound = static_cast<std::uint64_t>(m);
  for (auto& v : sub.left) v = static_cast<std::int64_t>(draw_uniform(rng, bound));
  for (auto& v : sub.right) v = static_cast<std::int64_t>(draw_uniform(rng, bound));
  return sub;
}

ValueMatrix numeric_product(const ColorMatrix& x, const RandomSubstitution& sub, Backend backend) {
  const std::size_t n = x.size();
  if (sub.left.size() < x.color_count() || sub.right.size() < x.color_count()) {
    throw std::invalid_argument("numeric_product: substitution has fewer entries than colours");
  }
  check_overflow_guard(n, sub.m);
  IntMatrix l(n, n), r(n, n);
  const auto colors = x.cells();
  for (std::size_t i = 0; i < colors.size(); ++i) {
    l.data()[i] = sub.left[colors[i] - 1];
    r.data()[i] = sub.right[colors[i] - 1];
  }
  auto product = multiply(l, r, backend);
  return {n, std::vector<std::int64_t>(product.data().begin(), product.data().end())};
}

ProbabilisticStep probabilistic_step(const ColorMatrix& x, std::int64_t m, RandomStream& rng, Backend backend) {
  const auto sub = draw_substitution(x.color_count(), m, rng);
  const auto values = numeric_product(x, sub, backend);
  const std::int64_t top = values.max();
  // Each entry is a sum of n products of values in {1, ..., m}.
  const auto n = static_cast<std::int64_t>(x.size());
  if (top > n * m * m || *std::min_element(values.cells.begin(), values.cells.end()) < n) {
    throw InternalError("numeric product entry out of range");
  }
  return {refine_by(x, values.cells), top};
}

namespace {

// Shared driver for a single run; `advance` performs one step and returns it.
template <typename Advance>
void run_policy(WlResult& res, std::size_t n, const StoppingPolicy& policy, Advance advance) {
  const std::size_t refine_cap = n * n - res.closure.color_count() + 1;
  auto one = [&] {
    auto step = advance(res.closure);
    ++res.iterations;
    if (step.outcome.result.color_count() < res.closure.color_count()) {
      throw InternalError("probabilistic step lost colour classes");
    }
    res.max_value = std::max(res.max_value, step.max_value);
    res.trace.push_back(step.outcome.result.color_count());
    if (step.outcome.refined) {
      if (++res.refining_iterations > refine_cap) {
        throw InternalError("more than " + std::to_string(refine_cap) + " refining steps");
      }
    }
    res.closure = std::move(step.outcome.result);
    return step.outcome.refined;
  };
  if (policy.mode == StoppingPolicy::Mode::theoretical) {
    const std::size_t budget = iteration_budget(n, policy.c);
    for (std::size_t i = 0; i < budget; ++i) one();
    res.stop_reason = StopReason::budget_exhausted;
  } else {
    std::size_t quiet = 0;
    while (quiet < policy.k) quiet = one() ? 0 : quiet + 1;
    res.stop_reason = StopReason::stable;
  }
}

}  // namespace

WlResult probabilistic_closure(const ColorMatrix& x, const RunParams& params, const StepObserver& observe) {
  validate_params(params);
  check_overflow_guard(x.size(), params.m);
  RandomStream rng(params.seed);
  WlResult res;
  res.closure = rainbow_refine(x);
  res.trace.push_back(res.closure.color_count());
  if (observe) observe(0, res.closure);
  run_policy(res, x.size(), params.policy, [&](const ColorMatrix& cur) {
    auto step = probabilistic_step(cur, params.m, rng, params.backend);
    if (observe) observe(res.iterations + 1, step.outcome.result);
    return step;
  });
  return res;
}

bool check_coherent(const ColorMatrix& x, std::int64_t m, std::size_t trials, RandomStream& rng, Backend backend) {
  if (m < 2) throw std::invalid_argument("check_coherent: m must be at least 2");
  if (trials < 1) throw std::invalid_argument("check_coherent: trials must be positive");
  check_overflow_guard(x.size(), m);
  if (!is_rainbow(x)) return false;
  for (std::size_t t = 0; t < trials; ++t) {
    if (probabilistic_step(x, m, rng, backend).outcome.refined) return false;
  }
  return true;
}

double error_bound(std::size_t n, double m, double c) {
  if (n == 0) throw std::invalid_argument("error_bound: n must be positive");
  if (n == 1) return 0.0;
  const double nd = static_cast<double>(n);
  if (m <= 2.0 * std::pow(nd, 4)) return 1.0;
  return std::min(1.0, 2.0 * c * std::pow(nd, 5) * std::log2(nd) / m);
}

double practical_miss_bound(std::int64_t m, std::size_t k) {
  return std::pow(2.0 / static_cast<double>(m), static_cast<double>(k));
}

PairedResult paired_closure(const ColorMatrix& x, const ColorMatrix& y, const RunParams& params) {
  detail::require_same_size(x, y);
  validate_params(params);
  const std::size_t n = x.size();
  check_overflow_guard(n, params.m);
  RandomStream rng(params.seed);

  PairedResult out;
  WlResult* sides[2] = {&out.first, &out.second};
  std::vector<std::vector<std::size_t>>* hist[2] = {&out.first_histograms, &out.second_histograms};
  const ColorMatrix* inputs[2] = {&x, &y};
  std::size_t quiet[2] = {0, 0};
  bool done[2] = {false, false};
  std::size_t refine_cap[2];

  for (int s = 0; s < 2; ++s) {
    sides[s]->closure = rainbow_refine(*inputs[s]);
    sides[s]->trace.push_back(sides[s]->closure.color_count());
    hist[s]->push_back(color_histogram(sides[s]->closure));
    refine_cap[s] = n * n - sides[s]->closure.color_count() + 1;
  }
  if ((*hist[0])[0] != (*hist[1])[0]) out.diverged_at = 0;

  const bool theoretical = params.policy.mode == StoppingPolicy::Mode::theoretical;
  const std::size_t budget = theoretical ? iteration_budget(n, params.policy.c) : 0;
  for (std::size_t step = 1; !(done[0] && done[1]); ++step) {
    const std::size_t r = std::max(out.first.closure.color_count(), out.second.closure.color_count());
    const auto sub = draw_substitution(r, params.m, rng);
    for (int s = 0; s < 2; ++s) {
      WlResult& res = *sides[s];
      if (!done[s]) {
        const auto values = numeric_product(res.closure, sub, params.backend);
        auto outcome = refine_by(res.closure, values.cells);
        ++res.iterations;
        res.max_value = std::max(res.max_value, values.max());
        res.trace.push_back(outcome.result.color_count());
        if (outcome.refined) {
          quiet[s] = 0;
          if (++res.refining_iterations > refine_cap[s]) throw InternalError("paired_closure: too many refining steps");
        } else {
          ++quiet[s];
        }
        res.closure = std::move(outcome.result);
        done[s] = theoretical ? res.iterations >= budget : quiet[s] >= params.policy.k;
        res.stop_reason = theoretical ? StopReason::budget_exhausted : StopReason::stable;
      }
      hist[s]->push_back(color_histogram(res.closure));
    }
    if (!out.diverged_at && out.first_histograms.back() != out.second_histograms.back()) out.diverged_at = step;
  }

  if (!out.diverged_at && is_discrete(out.first.closure) && is_discrete(out.second.closure)) {
    std::vector<std::size_t> vertex_of_color(out.second.closure.color_count() + 1, n);
    for (std::size_t v = 0; v < n; ++v) vertex_of_color[out.second.closure(v, v)] = v;
    std::vector<std::size_t> mapping(n);
    bool complete = true;
    for (std::size_t u = 0; u < n; ++u) {
      const Color c = out.first.closure(u, u);
      mapping[u] = c < vertex_of_color.size() ? vertex_of_color[c] : n;
      complete = complete && mapping[u] < n;
    }
    if (complete) out.mapping = std::move(mapping);
  }
  return out;
}

bool is_isomorphism(const ColorMatrix& x, const ColorMatrix& y, const std::vector<std::size_t>& mapping) {
  const std::size_t n = x.size();
  if (y.size() != n || mapping.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (auto v : mapping) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (y(mapping[u], mapping[v]) != x(u, v)) return false;
  return true;
}

}  // namespace wlc

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "wlc/classical.hpp"
#include "wlc/color_matrix.hpp"
#include "wlc/matmul.hpp"
#include "wlc/rng.hpp"

namespace wlc {

/// Random values substituted for the colour variables: the left factor of
/// the product uses left[c - 1] for colour c, the right factor right[c - 1].
struct RandomSubstitution {
  std::int64_t m = 0;
  std::vector<std::int64_t> left;
  std::vector<std::int64_t> right;
};

/// Cell-wise exact integer product of the substituted matrices.
struct ValueMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> cells;

  std::int64_t operator()(std::size_t u, std::size_t v) const { return cells[u * n + v]; }
  std::int64_t max() const;
};

struct StoppingPolicy {
  enum class Mode { theoretical, practical };

  Mode mode = Mode::practical;
  /// Theoretical mode: run iteration_budget(n, c) steps.
  double c = 1.0;
  /// Practical mode: stop after k consecutive non-refining steps.
  std::size_t k = 3;

  static StoppingPolicy theoretical(double c) { return {Mode::theoretical, c, 3}; }
  static StoppingPolicy practical(std::size_t k) { return {Mode::practical, 1.0, k}; }
};

std::string_view policy_name(StoppingPolicy::Mode mode);

struct RunParams {
  std::int64_t m = 1'000'000;
  StoppingPolicy policy{};
  std::uint64_t seed = 0;
  Backend backend = Backend::blocked;
};

/// Rejects m < 2, k < 1 and C <= 0 with std::invalid_argument.
void validate_params(const RunParams& params);

/// Throws OverflowError unless n * m^2 fits in a signed 64-bit integer.
void check_overflow_guard(std::size_t n, std::int64_t m);

/// Draws left[0..r) and then right[0..r), each uniform on {1, ..., m}.
RandomSubstitution draw_substitution(std::size_t r, std::int64_t m, RandomStream& rng);

/// value(u, v) = sum_w left[x(u, w)] * right[x(w, v)].
ValueMatrix numeric_product(const ColorMatrix& x, const RandomSubstitution& sub,
                            Backend backend = Backend::blocked);

struct ProbabilisticStep {
  RefinementOutcome outcome;
  std::int64_t max_value = 0;
};

/// Refines x by the numeric product under a freshly drawn substitution.
ProbabilisticStep probabilistic_step(const ColorMatrix& x, std::int64_t m, RandomStream& rng,
                                     Backend backend = Backend::blocked);

/// Rainbow preprocessing followed by probabilistic steps until the policy
/// stops. Colour ids of the result depend on the random draws.
WlResult probabilistic_closure(const ColorMatrix& x, const RunParams& params,
                               const StepObserver& observe = {});

/// One-sided coherence test. A non-rainbow input is reported false without
/// sampling; otherwise returns false as soon as one of `trials` steps
/// splits a class.
bool check_coherent(const ColorMatrix& x, std::int64_t m, std::size_t trials, RandomStream& rng,
                    Backend backend = Backend::blocked);

/// min(1, 2 C n^5 log2(n) / m); 1 when m <= 2 n^4, 0 when n = 1.
/// For reporting only.
double error_bound(std::size_t n, double m, double c);

/// (2 / m)^k, the chance that k consecutive steps all miss an existing split.
double practical_miss_bound(std::int64_t m, std::size_t k);

struct PairedResult {
  WlResult first;
  WlResult second;
  /// Per step (index 0 = rainbow) colour-id histograms of both sides.
  std::vector<std::vector<std::size_t>> first_histograms;
  std::vector<std::vector<std::size_t>> second_histograms;
  /// First step whose histograms differ, if any.
  std::optional<std::size_t> diverged_at;
  /// mapping[u] is the vertex of the second graph whose loop colour equals
  /// that of u in the first; present when both closures are discrete and agree.
  std::optional<std::vector<std::size_t>> mapping;
};

/// Runs both closures in lock step from one random stream: each step draws
/// a single substitution that both sides index by colour id.
PairedResult paired_closure(const ColorMatrix& x, const ColorMatrix& y, const RunParams& params);

/// True when mapping is a bijection with y(map u, map v) = x(u, v) for all u, v.
bool is_isomorphism(const ColorMatrix& x, const ColorMatrix& y, const std::vector<std::size_t>& mapping);

}  // namespace wlc

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "wlc/color_matrix.hpp"

namespace wlc {

/// A run hit a state that monotone refinement can never reach.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// One term x_left * x_right of a noncommutative product entry, with its
/// multiplicity.
struct PairCount {
  Color left = 0;
  Color right = 0;
  std::uint32_t count = 0;

  friend auto operator<=>(const PairCount&, const PairCount&) = default;
};

/// Entry of the noncommutative product: terms strictly sorted by (left, right).
using Fingerprint = std::vector<PairCount>;

struct FingerprintMatrix {
  std::size_t n = 0;
  std::vector<Fingerprint> cells;  // row-major

  const Fingerprint& operator()(std::size_t u, std::size_t v) const { return cells[u * n + v]; }
};

enum class StopReason { stable, budget_exhausted };

std::string_view stop_reason_name(StopReason r);

struct WlResult {
  ColorMatrix closure;
  /// Steps of the iteration loop executed after the rainbow preprocessing.
  std::size_t iterations = 0;
  /// Steps among those that split at least one class.
  std::size_t refining_iterations = 0;
  /// trace[0] is the class count after rainbow_refine, trace[i] after step i.
  std::vector<std::size_t> trace;
  StopReason stop_reason = StopReason::stable;
  /// Largest numeric product entry seen; 0 for the exact algorithm.
  std::int64_t max_value = 0;
};

/// Called with (step index, colouring after that step); index 0 is the
/// rainbow colouring.
using StepObserver = std::function<void(std::size_t, const ColorMatrix&)>;

/// Cell (u, v) is the multiset {(x(u, w), x(w, v)) : w}.
FingerprintMatrix noncommutative_product(const ColorMatrix& x);

/// Equivalent to refine_by(x, noncommutative_product(x)) under the
/// lexicographic fingerprint order, but only materializes one colour class
/// of fingerprints at a time.
RefinementOutcome classical_step(const ColorMatrix& x);

/// Rainbow preprocessing followed by classical steps until nothing splits.
/// Colour ids of the result depend only on the input colouring up to
/// vertex renumbering.
WlResult classical_closure(const ColorMatrix& x, const StepObserver& observe = {});

/// ceil(C * n * log2 n), and 1 for n = 1.
std::size_t iteration_budget(std::size_t n, double c);

}  // namespace wlc

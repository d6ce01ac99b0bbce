#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace wlc {

/// Raised whenever an exact integer result would not fit in 64 bits.
class OverflowError : public std::overflow_error {
public:
  using std::overflow_error::overflow_error;
};

/// Dense row-major matrix of signed 64-bit integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0)
      : rows_{rows}, cols_{cols}, data_(rows * cols, fill) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  std::int64_t& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<std::int64_t> data() noexcept { return data_; }
  std::span<const std::int64_t> data() const noexcept { return data_; }

  /// Largest absolute entry; 0 for an empty matrix.
  std::int64_t max_abs() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

enum class Backend {
  naive,    ///< i-j-k reference loop
  blocked,  ///< cache-tiled i-k-j loop, kBlockTile x kBlockTile tiles
};

inline constexpr std::size_t kBlockTile = 64;

Backend parse_backend(std::string_view name);
std::string_view backend_name(Backend b);

/// Exact product A * B. When the entry magnitudes cannot prove the result
/// fits in int64, every multiply and add is overflow-checked instead.
/// Throws std::invalid_argument on non-conformable shapes and OverflowError
/// if any intermediate value leaves the int64 range.
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, Backend backend = Backend::blocked);

struct BenchRow {
  std::size_t n = 0;
  double median_seconds = 0.0;
};

/// Times multiply on random n x n matrices with entries in {1, ..., 10^6}.
std::vector<BenchRow> bench_multiply(std::span<const std::size_t> sizes, Backend backend,
                                     std::size_t repetitions, std::uint64_t seed = 1);

}  // namespace wlc

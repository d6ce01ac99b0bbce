#include "wlc/matmul.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <string>

#include "wlc/rng.hpp"

namespace wlc {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<std::int64_t> data)
    : rows_{rows}, cols_{cols}, data_{std::move(data)} {
  if (data_.size() != rows * cols) throw std::invalid_argument("IntMatrix: data size mismatch");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::int64_t IntMatrix::max_abs() const {
  std::int64_t best = 0;
  for (auto v : data_) {
    if (v == std::numeric_limits<std::int64_t>::min()) return v;  // |v| not representable
    best = std::max(best, v < 0 ? -v : v);
  }
  return best;
}

Backend parse_backend(std::string_view name) {
  if (name == "naive") return Backend::naive;
  if (name == "blocked") return Backend::blocked;
  throw std::invalid_argument("unknown matmul backend: " + std::string(name));
}

std::string_view backend_name(Backend b) {
  return b == Backend::naive ? "naive" : "blocked";
}

namespace {

struct Unchecked {
  static std::int64_t mul(std::int64_t a, std::int64_t b) { return a * b; }
  static std::int64_t add(std::int64_t a, std::int64_t b) { return a + b; }
};

struct Checked {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in matrix product");
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in matrix product");
    return r;
  }
};

template <typename Arith>
void naive_kernel(const IntMatrix& a, const IntMatrix& b, IntMatrix& c) {
  const std::size_t inner = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::int64_t sum = 0;
      for (std::size_t k = 0; k < inner; ++k) sum = Arith::add(sum, Arith::mul(a(i, k), b(k, j)));
      c(i, j) = sum;
    }
  }
}

template <typename Arith>
void blocked_kernel(const IntMatrix& a, const IntMatrix& b, IntMatrix& c) {
  const std::size_t rows = a.rows();
  const std::size_t inner = a.cols();
  const std::size_t cols = b.cols();
  const std::int64_t* pa = a.data().data();
  const std::int64_t* pb = b.data().data();
  std::int64_t* pc = c.data().data();
  for (std::size_t ii = 0; ii < rows; ii += kBlockTile) {
    const std::size_t i_end = std::min(ii + kBlockTile, rows);
    for (std::size_t kk = 0; kk < inner; kk += kBlockTile) {
      const std::size_t k_end = std::min(kk + kBlockTile, inner);
      for (std::size_t jj = 0; jj < cols; jj += kBlockTile) {
        const std::size_t j_end = std::min(jj + kBlockTile, cols);
        for (std::size_t i = ii; i < i_end; ++i) {
          std::int64_t* crow = pc + i * cols;
          for (std::size_t k = kk; k < k_end; ++k) {
            const std::int64_t aik = pa[i * inner + k];
            const std::int64_t* brow = pb + k * cols;
            for (std::size_t j = jj; j < j_end; ++j) {
              crow[j] = Arith::add(crow[j], Arith::mul(aik, brow[j]));
            }
          }
        }
      }
    }
  }
}

// True when inner * max|A| * max|B| <= INT64_MAX, which bounds every
// partial sum of every output entry.
bool provably_safe(const IntMatrix& a, const IntMatrix& b) {
  const std::int64_t ma = a.max_abs();
  const std::int64_t mb = b.max_abs();
  if (ma < 0 || mb < 0) return false;
  const unsigned __int128 bound = static_cast<unsigned __int128>(ma) * static_cast<unsigned __int128>(mb) *
                                  static_cast<unsigned __int128>(a.cols());
  return bound <= static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max());
}

}  // namespace

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, Backend backend) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  const bool safe = provably_safe(a, b);
  if (backend == Backend::naive) {
    safe ? naive_kernel<Unchecked>(a, b, c) : naive_kernel<Checked>(a, b, c);
  } else {
    safe ? blocked_kernel<Unchecked>(a, b, c) : blocked_kernel<Checked>(a, b, c);
  }
  return c;
}

std::vector<BenchRow> bench_multiply(std::span<const std::size_t> sizes, Backend backend,
                                     std::size_t repetitions, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<BenchRow> rows;
  for (auto n : sizes) {
    if (n == 0) throw std::invalid_argument("bench_multiply: sizes must be positive");
    IntMatrix a(n, n), b(n, n);
    for (auto& v : a.data()) v = static_cast<std::int64_t>(draw_uniform(rng, 1'000'000));
    for (auto& v : b.data()) v = static_cast<std::int64_t>(draw_uniform(rng, 1'000'000));
    std::vector<double> times;
    for (std::size_t rep = 0; rep < std::max<std::size_t>(repetitions, 1); ++rep) {
      const auto start = std::chrono::steady_clock::now();
      auto c = multiply(a, b, backend);
      const auto stop = std::chrono::steady_clock::now();
      if (c.rows() != n) throw std::logic_error("bench_multiply: bad product");
      times.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    rows.push_back({n, times[times.size() / 2]});
  }
  return rows;
}

}  // namespace wlc

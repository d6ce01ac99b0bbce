#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "wlc/matmul.hpp"

namespace wlc::cli {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;  ///< "not coherent", "diverged"
inline constexpr int kExitInput = 2;     ///< unreadable input, bad arguments
inline constexpr int kExitOverflow = 3;  ///< n * m^2 does not fit in 64 bits
inline constexpr int kExitInternal = 4;

/// Defaults for the run parameters. Built-in values can be overridden by a
/// `key = value` file named in WLC_CONFIG (keys: mode, policy, m, k, C,
/// backend, trials).
struct Defaults {
  std::string mode = "mc";
  std::string policy = "practical";
  std::int64_t m = 1'000'000;
  std::size_t k = 3;
  double c = 1.0;
  std::string backend = "blocked";
  std::size_t trials = 1;
};

Defaults load_defaults();
Defaults load_defaults(const std::filesystem::path& config);

/// Ordered `key: value` lines.
class RunReport {
public:
  template <typename T>
  void add(std::string key, const T& value) {
    if constexpr (std::is_convertible_v<const T&, std::string>) {
      lines_.emplace_back(std::move(key), std::string(value));
    } else if constexpr (std::is_same_v<T, bool>) {
      lines_.emplace_back(std::move(key), value ? "true" : "false");
    } else if constexpr (std::is_floating_point_v<T>) {
      lines_.emplace_back(std::move(key), format_double(value));
    } else {
      lines_.emplace_back(std::move(key), std::to_string(value));
    }
  }

  const std::vector<std::pair<std::string, std::string>>& lines() const { return lines_; }
  std::optional<std::string> get(const std::string& key) const;
  void print(std::ostream& out) const;

  /// Shortest round-trippable text for d.
  static std::string format_double(double d);

private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

struct CloseOptions {
  std::filesystem::path input;
  std::string mode = "mc";
  std::string policy = "practical";
  std::int64_t m = 1'000'000;
  std::size_t k = 3;
  double c = 1.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
  Backend backend = Backend::blocked;
  bool print_closure = false;
  bool measure_memory = false;
};

struct CheckOptions {
  std::filesystem::path input;
  std::int64_t m = 1'000'000;
  std::size_t trials = 1;
  std::optional<std::uint64_t> seed;
  bool exact = false;
  Backend backend = Backend::blocked;
};

struct IsopairOptions {
  std::filesystem::path first;
  std::filesystem::path second;
  std::int64_t m = 1'000'000;
  std::size_t k = 3;
  std::optional<std::uint64_t> seed;
  Backend backend = Backend::blocked;
};

struct BenchOptions {
  std::vector<std::size_t> sizes{64, 128, 256};
  std::string mode = "mc";  ///< mc, exact or both
  std::uint64_t seed = 1;
  std::size_t reps = 3;
  std::size_t colors = 4;
  std::size_t max_size = 4096;
  bool closure = true;
  Backend backend = Backend::blocked;
};

struct GenOptions {
  /// Fixture name followed by its numeric arguments, e.g. {"random", "10", "3"}.
  std::vector<std::string> fixture;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out;
};

int run_close(const CloseOptions& opts, std::ostream& out, std::ostream& err);
int run_check(const CheckOptions& opts, std::ostream& out, std::ostream& err);
int run_isopair(const IsopairOptions& opts, std::ostream& out, std::ostream& err);
int run_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err);
int run_gen(const GenOptions& opts, std::ostream& out, std::ostream& err);

/// Fresh seed from std::random_device.
std::uint64_t entropy_seed();

/// Peak resident set size of this process in KiB (VmHWM), or 0 if unknown.
std::size_t peak_rss_kib();

}  // namespace wlc::cli

#include "wlc/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "wlc/classical.hpp"
#include "wlc/coherence.hpp"
#include "wlc/graph_file.hpp"
#include "wlc/probabilistic.hpp"

namespace wlc::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string join(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

StoppingPolicy make_policy(const std::string& name, std::size_t k, double c) {
  if (name == "practical") return StoppingPolicy::practical(k);
  if (name == "theoretical") return StoppingPolicy::theoretical(c);
  throw std::invalid_argument("unknown policy '" + name + "' (expected practical or theoretical)");
}

// Runs `body`, translating the library's exceptions into exit codes.
template <typename Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOverflow;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace

std::string RunReport::format_double(double d) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(d);
}

std::optional<std::string> RunReport::get(const std::string& key) const {
  for (const auto& [k, v] : lines_)
    if (k == key) return v;
  return std::nullopt;
}

void RunReport::print(std::ostream& out) const {
  for (const auto& [k, v] : lines_) out << k << ": " << v << '\n';
}

Defaults load_defaults(const std::filesystem::path& config) {
  Defaults d;
  std::ifstream in(config);
  if (!in) throw std::invalid_argument("cannot read config " + config.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(config.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "mode") d.mode = value;
    else if (key == "policy") d.policy = value;
    else if (key == "m") d.m = std::stoll(value);
    else if (key == "k") d.k = std::stoul(value);
    else if (key == "C") d.c = std::stod(value);
    else if (key == "backend") d.backend = value;
    else if (key == "trials") d.trials = std::stoul(value);
    else throw std::invalid_argument(config.string() + ": unknown key '" + key + "'");
  }
  return d;
}

Defaults load_defaults() {
  if (const char* path = std::getenv("WLC_CONFIG"); path && *path) return load_defaults(path);
  return {};
}

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::size_t peak_rss_kib() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) return std::stoul(line.substr(6));
  }
  return 0;
}

int run_close(const CloseOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.mode != "exact" && opts.mode != "mc") {
      throw std::invalid_argument("unknown mode '" + opts.mode + "' (expected exact or mc)");
    }
    const bool mc = opts.mode == "mc";
    RunParams params;
    if (mc) {
      params.m = opts.m;
      params.policy = make_policy(opts.policy, opts.k, opts.c);
      params.seed = opts.seed.value_or(entropy_seed());
      params.backend = opts.backend;
      validate_params(params);
    }

    auto start = Clock::now();
    const ColorMatrix input = read_graph_file(opts.input);
    const double t_parse = seconds_since(start);
    if (mc) check_overflow_guard(input.size(), params.m);

    start = Clock::now();
    const WlResult res = mc ? probabilistic_closure(input, params) : classical_closure(input);
    const double t_closure = seconds_since(start);

    double t_write = 0.0;
    if (opts.out) {
      start = Clock::now();
      write_graph_file(*opts.out, res.closure);
      t_write = seconds_since(start);
    }

    RunReport report;
    report.add("command", "close");
    report.add("input", opts.input.string());
    report.add("input_digest", digest(input));
    report.add("n", input.size());
    report.add("colors_in", input.color_count());
    report.add("colors_rainbow", res.trace.front());
    report.add("mode", opts.mode);
    if (mc) {
      report.add("policy", std::string(policy_name(params.policy.mode)));
      report.add("m", params.m);
      if (params.policy.mode == StoppingPolicy::Mode::practical) {
        report.add("k", params.policy.k);
      } else {
        report.add("C", params.policy.c);
      }
      report.add("seed", params.seed);
      report.add("backend", std::string(backend_name(params.backend)));
    }
    report.add("iterations", res.iterations);
    report.add("refining_iterations", res.refining_iterations);
    report.add("trace", join(res.trace));
    report.add("stop_reason", std::string(stop_reason_name(res.stop_reason)));
    report.add("colors_out", res.closure.color_count());
    if (mc) {
      report.add("max_value", res.max_value);
      if (params.policy.mode == StoppingPolicy::Mode::theoretical) {
        report.add("error_bound", error_bound(input.size(), static_cast<double>(params.m), params.policy.c));
        report.add("warning", "C is not known; the iteration budget and error bound assume the given value");
      } else {
        report.add("miss_bound_per_refinement", practical_miss_bound(params.m, params.policy.k));
      }
    }
    if (opts.out) report.add("closure_file", opts.out->string());
    report.add("time_parse_s", t_parse);
    report.add("time_closure_s", t_closure);
    report.add("time_write_s", t_write);
    if (opts.measure_memory) report.add("peak_rss_kib", peak_rss_kib());
    report.print(out);
    if (opts.print_closure) write_graph(out, res.closure);
    return kExitOk;
  });
}

int run_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.m < 2) throw std::invalid_argument("m must be at least 2");
    if (opts.trials < 1) throw std::invalid_argument("trials must be positive");
    const ColorMatrix x = read_graph_file(opts.input);
    check_overflow_guard(x.size(), opts.m);
    const std::uint64_t seed = opts.seed.value_or(entropy_seed());
    RandomStream rng(seed);

    const bool rainbow = is_rainbow(x);
    const bool coherent = rainbow && check_coherent(x, opts.m, opts.trials, rng, opts.backend);
    out << (coherent ? "coherent" : rainbow ? "not coherent (probabilistic)" : "not coherent (not a rainbow)") << '\n';

    RunReport report;
    report.add("n", x.size());
    report.add("colors", x.color_count());
    report.add("m", opts.m);
    report.add("trials", opts.trials);
    report.add("seed", seed);
    if (coherent) report.add("false_accept_bound", practical_miss_bound(opts.m, opts.trials));
    if (opts.exact) {
      const auto exact = verify_coherent(x);
      report.add("exact", exact.coherent ? "coherent" : "not coherent");
      if (exact.witness) report.add("witness", exact.witness->describe());
      report.add("agree", exact.coherent == coherent);
    }
    report.print(out);
    return coherent ? kExitOk : kExitNegative;
  });
}

int run_isopair(const IsopairOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    // Value-order renumbering keeps colour ids independent of vertex order,
    // so permuted copies of one graph start from identical colour names.
    const ColorMatrix x = read_graph_file(opts.first, ColorMatrix::Renumber::by_value);
    const ColorMatrix y = read_graph_file(opts.second, ColorMatrix::Renumber::by_value);
    if (x.size() != y.size()) {
      throw std::invalid_argument("graphs differ in size (" + std::to_string(x.size()) + " vs " +
                                  std::to_string(y.size()) + ")");
    }
    RunParams params;
    params.m = opts.m;
    params.policy = StoppingPolicy::practical(opts.k);
    params.seed = opts.seed.value_or(entropy_seed());
    params.backend = opts.backend;
    const auto paired = paired_closure(x, y, params);

    RunReport report;
    report.add("n", x.size());
    report.add("m", params.m);
    report.add("k", params.policy.k);
    report.add("seed", params.seed);
    report.add("trace_first", join(paired.first.trace));
    report.add("trace_second", join(paired.second.trace));
    if (paired.diverged_at) {
      report.add("trajectories", "color multisets diverge at iteration " + std::to_string(*paired.diverged_at));
    } else {
      report.add("trajectories", "identical");
    }
    if (paired.mapping) {
      std::string text;
      for (std::size_t u = 0; u < paired.mapping->size(); ++u) {
        if (u) text += ' ';
        text += std::to_string(u + 1) + "->" + std::to_string((*paired.mapping)[u] + 1);
      }
      report.add("mapping", text);
      report.add("mapping_status", is_isomorphism(x, y, *paired.mapping) ? "verified" : "unverified");
    } else {
      report.add("mapping", "none");
    }
    report.print(out);
    return paired.diverged_at ? kExitNegative : kExitOk;
  });
}

int run_bench(const BenchOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.mode != "mc" && opts.mode != "exact" && opts.mode != "both") {
      throw std::invalid_argument("bench mode must be mc, exact or both");
    }
    for (auto n : opts.sizes) {
      if (n == 0 || n > opts.max_size) {
        throw std::invalid_argument("size " + std::to_string(n) + " outside 1.." + std::to_string(opts.max_size));
      }
    }
    const std::size_t reps = std::max<std::size_t>(opts.reps, 1);
    auto median = [](std::vector<double> v) {
      std::sort(v.begin(), v.end());
      return v[v.size() / 2];
    };

    out << "n\tmode\tstep_s\tclosure_s\titerations\tcolors\n";
    for (auto n : opts.sizes) {
      const auto x = rainbow_refine(make_fixture(FixtureSpec{"random", n, opts.colors, opts.seed + n}));
      for (const std::string mode : {"mc", "exact"}) {
        if (opts.mode != "both" && opts.mode != mode) continue;
        std::vector<double> times;
        for (std::size_t rep = 0; rep < reps; ++rep) {
          RandomStream rng(opts.seed + rep);
          const auto start = Clock::now();
          if (mode == "mc") {
            probabilistic_step(x, 1'000'000, rng, opts.backend);
          } else {
            classical_step(x);
          }
          times.push_back(seconds_since(start));
        }
        std::string closure_s = "-", iterations = "-", colors = "-";
        if (opts.closure) {
          const auto start = Clock::now();
          RunParams params;
          params.seed = opts.seed;
          params.backend = opts.backend;
          const auto res = mode == "mc" ? probabilistic_closure(x, params) : classical_closure(x);
          closure_s = RunReport::format_double(seconds_since(start));
          iterations = std::to_string(res.iterations);
          colors = std::to_string(res.closure.color_count());
        }
        out << n << '\t' << mode << '\t' << RunReport::format_double(median(times)) << '\t' << closure_s << '\t'
            << iterations << '\t' << colors << '\n';
      }
    }
    return kExitOk;
  });
}

int run_gen(const GenOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.fixture.empty()) throw std::invalid_argument("gen needs a fixture name");
    std::vector<std::string> args(opts.fixture.begin() + 1, opts.fixture.end());
    if (opts.fixture[0] == "random" && args.size() == 2) args.push_back(std::to_string(opts.seed.value_or(0)));
    std::string text = opts.fixture[0];
    if (!args.empty()) {
      text += '(';
      for (std::size_t i = 0; i < args.size(); ++i) text += (i ? "," : "") + args[i];
      text += ')';
    }
    const ColorMatrix x = make_fixture(text);
    if (opts.out) {
      write_graph_file(*opts.out, x);
    } else {
      write_graph(out, x);
    }
    return kExitOk;
  });
}

}  // namespace wlc::cli

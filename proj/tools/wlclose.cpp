// wlclose: coherent closures of coloured complete digraphs.
//
//   wlclose close   <graph> [--mode exact|mc] [--m M] [--k K] [--C C] [--policy practical|theoretical]
//                   [--seed S] [--out FILE]
//   wlclose check   <graph> [--m M] [--trials T] [--seed S] [--exact]
//   wlclose isopair <graphA> <graphB> [--m M] [--k K] [--seed S]
//   wlclose bench   [--sizes 64,128,256] [--mode mc|exact|both] [--seed S] [--reps R]
//   wlclose gen     <fixture> [args...] [--seed S] [--out FILE]

#include <iostream>

#include <CLI11.hpp>

#include "wlc/cli.hpp"

namespace {

wlc::Backend backend_or_throw(const std::string& name) {
  try {
    return wlc::parse_backend(name);
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("--backend", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace wlc::cli;

  Defaults defaults;
  try {
    defaults = load_defaults();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }

  CLI::App app{"Coherent closure via exact and Monte Carlo Weisfeiler-Leman refinement"};
  app.require_subcommand(1);

  CloseOptions close;
  close.mode = defaults.mode;
  close.policy = defaults.policy;
  close.m = defaults.m;
  close.k = defaults.k;
  close.c = defaults.c;
  std::string close_backend = defaults.backend;
  std::uint64_t close_seed = 0;
  auto* close_cmd = app.add_subcommand("close", "Compute the coherent closure of a graph file");
  close_cmd->add_option("input", close.input, "Graph file")->required()->check(CLI::ExistingFile);
  close_cmd->add_option("--mode", close.mode, "exact or mc")->capture_default_str();
  close_cmd->add_option("--policy", close.policy, "practical or theoretical (mc only)")->capture_default_str();
  close_cmd->add_option("--m", close.m, "Substitution range {1..m}")->capture_default_str();
  close_cmd->add_option("--k", close.k, "Consecutive quiet steps before stopping (practical)")->capture_default_str();
  close_cmd->add_option("--C", close.c, "Iteration budget constant (theoretical)")->capture_default_str();
  auto* close_seed_opt = close_cmd->add_option("--seed", close_seed, "RNG seed (default: system entropy)");
  close_cmd->add_option("--out", close.out, "Write the closure as a graph file");
  close_cmd->add_option("--backend", close_backend, "naive or blocked")->capture_default_str();
  close_cmd->add_flag("--print-closure", close.print_closure, "Append the closure matrix to the report");
  close_cmd->add_flag("--measure-memory", close.measure_memory, "Report peak resident memory");

  CheckOptions check;
  check.m = defaults.m;
  check.trials = defaults.trials;
  std::string check_backend = defaults.backend;
  std::uint64_t check_seed = 0;
  auto* check_cmd = app.add_subcommand("check", "Probabilistic coherence test");
  check_cmd->add_option("input", check.input, "Graph file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--m", check.m, "Substitution range {1..m}")->capture_default_str();
  check_cmd->add_option("--trials", check.trials, "Independent repetitions")->capture_default_str();
  auto* check_seed_opt = check_cmd->add_option("--seed", check_seed, "RNG seed (default: system entropy)");
  check_cmd->add_flag("--exact", check.exact, "Also run the exact axiom verifier");
  check_cmd->add_option("--backend", check_backend, "naive or blocked")->capture_default_str();

  IsopairOptions iso;
  iso.m = defaults.m;
  iso.k = defaults.k;
  std::string iso_backend = defaults.backend;
  std::uint64_t iso_seed = 0;
  auto* iso_cmd = app.add_subcommand("isopair", "Run two graphs with shared randomness");
  iso_cmd->add_option("first", iso.first, "First graph file")->required()->check(CLI::ExistingFile);
  iso_cmd->add_option("second", iso.second, "Second graph file")->required()->check(CLI::ExistingFile);
  iso_cmd->add_option("--m", iso.m, "Substitution range {1..m}")->capture_default_str();
  iso_cmd->add_option("--k", iso.k, "Consecutive quiet steps before stopping")->capture_default_str();
  auto* iso_seed_opt = iso_cmd->add_option("--seed", iso_seed, "RNG seed (default: system entropy)");
  iso_cmd->add_option("--backend", iso_backend, "naive or blocked")->capture_default_str();

  BenchOptions bench;
  std::string bench_backend = defaults.backend;
  auto* bench_cmd = app.add_subcommand("bench", "Time single steps and full closures on random graphs");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated vertex counts")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--mode", bench.mode, "mc, exact or both")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Seed for graphs and substitutions")->capture_default_str();
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per step timing (median reported)")->capture_default_str();
  bench_cmd->add_option("--colors", bench.colors, "Colours in the random input")->capture_default_str();
  bench_cmd->add_option("--max-size", bench.max_size, "Largest accepted size")->capture_default_str();
  bench_cmd->add_option("--backend", bench_backend, "naive or blocked")->capture_default_str();
  bool no_closure = false;
  bench_cmd->add_flag("--steps-only", no_closure, "Skip full closure timings");

  GenOptions gen;
  std::uint64_t gen_seed = 0;
  auto* gen_cmd = app.add_subcommand("gen", "Write a fixture graph (trivial N, cyclic N, cycle5, petersen, path N, random N R)");
  gen_cmd->add_option("fixture", gen.fixture, "Fixture name and arguments")->required();
  auto* gen_seed_opt = gen_cmd->add_option("--seed", gen_seed, "Seed for the random fixture");
  gen_cmd->add_option("--out", gen.out, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
    close.backend = backend_or_throw(close_backend);
    check.backend = backend_or_throw(check_backend);
    iso.backend = backend_or_throw(iso_backend);
    bench.backend = backend_or_throw(bench_backend);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  if (*close_seed_opt) close.seed = close_seed;
  if (*check_seed_opt) check.seed = check_seed;
  if (*iso_seed_opt) iso.seed = iso_seed;
  if (*gen_seed_opt) gen.seed = gen_seed;
  bench.closure = !no_closure;

  if (*close_cmd) return run_close(close, std::cout, std::cerr);
  if (*check_cmd) return run_check(check, std::cout, std::cerr);
  if (*iso_cmd) return run_isopair(iso, std::cout, std::cerr);
  if (*bench_cmd) return run_bench(bench, std::cout, std::cerr);
  return run_gen(gen, std::cout, std::cerr);
}

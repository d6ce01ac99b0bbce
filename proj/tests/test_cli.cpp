#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "wlc/cli.hpp"
#include "wlc/coherence.hpp"
#include "wlc/graph_file.hpp"
#include "wlc/probabilistic.hpp"

using namespace wlc;
using namespace wlc::cli;

namespace {

struct Scratch {
  std::filesystem::path dir;
  Scratch() {
    dir = std::filesystem::temp_directory_path() / ("wlc_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
  }
  ~Scratch() { std::filesystem::remove_all(dir); }

  std::filesystem::path fixture(const std::string& name) const {
    auto path = dir / (name + ".txt");
    write_graph_file(path, make_fixture(name));
    return path;
  }
  std::filesystem::path text(const std::string& name, const std::string& body) const {
    auto path = dir / name;
    std::ofstream(path) << body;
    return path;
  }
};

struct Run {
  int code = 0;
  std::string out;
  std::string err;

  // Value of "key: value" in the report, or empty.
  std::string operator[](const std::string& key) const {
    std::istringstream in(out);
    std::string line;
    const std::string prefix = key + ": ";
    while (std::getline(in, line))
      if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
    return {};
  }
};

template <typename Opts, typename Fn>
Run invoke(Fn fn, const Opts& opts) {
  std::ostringstream out, err;
  Run r;
  r.code = fn(opts, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

CloseOptions close_opts(const std::filesystem::path& input, const std::string& mode) {
  CloseOptions o;
  o.input = input;
  o.mode = mode;
  o.seed = 1;
  return o;
}

std::string without_timings(const std::string& report) {
  std::istringstream in(report);
  std::string line, kept;
  while (std::getline(in, line))
    if (line.rfind("time_", 0) != 0) kept += line + '\n';
  return kept;
}

}  // namespace

TEST_CASE("close") {
  Scratch s;
  SUBCASE("trivial(4) exact") {
    auto r = invoke(run_close, close_opts(s.fixture("trivial(4)"), "exact"));
    CHECK(r.code == kExitOk);
    CHECK(r["colors_out"] == "2");
    CHECK(r["refining_iterations"] == "0");
    CHECK(r["mode"] == "exact");
    CHECK(r["seed"].empty());
  }
  SUBCASE("path(3) mc agrees with exact and writes the closure") {
    auto opts = close_opts(s.fixture("path(3)"), "mc");
    opts.out = s.dir / "closure.txt";
    auto mc = invoke(run_close, opts);
    auto exact = invoke(run_close, close_opts(s.fixture("path(3)"), "exact"));
    CHECK(mc.code == 0);
    CHECK(mc["colors_out"] == "5");
    CHECK(exact["colors_out"] == "5");
    CHECK(mc["trace"] == "3 5 5 5 5");
    CHECK(mc["stop_reason"] == "stable");
    CHECK(mc["policy"] == "practical");
    CHECK_FALSE(mc["miss_bound_per_refinement"].empty());
    CHECK(verify_coherent(read_graph_file(*opts.out)).coherent);
  }
  SUBCASE("single vertex") {
    auto r = invoke(run_close, close_opts(s.text("one.txt", "wlgraph 1 1\n5\n"), "mc"));
    CHECK(r.code == 0);
    CHECK(r["colors_out"] == "1");
  }
  SUBCASE("theoretical policy reports the bound and warns") {
    auto opts = close_opts(s.fixture("path(4)"), "mc");
    opts.policy = "theoretical";
    opts.c = 1.0;
    auto r = invoke(run_close, opts);
    CHECK(r.code == 0);
    CHECK(r["iterations"] == "8");
    CHECK(r["error_bound"] == RunReport::format_double(error_bound(4, 1e6, 1.0)));
    CHECK_FALSE(r["warning"].empty());
  }
  SUBCASE("reports are stable apart from timings") {
    auto opts = close_opts(s.fixture("random(12,3,4)"), "mc");
    opts.seed = 99;
    CHECK(without_timings(invoke(run_close, opts).out) == without_timings(invoke(run_close, opts).out));
  }
  SUBCASE("print closure and memory") {
    auto opts = close_opts(s.fixture("cycle5"), "exact");
    opts.print_closure = true;
    opts.measure_memory = true;
    auto r = invoke(run_close, opts);
    CHECK(r.out.find("wlgraph 5 3\n") != std::string::npos);
    CHECK(std::stoul(r["peak_rss_kib"]) > 0);
  }
  SUBCASE("error exits") {
    CHECK(invoke(run_close, close_opts(s.dir / "absent.txt", "exact")).code == kExitInput);
    CHECK(invoke(run_close, close_opts(s.text("bad.txt", "wlgraph 2 2\n1 2\n"), "exact")).code == kExitInput);
    CHECK(invoke(run_close, close_opts(s.fixture("path(3)"), "fast")).code == kExitInput);
    auto opts = close_opts(s.fixture("path(3)"), "mc");
    opts.k = 0;
    CHECK(invoke(run_close, opts).code == kExitInput);
    opts.k = 3;
    opts.m = 1;
    CHECK(invoke(run_close, opts).code == kExitInput);
    opts.m = 3'000'000'000;
    auto overflow = invoke(run_close, opts);
    CHECK(overflow.code == kExitOverflow);
    CHECK_FALSE(overflow.err.empty());
    CHECK(overflow.out.empty());
  }
}

TEST_CASE("check") {
  Scratch s;
  SUBCASE("cyclic(7) is coherent") {
    CheckOptions o;
    o.input = s.fixture("cyclic(7)");
    o.seed = 3;
    auto r = invoke(run_check, o);
    CHECK(r.code == kExitOk);
    CHECK(r.out.rfind("coherent\n", 0) == 0);
    CHECK_FALSE(r["false_accept_bound"].empty());
  }
  SUBCASE("path(4) with four trials at m = 8") {
    CheckOptions o;
    o.input = s.fixture("path(4)");
    o.m = 8;
    o.trials = 4;
    o.seed = 3;
    auto r = invoke(run_check, o);
    CHECK(r.code == kExitNegative);
    CHECK(r.out.rfind("not coherent (probabilistic)", 0) == 0);
  }
  SUBCASE("a non-rainbow input is rejected outright") {
    CheckOptions o;
    o.input = s.text("k2.txt", "wlgraph 2 1\n1 1\n1 1\n");
    o.seed = 3;
    auto r = invoke(run_check, o);
    CHECK(r.code == kExitNegative);
    CHECK(r.out.rfind("not coherent (not a rainbow)", 0) == 0);
  }
  SUBCASE("exact cross-check") {
    CheckOptions o;
    o.input = s.fixture("trivial(5)");
    o.exact = true;
    o.seed = 3;
    auto r = invoke(run_check, o);
    CHECK(r.code == 0);
    CHECK(r["exact"] == "coherent");
    CHECK(r["agree"] == "true");

    auto rainbow_p3 = s.dir / "p3.txt";
    write_graph_file(rainbow_p3, rainbow_refine(make_fixture("path(3)")));
    o.input = rainbow_p3;
    auto neg = invoke(run_check, o);
    CHECK(neg.code == kExitNegative);
    CHECK(neg.out.rfind("not coherent (probabilistic)", 0) == 0);
    CHECK(neg["exact"] == "not coherent");
    CHECK_FALSE(neg["witness"].empty());
  }
  SUBCASE("bad arguments") {
    CheckOptions o;
    o.input = s.fixture("trivial(3)");
    o.trials = 0;
    CHECK(invoke(run_check, o).code == kExitInput);
  }
}

TEST_CASE("isopair") {
  Scratch s;
  SUBCASE("a graph against a relabelled copy") {
    auto x = make_fixture("random(9,4,21)");
    std::vector<std::size_t> perm{3, 0, 8, 1, 2, 7, 6, 4, 5};
    auto a = s.dir / "a.txt";
    auto b = s.dir / "b.txt";
    write_graph_file(a, x);
    write_graph_file(b, permute_vertices(x, perm));
    IsopairOptions o;
    o.first = a;
    o.second = b;
    o.seed = 5;
    auto r = invoke(run_isopair, o);
    CHECK(r.code == kExitOk);
    CHECK(r["trajectories"] == "identical");
    CHECK(r["trace_first"] == r["trace_second"]);
    if (r["mapping"] != "none") CHECK(r["mapping_status"] == "verified");
  }
  SUBCASE("cycle against path") {
    IsopairOptions o;
    o.first = s.fixture("cycle5");
    o.second = s.fixture("path(5)");
    o.seed = 5;
    auto r = invoke(run_isopair, o);
    CHECK(r.code == kExitNegative);
    CHECK(r["trajectories"].rfind("color multisets diverge at iteration ", 0) == 0);
    CHECK(r["mapping"] == "none");
  }
  SUBCASE("size mismatch") {
    IsopairOptions o;
    o.first = s.fixture("path(4)");
    o.second = s.fixture("path(5)");
    CHECK(invoke(run_isopair, o).code == kExitInput);
  }
}

TEST_CASE("gen") {
  GenOptions o;
  o.fixture = {"trivial", "3"};
  auto r = invoke(run_gen, o);
  CHECK(r.code == 0);
  CHECK(r.out == "wlgraph 3 2\n1 2 2\n2 1 2\n2 2 1\n");

  o.fixture = {"random", "5", "3"};
  auto unseeded = invoke(run_gen, o);
  o.seed = 0;
  CHECK(invoke(run_gen, o).out == unseeded.out);
  o.seed = 1;
  CHECK(invoke(run_gen, o).out != unseeded.out);

  o.fixture = {"nonsense"};
  CHECK(invoke(run_gen, o).code == kExitInput);
  o.fixture = {};
  CHECK(invoke(run_gen, o).code == kExitInput);
}

TEST_CASE("bench") {
  BenchOptions o;
  o.sizes = {8, 16};
  o.mode = "both";
  o.reps = 1;
  auto r = invoke(run_bench, o);
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 5);
  o.sizes = {5000};
  CHECK(invoke(run_bench, o).code == kExitInput);
  o.sizes = {8};
  o.mode = "quantum";
  CHECK(invoke(run_bench, o).code == kExitInput);
}

TEST_CASE("config defaults") {
  Scratch s;
  auto cfg = s.text("wlc.conf", "# defaults\nm = 1000\nk=5\n policy = theoretical \nC = 2.5\ntrials = 4\nbackend = naive\nmode=exact\n");
  auto d = load_defaults(cfg);
  CHECK(d.m == 1000);
  CHECK(d.k == 5);
  CHECK(d.policy == "theoretical");
  CHECK(d.c == 2.5);
  CHECK(d.trials == 4);
  CHECK(d.backend == "naive");
  CHECK(d.mode == "exact");
  CHECK_THROWS_AS(load_defaults(s.text("bad.conf", "speed = 11\n")), std::invalid_argument);
  CHECK_THROWS_AS(load_defaults(s.text("bad2.conf", "m 5\n")), std::invalid_argument);
  CHECK_THROWS_AS(load_defaults(s.dir / "missing.conf"), std::invalid_argument);

  ::setenv("WLC_CONFIG", cfg.c_str(), 1);
  CHECK(load_defaults().k == 5);
  ::unsetenv("WLC_CONFIG");
  CHECK(load_defaults().k == 3);
}

TEST_CASE("report formatting") {
  RunReport report;
  report.add("a", 3);
  report.add("b", "text");
  report.add("c", true);
  report.add("d", 0.25);
  std::ostringstream out;
  report.print(out);
  CHECK(out.str() == "a: 3\nb: text\nc: true\nd: 0.25\n");
  CHECK(report.get("b") == "text");
  CHECK_FALSE(report.get("z").has_value());
}

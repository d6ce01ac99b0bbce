#include "wlc/coherence.hpp"

#include "wlc/rng.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace wlc {

std::string CoherenceWitness::describe() const {
  std::ostringstream os;
  auto cell = [&](const Cell& c) { os << '(' << c.first + 1 << ',' << c.second + 1 << ')'; };
  os << "colour " << color << ": cells ";
  cell(first);
  os << " and ";
  cell(second);
  switch (kind) {
    case Kind::loop_arc_clash:
      os << " mix a loop and an arc";
      break;
    case Kind::transpose_split:
      os << " have differently coloured transposes";
      break;
    case Kind::profile_mismatch:
      os << " see pair (" << left << ',' << right << ") " << first_count << " vs " << second_count << " times";
      break;
  }
  return os.str();
}

namespace {

using Profile = std::map<std::pair<Color, Color>, std::size_t>;

Profile profile_of(const ColorMatrix& x, std::size_t u, std::size_t v) {
  Profile p;
  for (std::size_t w = 0; w < x.size(); ++w) ++p[{x(u, w), x(w, v)}];
  return p;
}

// First pair (in key order) whose counts differ between a and b.
std::optional<std::pair<Color, Color>> first_difference(const Profile& a, const Profile& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) return ia->first;
    if (ia == a.end() || ib->first < ia->first) return ib->first;
    if (ia->second != ib->second) return ia->first;
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

std::size_t count_in(const Profile& p, const std::pair<Color, Color>& key) {
  auto it = p.find(key);
  return it == p.end() ? 0 : it->second;
}

}  // namespace

CoherenceReport verify_coherent(const ColorMatrix& x) {
  const std::size_t n = x.size();
  const std::size_t r = x.color_count();

  std::vector<std::vector<Cell>> classes(r + 1);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) classes[x(u, v)].emplace_back(u, v);

  for (Color c = 1; c <= r; ++c) {
    const auto& cls = classes[c];
    const Cell ref = cls.front();
    const bool ref_loop = ref.first == ref.second;
    const Profile ref_profile = profile_of(x, ref.first, ref.second);
    for (std::size_t i = 1; i < cls.size(); ++i) {
      const Cell cur = cls[i];
      CoherenceWitness w;
      w.color = c;
      w.first = ref;
      w.second = cur;
      if ((cur.first == cur.second) != ref_loop) {
        w.kind = CoherenceWitness::Kind::loop_arc_clash;
        return {false, w};
      }
      if (x(cur.second, cur.first) != x(ref.second, ref.first)) {
        w.kind = CoherenceWitness::Kind::transpose_split;
        return {false, w};
      }
      const Profile p = profile_of(x, cur.first, cur.second);
      if (auto diff = first_difference(ref_profile, p)) {
        w.kind = CoherenceWitness::Kind::profile_mismatch;
        w.left = diff->first;
        w.right = diff->second;
        w.first_count = count_in(ref_profile, *diff);
        w.second_count = count_in(p, *diff);
        return {false, w};
      }
    }
  }
  return {true, std::nullopt};
}

FixtureSpec parse_fixture(std::string_view text) {
  FixtureSpec spec;
  const auto open = text.find('(');
  spec.name = std::string(text.substr(0, open));
  std::vector<std::uint64_t> args;
  if (open != std::string_view::npos) {
    if (text.back() != ')') throw std::invalid_argument("malformed fixture: " + std::string(text));
    std::string inner(text.substr(open + 1, text.size() - open - 2));
    for (auto& ch : inner)
      if (ch == ',') ch = ' ';
    std::istringstream is(inner);
    std::uint64_t v;
    while (is >> v) args.push_back(v);
    if (!is.eof()) throw std::invalid_argument("malformed fixture arguments: " + std::string(text));
  }
  auto need = [&](std::size_t count) {
    if (args.size() != count) {
      throw std::invalid_argument("fixture " + spec.name + " takes " + std::to_string(count) + " argument(s)");
    }
  };
  if (spec.name == "trivial" || spec.name == "cyclic" || spec.name == "path") {
    need(1);
    spec.n = args[0];
  } else if (spec.name == "cycle5" || spec.name == "petersen") {
    need(0);
  } else if (spec.name == "random") {
    need(3);
    spec.n = args[0];
    spec.r = args[1];
    spec.seed = args[2];
  } else {
    throw std::invalid_argument("unknown fixture: " + spec.name);
  }
  return spec;
}

namespace {

template <typename Edge>
ColorMatrix loop_edge_nonedge(std::size_t n, Edge edge) {
  std::vector<std::int64_t> raw(n * n);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) raw[u * n + v] = u == v ? 1 : (edge(u, v) ? 2 : 3);
  return ColorMatrix::validate(n, raw, ColorMatrix::Renumber::by_value);
}

}  // namespace

ColorMatrix make_fixture(const FixtureSpec& spec) {
  const std::string& name = spec.name;
  if (name != "cycle5" && name != "petersen" && spec.n == 0) {
    throw std::invalid_argument("fixture size must be positive");
  }
  if (name == "trivial") {
    return loop_edge_nonedge(spec.n, [](std::size_t, std::size_t) { return true; });
  }
  if (name == "cyclic") {
    const std::size_t n = spec.n;
    std::vector<std::int64_t> raw(n * n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) raw[u * n + v] = static_cast<std::int64_t>((v + n - u) % n) + 1;
    return ColorMatrix::validate(n, raw, ColorMatrix::Renumber::by_value);
  }
  if (name == "cycle5") {
    return loop_edge_nonedge(5, [](std::size_t u, std::size_t v) { return (u + 1) % 5 == v || (v + 1) % 5 == u; });
  }
  if (name == "petersen") {
    // Vertices are the 2-subsets of {0..4}; adjacent when disjoint.
    std::vector<std::pair<int, int>> sets;
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) sets.emplace_back(a, b);
    return loop_edge_nonedge(sets.size(), [&](std::size_t u, std::size_t v) {
      const auto [a, b] = sets[u];
      const auto [c, d] = sets[v];
      return a != c && a != d && b != c && b != d;
    });
  }
  if (name == "path") {
    return loop_edge_nonedge(spec.n, [](std::size_t u, std::size_t v) { return u + 1 == v || v + 1 == u; });
  }
  if (name == "random") {
    if (spec.r == 0) throw std::invalid_argument("random fixture needs r >= 1");
    RandomStream rng(spec.seed);
    std::vector<std::int64_t> raw(spec.n * spec.n);
    for (auto& c : raw) c = static_cast<std::int64_t>(draw_uniform(rng, spec.r));
    return ColorMatrix::validate(spec.n, raw, ColorMatrix::Renumber::by_value);
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

ColorMatrix make_fixture(std::string_view text) { return make_fixture(parse_fixture(text)); }

}  // namespace wlc

#include "c3bound/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "c3bound/errors.hpp"

namespace c3bound {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform draw from {0..n-1} by masked rejection; identical on every
// platform, unlike std::uniform_int_distribution.
std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t mask =
      n <= 1 ? 0 : ~std::uint64_t{0} >> std::countl_zero(n - 1);
  for (;;) {
    const std::uint64_t r = gen() & mask;
    if (r < n) return r;
  }
}

void require_enumerable(const MultiGraph& g) {
  if (g.n > kEnumerationCap)
    throw CapacityError("exhaustive colouring enumeration capped at n = " +
                        std::to_string(kEnumerationCap) + ", got n = " +
                        std::to_string(g.n));
  if (g.n < 0) throw ParameterError("negative vertex count");
}

void require_matching(const MultiGraph& g, const Colouring& col) {
  if (static_cast<int>(col.types.size()) != g.n)
    throw ParameterError("colouring has " + std::to_string(col.types.size()) +
                         " entries for a graph on " + std::to_string(g.n) +
                         " vertices");
  for (auto t : col.types)
    if (t > 2) throw ParameterError("colouring entry out of range");
}

// For vertex a, the neighbours with index <= a; conflicts are checked when
// the later endpoint gets its colour. A loop puts a into its own list, which
// kills every assignment, as it should.
std::vector<std::vector<int>> earlier_neighbours(const MultiGraph& g) {
  std::vector<std::vector<int>> check(g.n);
  for (const auto& [u, v] : g.edges) {
    check[std::max(u, v)].push_back(std::min(u, v));
  }
  for (auto& list : check) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return check;
}

std::vector<std::vector<int>> neighbour_lists(const MultiGraph& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    if (u != v) adj[v].push_back(u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

// Rigidity of a full proper assignment: type 0 needs both other types among
// its neighbours, type 1 needs a type-2 neighbour.
bool rigid_leaf(const std::vector<std::vector<int>>& adj,
                const std::vector<std::uint8_t>& col) {
  const int n = static_cast<int>(col.size());
  for (int v = 0; v < n; ++v) {
    if (col[v] == 2) continue;
    unsigned mask = 0;
    for (int u : adj[v]) mask |= 1u << col[u];
    if (col[v] == 0 && (mask & 0b110u) != 0b110u) return false;
    if (col[v] == 1 && !(mask & 0b100u)) return false;
  }
  return true;
}

template <class Leaf>
void for_each_proper(const MultiGraph& g, Leaf&& leaf) {
  const auto check = earlier_neighbours(g);
  std::vector<std::uint8_t> col(g.n, 0);
  const auto recurse = [&](auto&& self, int v) -> void {
    if (v == g.n) {
      leaf(col);
      return;
    }
    for (std::uint8_t t = 0; t < 3; ++t) {
      bool ok = true;
      for (int u : check[v]) {
        if (u == v || col[u] == t) {
          ok = false;
          break;
        }
      }
      if (ok) {
        col[v] = t;
        self(self, v + 1);
      }
    }
  };
  recurse(recurse, 0);
}

}  // namespace

std::vector<int> MultiGraph::degrees() const {
  std::vector<int> deg(n, 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParameterError("edge endpoint out of range");
    deg[u] += 1;
    deg[v] += 1;  // a loop hits the same vertex twice
  }
  return deg;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) + stream);
}

MultiGraph sample_graph(int n, long long m, std::uint64_t seed) {
  if (n < 1) throw ParameterError("sample_graph: need at least one vertex");
  if (m < 0) throw ParameterError("sample_graph: negative edge count");
  std::mt19937_64 gen(seed);
  MultiGraph g;
  g.n = n;
  g.edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    const int u = static_cast<int>(bounded(gen, static_cast<std::uint64_t>(n)));
    const int v = static_cast<int>(bounded(gen, static_cast<std::uint64_t>(n)));
    g.edges.emplace_back(u, v);
  }
  return g;
}

DegreeProfileEmpirical degree_profile(const MultiGraph& g, int x_max) {
  if (x_max < 0) throw ParameterError("degree_profile: negative x_max");
  if (g.n < 1) throw ParameterError("degree_profile: empty graph");
  DegreeProfileEmpirical prof;
  prof.fractions.assign(x_max + 1, 0.0);
  const double unit = 1.0 / g.n;
  for (int d : g.degrees()) {
    if (d <= x_max)
      prof.fractions[d] += unit;
    else
      prof.tail_fraction += unit;
  }
  return prof;
}

bool in_subspace(const MultiGraph& g, const ModelParams& params,
                 const PoissonProfile& profile) {
  params.validate();
  if (profile.x_max() != params.x_max)
    throw ParameterError("in_subspace: profile truncation does not match params");
  const DegreeProfileEmpirical emp = degree_profile(g, params.x_max);
  for (int x = 0; x <= params.x_max; ++x)
    if (!(std::abs(emp.fractions[x] - profile.weights[x]) < params.epsilon))
      return false;
  return true;
}

bool in_subspace(const MultiGraph& g, const ModelParams& params) {
  return in_subspace(g, params, build_profile(params));
}

bool is_proper(const MultiGraph& g, const Colouring& col) {
  require_matching(g, col);
  for (const auto& [u, v] : g.edges)
    if (col.types[u] == col.types[v]) return false;
  return true;
}

bool is_rigid(const MultiGraph& g, const Colouring& col) {
  if (!is_proper(g, col)) return false;
  return rigid_leaf(neighbour_lists(g), col.types);
}

long long count_proper(const MultiGraph& g) {
  require_enumerable(g);
  long long count = 0;
  for_each_proper(g, [&](const std::vector<std::uint8_t>&) { ++count; });
  return count;
}

long long count_rigid(const MultiGraph& g) {
  require_enumerable(g);
  const auto adj = neighbour_lists(g);
  long long count = 0;
  for_each_proper(g, [&](const std::vector<std::uint8_t>& col) {
    if (rigid_leaf(adj, col)) ++count;
  });
  return count;
}

Colouring repair_to_rigid(const MultiGraph& g, const Colouring& col) {
  if (!is_proper(g, col))
    throw ParameterError("repair_to_rigid: input colouring is not proper");
  const auto adj = neighbour_lists(g);
  Colouring out = col;

  const auto first_violation = [&]() -> int {
    for (int v = 0; v < g.n; ++v) {
      if (out.types[v] == 2) continue;
      unsigned mask = 0;
      for (int u : adj[v]) mask |= 1u << out.types[u];
      if (out.types[v] == 0 && (mask & 0b110u) != 0b110u) return v;
      if (out.types[v] == 1 && !(mask & 0b100u)) return v;
    }
    return -1;
  };

  // Each pass strictly increases the type sum, so 2n passes suffice.
  for (int pass = 0; pass <= 2 * g.n; ++pass) {
    const int v = first_violation();
    if (v < 0) return out;
    for (int t = 2; t >= 0; --t) {
      const bool clash = std::any_of(adj[v].begin(), adj[v].end(),
                                     [&](int u) { return out.types[u] == t; });
      if (!clash) {
        // A violating vertex always has a strictly larger conflict-free type.
        if (t <= out.types[v])
          throw std::logic_error("repair_to_rigid: no upward recolour");
        out.types[v] = static_cast<std::uint8_t>(t);
        break;
      }
    }
  }
  throw std::logic_error("repair_to_rigid: did not terminate");
}

McResult mc_first_moment(int n, long long m, const ModelParams& params,
                         long long samples, std::uint64_t seed) {
  params.validate();
  if (samples < 1) throw ParameterError("mc_first_moment: need samples >= 1");
  if (n > kEnumerationCap)
    throw CapacityError("mc_first_moment: rigid counting capped at n = " +
                        std::to_string(kEnumerationCap));
  if (n < 1) throw ParameterError("mc_first_moment: need at least one vertex");
  if (m < 0) throw ParameterError("mc_first_moment: negative edge count");

  const PoissonProfile profile = build_profile(params);
  double sum = 0.0;
  double sumsq = 0.0;
  long long inside = 0;
  for (long long k = 0; k < samples; ++k) {
    const MultiGraph g = sample_graph(n, m, derive_stream_seed(seed, k));
    double x = 0.0;
    if (in_subspace(g, params, profile)) {
      ++inside;
      x = static_cast<double>(count_rigid(g));
    }
    sum += x;
    sumsq += x * x;
  }
  McResult r;
  r.samples = samples;
  r.estimate = sum / static_cast<double>(samples);
  r.subspace_fraction = static_cast<double>(inside) / static_cast<double>(samples);
  if (samples > 1) {
    const double var = std::max(
        0.0, (sumsq - static_cast<double>(samples) * r.estimate * r.estimate) /
                 static_cast<double>(samples - 1));
    r.stderr_ = std::sqrt(var / static_cast<double>(samples));
  }
  return r;
}

MultiGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("line 1: missing header 'n m'");
  std::istringstream header(line);
  long long n = 0, m = 0;
  if (!(header >> n >> m))
    throw ParseError("line 1: expected header 'n m'");
  std::string extra;
  if (header >> extra)
    throw ParseError("line 1: unexpected trailing token '" + extra + "'");
  if (n < 1 || n > 1000000000)
    throw ParseError("line 1: vertex count out of range");
  if (m < 0)
    throw ParseError("line 1: negative edge count");

  MultiGraph g;
  g.n = static_cast<int>(n);
  g.edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    const int lineno = static_cast<int>(i) + 2;
    if (!std::getline(in, line))
      throw ParseError("line " + std::to_string(lineno) +
                       ": missing edge line (expected " + std::to_string(m) +
                       " edges)");
    std::istringstream es(line);
    long long u = 0, v = 0;
    if (!(es >> u >> v))
      throw ParseError("line " + std::to_string(lineno) + ": expected 'u v'");
    if (es >> extra)
      throw ParseError("line " + std::to_string(lineno) +
                       ": unexpected trailing token '" + extra + "'");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError("line " + std::to_string(lineno) +
                       ": endpoint out of range [0, " + std::to_string(n) + ")");
    g.edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  int lineno = static_cast<int>(m) + 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") != std::string::npos)
      throw ParseError("line " + std::to_string(lineno) +
                       ": unexpected trailing content");
  }
  return g;
}

MultiGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file: " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const MultiGraph& g) {
  out << g.n << ' ' << g.edges.size() << '\n';
  for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

void write_graph_file(const std::string& path, const MultiGraph& g) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  write_graph(out, g);
  if (!out) throw ParseError("failed writing graph file: " + path);
}

}  // namespace c3bound

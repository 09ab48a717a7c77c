#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "c3bound/model.hpp"

namespace c3bound {

// Exhaustive colouring enumeration is cut off above this vertex count.
inline constexpr int kEnumerationCap = 20;

// Multigraph as an ordered list of directed endpoint pairs; loops and
// repeated edges are allowed and kept. A loop contributes 2 to its degree.
struct MultiGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  int m() const { return static_cast<int>(edges.size()); }
  std::vector<int> degrees() const;
};

// Vertex types: 0, 1, 2 (the three colours).
struct Colouring {
  std::vector<std::uint8_t> types;
};

struct DegreeProfileEmpirical {
  std::vector<double> fractions;  // theta_0..theta_{x_max}
  double tail_fraction = 0.0;     // degrees above x_max
};

// Deterministic stream splitting: the k-th sample of a run seeded with s
// uses derive_stream_seed(s, k).
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

// m iid ordered pairs, each endpoint uniform on {0..n-1}; mt19937_64 with
// rejection sampling so the stream is identical across platforms.
MultiGraph sample_graph(int n, long long m, std::uint64_t seed);

DegreeProfileEmpirical degree_profile(const MultiGraph& g, int x_max);

// |theta_x - p_x| < epsilon for every x <= x_max (strict).
bool in_subspace(const MultiGraph& g, const ModelParams& params);
bool in_subspace(const MultiGraph& g, const ModelParams& params,
                 const PoissonProfile& profile);

bool is_proper(const MultiGraph& g, const Colouring& col);

// Proper, and additionally: every type-0 vertex sees both other types among
// its neighbours, every type-1 vertex sees some type-2 neighbour.
bool is_rigid(const MultiGraph& g, const Colouring& col);

long long count_proper(const MultiGraph& g);
long long count_rigid(const MultiGraph& g);

// Push a proper colouring to a rigid one: repeatedly recolour the first
// vertex violating rigidity to the largest type that keeps the colouring
// proper. Terminates because the type sum strictly increases.
Colouring repair_to_rigid(const MultiGraph& g, const Colouring& col);

struct McResult {
  double estimate = 0.0;
  double stderr_ = 0.0;
  long long samples = 0;
  double subspace_fraction = 0.0;
};

// Monte Carlo mean of  rigid-count * [graph in subspace]  over graphs with m
// iid edges on n vertices. Sample k uses its own derived RNG stream.
McResult mc_first_moment(int n, long long m, const ModelParams& params,
                         long long samples, std::uint64_t seed);

// Text format: first line "n m", then m lines "u v" with 0 <= u,v < n.
MultiGraph read_graph(std::istream& in);
MultiGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const MultiGraph& g);
void write_graph_file(const std::string& path, const MultiGraph& g);

}  // namespace c3bound

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "netsolve/errors.hpp"

namespace netsolve {

// Undirected simple graph with a mandatory self-loop on every vertex.
// Degrees count the self-loop once; shortest-path distances never use it.
// Vertices are 0-based in memory; file formats and the CLI speak 1-based.
class Network {
 public:
  Network() = default;

  // Builds from an undirected edge list (duplicates collapse, self-loop
  // entries are redundant); self-loops are always added.
  static Network from_edges(int n, std::span<const std::pair<int, int>> edges);

  int size() const { return n_; }
  int degree(int v) const { return static_cast<int>(nbrs_[v].size()); }
  // sorted ascending, includes v itself
  const std::vector<int>& neighbors(int v) const { return nbrs_[v]; }
  bool has_edge(int u, int v) const { return adj_[static_cast<std::size_t>(u) * n_ + v] != 0; }
  bool connected() const;
  // u < v pairs, sorted, self-loops excluded; what goes to disk
  std::vector<std::pair<int, int>> non_self_edges() const;

 private:
  int n_ = 0;
  std::vector<std::vector<int>> nbrs_;
  std::vector<std::uint8_t> adj_;
};

// Every generator retries with seed+1, seed+2, ... (up to 100 attempts)
// until the sample is connected, then throws GenerationFailed.

// Erdos-Renyi: each off-diagonal pair independently with probability p.
Network gen_er(int n, double p, std::uint64_t seed);

// Watts-Strogatz: ring lattice with k nearest neighbors (k even), each
// lattice edge rewired with probability p. Edge count is preserved.
Network gen_ws(int n, int k, double p, std::uint64_t seed);

// Scale-free by preferential attachment: an m-clique seed, then each new
// vertex attaches to m distinct existing vertices with probability
// proportional to degree.
Network gen_sf(int n, int m, std::uint64_t seed);

// Random regular via stub pairing; illegal pairs are rejected and redrawn
// until the multigraph comes out simple.
Network gen_rr(int n, int k, std::uint64_t seed);

// Longest shortest path over all pairs. Throws Disconnected.
int diameter(const Network& net);

struct DegreeStats {
  double mean = 0.0;
  double variance = 0.0;  // population variance
  std::map<int, int> histogram;
};

DegreeStats degree_stats(const Network& net);

}  // namespace netsolve

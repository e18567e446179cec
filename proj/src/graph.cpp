#include "netsolve/graph.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <queue>
#include <string>

#include "netsolve/rng.hpp"

namespace netsolve {

Network Network::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  if (n < 1) throw InvalidParams("Network: need at least one vertex");
  Network net;
  net.n_ = n;
  net.adj_.assign(static_cast<std::size_t>(n) * n, 0);
  auto set_edge = [&](int u, int v) {
    net.adj_[static_cast<std::size_t>(u) * n + v] = 1;
    net.adj_[static_cast<std::size_t>(v) * n + u] = 1;
  };
  for (int v = 0; v < n; ++v) set_edge(v, v);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw IndexOutOfRange("Network: edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") outside [0, " + std::to_string(n) + ")");
    set_edge(u, v);
  }
  net.nbrs_.resize(n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (net.adj_[static_cast<std::size_t>(u) * n + v]) net.nbrs_[u].push_back(v);
  return net;
}

bool Network::connected() const {
  if (n_ == 0) return false;
  std::vector<char> seen(n_, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : nbrs_[u])
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        q.push(v);
      }
  }
  return reached == n_;
}

std::vector<std::pair<int, int>> Network::non_self_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (int v : nbrs_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

namespace {

// Shared connectivity retry policy: bump the seed and resample.
template <class Attempt>
Network connected_sample(Attempt&& attempt, std::uint64_t seed, const char* what) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    std::optional<Network> net = attempt(seed + k);
    if (net && net->connected()) return std::move(*net);
  }
  throw GenerationFailed(std::string(what) + ": no connected sample after 100 attempts");
}

}  // namespace

Network gen_er(int n, double p, std::uint64_t seed) {
  if (n < 2) throw InvalidParams("gen_er: n must be >= 2");
  if (!(p > 0.0) || p > 1.0) throw InvalidParams("gen_er: p must be in (0, 1]");
  return connected_sample(
      [&](std::uint64_t s) -> std::optional<Network> {
        Rng rng(s);
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p) edges.emplace_back(u, v);
        return Network::from_edges(n, edges);
      },
      seed, "gen_er");
}

Network gen_ws(int n, int k, double p, std::uint64_t seed) {
  if (n < 3) throw InvalidParams("gen_ws: n must be >= 3");
  if (k < 2 || k % 2 != 0 || k >= n) throw InvalidParams("gen_ws: k must be even, 2 <= k < n");
  if (p < 0.0 || p > 1.0) throw InvalidParams("gen_ws: p must be in [0, 1]");
  return connected_sample(
      [&](std::uint64_t s) -> std::optional<Network> {
        Rng rng(s);
        // mutable adjacency (no self-loops here; from_edges adds them)
        std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
        std::vector<int> deg(n, 0);
        auto has = [&](int u, int v) { return adj[static_cast<std::size_t>(u) * n + v] != 0; };
        auto put = [&](int u, int v, std::uint8_t x) {
          adj[static_cast<std::size_t>(u) * n + v] = x;
          adj[static_cast<std::size_t>(v) * n + u] = x;
          deg[u] += x ? 1 : -1;
          deg[v] += x ? 1 : -1;
        };
        for (int i = 0; i < n; ++i)
          for (int j = 1; j <= k / 2; ++j) put(i, (i + j) % n, 1);
        // each lattice edge is visited exactly once as (i, i+j)
        for (int i = 0; i < n; ++i)
          for (int j = 1; j <= k / 2; ++j) {
            if (rng.uniform() >= p) continue;
            if (deg[i] >= n - 1) continue;  // saturated, keep the edge
            int w;
            do {
              w = static_cast<int>(rng.uniform_int(0, n - 1));
            } while (w == i || has(i, w));
            put(i, (i + j) % n, 0);
            put(i, w, 1);
          }
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v)
            if (has(u, v)) edges.emplace_back(u, v);
        return Network::from_edges(n, edges);
      },
      seed, "gen_ws");
}

Network gen_sf(int n, int m, std::uint64_t seed) {
  if (n < 2) throw InvalidParams("gen_sf: n must be >= 2");
  if (m < 1 || m >= n) throw InvalidParams("gen_sf: m must satisfy 1 <= m < n");
  // attachment makes the graph connected by construction; keep the retry
  // wrapper anyway so all generators share one policy
  return connected_sample(
      [&](std::uint64_t s) -> std::optional<Network> {
        Rng rng(s);
        std::vector<std::pair<int, int>> edges;
        std::vector<int> pool;  // one entry per edge endpoint
        for (int u = 0; u < m; ++u)
          for (int v = u + 1; v < m; ++v) {
            edges.emplace_back(u, v);
            pool.push_back(u);
            pool.push_back(v);
          }
        std::vector<int> chosen;
        for (int v = m; v < n; ++v) {
          chosen.clear();
          while (static_cast<int>(chosen.size()) < m) {
            int cand;
            if (pool.empty())  // m = 1 and no edges yet: uniform over existing
              cand = static_cast<int>(rng.uniform_int(0, v - 1));
            else
              cand = pool[static_cast<std::size_t>(rng.uniform_int(
                  0, static_cast<std::int64_t>(pool.size()) - 1))];
            if (std::find(chosen.begin(), chosen.end(), cand) == chosen.end())
              chosen.push_back(cand);
          }
          for (int u : chosen) {
            edges.emplace_back(u, v);
            pool.push_back(u);
            pool.push_back(v);
          }
        }
        return Network::from_edges(n, edges);
      },
      seed, "gen_sf");
}

Network gen_rr(int n, int k, std::uint64_t seed) {
  if (n < 2) throw InvalidParams("gen_rr: n must be >= 2");
  if (k < 1 || k >= n) throw InvalidParams("gen_rr: k must satisfy 1 <= k < n");
  if ((static_cast<std::int64_t>(n) * k) % 2 != 0)
    throw InvalidParams("gen_rr: n*k must be even");
  return connected_sample(
      [&](std::uint64_t s) -> std::optional<Network> {
        Rng rng(s);
        // pair random stubs, redrawing pairs that would create a self-edge
        // or duplicate; a stuck endgame restarts the pairing
        for (int restart = 0; restart < 200; ++restart) {
          std::vector<int> stubs;
          stubs.reserve(static_cast<std::size_t>(n) * k);
          for (int v = 0; v < n; ++v)
            for (int c = 0; c < k; ++c) stubs.push_back(v);
          std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
          std::vector<std::pair<int, int>> edges;
          int stale = 0;
          while (!stubs.empty() && stale < 500) {
            const auto i = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(stubs.size()) - 1));
            const auto j = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(stubs.size()) - 1));
            if (i == j) {
              ++stale;
              continue;
            }
            const int u = stubs[i];
            const int v = stubs[j];
            if (u == v || adj[static_cast<std::size_t>(u) * n + v]) {
              ++stale;
              continue;
            }
            stale = 0;
            adj[static_cast<std::size_t>(u) * n + v] = 1;
            adj[static_cast<std::size_t>(v) * n + u] = 1;
            edges.emplace_back(u, v);
            const auto a = std::max(i, j);
            const auto b = std::min(i, j);
            stubs[a] = stubs.back();
            stubs.pop_back();
            stubs[b] = stubs.back();
            stubs.pop_back();
          }
          if (stubs.empty()) return Network::from_edges(n, edges);
        }
        return std::nullopt;
      },
      seed, "gen_rr");
}

int diameter(const Network& net) {
  const int n = net.size();
  int best = 0;
  std::vector<int> dist(n);
  std::queue<int> q;
  for (int src = 0; src < n; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : net.neighbors(u))
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          q.push(v);
        }
    }
    for (int v = 0; v < n; ++v) {
      if (dist[v] < 0) throw Disconnected("diameter: graph is disconnected");
      best = std::max(best, dist[v]);
    }
  }
  return best;
}

DegreeStats degree_stats(const Network& net) {
  const int n = net.size();
  DegreeStats st;
  double sum = 0.0;
  for (int v = 0; v < n; ++v) {
    const int d = net.degree(v);
    sum += d;
    ++st.histogram[d];
  }
  st.mean = sum / n;
  double var = 0.0;
  for (int v = 0; v < n; ++v) {
    const double d = net.degree(v) - st.mean;
    var += d * d;
  }
  st.variance = var / n;
  return st;
}

}  // namespace netsolve

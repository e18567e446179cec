#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <vector>

#include "netsolve/graph.hpp"
#include "netsolve/linalg.hpp"

namespace netsolve {

// Vertex sequence (v_0, ..., v_l); length is the number of edges l.
// Vertices are 0-based. Walks over row indices (Kaczmarz schedules) use the
// same type with the complete self-looped graph implied.
struct Walk {
  std::vector<int> v;

  int length() const { return static_cast<int>(v.size()) - 1; }
};

bool is_walk_on(const Walk& w, const Network& net);

// Greedy cover decomposition. Scanning left to right, a sub-walk closes at
// the position where the running visited set first covers all n vertices;
// the closing vertex is shared with the next sub-walk (the visited set
// restarts at it). order = number of closed sub-walks; whatever trails the
// last cut is the residual tail.
struct OrderDecomposition {
  int order = 0;
  std::vector<int> cut_positions;  // position of each closing vertex
  int residual_start = 0;          // position where the uncovered tail begins
};

OrderDecomposition walk_order(const Walk& w, int n);

// Product of values[v_k] over every position of the walk, repeats included.
double f_product(const Walk& w, std::span<const double> values);

// Streams all length-t walks from `source` in lexicographic order (neighbor
// lists are sorted). Guarded by n^t <= 1e8; throws TooLarge beyond that.
class WalkEnumerator {
 public:
  WalkEnumerator(const Network& net, int source, int length);
  // Fills `out` and returns true until the space is exhausted.
  bool next(Walk& out);

 private:
  const Network* net_ = nullptr;
  int len_ = 0;
  bool done_ = false;
  bool first_ = true;
  std::vector<int> choice_;
  std::vector<int> verts_;
};

template <class F>
void for_each_walk(const Network& net, int source, int length, F&& fn) {
  WalkEnumerator en(net, source, length);
  Walk w;
  while (en.next(w)) fn(w);
}

// Sum over all length-(t+1) walks from `source` of the product of 1/d over
// every position except the last. Telescopes to exactly 1 on any network
// where degrees count the self-loop.
double product_mass_identity(const Network& net, int source, int t);

// Walk-sum upper bound on the error of agent `source` after t+1 steps:
// every length-t walk contributes its degree-product mass, discounted by
// (1 - phi)^(n r / 2) for its cover order r, times the initial error norm of
// each neighbor the walk can extend to. Orders are saturated at floor(t/n),
// which only relaxes the bound.
struct BoundReport {
  double bound = 0.0;
  std::vector<double> mass_by_order;   // extended walk mass per order, sums to 1
  std::vector<double> bound_by_order;  // contribution of each order to `bound`
  double phi = 0.0;
  int source = 0;
  int t = 0;
};

// Literal enumeration over all length-t walks.
BoundReport bound_enumerate(const Network& net, int source, int t,
                            std::span<const double> y0_norms, double phi_value);
// Same sum folded over (current vertex, visited set, saturated order)
// states; handles horizons where enumeration is hopeless. Needs n <= 20.
BoundReport bound_dynamic(const Network& net, int source, int t,
                          std::span<const double> y0_norms, double phi_value);

BoundReport bound_bruteforce(const LinearSystem& sys, const Network& net, int source, int t,
                             std::span<const double> y0_norms);
BoundReport bound_dp(const LinearSystem& sys, const Network& net, int source, int t,
                     std::span<const double> y0_norms);

// Closed-form over-counts of the cover-order classes on the complete graph
// with self-loops, from a fixed start vertex. Exact integers.
boost::multiprecision::cpp_int complete_graph_count(int n, int t, int r);

}  // namespace netsolve

#include "netsolve/walks.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace netsolve {

namespace {

void check_vertex(int v, int n, const char* where) {
  if (v < 0 || v >= n)
    throw IndexOutOfRange(std::string(where) + ": vertex " + std::to_string(v) +
                          " outside [0, " + std::to_string(n) + ")");
}

void check_enumerable(int n, int t, const char* where) {
  if (t > 0 && t * std::log(static_cast<double>(n)) > std::log(1e8) + 1e-9)
    throw TooLarge(std::string(where) + ": n^t exceeds the 1e8 enumeration guard");
}

}  // namespace

bool is_walk_on(const Walk& w, const Network& net) {
  if (w.v.empty()) return false;
  for (int v : w.v)
    if (v < 0 || v >= net.size()) return false;
  for (std::size_t p = 1; p < w.v.size(); ++p)
    if (!net.has_edge(w.v[p - 1], w.v[p])) return false;
  return true;
}

OrderDecomposition walk_order(const Walk& w, int n) {
  if (w.v.empty()) throw EmptyInput("walk_order: empty walk");
  if (n < 1) throw InvalidParams("walk_order: n must be >= 1");
  for (int v : w.v) check_vertex(v, n, "walk_order");

  OrderDecomposition d;
  std::vector<char> seen(n, 0);
  int covered = 0;
  int substart = 0;  // position of the current sub-walk's first vertex
  auto mark = [&](int v) {
    if (!seen[v]) {
      seen[v] = 1;
      ++covered;
    }
  };
  mark(w.v[0]);
  for (int p = 1; p < static_cast<int>(w.v.size()); ++p) {
    mark(w.v[p]);
    if (covered == n && p > substart) {
      d.cut_positions.push_back(p);
      ++d.order;
      std::fill(seen.begin(), seen.end(), 0);
      covered = 0;
      mark(w.v[p]);  // closing vertex starts the next sub-walk
      substart = p;
    }
  }
  d.residual_start = substart;
  return d;
}

double f_product(const Walk& w, std::span<const double> values) {
  if (w.v.empty()) throw EmptyInput("f_product: empty walk");
  double prod = 1.0;
  for (int v : w.v) {
    check_vertex(v, static_cast<int>(values.size()), "f_product");
    prod *= values[static_cast<std::size_t>(v)];
  }
  return prod;
}

WalkEnumerator::WalkEnumerator(const Network& net, int source, int length)
    : net_(&net), len_(length) {
  check_vertex(source, net.size(), "enumerate_walks");
  if (length < 0) throw InvalidParams("enumerate_walks: negative length");
  check_enumerable(net.size(), length, "enumerate_walks");
  verts_.assign(static_cast<std::size_t>(len_) + 1, source);
  choice_.assign(static_cast<std::size_t>(len_), 0);
  for (int d = 0; d < len_; ++d) verts_[d + 1] = net_->neighbors(verts_[d])[0];
}

bool WalkEnumerator::next(Walk& out) {
  if (done_) return false;
  if (first_) {
    first_ = false;
    out.v = verts_;
    return true;
  }
  // advance the deepest position that still has a sibling neighbor
  int d = len_ - 1;
  for (; d >= 0; --d) {
    const auto& nb = net_->neighbors(verts_[d]);
    if (choice_[d] + 1 < static_cast<int>(nb.size())) {
      ++choice_[d];
      verts_[d + 1] = nb[choice_[d]];
      break;
    }
  }
  if (d < 0) {
    done_ = true;
    return false;
  }
  for (int k = d + 1; k < len_; ++k) {
    choice_[k] = 0;
    verts_[k + 1] = net_->neighbors(verts_[k])[0];
  }
  out.v = verts_;
  return true;
}

double product_mass_identity(const Network& net, int source, int t) {
  check_vertex(source, net.size(), "product_mass_identity");
  if (t < 0) throw InvalidParams("product_mass_identity: negative t");
  check_enumerable(net.size(), t + 1, "product_mass_identity");
  // depth-first over walks of length t+1; the last position contributes no
  // 1/d factor. Summing subtree-by-subtree keeps rounding error proportional
  // to the walk length instead of the number of walks.
  auto dfs = [&](auto&& self, int v, int depth) -> double {
    if (depth == t + 1) return 1.0;
    double sum = 0.0;
    for (int u : net.neighbors(v)) sum += self(self, u, depth + 1);
    return sum / net.degree(v);
  };
  return dfs(dfs, source, 0);
}

namespace {

BoundReport make_report(int source, int t, double phi_value, int r_cap) {
  BoundReport rep;
  rep.source = source;
  rep.t = t;
  rep.phi = phi_value;
  rep.mass_by_order.assign(static_cast<std::size_t>(r_cap) + 1, 0.0);
  rep.bound_by_order.assign(static_cast<std::size_t>(r_cap) + 1, 0.0);
  return rep;
}

std::vector<double> order_discounts(int n, double phi_value, int r_cap) {
  std::vector<double> disc(static_cast<std::size_t>(r_cap) + 1);
  for (int r = 0; r <= r_cap; ++r)
    disc[static_cast<std::size_t>(r)] = std::pow(1.0 - phi_value, 0.5 * n * r);
  return disc;
}

void check_bound_args(const Network& net, int source, int t,
                      std::span<const double> y0_norms, double phi_value,
                      const char* where) {
  check_vertex(source, net.size(), where);
  if (t < 0) throw InvalidParams(std::string(where) + ": negative t");
  if (static_cast<int>(y0_norms.size()) != net.size())
    throw DimensionMismatch(std::string(where) + ": y0 norms length mismatch");
  if (!(phi_value >= 0.0) || phi_value > 1.0)
    throw InvalidParams(std::string(where) + ": phi outside [0, 1]");
}

}  // namespace

BoundReport bound_enumerate(const Network& net, int source, int t,
                            std::span<const double> y0_norms, double phi_value) {
  check_bound_args(net, source, t, y0_norms, phi_value, "bound_enumerate");
  const int n = net.size();
  const int r_cap = t / n;
  const auto disc = order_discounts(n, phi_value, r_cap);

  std::vector<double> inv_deg(static_cast<std::size_t>(n));
  std::vector<double> nbr_y0(static_cast<std::size_t>(n), 0.0);
  for (int v = 0; v < n; ++v) {
    inv_deg[static_cast<std::size_t>(v)] = 1.0 / net.degree(v);
    for (int u : net.neighbors(v)) nbr_y0[static_cast<std::size_t>(v)] += y0_norms[static_cast<std::size_t>(u)];
  }

  BoundReport rep = make_report(source, t, phi_value, r_cap);
  for_each_walk(net, source, t, [&](const Walk& w) {
    const double mass = f_product(w, inv_deg);
    const int raw = walk_order(w, n).order;
    const auto r = static_cast<std::size_t>(std::min(raw, r_cap));
    const int end = w.v.back();
    const double contrib = mass * disc[r] * nbr_y0[static_cast<std::size_t>(end)];
    rep.bound += contrib;
    rep.bound_by_order[r] += contrib;
    rep.mass_by_order[r] += mass * net.degree(end);
  });
  return rep;
}

BoundReport bound_dynamic(const Network& net, int source, int t,
                          std::span<const double> y0_norms, double phi_value) {
  check_bound_args(net, source, t, y0_norms, phi_value, "bound_dynamic");
  const int n = net.size();
  if (n > 20) throw TooLarge("bound_dynamic: visited-set states need n <= 20");
  const int r_cap = t / n;
  const std::size_t masks = std::size_t{1} << n;
  const std::size_t layer = masks * static_cast<std::size_t>(n);
  const std::size_t cells = layer * static_cast<std::size_t>(r_cap + 1);
  if (cells > 200'000'000) throw TooLarge("bound_dynamic: state space too large");

  const auto disc = order_discounts(n, phi_value, r_cap);
  const std::size_t full = masks - 1;
  auto at = [&](int r, std::size_t mask, int v) -> std::size_t {
    return static_cast<std::size_t>(r) * layer + mask * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(v);
  };

  std::vector<double> cur(cells, 0.0), nxt;
  cur[at(0, std::size_t{1} << source, source)] = 1.0 / net.degree(source);

  for (int s = 0; s < t; ++s) {
    nxt.assign(cells, 0.0);
    for (int r = 0; r <= r_cap; ++r)
      for (std::size_t mask = 1; mask <= full; ++mask)
        for (int v = 0; v < n; ++v) {
          const double m = cur[at(r, mask, v)];
          if (m == 0.0) continue;
          for (int u : net.neighbors(v)) {
            const double m2 = m / net.degree(u);
            const std::size_t grown = mask | (std::size_t{1} << u);
            if (grown == full) {
              // sub-walk closes at u; the visited set restarts there
              const int r2 = std::min(r + 1, r_cap);
              nxt[at(r2, std::size_t{1} << u, u)] += m2;
            } else {
              nxt[at(r, grown, u)] += m2;
            }
          }
        }
    cur.swap(nxt);
  }

  BoundReport rep = make_report(source, t, phi_value, r_cap);
  std::vector<double> nbr_y0(static_cast<std::size_t>(n), 0.0);
  for (int v = 0; v < n; ++v)
    for (int u : net.neighbors(v)) nbr_y0[static_cast<std::size_t>(v)] += y0_norms[static_cast<std::size_t>(u)];
  for (int r = 0; r <= r_cap; ++r)
    for (std::size_t mask = 1; mask <= full; ++mask)
      for (int v = 0; v < n; ++v) {
        const double m = cur[at(r, mask, v)];
        if (m == 0.0) continue;
        const auto ri = static_cast<std::size_t>(r);
        const double contrib = m * disc[ri] * nbr_y0[static_cast<std::size_t>(v)];
        rep.bound += contrib;
        rep.bound_by_order[ri] += contrib;
        rep.mass_by_order[ri] += m * net.degree(v);
      }
  return rep;
}

BoundReport bound_bruteforce(const LinearSystem& sys, const Network& net, int source, int t,
                             std::span<const double> y0_norms) {
  if (sys.n() != net.size()) throw DimensionMismatch("bound_bruteforce: system/network size");
  return bound_enumerate(net, source, t, y0_norms, phi(sys));
}

BoundReport bound_dp(const LinearSystem& sys, const Network& net, int source, int t,
                     std::span<const double> y0_norms) {
  if (sys.n() != net.size()) throw DimensionMismatch("bound_dp: system/network size");
  return bound_dynamic(net, source, t, y0_norms, phi(sys));
}

namespace {

using boost::multiprecision::cpp_int;

cpp_int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  cpp_int out = 1;
  for (int i = 0; i < k; ++i) {
    out *= n - i;
    out /= i + 1;
  }
  return out;
}

cpp_int int_pow(int base, int exp) {
  cpp_int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

// falling factorial a * (a-1) * ... * (a-n+1)
cpp_int permutations(int a, int n) {
  cpp_int out = 1;
  for (int i = 0; i < n; ++i) out *= a - i;
  return out;
}

// walks of length t from a fixed vertex that never cover all n vertices:
// confine the remaining t positions to a proper subset
cpp_int order0_count(int n, int t) {
  cpp_int total = 0;
  for (int k = 1; k <= n - 1; ++k) total += binomial(n, k) * int_pow(k, t);
  total -= int_pow(n - 1, t);
  return total;
}

}  // namespace

cpp_int complete_graph_count(int n, int t, int r) {
  if (n < 2) throw InvalidParams("complete_graph_count: n must be >= 2");
  if (t < 0) throw InvalidParams("complete_graph_count: t must be >= 0");
  if (r < 0) throw InvalidParams("complete_graph_count: r must be >= 0");
  if (r == 0) return order0_count(n, t);
  if (static_cast<long>(r) * n > t)
    throw InvalidParams("complete_graph_count: order " + std::to_string(r) +
                        " needs t >= " + std::to_string(r * n));
  // r blocks of n positions each placed left to right; block i draws its
  // positions from a prefix of length t - (r-i)*n; the leftover t - rn
  // positions form an order-0 stretch
  cpp_int out = order0_count(n, t - r * n);
  for (int i = 1; i <= r; ++i) out *= permutations(t - (r - i) * n, n);
  return out;
}

}  // namespace netsolve

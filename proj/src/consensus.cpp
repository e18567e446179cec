#include "netsolve/consensus.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "netsolve/io.hpp"
#include "netsolve/rng.hpp"

namespace netsolve {

namespace {

void check_pair(const LinearSystem& sys, const Network& net, const char* where) {
  if (sys.n() != net.size())
    throw DimensionMismatch(std::string(where) + ": system has " + std::to_string(sys.n()) +
                            " rows but network has " + std::to_string(net.size()) + " vertices");
}

inline void update_agent(const LinearSystem& sys, const Network& net,
                         const Eigen::MatrixXd& src, Eigen::MatrixXd& dst, int i) {
  const double d = static_cast<double>(net.degree(i));
  Eigen::VectorXd s = d * src.col(i);
  for (int j : net.neighbors(i)) s -= src.col(j);
  const auto a = sys.A.row(i);
  const double coef = a.dot(s) / (sys.row_norms(i) * sys.row_norms(i));
  dst.col(i) = src.col(i) - (s - coef * a.transpose()) / d;
}

}  // namespace

void step_into(const LinearSystem& sys, const Network& net, const Eigen::MatrixXd& src,
               Eigen::MatrixXd& dst, bool parallel) {
  const int n = net.size();
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n; ++i) update_agent(sys, net, src, dst, i);
}

AgentEnsemble init_states(const LinearSystem& sys, const Network& net, double radius,
                          std::uint64_t seed) {
  check_pair(sys, net, "init_states");
  if (radius < 0.0) throw InvalidParams("init_states: radius must be >= 0");
  const int n = sys.n();
  AgentEnsemble ens;
  ens.sys = &sys;
  ens.net = &net;
  ens.t = 0;
  ens.states.resize(n, n);
  Rng rng(seed);
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) {
    double norm = 0.0;
    do {
      for (int k = 0; k < n; ++k) g(k) = rng.normal();
      norm = g.norm();
    } while (norm == 0.0);
    const Eigen::VectorXd r = (radius / norm) * g;
    ens.states.col(i) = sys.x_star + project_row_kernel(sys, i, r);
  }
  return ens;
}

AgentEnsemble step(const AgentEnsemble& ens) {
  check_pair(*ens.sys, *ens.net, "step");
  AgentEnsemble out = ens;
  step_into(*ens.sys, *ens.net, ens.states, out.states, true);
  out.t = ens.t + 1;
  return out;
}

AgentEnsemble step_serial(const AgentEnsemble& ens) {
  check_pair(*ens.sys, *ens.net, "step_serial");
  AgentEnsemble out = ens;
  step_into(*ens.sys, *ens.net, ens.states, out.states, false);
  out.t = ens.t + 1;
  return out;
}

UpdatingMatrix build_updating_matrix(const LinearSystem& sys, const Network& net) {
  check_pair(sys, net, "build_updating_matrix");
  const int n = sys.n();
  if (n > 64) throw TooLarge("build_updating_matrix: dense form capped at n = 64");

  // (D^-1 adj^T) kron I, wrapped by the block-diagonal projector on each side
  Eigen::MatrixXd W(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      W(i, j) = net.has_edge(j, i) ? 1.0 / net.degree(i) : 0.0;

  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (W(i, j) != 0.0) K.block(i * n, j * n, n, n) = W(i, j) * eye;

  Eigen::MatrixXd Pdiag = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) Pdiag.block(i * n, i * n, n, n) = row_projector(sys, i).P;

  UpdatingMatrix um;
  um.n = n;
  um.M = Pdiag * K * Pdiag;
  return um;
}

double mixed_norm(const LinearSystem& sys, const Network& net, int t) {
  if (t < 1) throw InvalidParams("mixed_norm: t must be >= 1");
  const UpdatingMatrix um = build_updating_matrix(sys, net);
  const int n = um.n;

  // M^t by binary exponentiation
  Eigen::MatrixXd pow = Eigen::MatrixXd::Identity(n * n, n * n);
  Eigen::MatrixXd base = um.M;
  int e = t;
  while (e > 0) {
    if (e & 1) pow = pow * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }

  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n; ++j) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(pow.block(i * n, j * n, n, n));
      row_sum += svd.singularValues()(0);
    }
    worst = std::max(worst, row_sum);
  }
  return worst;
}

ConvergenceTrace run_consensus(const LinearSystem& sys, const Network& net,
                               std::span<const long> checkpoints, double radius,
                               std::uint64_t seed) {
  check_pair(sys, net, "run_consensus");
  if (checkpoints.empty()) throw InvalidParams("run_consensus: no checkpoints");
  std::vector<long> marks(checkpoints.begin(), checkpoints.end());
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  if (marks.front() < 0) throw InvalidParams("run_consensus: negative checkpoint");

  const int n = sys.n();
  AgentEnsemble ens = init_states(sys, net, radius, seed);

  Eigen::VectorXd eps0(n);
  for (int i = 0; i < n; ++i) eps0(i) = (ens.states.col(i) - sys.x_star).norm();
  const double sum0 = eps0.sum();
  if (sum0 == 0.0)
    throw DegenerateInitial("run_consensus: zero initial error, relative error undefined");

  ConvergenceTrace trace;
  auto record = [&](long t, const Eigen::MatrixXd& states) {
    Checkpoint cp;
    cp.t = t;
    cp.eps.resize(n);
    for (int i = 0; i < n; ++i) cp.eps(i) = (states.col(i) - sys.x_star).norm();
    cp.relative_error = cp.eps.sum() / sum0;
    trace.checkpoints.push_back(std::move(cp));
  };

  Eigen::MatrixXd cur = ens.states;
  Eigen::MatrixXd nxt(n, n);
  std::size_t next_mark = 0;
  if (marks[next_mark] == 0) {
    record(0, cur);
    ++next_mark;
  }
  for (long t = 1; next_mark < marks.size(); ++t) {
    step_into(sys, net, cur, nxt, true);
    cur.swap(nxt);
    if (t == marks[next_mark]) {
      record(t, cur);
      ++next_mark;
    }
  }
  return trace;
}

ConvergenceTrace run_consensus(const LinearSystem& sys, const Network& net, long t_max,
                               long stride, double radius, std::uint64_t seed) {
  if (t_max < 0) throw InvalidParams("run_consensus: t_max must be >= 0");
  if (stride < 1) throw InvalidParams("run_consensus: stride must be >= 1");
  std::vector<long> marks;
  for (long t = 0; t <= t_max; t += stride) marks.push_back(t);
  if (marks.back() != t_max) marks.push_back(t_max);
  return run_consensus(sys, net, marks, radius, seed);
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
  if (trace.checkpoints.empty()) throw EmptyInput("trace_to_csv: empty trace");
  const auto n = trace.checkpoints.front().eps.size();
  std::string out = "t";
  for (Eigen::Index i = 0; i < n; ++i) out += ",eps_" + std::to_string(i + 1);
  out += ",R\n";
  for (const auto& cp : trace.checkpoints) {
    out += std::to_string(cp.t);
    for (Eigen::Index i = 0; i < n; ++i) out += "," + format_double_17(cp.eps(i));
    out += "," + format_double_17(cp.relative_error) + "\n";
  }
  return out;
}

}  // namespace netsolve

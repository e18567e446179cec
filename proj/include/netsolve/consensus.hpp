#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "netsolve/graph.hpp"
#include "netsolve/linalg.hpp"

namespace netsolve {

// One state vector per agent; column i of `states` is x_i.
// Agent i knows only row i of the system and its graph neighbors.
struct AgentEnsemble {
  const LinearSystem* sys = nullptr;
  const Network* net = nullptr;
  Eigen::MatrixXd states;
  long t = 0;
};

// x_i(0) = x* + P_i r_i with r_i a seeded random direction of norm `radius`,
// so every agent starts on its own constraint hyperplane.
AgentEnsemble init_states(const LinearSystem& sys, const Network& net, double radius,
                          std::uint64_t seed);

// x_i <- x_i - (1/d_i) P_i (d_i x_i - sum of neighbor states).
// step() runs the agents in parallel when OpenMP is available; step_serial()
// is the reference kernel kept for testing. Both share the same per-agent
// arithmetic, so their outputs are bit-identical.
AgentEnsemble step(const AgentEnsemble& ens);
AgentEnsemble step_serial(const AgentEnsemble& ens);

// In-place kernel used by both step flavors and by run_consensus.
void step_into(const LinearSystem& sys, const Network& net, const Eigen::MatrixXd& src,
               Eigen::MatrixXd& dst, bool parallel);

// Error dynamics as one n^2 x n^2 matrix: block (i,j) is (a_ij/d_i) P_i P_j.
// Dense materialization is only sensible for small n; guarded at n <= 64.
struct UpdatingMatrix {
  Eigen::MatrixXd M;
  int n = 0;

  Eigen::MatrixXd block(int i, int j) const { return M.block(i * n, j * n, n, n); }
};

UpdatingMatrix build_updating_matrix(const LinearSystem& sys, const Network& net);

// Max row sum of the matrix of blockwise spectral norms of M^t.
double mixed_norm(const LinearSystem& sys, const Network& net, int t);

struct Checkpoint {
  long t = 0;
  Eigen::VectorXd eps;           // per-agent ||x_i(t) - x*||
  double relative_error = 0.0;   // sum eps(t) / sum eps(0)
};

struct ConvergenceTrace {
  std::vector<Checkpoint> checkpoints;
};

// Iterates agentwise (never materializes the updating matrix) and records
// checkpoints at the requested times. Throws DegenerateInitial when the
// initial error sum is zero (radius 0), since R(t) would be 0/0.
ConvergenceTrace run_consensus(const LinearSystem& sys, const Network& net,
                               std::span<const long> checkpoints, double radius,
                               std::uint64_t seed);

// Convenience: checkpoints at 0, stride, 2*stride, ..., and t_max.
ConvergenceTrace run_consensus(const LinearSystem& sys, const Network& net, long t_max,
                               long stride, double radius, std::uint64_t seed);

std::string trace_to_csv(const ConvergenceTrace& trace);

}  // namespace netsolve

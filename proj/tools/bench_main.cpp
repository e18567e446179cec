// Benchmark comparing the serial reference step kernel against the
// OpenMP-parallel one, verifying bit-identical outputs along the way.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "netsolve/consensus.hpp"
#include "netsolve/graph.hpp"
#include "netsolve/linalg.hpp"
#include "netsolve/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

netsolve::LinearSystem make_system(int n, std::uint64_t seed) {
  netsolve::Rng rng(seed);
  for (int attempt = 0; attempt < 50; ++attempt) {
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
      b(i) = rng.uniform(-1.0, 1.0);
    }
    try {
      return netsolve::build_system(a, b);
    } catch (const netsolve::SingularMatrix&) {
    }
  }
  throw std::runtime_error("could not draw an invertible system");
}

double time_steps(const netsolve::LinearSystem& sys, const netsolve::Network& net,
                  const Eigen::MatrixXd& start, int steps, bool parallel,
                  Eigen::MatrixXd& final_states) {
  Eigen::MatrixXd cur = start;
  Eigen::MatrixXd next(start.rows(), start.cols());
  const auto t0 = Clock::now();
  for (int s = 0; s < steps; ++s) {
    netsolve::step_into(sys, net, cur, next, parallel);
    cur.swap(next);
  }
  const auto t1 = Clock::now();
  final_states = cur;
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run the serial kernel\n");
#endif
  std::printf("%6s %8s %6s %12s %12s %9s %6s\n", "n", "edges", "steps", "serial[ms]",
              "openmp[ms]", "speedup", "equal");

  const int steps = 200;
  bool all_equal = true;
  for (int n : {50, 100, 200, 400}) {
    const netsolve::LinearSystem sys = make_system(n, 1000 + static_cast<std::uint64_t>(n));
    const netsolve::Network net =
        netsolve::gen_er(n, 8.0 / (n - 1), 2000 + static_cast<std::uint64_t>(n));
    const netsolve::AgentEnsemble ens =
        netsolve::init_states(sys, net, 1.0, 3000 + static_cast<std::uint64_t>(n));

    Eigen::MatrixXd serial_out, parallel_out;
    // warm-up pass so first-touch page faults don't skew the serial column
    time_steps(sys, net, ens.states, 5, true, parallel_out);
    const double ms_serial = time_steps(sys, net, ens.states, steps, false, serial_out);
    const double ms_parallel = time_steps(sys, net, ens.states, steps, true, parallel_out);

    const bool equal = serial_out == parallel_out;
    all_equal = all_equal && equal;
    std::printf("%6d %8zu %6d %12.2f %12.2f %8.2fx %6s\n", n, net.non_self_edges().size(),
                steps, ms_serial, ms_parallel, ms_serial / ms_parallel, equal ? "yes" : "NO");
  }

  if (!all_equal) {
    std::printf("mismatch between serial and parallel kernels\n");
    return 1;
  }
  return 0;
}

#include "netsolve/kaczmarz.hpp"

#include <cmath>
#include <string>

#include "netsolve/rng.hpp"
#include "netsolve/walks.hpp"

namespace netsolve {

Eigen::VectorXd kaczmarz_step(const LinearSystem& sys, const Eigen::VectorXd& z, int row) {
  const int n = sys.n();
  if (row < 0 || row >= n)
    throw IndexOutOfRange("kaczmarz_step: row " + std::to_string(row) + " outside [0, " +
                          std::to_string(n) + ")");
  if (z.size() != n) throw DimensionMismatch("kaczmarz_step: vector length mismatch");
  const auto a = sys.A.row(row);
  const double resid = sys.b(row) - a.dot(z);
  return z + (resid / (sys.row_norms(row) * sys.row_norms(row))) * a.transpose();
}

ScheduleRun run_schedule(const LinearSystem& sys, const Eigen::VectorXd& z0,
                         std::span<const int> schedule) {
  if (z0.size() != sys.n()) throw DimensionMismatch("run_schedule: z0 length mismatch");
  ScheduleRun run;
  run.errors.reserve(schedule.size() + 1);
  Eigen::VectorXd z = z0;
  run.errors.push_back((z - sys.x_star).norm());
  for (int row : schedule) {
    z = kaczmarz_step(sys, z, row);
    run.errors.push_back((z - sys.x_star).norm());
  }
  run.z_final = std::move(z);
  return run;
}

Theorem3Bound theorem3_bound(const LinearSystem& sys, int r) {
  if (r < 1) throw InvalidParams("theorem3_bound: order must be >= 1");
  const double n = sys.n();
  const double kappa = condition_numbers(sys).kappa;
  Theorem3Bound b;
  b.tight = std::pow(1.0 - phi(sys), 0.5 * n * r);
  b.loose = std::pow(1.0 - 1.0 / (kappa * kappa), 0.5 * n * r);
  return b;
}

SequenceReport verify_sequence_bounds(const LinearSystem& sys, std::span<const int> schedule,
                                      const Eigen::VectorXd& z0) {
  const int n = sys.n();
  // a schedule is a walk over row indices on the complete self-looped graph
  Walk w;
  w.v.reserve(schedule.size());
  for (int row : schedule) {
    if (row < 0 || row >= n)
      throw IndexOutOfRange("verify_sequence_bounds: row " + std::to_string(row) +
                            " outside [0, " + std::to_string(n) + ")");
    w.v.push_back(row);
  }
  if (w.v.empty()) throw EmptyInput("verify_sequence_bounds: empty schedule");

  SequenceReport rep;
  rep.order = walk_order(w, n).order;

  const ScheduleRun run = run_schedule(sys, z0, schedule);
  rep.initial_error = run.errors.front();
  rep.final_error = run.errors.back();

  const double slack = 1e-12;
  rep.monotone = true;
  for (std::size_t k = 1; k < run.errors.size(); ++k) {
    if (run.errors[k] > run.errors[k - 1] * (1.0 + slack) + 1e-300) {
      rep.monotone = false;
      throw BoundViolated("verify_sequence_bounds: error grew at step " + std::to_string(k) +
                          " (" + std::to_string(run.errors[k - 1]) + " -> " +
                          std::to_string(run.errors[k]) + ")");
    }
  }

  rep.contraction_holds = true;
  if (rep.order >= 1) {
    const Theorem3Bound b = theorem3_bound(sys, rep.order);
    rep.tight_factor = b.tight;
    rep.loose_factor = b.loose;
    const double envelope = b.tight * rep.initial_error;
    if (rep.final_error > envelope * (1.0 + slack) + 1e-300) {
      rep.contraction_holds = false;
      throw BoundViolated("verify_sequence_bounds: final error " +
                          std::to_string(rep.final_error) + " above envelope " +
                          std::to_string(envelope) + " for order " +
                          std::to_string(rep.order));
    }
  }
  return rep;
}

std::vector<int> cyclic_schedule(int n, int sweeps) {
  if (n < 1 || sweeps < 0) throw InvalidParams("cyclic_schedule: bad parameters");
  std::vector<int> s;
  s.reserve(static_cast<std::size_t>(n) * sweeps);
  for (int k = 0; k < sweeps; ++k)
    for (int row = 0; row < n; ++row) s.push_back(row);
  return s;
}

std::vector<int> random_schedule(int n, int length, std::uint64_t seed) {
  if (n < 1 || length < 0) throw InvalidParams("random_schedule: bad parameters");
  Rng rng(seed);
  std::vector<int> s(static_cast<std::size_t>(length));
  for (auto& row : s) row = static_cast<int>(rng.uniform_int(0, n - 1));
  return s;
}

}  // namespace netsolve

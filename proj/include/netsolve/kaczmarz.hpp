#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "netsolve/linalg.hpp"

namespace netsolve {

// Project z onto the hyperplane of row `row`: the error picks up one factor
// of that row's kernel projector.
Eigen::VectorXd kaczmarz_step(const LinearSystem& sys, const Eigen::VectorXd& z, int row);

struct ScheduleRun {
  Eigen::VectorXd z_final;
  std::vector<double> errors;  // ||z(k) - x*||, k = 0..schedule length
};

ScheduleRun run_schedule(const LinearSystem& sys, const Eigen::VectorXd& z0,
                         std::span<const int> schedule);

// Contraction factors promised for a schedule whose row sequence has cover
// order r >= 1. Numerically the kappa form comes out at or below the phi
// form whenever kappa > 1, despite the naming.
struct Theorem3Bound {
  double tight = 0.0;  // (1 - phi)^(n r / 2)
  double loose = 0.0;  // (1 - kappa^-2)^(n r / 2)
};

Theorem3Bound theorem3_bound(const LinearSystem& sys, int r);

struct SequenceReport {
  int order = 0;
  double initial_error = 0.0;
  double final_error = 0.0;
  double tight_factor = 1.0;  // applies when order >= 1
  double loose_factor = 1.0;
  bool monotone = false;
  bool contraction_holds = false;
};

// Runs the schedule and checks that the error never grows step to step and,
// for schedules of cover order >= 1, that the final error sits under the
// (1 - phi)^(n r / 2) envelope. Throws BoundViolated with the offending step
// if either check fails; a throw here means a real defect.
SequenceReport verify_sequence_bounds(const LinearSystem& sys, std::span<const int> schedule,
                                      const Eigen::VectorXd& z0);

std::vector<int> cyclic_schedule(int n, int sweeps);
std::vector<int> random_schedule(int n, int length, std::uint64_t seed);

}  // namespace netsolve

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "netsolve/linalg.hpp"
#include "netsolve/rng.hpp"

namespace test_helpers {

inline Eigen::MatrixXd random_matrix(int n, std::uint64_t seed) {
  netsolve::Rng rng(seed);
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = rng.uniform(-1.0, 1.0);
  return A;
}

inline Eigen::VectorXd random_vector(int n, std::uint64_t seed) {
  netsolve::Rng rng(seed);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

// Deterministic well-posed system; skips the rare singular draw.
inline netsolve::LinearSystem random_system(int n, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    try {
      return netsolve::build_system(random_matrix(n, s), random_vector(n, s + 7919));
    } catch (const netsolve::SingularMatrix&) {
    }
  }
}

// System with orthonormal rows (QR of a Gaussian draw): tau = 1,
// ||A^-1|| = 1, so the contraction ingredient is exactly 1/n. Long-run
// convergence checks use these so the runtime budget tests the topology,
// not the conditioning of the matrix draw.
inline netsolve::LinearSystem orthogonal_system(int n, std::uint64_t seed) {
  netsolve::Rng rng(seed);
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  Eigen::VectorXd xs(n);
  for (int i = 0; i < n; ++i) xs(i) = rng.uniform(-1.0, 1.0);
  return netsolve::build_system(Q, Q * xs);
}

}  // namespace test_helpers

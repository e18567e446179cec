#pragma once

#include <Eigen/Dense>

#include "netsolve/errors.hpp"

namespace netsolve {

// Square full-rank system A x = b together with the quantities the rest of
// the library keeps asking for. Immutable after build_system.
struct LinearSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd x_star;     // unique solution
  Eigen::VectorXd row_norms;  // Euclidean norm of each row, all > 0
  double tau = 0.0;           // max row norm
  double inv_norm = 0.0;      // ||A^-1|| = 1 / sigma_min(A)

  int n() const { return static_cast<int>(A.rows()); }
};

// Validates shape and rank, solves for x_star, caches row norms.
// Throws DimensionMismatch for non-square / size mismatch and SingularMatrix
// when sigma_min/sigma_max < 1e-12.
LinearSystem build_system(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

// Orthogonal projector onto the kernel of row i: P = I - a a^T / ||a||^2.
// Rank n-1, symmetric, idempotent.
struct RowProjector {
  Eigen::MatrixXd P;
  int row_index = 0;  // 0-based
};

RowProjector row_projector(const LinearSystem& sys, int i);

// Applies the row-i kernel projector without materializing it: O(n).
Eigen::VectorXd project_row_kernel(const LinearSystem& sys, int i,
                                   const Eigen::VectorXd& v);

// phi = 1 / (sqrt(n) * tau * ||A^-1||)^2, always in (0, 1].
double phi(const LinearSystem& sys);

struct ConditionNumbers {
  double kappa = 0.0;         // ||A|| * ||A^-1||
  double kappa_scaled = 0.0;  // ||A||_F * ||A^-1||
};

ConditionNumbers condition_numbers(const LinearSystem& sys);

}  // namespace netsolve

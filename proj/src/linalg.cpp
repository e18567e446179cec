#include "netsolve/linalg.hpp"

#include <Eigen/SVD>
#include <string>

namespace netsolve {

LinearSystem build_system(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  if (A.rows() == 0) throw DimensionMismatch("build_system: empty matrix");
  if (A.rows() != A.cols())
    throw DimensionMismatch("build_system: matrix is " + std::to_string(A.rows()) + "x" +
                            std::to_string(A.cols()) + ", expected square");
  if (b.size() != A.rows())
    throw DimensionMismatch("build_system: rhs has length " + std::to_string(b.size()) +
                            ", expected " + std::to_string(A.rows()));

  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (smax <= 0.0 || smin / smax < 1e-12)
    throw SingularMatrix("build_system: condition estimate exceeds 1e12");

  LinearSystem sys;
  sys.A = A;
  sys.b = b;
  sys.x_star = svd.solve(b);
  // one refinement pass tightens the residual for the worse-conditioned inputs
  sys.x_star += svd.solve(b - A * sys.x_star);
  sys.row_norms = A.rowwise().norm();
  sys.tau = sys.row_norms.maxCoeff();
  sys.inv_norm = 1.0 / smin;
  return sys;
}

RowProjector row_projector(const LinearSystem& sys, int i) {
  const int n = sys.n();
  if (i < 0 || i >= n)
    throw IndexOutOfRange("row_projector: row " + std::to_string(i) + " outside [0, " +
                          std::to_string(n) + ")");
  const Eigen::RowVectorXd a = sys.A.row(i);
  RowProjector rp;
  rp.row_index = i;
  rp.P = Eigen::MatrixXd::Identity(n, n) -
         (a.transpose() * a) / (sys.row_norms(i) * sys.row_norms(i));
  return rp;
}

Eigen::VectorXd project_row_kernel(const LinearSystem& sys, int i,
                                   const Eigen::VectorXd& v) {
  const int n = sys.n();
  if (i < 0 || i >= n)
    throw IndexOutOfRange("project_row_kernel: row " + std::to_string(i) + " outside [0, " +
                          std::to_string(n) + ")");
  if (v.size() != n) throw DimensionMismatch("project_row_kernel: vector length mismatch");
  const auto a = sys.A.row(i);
  const double coef = a.dot(v) / (sys.row_norms(i) * sys.row_norms(i));
  return v - coef * a.transpose();
}

double phi(const LinearSystem& sys) {
  const double root = std::sqrt(static_cast<double>(sys.n())) * sys.tau * sys.inv_norm;
  return 1.0 / (root * root);
}

ConditionNumbers condition_numbers(const LinearSystem& sys) {
  ConditionNumbers c;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(sys.A);
  c.kappa = svd.singularValues()(0) * sys.inv_norm;
  c.kappa_scaled = sys.A.norm() * sys.inv_norm;  // Frobenius * ||A^-1||
  return c;
}

}  // namespace netsolve

#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <memory>
#include <variant>

#include "sgl0/box.hpp"

namespace sgl0 {

using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Dense or CSR matrix with forward/adjoint application and the
/// elementwise-absolute-value applications |A|v and |A|^T v.
class LinearOperator {
 public:
  LinearOperator() = default;
  explicit LinearOperator(Mat dense);
  explicit LinearOperator(SpMat sparse);

  Eigen::Index rows() const;
  Eigen::Index cols() const;
  bool is_dense() const { return std::holds_alternative<Mat>(data_); }
  const Mat& dense() const { return std::get<Mat>(data_); }
  const SpMat& sparse() const { return std::get<SpMat>(data_); }

  Vec apply(const Vec& x) const;
  Vec apply_adjoint(const Vec& y) const;
  Vec apply_abs(const Vec& x) const;
  Vec apply_abs_adjoint(const Vec& y) const;

  /// max_j sum_i |a_ij|
  double max_column_abs_sum() const;
  /// largest singular value squared, by power iteration with a fixed seed
  double sigma_max_sq() const;

 private:
  std::variant<Mat, SpMat> data_;
};

/// Smooth convex loss f = f_s (+ lambda_extra * ||x||_1 as the nonsmooth f_n).
class LossModel {
 public:
  enum class Kind { LeastSquares, Logistic, Poisson };

  LossModel(Kind kind, LinearOperator A, Vec b, double lambda_extra = 0.0);

  Kind kind() const { return kind_; }
  const LinearOperator& A() const { return A_; }
  const Vec& b() const { return b_; }
  double lambda_extra() const { return lambda_extra_; }
  Eigen::Index dim() const { return A_.cols(); }

  /// full loss f(x) = f_s(x) + lambda_extra * ||x||_1
  double value(const Vec& x) const;
  double value_smooth(const Vec& x) const;
  Vec grad_smooth(const Vec& x) const;

  /// Lipschitz constant of grad f_s over the box
  double smoothness_constant(const BoxConstraint& box) const;
  /// componentwise bound on sup |[grad f_s(x)]_j + [d f_n(y)]_j| over the box
  double estimate_Lf(const BoxConstraint& box) const;

 private:
  Kind kind_;
  LinearOperator A_;
  Vec b_;
  double lambda_extra_;
  mutable double sigma_sq_cache_ = -1.0;
  double sigma_sq() const;
};

using LossPtr = std::shared_ptr<const LossModel>;

}  // namespace sgl0

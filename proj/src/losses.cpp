#include "sgl0/losses.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sgl0/rng.hpp"

namespace sgl0 {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExpLimit = 700.0;  // exp overflow threshold for doubles

template <typename F>
void for_each_entry(const LinearOperator& op, F&& f) {
  if (op.is_dense()) {
    const Mat& A = op.dense();
    for (Eigen::Index i = 0; i < A.rows(); ++i)
      for (Eigen::Index j = 0; j < A.cols(); ++j)
        if (A(i, j) != 0.0) f(i, j, A(i, j));
  } else {
    const SpMat& A = op.sparse();
    for (int i = 0; i < A.outerSize(); ++i)
      for (SpMat::InnerIterator it(A, i); it; ++it)
        if (it.value() != 0.0) f(it.row(), it.col(), it.value());
  }
}

// componentwise range of Ax over the box
void row_range(const LinearOperator& op, const BoxConstraint& box, Vec& lo, Vec& hi) {
  lo = Vec::Zero(op.rows());
  hi = Vec::Zero(op.rows());
  for_each_entry(op, [&](Eigen::Index i, Eigen::Index j, double a) {
    double v1 = a * box.lower()[j];
    double v2 = a * box.upper()[j];
    lo[i] += std::min(v1, v2);
    hi[i] += std::max(v1, v2);
  });
}

// max_j of the componentwise interval bound on |A^T r| with r_i in [rlo_i, rhi_i]
double adjoint_interval_bound(const LinearOperator& op, const Vec& rlo, const Vec& rhi) {
  Vec glo = Vec::Zero(op.cols());
  Vec ghi = Vec::Zero(op.cols());
  for_each_entry(op, [&](Eigen::Index i, Eigen::Index j, double a) {
    double v1 = a * rlo[i];
    double v2 = a * rhi[i];
    glo[j] += std::min(v1, v2);
    ghi[j] += std::max(v1, v2);
  });
  double out = 0.0;
  for (Eigen::Index j = 0; j < op.cols(); ++j)
    out = std::max(out, std::max(std::abs(glo[j]), std::abs(ghi[j])));
  return out;
}
}  // namespace

LinearOperator::LinearOperator(Mat dense) : data_(std::move(dense)) {}
LinearOperator::LinearOperator(SpMat sparse) : data_(std::move(sparse)) {
  std::get<SpMat>(data_).makeCompressed();
}

Eigen::Index LinearOperator::rows() const {
  return is_dense() ? dense().rows() : sparse().rows();
}
Eigen::Index LinearOperator::cols() const {
  return is_dense() ? dense().cols() : sparse().cols();
}

Vec LinearOperator::apply(const Vec& x) const {
  return is_dense() ? Vec(dense() * x) : Vec(sparse() * x);
}
Vec LinearOperator::apply_adjoint(const Vec& y) const {
  return is_dense() ? Vec(dense().transpose() * y) : Vec(sparse().transpose() * y);
}
Vec LinearOperator::apply_abs(const Vec& x) const {
  if (is_dense()) return dense().cwiseAbs() * x;
  Vec out = Vec::Zero(rows());
  for_each_entry(*this, [&](Eigen::Index i, Eigen::Index j, double a) {
    out[i] += std::abs(a) * x[j];
  });
  return out;
}
Vec LinearOperator::apply_abs_adjoint(const Vec& y) const {
  if (is_dense()) return dense().cwiseAbs().transpose() * y;
  Vec out = Vec::Zero(cols());
  for_each_entry(*this, [&](Eigen::Index i, Eigen::Index j, double a) {
    out[j] += std::abs(a) * y[i];
  });
  return out;
}

double LinearOperator::max_column_abs_sum() const {
  Vec s = apply_abs_adjoint(Vec::Ones(rows()));
  return s.size() ? s.maxCoeff() : 0.0;
}

double LinearOperator::sigma_max_sq() const {
  if (cols() == 0 || rows() == 0) return 0.0;
  CounterRng rng(0x5161u);
  Vec v(cols());
  for (Eigen::Index j = 0; j < cols(); ++j) v[j] = rng.normal();
  double nrm = v.norm();
  if (nrm == 0.0) return 0.0;
  v /= nrm;
  double lambda = 0.0;
  for (int it = 0; it < 50; ++it) {
    Vec w = apply_adjoint(apply(v));
    double lambda_new = w.norm();
    if (lambda_new == 0.0) return 0.0;
    v = w / lambda_new;
    if (it > 0 && std::abs(lambda_new - lambda) <= 1e-8 * lambda_new) {
      lambda = lambda_new;
      break;
    }
    lambda = lambda_new;
  }
  return lambda;
}

LossModel::LossModel(Kind kind, LinearOperator A, Vec b, double lambda_extra)
    : kind_(kind), A_(std::move(A)), b_(std::move(b)), lambda_extra_(lambda_extra) {
  if (A_.rows() != b_.size()) throw std::invalid_argument("loss: A rows != b length");
  if (lambda_extra_ < 0.0) throw std::invalid_argument("loss: lambda_extra < 0");
  if (kind_ == Kind::Logistic) {
    for (Eigen::Index i = 0; i < b_.size(); ++i)
      if (b_[i] != 1.0 && b_[i] != -1.0)
        throw std::invalid_argument("logistic loss: labels must be +-1");
  }
  if (kind_ == Kind::Poisson) {
    for (Eigen::Index i = 0; i < b_.size(); ++i)
      if (b_[i] < 0.0 || b_[i] != std::floor(b_[i]))
        throw std::invalid_argument("poisson loss: counts must be nonnegative integers");
  }
}

double LossModel::sigma_sq() const {
  if (sigma_sq_cache_ < 0.0) sigma_sq_cache_ = A_.sigma_max_sq();
  return sigma_sq_cache_;
}

double LossModel::value_smooth(const Vec& x) const {
  Vec y = A_.apply(x);
  switch (kind_) {
    case Kind::LeastSquares:
      return (y - b_).squaredNorm();
    case Kind::Logistic: {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        double t = -b_[i] * y[i];
        // log(1 + e^t), stable for large |t|
        acc += t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
      }
      return acc;
    }
    case Kind::Poisson: {
      double acc = 0.0;
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] > kExpLimit)
          throw std::runtime_error("poisson loss: exp overflow at row " + std::to_string(i));
        acc += -b_[i] * y[i] + std::exp(y[i]);
      }
      return acc;
    }
  }
  return 0.0;
}

double LossModel::value(const Vec& x) const {
  double v = value_smooth(x);
  if (lambda_extra_ > 0.0) v += lambda_extra_ * x.lpNorm<1>();
  return v;
}

Vec LossModel::grad_smooth(const Vec& x) const {
  Vec y = A_.apply(x);
  switch (kind_) {
    case Kind::LeastSquares:
      return 2.0 * A_.apply_adjoint(y - b_);
    case Kind::Logistic: {
      Vec u(y.size());
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        double t = b_[i] * y[i];
        // -b / (1 + e^t), stable
        u[i] = t > 0 ? -b_[i] * std::exp(-t) / (1.0 + std::exp(-t))
                     : -b_[i] / (1.0 + std::exp(t));
      }
      return A_.apply_adjoint(u);
    }
    case Kind::Poisson: {
      Vec r(y.size());
      for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] > kExpLimit)
          throw std::runtime_error("poisson loss: exp overflow at row " + std::to_string(i));
        r[i] = std::exp(y[i]) - b_[i];
      }
      return A_.apply_adjoint(r);
    }
  }
  return Vec();
}

double LossModel::smoothness_constant(const BoxConstraint& box) const {
  switch (kind_) {
    case Kind::LeastSquares:
      return 2.0 * sigma_sq();
    case Kind::Logistic:
      return sigma_sq() / 4.0;
    case Kind::Poisson: {
      if (!box.is_finite())
        throw std::invalid_argument("poisson loss: smoothness needs a finite box");
      Vec lo, hi;
      row_range(A_, box, lo, hi);
      double umax = hi.size() ? hi.maxCoeff() : 0.0;
      if (umax > kExpLimit)
        throw std::runtime_error("poisson loss: exp overflow in smoothness bound");
      return sigma_sq() * std::exp(umax);
    }
  }
  return 0.0;
}

double LossModel::estimate_Lf(const BoxConstraint& box) const {
  double lf = 0.0;
  switch (kind_) {
    case Kind::LeastSquares: {
      double w = 0.0;
      if (box.is_zero_to_constant(&w)) {
        // t = |A|^T (|A| 1);  Lf = 2 max(||w t - A^T b||_inf, ||-w t - A^T b||_inf)
        Vec t = A_.apply_abs_adjoint(A_.apply_abs(Vec::Ones(A_.cols())));
        Vec atb = A_.apply_adjoint(b_);
        lf = 2.0 * std::max((w * t - atb).lpNorm<Eigen::Infinity>(),
                            (-w * t - atb).lpNorm<Eigen::Infinity>());
      } else {
        Vec lo, hi;
        row_range(A_, box, lo, hi);
        lf = 2.0 * adjoint_interval_bound(A_, lo - b_, hi - b_);
      }
      break;
    }
    case Kind::Logistic:
      // sigmoid residual lies in (-1, 1)
      lf = A_.max_column_abs_sum();
      break;
    case Kind::Poisson: {
      if (!box.is_finite())
        throw std::invalid_argument("poisson loss: Lf needs a finite box");
      Vec lo, hi;
      row_range(A_, box, lo, hi);
      if ((hi.array() > kExpLimit).any())
        throw std::runtime_error("poisson loss: exp overflow in Lf bound");
      lf = adjoint_interval_bound(A_, lo.array().exp().matrix() - b_,
                                  hi.array().exp().matrix() - b_);
      break;
    }
  }
  lf += lambda_extra_;
  if (!(lf > 0.0))
    throw std::invalid_argument("loss: Lf bound is zero, nu would be undefined");
  if (!std::isfinite(lf))
    throw std::invalid_argument("loss: Lf bound is infinite for this box");
  return lf;
}

}  // namespace sgl0

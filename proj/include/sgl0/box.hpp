#pragma once

#include <Eigen/Core>

namespace sgl0 {

using Vec = Eigen::VectorXd;

/// Box constraint [l, u] with l <= 0 <= u componentwise and l < u.
/// Entries of `lower` may be -inf, entries of `upper` may be +inf.
class BoxConstraint {
 public:
  BoxConstraint() = default;
  BoxConstraint(Vec lower, Vec upper);

  static BoxConstraint uniform(Eigen::Index n, double lo, double hi);
  static BoxConstraint unbounded(Eigen::Index n);

  Eigen::Index size() const { return lower_.size(); }
  const Vec& lower() const { return lower_; }
  const Vec& upper() const { return upper_; }

  /// Smallest nonzero finite boundary magnitude; +inf when every bound is
  /// zero or infinite on the nonzero side.
  double vartheta() const { return vartheta_; }

  bool contains(const Vec& x, double tol = 0.0) const;
  Vec project(const Vec& x) const;
  double clip(double t, Eigen::Index j) const;

  bool is_finite() const;
  /// True when lower == 0 and upper == w*ones with finite w.
  bool is_zero_to_constant(double* w = nullptr) const;

 private:
  Vec lower_;
  Vec upper_;
  double vartheta_ = 0.0;
};

}  // namespace sgl0

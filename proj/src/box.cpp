#include "sgl0/box.hpp"

#include <limits>
#include <stdexcept>

namespace sgl0 {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BoxConstraint::BoxConstraint(Vec lower, Vec upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size())
    throw std::invalid_argument("box: lower/upper length mismatch");
  vartheta_ = kInf;
  for (Eigen::Index j = 0; j < lower_.size(); ++j) {
    if (!(lower_[j] <= 0.0) || !(upper_[j] >= 0.0))
      throw std::invalid_argument("box: requires lower <= 0 <= upper");
    if (!(lower_[j] < upper_[j]))
      throw std::invalid_argument("box: requires lower < upper");
    if (lower_[j] != 0.0 && std::isfinite(lower_[j]))
      vartheta_ = std::min(vartheta_, -lower_[j]);
    if (upper_[j] != 0.0 && std::isfinite(upper_[j]))
      vartheta_ = std::min(vartheta_, upper_[j]);
  }
}

BoxConstraint BoxConstraint::uniform(Eigen::Index n, double lo, double hi) {
  return BoxConstraint(Vec::Constant(n, lo), Vec::Constant(n, hi));
}

BoxConstraint BoxConstraint::unbounded(Eigen::Index n) {
  return BoxConstraint(Vec::Constant(n, -kInf), Vec::Constant(n, kInf));
}

bool BoxConstraint::contains(const Vec& x, double tol) const {
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x[j] < lower_[j] - tol || x[j] > upper_[j] + tol) return false;
  return true;
}

Vec BoxConstraint::project(const Vec& x) const {
  return x.cwiseMax(lower_).cwiseMin(upper_);
}

double BoxConstraint::clip(double t, Eigen::Index j) const {
  return std::min(upper_[j], std::max(t, lower_[j]));
}

bool BoxConstraint::is_finite() const {
  return lower_.allFinite() && upper_.allFinite();
}

bool BoxConstraint::is_zero_to_constant(double* w) const {
  if (lower_.size() == 0) return false;
  double u = upper_[0];
  if (!std::isfinite(u)) return false;
  for (Eigen::Index j = 0; j < lower_.size(); ++j)
    if (lower_[j] != 0.0 || upper_[j] != u) return false;
  if (w) *w = u;
  return true;
}

}  // namespace sgl0

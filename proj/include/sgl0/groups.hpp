#pragma once

#include <Eigen/Core>
#include <vector>

namespace sgl0 {

/// Index groups G_1,...,G_L covering {0,...,n-1}, per-group weights w_l >= 0
/// and the group norm selector p in {1, 2}. Groups may overlap when p = 1;
/// p = 2 requires pairwise disjoint groups.
class GroupStructure {
 public:
  GroupStructure() = default;
  GroupStructure(Eigen::Index n, std::vector<std::vector<int>> groups,
                 Eigen::VectorXd weights, int p);

  /// One group covering all of {0,...,n-1} with weight 0 (the lambda2 = 0 case).
  static GroupStructure trivial(Eigen::Index n);
  /// Disjoint consecutive blocks of the given size; n must divide evenly.
  static GroupStructure consecutive_blocks(Eigen::Index n, int block, int p,
                                           double weight = 1.0);

  Eigen::Index n() const { return n_; }
  Eigen::Index num_groups() const { return static_cast<Eigen::Index>(groups_.size()); }
  const std::vector<std::vector<int>>& groups() const { return groups_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  int p() const { return p_; }
  bool disjoint() const { return disjoint_; }

  /// groups containing coordinate j
  const std::vector<int>& groups_of(int j) const { return groups_of_[j]; }

  double group_norm(const Eigen::VectorXd& x, Eigen::Index l) const;
  Eigen::VectorXd group_norms(const Eigen::VectorXd& x) const;

 private:
  Eigen::Index n_ = 0;
  std::vector<std::vector<int>> groups_;
  Eigen::VectorXd weights_;
  int p_ = 1;
  bool disjoint_ = true;
  std::vector<std::vector<int>> groups_of_;
};

}  // namespace sgl0

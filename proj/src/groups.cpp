#include "sgl0/groups.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sgl0 {

GroupStructure::GroupStructure(Eigen::Index n, std::vector<std::vector<int>> groups,
                               Eigen::VectorXd weights, int p)
    : n_(n), groups_(std::move(groups)), weights_(std::move(weights)), p_(p) {
  if (p_ != 1 && p_ != 2) throw std::invalid_argument("groups: p must be 1 or 2");
  if (static_cast<Eigen::Index>(groups_.size()) != weights_.size())
    throw std::invalid_argument("groups: weights length mismatch");
  if ((weights_.array() < 0.0).any())
    throw std::invalid_argument("groups: weights must be nonnegative");

  std::vector<int> cover(n_, 0);
  groups_of_.assign(n_, {});
  for (std::size_t l = 0; l < groups_.size(); ++l) {
    const auto& g = groups_[l];
    if (g.empty()) throw std::invalid_argument("groups: empty group");
    int prev = -1;
    for (int j : g) {
      if (j < 0 || j >= n_) throw std::invalid_argument("groups: index out of range");
      if (j <= prev) throw std::invalid_argument("groups: indices must be strictly increasing");
      prev = j;
      cover[j]++;
      groups_of_[j].push_back(static_cast<int>(l));
    }
  }
  disjoint_ = true;
  for (int j = 0; j < n_; ++j) {
    if (cover[j] == 0) throw std::invalid_argument("groups: union must cover all coordinates");
    if (cover[j] > 1) disjoint_ = false;
  }
  if (p_ == 2 && !disjoint_)
    throw std::invalid_argument("groups: p = 2 requires disjoint groups");
}

GroupStructure GroupStructure::trivial(Eigen::Index n) {
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  return GroupStructure(n, {std::move(all)}, Eigen::VectorXd::Zero(1), 1);
}

GroupStructure GroupStructure::consecutive_blocks(Eigen::Index n, int block, int p,
                                                  double weight) {
  if (block <= 0 || n % block != 0)
    throw std::invalid_argument("groups: block size must divide n");
  std::vector<std::vector<int>> gs;
  for (Eigen::Index start = 0; start < n; start += block) {
    std::vector<int> g(block);
    std::iota(g.begin(), g.end(), static_cast<int>(start));
    gs.push_back(std::move(g));
  }
  Eigen::Index L = n / block;
  return GroupStructure(n, std::move(gs), Eigen::VectorXd::Constant(L, weight), p);
}

double GroupStructure::group_norm(const Eigen::VectorXd& x, Eigen::Index l) const {
  const auto& g = groups_[l];
  double acc = 0.0;
  if (p_ == 1) {
    for (int j : g) acc += std::abs(x[j]);
  } else {
    for (int j : g) acc += x[j] * x[j];
    acc = std::sqrt(acc);
  }
  return acc;
}

Eigen::VectorXd GroupStructure::group_norms(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(num_groups());
  for (Eigen::Index l = 0; l < num_groups(); ++l) out[l] = group_norm(x, l);
  return out;
}

}  // namespace sgl0

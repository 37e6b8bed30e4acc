#pragma once

#include <memory>

#include "sgl0/problem.hpp"
#include "sgl0/rng.hpp"

namespace sgl0::testutil {

inline Mat random_mat(Eigen::Index m, Eigen::Index n, CounterRng& rng) {
  Mat A(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = rng.normal();
  return A;
}

inline Vec random_vec(Eigen::Index n, CounterRng& rng) {
  Vec v(n);
  for (Eigen::Index j = 0; j < n; ++j) v[j] = rng.normal();
  return v;
}

inline ProblemSpec ls_problem(Mat A, Vec b, BoxConstraint box, GroupStructure gs,
                              double lambda1, double lambda2,
                              double lambda_extra = 0.0) {
  auto loss = std::make_shared<const LossModel>(LossModel::Kind::LeastSquares,
                                                LinearOperator(std::move(A)),
                                                std::move(b), lambda_extra);
  return ProblemSpec(std::move(loss), std::move(box), std::move(gs), lambda1,
                     lambda2);
}

/// well-conditioned random least-squares instance with trivial groups
inline ProblemSpec simple_ls(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                             double lambda1 = 0.3, double box_hi = 5.0) {
  CounterRng rng(seed);
  Mat A = random_mat(m, n, rng) / std::sqrt(static_cast<double>(m));
  Vec b = random_vec(m, rng);
  return ls_problem(std::move(A), std::move(b),
                    BoxConstraint::uniform(n, -box_hi, box_hi),
                    GroupStructure::trivial(n), lambda1, 0.0);
}

}  // namespace sgl0::testutil

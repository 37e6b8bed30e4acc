#pragma once

#include <Eigen/Core>
#include <vector>

#include "sgl0/box.hpp"
#include "sgl0/groups.hpp"
#include "sgl0/losses.hpp"

namespace sgl0 {

/// Full instance of the sparse group l0 problem:
///   min_{x in box}  f(x) + lambda1 ||x||_0 + lambda2 sum_l w_l [||x_(l)||_p != 0]
class ProblemSpec {
 public:
  ProblemSpec() = default;
  ProblemSpec(LossPtr loss, BoxConstraint box, GroupStructure groups,
              double lambda1, double lambda2);

  Eigen::Index n() const { return box_.size(); }
  const LossModel& loss() const { return *loss_; }
  const LossPtr& loss_ptr() const { return loss_; }
  const BoxConstraint& box() const { return box_; }
  const GroupStructure& groups() const { return groups_; }
  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }

  /// lambda_bar_j = lambda1 + lambda2 * sum_{l: j in G_l} w_l (overlap-aware)
  const Vec& lambda_bar() const { return lambda_bar_; }

 private:
  LossPtr loss_;
  BoxConstraint box_;
  GroupStructure groups_;
  double lambda1_ = 0.0;
  double lambda2_ = 0.0;
  Vec lambda_bar_;
};

/// Continuation schedule mu_k = max(M - k/d, nu), pinned at nu from
/// iteration K = min{k : M - k/d <= nu} onward.
struct MuSchedule {
  double M = 5.0;
  double step_divisor = 5.0;
  double nu = 0.0;

  double mu_at(int k) const;
  /// first k with mu_k == nu
  int pin_index() const;
};

struct RelaxationParams {
  double nu = 0.0;
  double Lf = 0.0;
  double vartheta = 0.0;
  double safety = 0.99;
  MuSchedule schedule;

  /// nu = safety * min(lambda1/Lf, vartheta), with Lf estimated from the loss
  static RelaxationParams derive(const ProblemSpec& spec, double safety = 0.99,
                                 double M = 5.0, double step_divisor = 5.0);
  /// explicitly supplied Lf (still validates Assumption-style bounds)
  static RelaxationParams with_Lf(const ProblemSpec& spec, double Lf,
                                  double safety = 0.99, double M = 5.0,
                                  double step_divisor = 5.0);
};

/// Active affine-piece selections: I_j in {1,2,3} per coordinate,
/// J_l in {1,2} per group, ties at the threshold resolving to the larger index.
struct IndexVectors {
  Eigen::VectorXi I;
  Eigen::VectorXi J;
};

/// theta(t; mu) = min(|t|/mu, 1)
double capped_theta(double t, double mu);

IndexVectors index_vectors(const Vec& x, double mu, const GroupStructure& groups);

/// The deterministic element of the subdifferential of
/// Theta_{I,J}(.; mu) = lambda1 sum_j theta_{I_j} + lambda2 sum_l w_l theta_{J_l}
/// used by both algorithms (0 is chosen at p=1 kinks).
Vec theta_subgradient(const Vec& x, double mu, const IndexVectors& iv,
                      const ProblemSpec& spec);

/// F_0(x): exact-zero counting, no epsilon thresholding
double eval_primal(const ProblemSpec& spec, const Vec& x);

/// Cached pieces of x that make F(x; mu) cheap to re-evaluate across mu.
struct EvalCache {
  double f_value = 0.0;
  Vec abs_x;
  Vec group_norms;
};

EvalCache make_eval_cache(const ProblemSpec& spec, const Vec& x);
double eval_relaxed_cached(const ProblemSpec& spec, const EvalCache& cache, double mu);
double eval_relaxed(const ProblemSpec& spec, const Vec& x, double mu);

}  // namespace sgl0

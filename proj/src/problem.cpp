#include "sgl0/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace sgl0 {

ProblemSpec::ProblemSpec(LossPtr loss, BoxConstraint box, GroupStructure groups,
                         double lambda1, double lambda2)
    : loss_(std::move(loss)), box_(std::move(box)), groups_(std::move(groups)),
      lambda1_(lambda1), lambda2_(lambda2) {
  // lambda1 == 0 is admitted for diagnostics (the global oracle degenerates to
  // box-constrained minimization); solvers require lambda1 > 0.
  if (lambda1_ < 0.0) throw std::invalid_argument("problem: lambda1 must be >= 0");
  if (lambda2_ < 0.0) throw std::invalid_argument("problem: lambda2 must be >= 0");
  if (loss_->dim() != box_.size() || groups_.n() != box_.size())
    throw std::invalid_argument("problem: dimension mismatch between loss, box, groups");

  lambda_bar_ = Vec::Constant(n(), lambda1_);
  for (Eigen::Index l = 0; l < groups_.num_groups(); ++l)
    for (int j : groups_.groups()[l])
      lambda_bar_[j] += lambda2_ * groups_.weights()[l];
}

double MuSchedule::mu_at(int k) const {
  if (k < 0) throw std::invalid_argument("schedule: k must be >= 0");
  return std::max(M - static_cast<double>(k) / step_divisor, nu);
}

int MuSchedule::pin_index() const {
  if (M <= nu) return 0;
  // smallest integer k with M - k/d <= nu
  return static_cast<int>(std::ceil((M - nu) * step_divisor - 1e-12));
}

namespace {
RelaxationParams finish(const ProblemSpec& spec, double Lf, double safety,
                        double M, double d) {
  if (spec.lambda1() <= 0.0)
    throw std::invalid_argument("relaxation: lambda1 must be > 0");
  if (!(Lf > 0.0) || !std::isfinite(Lf))
    throw std::invalid_argument("relaxation: Lf must be positive and finite");
  if (!(safety > 0.0 && safety < 1.0))
    throw std::invalid_argument("relaxation: safety must be in (0,1)");
  RelaxationParams rp;
  rp.Lf = Lf;
  rp.vartheta = spec.box().vartheta();
  rp.safety = safety;
  rp.nu = safety * std::min(spec.lambda1() / Lf, rp.vartheta);
  if (!(rp.nu > 0.0) || !std::isfinite(rp.nu))
    throw std::invalid_argument("relaxation: derived nu is not positive finite");
  rp.schedule = MuSchedule{M, d, rp.nu};
  return rp;
}
}  // namespace

RelaxationParams RelaxationParams::derive(const ProblemSpec& spec, double safety,
                                          double M, double step_divisor) {
  return finish(spec, spec.loss().estimate_Lf(spec.box()), safety, M, step_divisor);
}

RelaxationParams RelaxationParams::with_Lf(const ProblemSpec& spec, double Lf,
                                           double safety, double M,
                                           double step_divisor) {
  return finish(spec, Lf, safety, M, step_divisor);
}

double capped_theta(double t, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("capped_theta: mu must be > 0");
  return std::min(std::abs(t) / mu, 1.0);
}

IndexVectors index_vectors(const Vec& x, double mu, const GroupStructure& groups) {
  if (!(mu > 0.0)) throw std::invalid_argument("index_vectors: mu must be > 0");
  IndexVectors iv;
  iv.I.resize(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x[j] >= mu)
      iv.I[j] = 2;
    else if (x[j] <= -mu)
      iv.I[j] = 3;
    else
      iv.I[j] = 1;
  }
  iv.J.resize(groups.num_groups());
  for (Eigen::Index l = 0; l < groups.num_groups(); ++l)
    iv.J[l] = groups.group_norm(x, l) >= mu ? 2 : 1;
  return iv;
}

Vec theta_subgradient(const Vec& x, double mu, const IndexVectors& iv,
                      const ProblemSpec& spec) {
  const GroupStructure& gs = spec.groups();
  if (iv.I.size() != x.size() || iv.J.size() != gs.num_groups())
    throw std::invalid_argument("theta_subgradient: index vectors inconsistent");
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if ((iv.I[j] == 2 && x[j] < mu) || (iv.I[j] == 3 && x[j] > -mu) ||
        (iv.I[j] == 1 && std::abs(x[j]) >= mu))
      throw std::invalid_argument("theta_subgradient: index vectors inconsistent with x");
  }

  Vec xi = Vec::Zero(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (iv.I[j] == 2)
      xi[j] = spec.lambda1() / mu;
    else if (iv.I[j] == 3)
      xi[j] = -spec.lambda1() / mu;
  }
  if (spec.lambda2() > 0.0) {
    for (Eigen::Index l = 0; l < gs.num_groups(); ++l) {
      if (iv.J[l] != 2 || gs.weights()[l] == 0.0) continue;
      double coef = spec.lambda2() * gs.weights()[l] / mu;
      if (gs.p() == 2) {
        double nrm = gs.group_norm(x, l);  // >= mu > 0 since J_l == 2
        for (int j : gs.groups()[l]) xi[j] += coef * x[j] / nrm;
      } else {
        for (int j : gs.groups()[l])
          if (x[j] != 0.0) xi[j] += coef * (x[j] > 0 ? 1.0 : -1.0);
      }
    }
  }
  return xi;
}

double eval_primal(const ProblemSpec& spec, const Vec& x) {
  double v = spec.loss().value(x);
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x[j] != 0.0) v += spec.lambda1();
  if (spec.lambda2() > 0.0) {
    const GroupStructure& gs = spec.groups();
    for (Eigen::Index l = 0; l < gs.num_groups(); ++l)
      if (gs.group_norm(x, l) != 0.0) v += spec.lambda2() * gs.weights()[l];
  }
  return v;
}

EvalCache make_eval_cache(const ProblemSpec& spec, const Vec& x) {
  EvalCache c;
  c.f_value = spec.loss().value(x);
  c.abs_x = x.cwiseAbs();
  c.group_norms = spec.groups().group_norms(x);
  return c;
}

double eval_relaxed_cached(const ProblemSpec& spec, const EvalCache& cache, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("eval_relaxed: mu must be > 0");
  double v = cache.f_value;
  for (Eigen::Index j = 0; j < cache.abs_x.size(); ++j)
    v += spec.lambda1() * std::min(cache.abs_x[j] / mu, 1.0);
  if (spec.lambda2() > 0.0) {
    const Eigen::VectorXd& w = spec.groups().weights();
    for (Eigen::Index l = 0; l < cache.group_norms.size(); ++l)
      v += spec.lambda2() * w[l] * std::min(cache.group_norms[l] / mu, 1.0);
  }
  return v;
}

double eval_relaxed(const ProblemSpec& spec, const Vec& x, double mu) {
  return eval_relaxed_cached(spec, make_eval_cache(spec, x), mu);
}

}  // namespace sgl0

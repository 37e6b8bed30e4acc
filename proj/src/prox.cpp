#include "sgl0/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace sgl0 {

namespace {
void check(const ProxRequest& req) {
  if (!req.spec) throw std::invalid_argument("prox: missing problem spec");
  if (!(req.alpha > 0.0)) throw std::invalid_argument("prox: alpha must be > 0");
  if (!(req.mu > 0.0)) throw std::invalid_argument("prox: mu must be > 0");
  if (req.z.size() != req.spec->n()) throw std::invalid_argument("prox: z dimension mismatch");
}

double soft(double z, double tau) {
  double a = std::abs(z);
  if (a <= tau) return 0.0;
  return z > 0 ? a - tau : -(a - tau);
}
}  // namespace

Vec prox_p1_box(const ProxRequest& req) {
  check(req);
  const ProblemSpec& spec = *req.spec;
  if (spec.groups().p() != 1)
    throw std::invalid_argument("prox_p1_box: requires p = 1");
  const double extra = spec.loss().lambda_extra() / req.alpha;
  Vec x(req.z.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    double tau = spec.lambda_bar()[j] / (req.mu * req.alpha) + extra;
    double t = soft(req.z[j], tau);
    x[j] = t == 0.0 ? 0.0 : spec.box().clip(t, j);
  }
  return x;
}

Vec prox_p2_disjoint(const ProxRequest& req) {
  check(req);
  const ProblemSpec& spec = *req.spec;
  const GroupStructure& gs = spec.groups();
  if (gs.p() != 2 || !gs.disjoint())
    throw std::invalid_argument("prox_p2_disjoint: requires p = 2 with disjoint groups");
  for (Eigen::Index j = 0; j < spec.n(); ++j)
    if (std::isfinite(spec.box().lower()[j]) || std::isfinite(spec.box().upper()[j]))
      throw std::invalid_argument("prox_p2_disjoint: requires an unbounded box");

  const double tau1 = spec.lambda1() / (req.mu * req.alpha) +
                      spec.loss().lambda_extra() / req.alpha;
  Vec v(req.z.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) v[j] = soft(req.z[j], tau1);

  Vec x = Vec::Zero(req.z.size());
  for (Eigen::Index l = 0; l < gs.num_groups(); ++l) {
    double nrm = 0.0;
    for (int j : gs.groups()[l]) nrm += v[j] * v[j];
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) continue;  // group stays exactly zero
    double tau2 = spec.lambda2() * gs.weights()[l] / (req.mu * req.alpha);
    double scale = std::max(nrm - tau2, 0.0) / nrm;
    if (scale == 0.0) continue;
    for (int j : gs.groups()[l]) x[j] = scale * v[j];
  }
  return x;
}

Vec prox(const ProxRequest& req) {
  check(req);
  return req.spec->groups().p() == 1 ? prox_p1_box(req) : prox_p2_disjoint(req);
}

namespace {
// subproblem objective f_bar_n(x; mu) + (alpha/2)||x - z||^2
double prox_objective(const ProxRequest& req, const Vec& x) {
  const ProblemSpec& spec = *req.spec;
  double v = 0.5 * req.alpha * (x - req.z).squaredNorm();
  double l1coef = spec.lambda1() / req.mu + spec.loss().lambda_extra();
  v += l1coef * x.lpNorm<1>();
  const GroupStructure& gs = spec.groups();
  for (Eigen::Index l = 0; l < gs.num_groups(); ++l)
    v += spec.lambda2() * gs.weights()[l] / req.mu * gs.group_norm(x, l);
  return v;
}
}  // namespace

Vec prox_oracle(const ProxRequest& req, int grid_density) {
  check(req);
  (void)grid_density;
  const ProblemSpec& spec = *req.spec;
  if (spec.n() > 4) throw std::invalid_argument("prox_oracle: test-scale only (n <= 4)");

  // The minimizer lies between 0 and z_j in every coordinate, intersected
  // with the box; each 1-D slice is strictly convex, so golden-section works.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  Vec x = Vec::Zero(spec.n());
  for (int sweep = 0; sweep < 10000; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < spec.n(); ++j) {
      double lo = spec.box().clip(std::min(0.0, req.z[j]), j);
      double hi = spec.box().clip(std::max(0.0, req.z[j]), j);
      double a = lo, b = hi;
      double c = b - gr * (b - a), d = a + gr * (b - a);
      Vec xc = x, xd = x;
      xc[j] = c;
      xd[j] = d;
      double fc = prox_objective(req, xc), fd = prox_objective(req, xd);
      while (b - a > 1e-10) {
        if (fc < fd) {
          b = d;
          d = c;
          fd = fc;
          c = b - gr * (b - a);
          xc[j] = c;
          fc = prox_objective(req, xc);
        } else {
          a = c;
          c = d;
          fc = fd;
          d = a + gr * (b - a);
          xd[j] = d;
          fd = prox_objective(req, xd);
        }
      }
      double t = 0.5 * (a + b);
      // snap to the kink when the minimum hugs zero
      if (std::abs(t) < 1e-9) {
        Vec x0 = x;
        x0[j] = 0.0;
        Vec xt = x;
        xt[j] = t;
        if (prox_objective(req, x0) <= prox_objective(req, xt)) t = 0.0;
      }
      max_change = std::max(max_change, std::abs(x[j] - t));
      x[j] = t;
    }
    if (max_change < 1e-12) break;
  }
  return x;
}

}  // namespace sgl0

#include "sgl0/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgl0 {

bool check_lower_bound(const Vec& x, double nu, std::vector<int>* violations) {
  bool ok = true;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0 && std::abs(x[j]) < nu) {
      ok = false;
      if (violations) violations->push_back(static_cast<int>(j));
    }
  }
  return ok;
}

double stationarity_residual(const ProblemSpec& spec, const Vec& x) {
  Vec g = spec.loss().grad_smooth(x);
  const double le = spec.loss().lambda_extra();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x[j] == 0.0) continue;  // residual over the support only
    double gj = g[j] + (le > 0.0 ? le * (x[j] > 0 ? 1.0 : -1.0) : 0.0);
    double d;
    if (x[j] >= spec.box().upper()[j])
      d = std::max(gj, 0.0);  // normal cone [0, inf) absorbs negative g
    else if (x[j] <= spec.box().lower()[j])
      d = std::max(-gj, 0.0);
    else
      d = std::abs(gj);
    acc += d * d;
  }
  return std::sqrt(acc);
}

Certificate certify(const ProblemSpec& spec, const RelaxationParams& rp,
                    const Vec& x, double tol) {
  Certificate cert;
  cert.lower_bound_ok = check_lower_bound(x, rp.nu, &cert.lower_bound_violations);
  cert.stationarity_residual = stationarity_residual(spec, x);
  cert.is_sw_d_stationary = cert.lower_bound_ok && cert.stationarity_residual <= tol;
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x[j] != 0.0) cert.support.push_back(static_cast<int>(j));
  cert.F_primal = eval_primal(spec, x);
  cert.F_relaxed = eval_relaxed(spec, x, rp.nu);
  return cert;
}

namespace {
// minimize f over the box with coordinates outside S fixed at 0,
// by proximal gradient (soft threshold handles the lambda_extra l1 part)
Vec minimize_on_support(const ProblemSpec& spec, const std::vector<int>& S,
                        double Ls) {
  Vec x = Vec::Zero(spec.n());
  if (S.empty() || Ls <= 0.0) return x;
  const double t = 1.0 / Ls;
  const double thr = t * spec.loss().lambda_extra();
  for (int it = 0; it < 100000; ++it) {
    Vec g = spec.loss().grad_smooth(x);
    double max_change = 0.0;
    for (int j : S) {
      double v = x[j] - t * g[j];
      if (thr > 0.0) v = std::abs(v) <= thr ? 0.0 : (v > 0 ? v - thr : v + thr);
      v = spec.box().clip(v, j);
      max_change = std::max(max_change, std::abs(v - x[j]));
      x[j] = v;
    }
    if (max_change <= 1e-12) break;
  }
  return x;
}
}  // namespace

OracleResult global_oracle(const ProblemSpec& spec, const RelaxationParams& rp) {
  const Eigen::Index n = spec.n();
  if (n > 12) throw std::invalid_argument("global_oracle: n <= 12 required");
  const double Ls = spec.loss().smoothness_constant(spec.box());

  OracleResult out;
  out.F_global = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<int> S;
    for (Eigen::Index j = 0; j < n; ++j)
      if (mask & (1ULL << j)) S.push_back(static_cast<int>(j));
    OracleLocalMin lm;
    lm.x = minimize_on_support(spec, S, Ls);
    lm.F0 = eval_primal(spec, lm.x);
    lm.nu_strong = check_lower_bound(lm.x, rp.nu);
    if (lm.F0 < out.F_global) {
      out.F_global = lm.F0;
      out.x_global = lm.x;
    }
    out.local_minimizers.push_back(std::move(lm));
  }
  return out;
}

std::vector<RatePoint> rate_trace(const SolveReport& report, double F_star) {
  std::vector<RatePoint> out;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < report.trace_k.size(); ++i) {
    int k = report.trace_k[i];
    RatePoint p;
    p.k = k;
    p.gap = std::abs(report.trace_F_relaxed[i] - F_star);
    p.ref1 = k >= 1 ? 1.0 / k : inf;
    p.ref2 = k >= 1 ? 1.0 / (static_cast<double>(k) * k) : inf;
    p.ref3 = k >= 1 ? 1.0 / (static_cast<double>(k) * k * k) : inf;
    out.push_back(p);
  }
  return out;
}

}  // namespace sgl0

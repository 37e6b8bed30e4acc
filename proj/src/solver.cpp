#include "sgl0/solver.hpp"

#include <chrono>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "sgl0/prox.hpp"

namespace sgl0 {

namespace {

std::vector<int> support_of(const Vec& x) {
  std::vector<int> s;
  for (Eigen::Index j = 0; j < x.size(); ++j)
    if (x[j] != 0.0) s.push_back(static_cast<int>(j));
  return s;
}

double primal_from_cache(const ProblemSpec& spec, const EvalCache& c) {
  double v = c.f_value;
  for (Eigen::Index j = 0; j < c.abs_x.size(); ++j)
    if (c.abs_x[j] != 0.0) v += spec.lambda1();
  if (spec.lambda2() > 0.0)
    for (Eigen::Index l = 0; l < c.group_norms.size(); ++l)
      if (c.group_norms[l] != 0.0) v += spec.lambda2() * spec.groups().weights()[l];
  return v;
}

struct TraceBuilder {
  SolveReport rep;

  void record(const ProblemSpec& spec, int k, double mu, const Vec& x,
              const EvalCache& c, double step_norm) {
    rep.trace_k.push_back(k);
    rep.trace_mu.push_back(mu);
    rep.trace_F_relaxed.push_back(eval_relaxed_cached(spec, c, mu));
    rep.trace_F_primal.push_back(primal_from_cache(spec, c));
    rep.trace_step_norm.push_back(step_norm);
    std::vector<int> s = support_of(x);
    rep.trace_support_size.push_back(static_cast<int>(s.size()));
    if (rep.support_trace.empty() || rep.support_trace.back().second != s)
      rep.support_trace.emplace_back(k, std::move(s));
  }

  SolveReport finish(Vec x, int iters, StopReason reason, double secs) {
    rep.x_final = std::move(x);
    rep.iterations = iters;
    rep.stop_reason = reason;
    rep.wall_time = secs;
    rep.support_identified_at =
        rep.support_trace.empty() ? 0 : rep.support_trace.back().first;
    return std::move(rep);
  }
};

void validate_common(const ProblemSpec& spec, const SolverConfig& cfg) {
  if (spec.lambda1() <= 0.0)
    throw std::invalid_argument("solver: lambda1 must be > 0");
  if (!cfg.x0.size()) return;
  if (cfg.x0.size() != spec.n())
    throw std::invalid_argument("solver: x0 dimension mismatch");
  if (!cfg.x0.allFinite()) throw std::invalid_argument("solver: x0 must be finite");
}

Vec initial_point(const ProblemSpec& spec, const SolverConfig& cfg) {
  // infeasible starts are projected onto the box before the first iteration
  return cfg.x0.size() ? spec.box().project(cfg.x0) : Vec::Zero(spec.n());
}

}  // namespace

std::vector<int> SolveReport::final_support() const {
  return support_of(x_final);
}

SolveReport dca_line_search(const ProblemSpec& spec, const RelaxationParams& rp,
                            const SolverConfig& cfg) {
  validate_common(spec, cfg);
  if (cfg.beta != 0.0)
    throw std::invalid_argument("solver: line search does not take beta > 0");
  if (!(cfg.rho > 1.0)) throw std::invalid_argument("solver: rho must be > 1");
  if (!(cfg.alpha_lo > 0.0 && cfg.alpha_lo <= cfg.alpha_hi))
    throw std::invalid_argument("solver: need 0 < alpha_lo <= alpha_hi");
  if (cfg.window < 0) throw std::invalid_argument("solver: window N must be >= 0");

  TraceBuilder tb;
  if (spec.n() == 0) return tb.finish(Vec(), 0, StopReason::Tol, 0.0);

  auto t0 = std::chrono::steady_clock::now();
  const double Ls = spec.loss().smoothness_constant(spec.box());
  const double c = cfg.c < 0.0 ? Ls / 2.0 : cfg.c;
  const double alpha_base = cfg.alpha_base < 0.0 ? Ls / 2.0 : cfg.alpha_base;
  if (!(c > 0.0 && c <= Ls))
    throw std::invalid_argument("solver: c must lie in (0, Ls]");
  if (alpha_base < cfg.alpha_lo || alpha_base > cfg.alpha_hi)
    throw std::invalid_argument("solver: alpha_base outside [alpha_lo, alpha_hi]");

  const double alpha_cap = std::max(cfg.alpha_hi, cfg.rho * Ls);
  const int inner_cap = static_cast<int>(std::floor(
                            (std::log(alpha_cap) - std::log(cfg.alpha_lo)) /
                            std::log(cfg.rho))) + 1;
  const int K = rp.schedule.pin_index();

  Vec x = initial_point(spec, cfg);
  std::deque<EvalCache> history;
  history.push_back(make_eval_cache(spec, x));
  double F_prev = eval_relaxed_cached(spec, history.back(), rp.schedule.mu_at(0));
  tb.record(spec, 0, rp.schedule.mu_at(0), x, history.back(), 0.0);

  int k = 0;
  StopReason reason = StopReason::MaxOuter;
  for (; k < cfg.max_outer; ++k) {
    const double mu = rp.schedule.mu_at(k);
    IndexVectors iv = index_vectors(x, mu, spec.groups());
    Vec xi = theta_subgradient(x, mu, iv, spec);
    Vec g = spec.loss().grad_smooth(x);

    // nonmonotone window threshold, history re-evaluated at the current mu
    double thresh = eval_relaxed_cached(spec, history.front(), mu);
    for (std::size_t j = 1; j < history.size(); ++j)
      thresh = std::max(thresh, eval_relaxed_cached(spec, history[j], mu));

    // warm start: resume one backtracking level below the last accepted alpha,
    // so alpha tracks the local curvature instead of restarting at alpha_base
    double base = alpha_base;
    if (cfg.warm_start && !tb.rep.alpha_trace.empty())
      base = std::min(cfg.alpha_hi,
                      std::max(cfg.alpha_lo, tb.rep.alpha_trace.back() / cfg.rho));

    bool accepted = false;
    Vec x_new;
    EvalCache c_new;
    double alpha = base;
    double margin = 0.0;
    int m = 0;
    for (; m <= inner_cap; ++m) {
      alpha = base * std::pow(cfg.rho, m);
      Vec z = x - (g - xi) / alpha;
      x_new = prox(ProxRequest{std::move(z), alpha, mu, &spec});
      c_new = make_eval_cache(spec, x_new);
      double F_new = eval_relaxed_cached(spec, c_new, mu);
      margin = thresh - 0.5 * c * (x_new - x).squaredNorm() - F_new;
      if (margin >= 0.0) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw std::runtime_error(
          "solver: line search exhausted; smoothness constant Ls is invalid");
    if (alpha > alpha_cap * (1.0 + 1e-12))
      throw std::runtime_error("solver: accepted alpha exceeds max(alpha_hi, rho*Ls)");
    if (!spec.box().contains(x_new))
      throw std::runtime_error("solver: iterate left the box");

    double step = (x_new - x).norm();
    x = std::move(x_new);
    history.push_back(std::move(c_new));
    while (static_cast<int>(history.size()) > cfg.window + 1) history.pop_front();

    const double mu_next = rp.schedule.mu_at(k + 1);
    double F_cur = eval_relaxed_cached(spec, history.back(), mu_next);
    tb.record(spec, k + 1, mu_next, x, history.back(), step);
    tb.rep.alpha_trace.push_back(alpha);
    tb.rep.inner_counts.push_back(m + 1);
    tb.rep.accept_margin.push_back(margin);

    if (k >= K && std::abs(F_cur - F_prev) <= cfg.tol) {
      ++k;
      reason = StopReason::Tol;
      break;
    }
    F_prev = F_cur;
  }

  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();
  return tb.finish(std::move(x), k, reason, secs);
}

SolveReport dca_extrapolation(const ProblemSpec& spec, const RelaxationParams& rp,
                              const SolverConfig& cfg) {
  validate_common(spec, cfg);
  if (!(cfg.beta >= 0.0 && cfg.beta < 1.0))
    throw std::invalid_argument("solver: beta must lie in [0, 1)");

  TraceBuilder tb;
  if (spec.n() == 0) return tb.finish(Vec(), 0, StopReason::Tol, 0.0);

  auto t0 = std::chrono::steady_clock::now();
  const double Ls = spec.loss().smoothness_constant(spec.box());
  const int K = rp.schedule.pin_index();

  Vec x = initial_point(spec, cfg);
  Vec x_prev = x;  // x^{-1} := x^0
  EvalCache cache = make_eval_cache(spec, x);
  double F_prev = eval_relaxed_cached(spec, cache, rp.schedule.mu_at(0));
  tb.record(spec, 0, rp.schedule.mu_at(0), x, cache, 0.0);

  int k = 0;
  StopReason reason = StopReason::MaxOuter;
  for (; k < cfg.max_outer; ++k) {
    const double mu = rp.schedule.mu_at(k);
    IndexVectors iv = index_vectors(x, mu, spec.groups());
    Vec xi = theta_subgradient(x, mu, iv, spec);
    Vec y = x + cfg.beta * (x - x_prev);
    Vec z = y - (spec.loss().grad_smooth(y) - xi) / Ls;
    Vec x_new = prox(ProxRequest{std::move(z), Ls, mu, &spec});
    if (!spec.box().contains(x_new))
      throw std::runtime_error("solver: iterate left the box");

    double step = (x_new - x).norm();
    x_prev = std::move(x);
    x = std::move(x_new);
    cache = make_eval_cache(spec, x);

    const double mu_next = rp.schedule.mu_at(k + 1);
    double F_cur = eval_relaxed_cached(spec, cache, mu_next);
    tb.record(spec, k + 1, mu_next, x, cache, step);
    tb.rep.alpha_trace.push_back(Ls);
    tb.rep.inner_counts.push_back(1);

    if (k >= K && std::abs(F_cur - F_prev) <= cfg.tol) {
      ++k;
      reason = StopReason::Tol;
      break;
    }
    F_prev = F_cur;
  }

  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - t0).count();
  return tb.finish(std::move(x), k, reason, secs);
}

SolveReport solve(const ProblemSpec& spec, const RelaxationParams& rp,
                  const SolverConfig& cfg, Algorithm algorithm) {
  return algorithm == Algorithm::LineSearch ? dca_line_search(spec, rp, cfg)
                                            : dca_extrapolation(spec, rp, cfg);
}

const char* to_string(StopReason r) {
  return r == StopReason::Tol ? "tol" : "max_outer";
}

const char* to_string(Algorithm a) {
  return a == Algorithm::LineSearch ? "line_search" : "extrapolation";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "line_search" || s == "line-search" || s == "ls") return Algorithm::LineSearch;
  if (s == "extrapolation" || s == "extra" || s == "ex") return Algorithm::Extrapolation;
  throw std::invalid_argument("unknown algorithm: " + s);
}

}  // namespace sgl0

// End-to-end acceptance harness: one PASS/FAIL line per criterion.
// Exits nonzero when any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "sgl0/bench.hpp"
#include "sgl0/diagnostics.hpp"
#include "sgl0/prox.hpp"
#include "sgl0/solver.hpp"
#include "test_util.hpp"

using namespace sgl0;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %-22s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

struct TrialSummary {
  double mse_v = 0.0;
  int iterations = 0;
  double wall = 0.0;
  bool converged = false;
  bool exact = false;
  bool support_early = false;
  bool lower_ok = false;
  bool cert_ok = false;
  bool primal_agree = false;
  bool margins_ok = true;
  bool alpha_ok = true;
};

struct SpecSummary {
  std::vector<TrialSummary> trials;
  double mean_mse = 0.0, mean_iters = 0.0, mean_wall = 0.0;
  int exact_count = 0;
};

TrialSummary run_one(const ExperimentSpec& es, int t, SolveReport* keep) {
  TrialSetup ts = es.model == BenchModel::L0Signal ? make_signal_trial(es, t)
                                                   : make_group_trial(es, t);
  SolveReport rep = solve(ts.problem, ts.rp, ts.cfg, es.algorithm);

  TrialSummary s;
  s.mse_v = mse(rep.x_final, ts.x_true);
  s.iterations = rep.iterations;
  s.wall = rep.wall_time;
  s.converged = rep.stop_reason == StopReason::Tol;
  s.exact = static_cast<int>(rep.final_support().size()) == es.s;
  s.support_early = rep.support_identified_at < rep.iterations;
  s.lower_ok = check_lower_bound(rep.x_final, ts.rp.nu);

  Certificate cert = certify(ts.problem, ts.rp, rep.x_final, 1e-6);
  s.cert_ok = cert.is_sw_d_stationary;
  s.primal_agree = std::abs(cert.F_primal - cert.F_relaxed) <=
                   1e-12 * std::max(1.0, std::abs(cert.F_primal));

  for (double m : rep.accept_margin)
    if (m < 0.0) s.margins_ok = false;
  double Ls = ts.problem.loss().smoothness_constant(ts.problem.box());
  double cap = std::max(ts.cfg.alpha_hi, ts.cfg.rho * Ls);
  for (double a : rep.alpha_trace)
    if (a > cap * (1.0 + 1e-12)) s.alpha_ok = false;

  if (keep) *keep = std::move(rep);
  return s;
}

SpecSummary run_spec(const ExperimentSpec& es, SolveReport* keep_first = nullptr) {
  SpecSummary out;
  std::vector<std::future<TrialSummary>> futs;
  for (int t = 0; t < es.trials; ++t)
    futs.push_back(std::async(std::launch::async, run_one, std::cref(es), t,
                              t == 0 ? keep_first : nullptr));
  for (auto& f : futs) out.trials.push_back(f.get());
  for (const TrialSummary& s : out.trials) {
    out.mean_mse += s.mse_v;
    out.mean_iters += s.iterations;
    out.mean_wall += s.wall;
    if (s.exact) out.exact_count++;
  }
  out.mean_mse /= es.trials;
  out.mean_iters /= es.trials;
  out.mean_wall /= es.trials;
  return out;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// invariants aggregated over every converged benchmark run (criteria 5, 6, 9a)
struct InvariantTally {
  int converged = 0;
  int early_fail = 0, lower_fail = 0, cert_fail = 0, agree_fail = 0;
  int margin_fail = 0, alpha_fail = 0;

  void add(const SpecSummary& ss) {
    for (const TrialSummary& s : ss.trials) {
      if (!s.converged) continue;
      ++converged;
      if (!s.support_early) ++early_fail;
      if (!s.lower_ok) ++lower_fail;
      if (!s.cert_ok) ++cert_fail;
      if (!s.primal_agree) ++agree_fail;
      if (!s.margins_ok) ++margin_fail;
      if (!s.alpha_ok) ++alpha_fail;
    }
  }
};

}  // namespace

int main() {
  InvariantTally tally;
  SolveReport rate_report;  // first n = 160 line-search run, for criterion 10

  // ---- criterion 1: recovery table at the reference configuration ----
  {
    bool ok = true;
    std::ostringstream d;
    for (Algorithm alg : {Algorithm::LineSearch, Algorithm::Extrapolation}) {
      ExperimentSpec es;
      es.algorithm = alg;
      SpecSummary ss = run_spec(
          es, alg == Algorithm::LineSearch ? &rate_report : nullptr);
      tally.add(ss);
      bool row_ok = ss.exact_count >= 8 && ss.mean_mse >= 7e-6 &&
                    ss.mean_mse <= 7e-5 && ss.mean_iters < 200 &&
                    ss.mean_wall * es.trials < 5.0;  // total runtime budget
      d << to_string(alg) << ": exact " << ss.exact_count << "/10, mse "
        << ss.mean_mse << ", iters " << ss.mean_iters << "; ";
      ok = ok && row_ok;
    }
    for (Algorithm alg : {Algorithm::LineSearch, Algorithm::Extrapolation}) {
      ExperimentSpec es;
      es.algorithm = alg;
      es.n = 1600;
      es.m = 800;
      es.s = 160;
      es.jobs = 4;
      SpecSummary ss = run_spec(es);
      tally.add(ss);
      bool row_ok = ss.mean_iters < 200 && ss.mean_wall * es.trials < 60.0;
      d << "n=1600 " << to_string(alg) << ": iters " << ss.mean_iters
        << ", time " << ss.mean_wall << "s; ";
      ok = ok && row_ok;
    }
    report("criterion-1-table", ok, d.str());
  }

  // ---- criterion 2: continuation start sweep ----
  {
    bool ok = true;
    std::ostringstream d;
    std::vector<double> iters_at;
    for (double M : {0.0, 4.0, 5.0, 20.0, 50.0}) {
      ExperimentSpec es;
      es.M = M;
      SpecSummary ss = run_spec(es);
      tally.add(ss);
      if (M == 0.0) {
        ok = ok && ss.mean_mse > 0.05;  // no continuation, recovery collapses
      } else {
        ok = ok && ss.mean_mse < 1e-4;
        iters_at.push_back(ss.mean_iters);
      }
      d << "M=" << M << ": mse " << ss.mean_mse << " iters " << ss.mean_iters
        << "; ";
    }
    for (std::size_t i = 0; i + 1 < iters_at.size(); ++i)
      ok = ok && iters_at[i] <= iters_at[i + 1] + 1e-9;
    report("criterion-2-M-sweep", ok, d.str());
  }

  // ---- criterion 3: initial point insensitivity ----
  {
    bool ok = true;
    std::ostringstream d;
    double lo = 1e300, hi = 0.0;
    for (const char* x0 : {"0", "1", "2", "random", "-1"}) {
      ExperimentSpec es;
      es.x0 = x0;
      SpecSummary ss = run_spec(es);
      tally.add(ss);
      ok = ok && ss.mean_mse < 1e-4;
      lo = std::min(lo, ss.mean_mse);
      hi = std::max(hi, ss.mean_mse);
      d << "x0=" << x0 << ": " << ss.mean_mse << "; ";
    }
    ok = ok && hi <= 2.0 * lo;
    report("criterion-3-x0-sweep", ok, d.str() + fmt("spread %.3f", hi / lo));
  }

  // ---- criterion 4: noiseless exactness ----
  {
    ExperimentSpec es;
    es.sigma = 0.0;
    SpecSummary ss = run_spec(es);
    tally.add(ss);
    bool ok = true;
    for (const TrialSummary& s : ss.trials) ok = ok && s.mse_v <= 1e-12;
    report("criterion-4-noiseless", ok, fmt("mean mse %.3e", ss.mean_mse));
  }

  // ---- criterion 5: support identification and the nu lower bound ----
  report("criterion-5-support", tally.early_fail == 0 && tally.lower_fail == 0,
         fmt("%.0f converged runs, %.0f late-support, %.0f lower-bound fails",
             tally.converged, tally.early_fail, tally.lower_fail));

  // ---- criterion 6: certification of every converged output ----
  report("criterion-6-certify", tally.cert_fail == 0 && tally.agree_fail == 0,
         fmt("%.0f cert fails, %.0f primal/relaxed mismatches",
             tally.cert_fail, tally.agree_fail));

  // ---- criterion 7: agreement with the exhaustive oracle on small problems ----
  {
    int bad_match = 0, bad_global = 0;
    for (std::uint64_t t = 0; t < 100; ++t) {
      CounterRng rng(1234, t);
      int n = 4 + 2 * static_cast<int>(rng.uniform_index(3));  // 4, 6, 8
      int m = n + 2;
      Mat A = testutil::random_mat(m, n, rng) / std::sqrt(static_cast<double>(m));
      Vec b = testutil::random_vec(m, rng);
      double lambda1 = rng.uniform(0.05, 0.5);
      bool p2 = t % 3 == 0;

      ProblemSpec spec;
      RelaxationParams rp;
      if (p2) {
        ProblemSpec tmp = testutil::ls_problem(
            A, b, BoxConstraint::unbounded(n),
            GroupStructure::consecutive_blocks(n, 2, 2), lambda1,
            rng.uniform(0.05, 0.4));
        // unbounded box: bound the gradient over a generous surrogate radius
        double radius = 10.0;
        Vec tcol = A.cwiseAbs().transpose() * (A.cwiseAbs() * Vec::Ones(n));
        double Lf = 2.0 * (radius * tcol.maxCoeff() +
                           (A.transpose() * b).cwiseAbs().maxCoeff());
        rp = RelaxationParams::with_Lf(tmp, Lf);
        spec = std::move(tmp);
      } else {
        GroupStructure gs = GroupStructure::trivial(n);
        double lambda2 = 0.0;
        if (t % 2 == 0) {
          std::vector<int> tail;
          for (int j = 1; j < n; ++j) tail.push_back(j);
          gs = GroupStructure(n, {{0, 1}, tail},
                              (Vec(2) << 1.0, 0.5).finished(), 1);
          lambda2 = rng.uniform(0.05, 0.4);
        }
        ProblemSpec tmp = testutil::ls_problem(
            A, b, BoxConstraint::uniform(n, -3.0, 3.0), std::move(gs), lambda1,
            lambda2);
        rp = RelaxationParams::derive(tmp);
        spec = std::move(tmp);
      }

      SolverConfig cfg;
      if (t % 2 == 1) cfg.beta = 0.5;
      SolveReport rep =
          solve(spec, rp, cfg,
                t % 2 == 1 ? Algorithm::Extrapolation : Algorithm::LineSearch);
      double F0 = eval_primal(spec, rep.x_final);

      OracleResult oracle = global_oracle(spec, rp);
      if (F0 < oracle.F_global - 1e-8 * (1.0 + std::abs(oracle.F_global)))
        ++bad_global;
      bool matched = false;
      for (const OracleLocalMin& lm : oracle.local_minimizers)
        if (lm.nu_strong && std::abs(lm.F0 - F0) <= 1e-8 * (1.0 + std::abs(F0)))
          matched = true;
      if (!matched) ++bad_match;
    }
    report("criterion-7-oracle", bad_match == 0 && bad_global == 0,
           fmt("%.0f unmatched, %.0f below-global out of 100", bad_match,
               bad_global));
  }

  // ---- criterion 8: prox against the search oracle and the worked value ----
  {
    int bad = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
      CounterRng rng(555, t);
      int n = 2 + static_cast<int>(rng.uniform_index(3));
      bool p2 = t % 4 == 0;
      std::vector<int> all(n);
      for (int j = 0; j < n; ++j) all[j] = j;
      ProblemSpec spec =
          p2 ? testutil::ls_problem(Mat::Identity(n, n), Vec::Zero(n),
                                    BoxConstraint::unbounded(n),
                                    GroupStructure(n, {all}, Vec::Ones(1), 2),
                                    rng.uniform(0.05, 0.6), rng.uniform(0.1, 0.8))
             : testutil::ls_problem(
                   Mat::Identity(n, n), Vec::Zero(n),
                   BoxConstraint::uniform(n, t % 3 == 0 ? 0.0 : -2.5, 2.0),
                   GroupStructure::trivial(n), rng.uniform(0.05, 1.0), 0.0,
                   t % 5 == 0 ? rng.uniform(0.0, 0.4) : 0.0);
      ProxRequest req;
      req.alpha = rng.uniform(0.5, 4.0);
      req.mu = rng.uniform(0.2, 2.0);
      req.spec = &spec;
      req.z = Vec(n);
      for (int j = 0; j < n; ++j) req.z[j] = rng.uniform(-4.0, 4.0);
      if ((prox(req) - prox_oracle(req)).lpNorm<Eigen::Infinity>() > 1e-6) ++bad;
    }

    ProblemSpec ex = testutil::ls_problem(
        Mat::Identity(2, 2), Vec::Zero(2), BoxConstraint::unbounded(2),
        GroupStructure(2, {{0, 1}}, Vec::Ones(1), 2), 0.0, 1.0);
    Vec z(2);
    z << 2.0, 3.0;
    Vec got = prox_p2_disjoint(ProxRequest{z, 1.0, 1.0, &ex});
    double scale = 1.0 - 1.0 / std::sqrt(13.0);
    bool worked = std::abs(got[0] - 2.0 * scale) <= 1e-6 &&
                  std::abs(got[1] - 3.0 * scale) <= 1e-6;

    report("criterion-8-prox", bad == 0 && worked,
           fmt("%.0f oracle mismatches out of 200, worked value ", bad) +
               (worked ? "ok" : "wrong"));
  }

  // ---- criterion 9: step-size discipline and descent after the pin ----
  {
    bool ok = tally.margin_fail == 0 && tally.alpha_fail == 0;
    std::ostringstream d;
    d << tally.margin_fail << " margin fails, " << tally.alpha_fail
      << " alpha-cap fails on bench runs; ";

    int mono_fail = 0, lyap_fail = 0;
    for (std::uint64_t t = 0; t < 50; ++t) {
      ProblemSpec spec = testutil::simple_ls(12, 10, 9000 + t);
      RelaxationParams rp = RelaxationParams::derive(spec);
      int K = rp.schedule.pin_index();
      double Ls = spec.loss().smoothness_constant(spec.box());

      // monotone line search: window N = 0 forces plain descent at fixed mu
      SolverConfig mono;
      mono.window = 0;
      SolveReport rl = dca_line_search(spec, rp, mono);
      for (double m : rl.accept_margin)
        if (m < 0.0) ++mono_fail;
      double cap = std::max(mono.alpha_hi, mono.rho * Ls);
      for (double a : rl.alpha_trace)
        if (a > cap * (1.0 + 1e-12)) ++mono_fail;
      for (std::size_t i = 0; i + 1 < rl.trace_k.size(); ++i) {
        if (rl.trace_k[i] < K) continue;
        double tol9 = 1e-9 * (1.0 + std::abs(rl.trace_F_relaxed[i]));
        if (rl.trace_F_relaxed[i + 1] > rl.trace_F_relaxed[i] + tol9) ++mono_fail;
      }

      // extrapolation: F + (Ls/2) ||step||^2 is a Lyapunov function once mu pins
      SolverConfig excfg;
      excfg.beta = 0.5;
      SolveReport re = dca_extrapolation(spec, rp, excfg);
      for (std::size_t i = 0; i + 1 < re.trace_k.size(); ++i) {
        if (re.trace_k[i] < K) continue;
        double ei = re.trace_F_relaxed[i] +
                    0.5 * Ls * re.trace_step_norm[i] * re.trace_step_norm[i];
        double en = re.trace_F_relaxed[i + 1] +
                    0.5 * Ls * re.trace_step_norm[i + 1] * re.trace_step_norm[i + 1];
        if (en > ei + 1e-9 * (1.0 + std::abs(ei))) ++lyap_fail;
      }
    }
    ok = ok && mono_fail == 0 && lyap_fail == 0;
    d << mono_fail << " monotone fails, " << lyap_fail
      << " Lyapunov fails on 50 random instances";
    report("criterion-9-descent", ok, d.str());
  }

  // ---- criterion 10: the objective gap beats k^-3 before termination ----
  {
    bool ok = false;
    double F_star = rate_report.trace_F_relaxed.empty()
                        ? 0.0
                        : rate_report.trace_F_relaxed.back();
    auto pts = rate_trace(rate_report, F_star);
    for (const RatePoint& p : pts)
      if (p.k >= 1 && p.k < rate_report.iterations && p.gap < p.ref3) {
        ok = true;
        break;
      }
    report("criterion-10-rate", ok,
           fmt("trace of %.0f iterations", rate_report.iterations));
  }

  // ---- group-recovery property: noiseless exact group support ----
  {
    bool ok = true;
    std::ostringstream d;
    for (Algorithm alg : {Algorithm::LineSearch, Algorithm::Extrapolation}) {
      ExperimentSpec es;
      es.model = BenchModel::GroupL0;
      es.n = 60;
      es.m = 30;
      es.s = 6;
      es.sigma = 0.0;
      es.M = 1.0;
      es.step_divisor = 200.0;
      es.algorithm = alg;
      es.jobs = 4;
      BenchRow row = run_experiment(es);
      ok = ok && row.exact_group_count >= 8;
      d << to_string(alg) << ": exact groups " << row.exact_group_count
        << "/10; ";
    }
    report("group-recovery", ok, d.str());
  }

  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED",
              failures);
  return failures == 0 ? 0 : 1;
}

#include "sgl0/bench.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sgl0/diagnostics.hpp"

namespace sgl0 {

NoiseKind noise_from_string(const std::string& s) {
  if (s == "gaussian") return NoiseKind::Gaussian;
  if (s == "rayleigh") return NoiseKind::Rayleigh;
  if (s == "gamma") return NoiseKind::Gamma;
  if (s == "exponential" || s == "exponent") return NoiseKind::Exponential;
  if (s == "uniform") return NoiseKind::Uniform;
  if (s == "none") return NoiseKind::None;
  throw std::invalid_argument("unknown noise kind: " + s);
}

const char* to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::Gaussian: return "gaussian";
    case NoiseKind::Rayleigh: return "rayleigh";
    case NoiseKind::Gamma: return "gamma";
    case NoiseKind::Exponential: return "exponential";
    case NoiseKind::Uniform: return "uniform";
    case NoiseKind::None: return "none";
  }
  return "?";
}

namespace {
double draw_noise(NoiseKind k, CounterRng& rng) {
  switch (k) {
    case NoiseKind::Gaussian: return rng.normal();
    case NoiseKind::Rayleigh: return rng.rayleigh();
    case NoiseKind::Gamma: return rng.gamma2();
    case NoiseKind::Exponential: return rng.exponential();
    case NoiseKind::Uniform: return rng.uniform(-1.0, 1.0);
    case NoiseKind::None: return 0.0;
  }
  return 0.0;
}

std::vector<int> sample_without_replacement(int n, int s, CounterRng& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < s; ++i) {
    int j = i + static_cast<int>(rng.uniform_index(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(s);
  std::sort(idx.begin(), idx.end());
  return idx;
}
}  // namespace

Instance generate_instance(const ExperimentSpec& es, CounterRng& rng) {
  if (es.s > es.n || es.m > es.n || es.trials < 1)
    throw std::invalid_argument("experiment: need s <= n, m <= n, trials >= 1");
  Instance inst;
  inst.A.resize(es.m, es.n);
  for (int i = 0; i < es.m; ++i)
    for (int j = 0; j < es.n; ++j) inst.A(i, j) = rng.normal();
  // rows orthonormalized, so sigma_max(A) = 1 and Ls = 2 for the least-squares loss
  {
    Eigen::HouseholderQR<Mat> qr(inst.A.transpose());
    Mat q = qr.householderQ() * Mat::Identity(es.n, es.m);
    inst.A = q.transpose();
  }

  inst.x_true = Vec::Zero(es.n);
  if (es.model == BenchModel::L0Signal) {
    for (int j : sample_without_replacement(es.n, es.s, rng))
      inst.x_true[j] = rng.uniform(3.0, 10.0);
  } else {
    // group-sparse plant: whole blocks of 3 active, signed magnitudes in [1,10]
    int num_groups = es.n / 3;
    int active = std::max(1, es.s / 3);
    for (int g : sample_without_replacement(num_groups, std::min(active, num_groups), rng))
      for (int j = 3 * g; j < 3 * g + 3; ++j)
        inst.x_true[j] = (rng.uniform01() < 0.5 ? -1.0 : 1.0) * rng.uniform(1.0, 10.0);
  }

  inst.b = inst.A * inst.x_true;
  if (es.sigma > 0.0 && es.noise != NoiseKind::None)
    for (int i = 0; i < es.m; ++i) inst.b[i] += es.sigma * draw_noise(es.noise, rng);
  return inst;
}

double mse(const Vec& y, const Vec& x_true) {
  if (y.size() != x_true.size() || y.size() == 0)
    throw std::invalid_argument("mse: vectors must have equal nonzero length");
  return (y - x_true).squaredNorm() / static_cast<double>(y.size());
}

double psnr(const Vec& y, const Vec& x_true) {
  double e = mse(y, x_true);
  if (e == 0.0) return std::numeric_limits<double>::infinity();
  double v = y.cwiseAbs().maxCoeff();
  return 10.0 * std::log10(v * v / e);
}

namespace {
Vec make_x0(const ExperimentSpec& es, Eigen::Index n, double default_fill,
            CounterRng& rng) {
  if (es.x0 == "default") return Vec::Constant(n, default_fill);
  if (es.x0 == "random") {
    Vec x(n);
    for (Eigen::Index j = 0; j < n; ++j) x[j] = rng.uniform(-1.0, 2.0);
    return x;
  }
  return Vec::Constant(n, std::stod(es.x0));
}
}  // namespace

TrialSetup make_signal_trial(const ExperimentSpec& es, int trial) {
  CounterRng rng(es.seed, static_cast<std::uint64_t>(trial));
  Instance inst = generate_instance(es, rng);
  auto loss = std::make_shared<const LossModel>(LossModel::Kind::LeastSquares,
                                                LinearOperator(std::move(inst.A)),
                                                std::move(inst.b));
  ProblemSpec spec(loss, BoxConstraint::uniform(es.n, 0.0, 10.0),
                   GroupStructure::trivial(es.n), 1.0, 0.0);
  RelaxationParams rp = RelaxationParams::derive(spec, 0.99, es.M, es.step_divisor);
  SolverConfig cfg;
  cfg.x0 = make_x0(es, es.n, 1.97, rng);
  if (es.algorithm == Algorithm::Extrapolation) cfg.beta = es.beta;
  cfg.max_outer = es.max_outer;
  return TrialSetup{std::move(spec), rp, std::move(cfg), std::move(inst.x_true)};
}

TrialSetup make_group_trial(const ExperimentSpec& es, int trial) {
  if (es.n % 3 != 0)
    throw std::invalid_argument("group model: n must be divisible by 3");
  CounterRng rng(es.seed, static_cast<std::uint64_t>(trial));
  Instance inst = generate_instance(es, rng);
  auto loss = std::make_shared<const LossModel>(LossModel::Kind::LeastSquares,
                                                LinearOperator(std::move(inst.A)),
                                                std::move(inst.b));
  ProblemSpec spec(loss, BoxConstraint::uniform(es.n, -10.0, 10.0),
                   GroupStructure::consecutive_blocks(es.n, 3, 1), 0.1, 0.1);
  RelaxationParams rp = RelaxationParams::derive(spec, 0.99, es.M, es.step_divisor);
  SolverConfig cfg;
  cfg.x0 = make_x0(es, es.n, 0.0, rng);
  if (es.algorithm == Algorithm::Extrapolation) cfg.beta = es.beta;
  cfg.max_outer = es.max_outer;
  return TrialSetup{std::move(spec), rp, std::move(cfg), std::move(inst.x_true)};
}

namespace {
TrialResult run_trial(const ExperimentSpec& es, int trial) {
  TrialSetup ts = es.model == BenchModel::L0Signal ? make_signal_trial(es, trial)
                                                   : make_group_trial(es, trial);
  SolveReport rep = solve(ts.problem, ts.rp, ts.cfg, es.algorithm);

  TrialResult tr;
  tr.mse = mse(rep.x_final, ts.x_true);
  tr.psnr = psnr(rep.x_final, ts.x_true);
  tr.support_size = static_cast<int>(rep.final_support().size());
  tr.iterations = rep.iterations;
  tr.inner_mean = rep.inner_counts.empty()
                      ? 0.0
                      : std::accumulate(rep.inner_counts.begin(), rep.inner_counts.end(), 0.0) /
                            rep.inner_counts.size();
  tr.last_step_norm = rep.trace_step_norm.empty() ? 0.0 : rep.trace_step_norm.back();
  tr.wall_time = rep.wall_time;
  Certificate cert = certify(ts.problem, ts.rp, rep.x_final, 1e-6);
  tr.certified = cert.is_sw_d_stationary;
  tr.lower_bound_ok = cert.lower_bound_ok;
  tr.support_identified_early = rep.support_identified_at < rep.iterations;

  if (es.model == BenchModel::GroupL0) {
    tr.exact_group_support = true;
    const GroupStructure& gs = ts.problem.groups();
    for (Eigen::Index l = 0; l < gs.num_groups(); ++l) {
      bool want = gs.group_norm(ts.x_true, l) != 0.0;
      bool got = gs.group_norm(rep.x_final, l) != 0.0;
      if (want != got) tr.exact_group_support = false;
    }
  }
  return tr;
}
}  // namespace

BenchRow run_experiment(const ExperimentSpec& es) {
  BenchRow row;
  row.spec = es;
  row.trials.resize(es.trials);

  if (es.jobs > 1) {
    std::vector<std::future<TrialResult>> futs;
    for (int t = 0; t < es.trials; ++t)
      futs.push_back(std::async(std::launch::async, run_trial, std::cref(es), t));
    for (int t = 0; t < es.trials; ++t) row.trials[t] = futs[t].get();
  } else {
    for (int t = 0; t < es.trials; ++t) row.trials[t] = run_trial(es, t);
  }

  for (const TrialResult& tr : row.trials) {
    row.mean_mse += tr.mse;
    row.mean_psnr += tr.psnr;
    row.mean_iterations += tr.iterations;
    row.mean_inner += tr.inner_mean;
    row.mean_time += tr.wall_time;
    row.mean_last_step += tr.last_step_norm;
    row.mean_support += tr.support_size;
    if (tr.support_size == es.s) row.exact_sparsity_count++;
    if (tr.certified) row.certified_count++;
    if (tr.exact_group_support) row.exact_group_count++;
  }
  double nt = es.trials;
  row.mean_mse /= nt;
  row.mean_psnr /= nt;
  row.mean_iterations /= nt;
  row.mean_inner /= nt;
  row.mean_time /= nt;
  row.mean_last_step /= nt;
  row.mean_support /= nt;
  return row;
}

BenchRow run_signal_recovery(const ExperimentSpec& es) {
  if (es.model != BenchModel::L0Signal)
    throw std::invalid_argument("run_signal_recovery: wrong model tag");
  return run_experiment(es);
}

BenchRow run_group_recovery(const ExperimentSpec& es) {
  if (es.model != BenchModel::GroupL0)
    throw std::invalid_argument("run_group_recovery: wrong model tag");
  return run_experiment(es);
}

}  // namespace sgl0

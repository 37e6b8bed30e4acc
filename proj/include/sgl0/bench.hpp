#pragma once

#include <string>
#include <vector>

#include "sgl0/problem.hpp"
#include "sgl0/rng.hpp"
#include "sgl0/solver.hpp"

namespace sgl0 {

enum class NoiseKind { Gaussian, Rayleigh, Gamma, Exponential, Uniform, None };

NoiseKind noise_from_string(const std::string& s);
const char* to_string(NoiseKind k);

enum class BenchModel { L0Signal, GroupL0 };

struct ExperimentSpec {
  int n = 160;
  int m = 80;
  int s = 16;
  NoiseKind noise = NoiseKind::Gaussian;
  double sigma = 1e-2;
  int trials = 10;
  std::uint64_t seed = 7;
  BenchModel model = BenchModel::L0Signal;
  Algorithm algorithm = Algorithm::LineSearch;
  double M = 5.0;
  double step_divisor = 5.0;
  double beta = 0.5;      // extrapolation only
  std::string x0 = "default";  // default | 0 | 1 | 2 | -1 | random
  int jobs = 1;
  int max_outer = 20000;
};

struct TrialResult {
  double mse = 0.0;
  double psnr = 0.0;
  int support_size = 0;
  int iterations = 0;
  double inner_mean = 0.0;
  double last_step_norm = 0.0;
  double wall_time = 0.0;
  bool certified = false;
  bool lower_bound_ok = false;
  bool support_identified_early = false;  // support_identified_at < final iteration
  bool exact_group_support = false;       // group model only
};

struct BenchRow {
  ExperimentSpec spec;
  std::vector<TrialResult> trials;
  double mean_mse = 0.0;
  double mean_psnr = 0.0;
  double mean_iterations = 0.0;
  double mean_inner = 0.0;
  double mean_time = 0.0;
  double mean_last_step = 0.0;
  double mean_support = 0.0;
  int exact_sparsity_count = 0;   // trials with ||x||_0 == s
  int certified_count = 0;
  int exact_group_count = 0;
};

struct Instance {
  Mat A;
  Vec b;
  Vec x_true;
};

/// Gaussian sensing matrix with orthonormalized rows, planted sparse signal,
/// noisy observation b = A x_true + sigma * noise.
Instance generate_instance(const ExperimentSpec& es, CounterRng& rng);

double mse(const Vec& y, const Vec& x_true);
double psnr(const Vec& y, const Vec& x_true);

BenchRow run_signal_recovery(const ExperimentSpec& es);
BenchRow run_group_recovery(const ExperimentSpec& es);
BenchRow run_experiment(const ExperimentSpec& es);

/// Problem + relaxation for one signal-recovery trial (exposed for tests).
struct TrialSetup {
  ProblemSpec problem;
  RelaxationParams rp;
  SolverConfig cfg;
  Vec x_true;
};
TrialSetup make_signal_trial(const ExperimentSpec& es, int trial);
TrialSetup make_group_trial(const ExperimentSpec& es, int trial);

}  // namespace sgl0

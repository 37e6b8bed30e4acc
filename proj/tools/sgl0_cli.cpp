#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sgl0/bench.hpp"
#include "sgl0/diagnostics.hpp"
#include "sgl0/io.hpp"
#include "sgl0/solver.hpp"

namespace {

using namespace sgl0;

Vec parse_x0(const std::string& s, Eigen::Index n) {
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end && *end == '\0' && end != s.c_str()) return Vec::Constant(n, v);
  std::ifstream in(s);
  if (!in) throw std::invalid_argument("x0: neither a number nor a readable file: " + s);
  json j;
  in >> j;
  Vec x = vec_from_json(j);
  if (x.size() != n) throw std::invalid_argument("x0: wrong length");
  return x;
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("SGDC_SEED")) return std::stoull(env);
  return flag_seed;
}

struct SolveOpts {
  std::string algorithm = "line-search";
  std::string problem;
  std::string x0;
  std::string out;
  std::string trace;
  double M = 5.0, step_divisor = 5.0, rho = 2.0, beta = 0.0, tol = 1e-15;
  int N = 1, max_outer = 20000;
  double Lf = -1.0;  // > 0: bypass estimate_Lf
};

int run_solve(const SolveOpts& o) {
  ProblemSpec spec = load_problem(o.problem);
  RelaxationParams rp = o.Lf > 0.0
                            ? RelaxationParams::with_Lf(spec, o.Lf, 0.99, o.M, o.step_divisor)
                            : RelaxationParams::derive(spec, 0.99, o.M, o.step_divisor);
  SolverConfig cfg;
  cfg.rho = o.rho;
  cfg.window = o.N;
  cfg.beta = o.beta;
  cfg.tol = o.tol;
  cfg.max_outer = o.max_outer;
  if (!o.x0.empty()) cfg.x0 = parse_x0(o.x0, spec.n());
  SolveReport rep = solve(spec, rp, cfg, algorithm_from_string(o.algorithm));

  json j = report_to_json(rep);
  if (o.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::ofstream out(o.out);
    if (!out) throw std::runtime_error("cannot write " + o.out);
    out << j.dump(2) << '\n';
  }
  if (!o.trace.empty()) {
    std::ofstream tr(o.trace);
    if (!tr) throw std::runtime_error("cannot write " + o.trace);
    write_trace_csv(tr, rep);
  }
  std::cerr << "stop: " << to_string(rep.stop_reason) << ", iterations " << rep.iterations
            << ", |support| " << rep.final_support().size() << '\n';
  return 0;
}

struct BenchOpts {
  std::vector<int> n{160};
  int m = -1;  // < 0: n/2
  int s = -1;  // < 0: n/10
  std::vector<double> sigma{1e-2};
  std::vector<std::string> noise{"gaussian"};
  std::vector<double> M{5.0};
  double step_divisor = 5.0;
  double beta = 0.5;
  std::vector<std::string> x0{"default"};
  std::vector<std::string> algorithm{"line-search"};
  int trials = 10;
  std::uint64_t seed = 7;
  int jobs = 1;
  int max_outer = 20000;
  std::string out;
  std::string json_out;
};

int run_bench(const BenchOpts& o, BenchModel model) {
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw std::runtime_error("cannot write " + o.out);
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  write_bench_header(os);

  json detail = json::array();
  for (int n : o.n)
    for (double sigma : o.sigma)
      for (const std::string& noise : o.noise)
        for (double M : o.M)
          for (const std::string& x0 : o.x0)
            for (const std::string& alg : o.algorithm) {
              ExperimentSpec es;
              es.model = model;
              es.n = n;
              es.m = o.m > 0 ? o.m : n / 2;
              es.s = o.s > 0 ? o.s : n / 10;
              es.sigma = sigma;
              es.noise = noise_from_string(noise);
              es.M = M;
              es.step_divisor = o.step_divisor;
              es.beta = o.beta;
              es.x0 = x0;
              es.algorithm = algorithm_from_string(alg);
              es.trials = o.trials;
              es.seed = effective_seed(o.seed);
              es.jobs = o.jobs;
              es.max_outer = o.max_outer;
              BenchRow row = run_experiment(es);
              write_bench_row(os, row);
              os.flush();
              if (!o.json_out.empty()) detail.push_back(bench_row_to_json(row));
            }
  if (!o.json_out.empty()) {
    std::ofstream jf(o.json_out);
    if (!jf) throw std::runtime_error("cannot write " + o.json_out);
    jf << detail.dump(2) << '\n';
  }
  return 0;
}

struct CertifyOpts {
  std::string problem;
  std::string x;
  double tol = 1e-8;
  double M = 5.0, step_divisor = 5.0;
  double Lf = -1.0;
};

int run_certify(const CertifyOpts& o) {
  ProblemSpec spec = load_problem(o.problem);
  RelaxationParams rp = o.Lf > 0.0
                            ? RelaxationParams::with_Lf(spec, o.Lf, 0.99, o.M, o.step_divisor)
                            : RelaxationParams::derive(spec, 0.99, o.M, o.step_divisor);
  std::ifstream in(o.x);
  if (!in) throw std::invalid_argument("cannot open candidate file: " + o.x);
  json jx;
  in >> jx;
  Vec x = vec_from_json(jx);
  if (x.size() != spec.n()) throw std::invalid_argument("candidate: wrong length");

  Certificate cert = certify(spec, rp, x, o.tol);
  std::cout << "is_sw_d_stationary: " << (cert.is_sw_d_stationary ? "true" : "false")
            << '\n'
            << "lower_bound_ok: " << (cert.lower_bound_ok ? "true" : "false") << '\n'
            << "stationarity_residual: " << cert.stationarity_residual << '\n'
            << "support_size: " << cert.support.size() << '\n'
            << "F_primal: " << cert.F_primal << '\n'
            << "F_relaxed: " << cert.F_relaxed << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse group l0 solver over box constraints"};
  app.require_subcommand(1);

  SolveOpts so;
  CLI::App* solve = app.add_subcommand("solve", "solve one problem instance");
  solve->add_option("--algorithm", so.algorithm, "line-search | extrapolation");
  solve->add_option("--problem", so.problem, "problem JSON file")->required();
  solve->add_option("--x0", so.x0, "initial point: scalar fill or JSON vector file");
  solve->add_option("--M", so.M, "continuation start value");
  solve->add_option("--step-divisor", so.step_divisor, "continuation step divisor d");
  solve->add_option("--N", so.N, "nonmonotone window");
  solve->add_option("--rho", so.rho, "line-search backtracking factor");
  solve->add_option("--beta", so.beta, "extrapolation modulus in [0,1)");
  solve->add_option("--tol", so.tol, "objective-change stopping tolerance");
  solve->add_option("--max-outer", so.max_outer, "outer iteration cap");
  solve->add_option("--Lf", so.Lf, "override the estimated Lf bound");
  solve->add_option("--out", so.out, "SolveReport JSON path (default stdout)");
  solve->add_option("--trace", so.trace, "per-iteration trace CSV path");

  BenchOpts bo;
  BenchOpts bog;
  bog.n = {162};          // group model: blocks of 3 need 3 | n
  bog.M = {1.0};          // gentler schedule suits the weak penalties
  bog.step_divisor = 200.0;
  auto add_bench_flags = [](BenchOpts& bo, CLI::App* c) {
    c->add_option("--n", bo.n, "problem dimensions (sweep)");
    c->add_option("--m", bo.m, "rows (default n/2)");
    c->add_option("--s", bo.s, "planted sparsity (default n/10)");
    c->add_option("--sigma", bo.sigma, "noise levels (sweep)");
    c->add_option("--noise", bo.noise,
                  "gaussian | rayleigh | gamma | exponential | uniform | none (sweep)");
    c->add_option("--M", bo.M, "continuation start values (sweep)");
    c->add_option("--step-divisor", bo.step_divisor, "continuation step divisor d");
    c->add_option("--beta", bo.beta, "extrapolation modulus in [0, 1)");
    c->add_option("--x0", bo.x0, "default | scalar | random (sweep)");
    c->add_option("--algorithm", bo.algorithm, "line-search | extrapolation (sweep)");
    c->add_option("--trials", bo.trials, "trials per configuration");
    c->add_option("--seed", bo.seed, "base RNG seed (SGDC_SEED env overrides)");
    c->add_option("--jobs", bo.jobs, "parallel trials");
    c->add_option("--max-outer", bo.max_outer, "outer iteration cap");
    c->add_option("--out", bo.out, "table CSV path (default stdout)");
    c->add_option("--json", bo.json_out, "per-trial detail JSON path");
  };
  CLI::App* bs = app.add_subcommand("bench-signal", "l0 signal recovery benchmark");
  add_bench_flags(bo, bs);
  CLI::App* bg = app.add_subcommand("bench-group", "group l0 recovery benchmark");
  add_bench_flags(bog, bg);

  CertifyOpts co;
  CLI::App* cert = app.add_subcommand("certify", "certify a candidate solution");
  cert->add_option("--problem", co.problem, "problem JSON file")->required();
  cert->add_option("--x", co.x, "candidate vector JSON file")->required();
  cert->add_option("--tol", co.tol, "stationarity residual tolerance");
  cert->add_option("--M", co.M, "continuation start value");
  cert->add_option("--step-divisor", co.step_divisor, "continuation step divisor d");
  cert->add_option("--Lf", co.Lf, "override the estimated Lf bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return run_solve(so);
    if (bs->parsed()) return run_bench(bo, BenchModel::L0Signal);
    if (bg->parsed()) return run_bench(bog, BenchModel::GroupL0);
    if (cert->parsed()) return run_certify(co);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

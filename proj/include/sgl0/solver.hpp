#pragma once

#include <string>
#include <vector>

#include "sgl0/problem.hpp"

namespace sgl0 {

enum class Algorithm { LineSearch, Extrapolation };

struct SolverConfig {
  double rho = 2.0;
  double c = -1.0;           // < 0: default Ls/2
  double alpha_base = -1.0;  // < 0: default Ls/2
  double alpha_lo = 1e-8;
  double alpha_hi = 1e8;
  bool warm_start = true;    // alpha_base^k = accepted alpha_{k-1} / rho
  int window = 1;            // N
  double beta = 0.0;
  Vec x0;                    // empty: zeros
  int max_outer = 20000;
  double tol = 1e-15;
};

enum class StopReason { Tol, MaxOuter };

struct SolveReport {
  Vec x_final;
  int iterations = 0;  // outer iterations performed
  StopReason stop_reason = StopReason::MaxOuter;
  double wall_time = 0.0;

  // per-iterate traces (length iterations + 1, including x^0)
  std::vector<int> trace_k;
  std::vector<double> trace_mu;
  std::vector<double> trace_F_relaxed;  // F(x^k; mu_k)
  std::vector<double> trace_F_primal;   // F_0(x^k)
  std::vector<int> trace_support_size;
  std::vector<double> trace_step_norm;  // ||x^k - x^{k-1}||, 0 at k=0

  // per-step records (length iterations)
  std::vector<double> alpha_trace;   // accepted alpha_bar_k (Ls for extrapolation)
  std::vector<int> inner_counts;     // prox evaluations per outer step
  std::vector<double> accept_margin; // slack of acceptance (7), >= 0; line search only

  // support change points: (k, support at k); support constant between entries
  std::vector<std::pair<int, std::vector<int>>> support_trace;
  int support_identified_at = 0;  // first k after which support never changes

  std::vector<int> final_support() const;
};

/// Algorithm with nonmonotone line search (window N, acceptance with modulus c).
SolveReport dca_line_search(const ProblemSpec& spec, const RelaxationParams& rp,
                            const SolverConfig& cfg);

/// Algorithm with extrapolation y^k = x^k + beta_k (x^k - x^{k-1}) and fixed
/// proximal modulus Ls.
SolveReport dca_extrapolation(const ProblemSpec& spec, const RelaxationParams& rp,
                              const SolverConfig& cfg);

SolveReport solve(const ProblemSpec& spec, const RelaxationParams& rp,
                  const SolverConfig& cfg, Algorithm algorithm);

const char* to_string(StopReason r);
const char* to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

}  // namespace sgl0

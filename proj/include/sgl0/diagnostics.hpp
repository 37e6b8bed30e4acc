#pragma once

#include <vector>

#include "sgl0/problem.hpp"
#include "sgl0/solver.hpp"

namespace sgl0 {

struct Certificate {
  bool lower_bound_ok = false;
  std::vector<int> lower_bound_violations;
  double stationarity_residual = 0.0;
  bool is_sw_d_stationary = false;
  std::vector<int> support;
  double F_primal = 0.0;
  double F_relaxed = 0.0;
};

/// every nonzero |x_j| >= nu (boundary inclusive)
bool check_lower_bound(const Vec& x, double nu, std::vector<int>* violations = nullptr);

/// sqrt of the summed squared normal-cone distances of [grad f(x)]_j over the
/// nonzero coordinates; 0 means the support-restricted first-order condition
/// holds exactly.
double stationarity_residual(const ProblemSpec& spec, const Vec& x);

/// residual <= tol together with the nu-lower bound certifies x as an
/// sw-d-stationary point of the relaxation and a nu-strong local minimizer of
/// the primal problem (objective values then agree).
Certificate certify(const ProblemSpec& spec, const RelaxationParams& rp,
                    const Vec& x, double tol = 1e-8);

struct OracleLocalMin {
  Vec x;
  double F0 = 0.0;
  bool nu_strong = false;
};

struct OracleResult {
  Vec x_global;
  double F_global = 0.0;
  std::vector<OracleLocalMin> local_minimizers;
};

/// Exhaustive support enumeration (n <= 12): per support, minimize f over the
/// restricted box by proximal gradient; returns the global minimizer and the
/// full local-minimizer list with nu-strong labels.
OracleResult global_oracle(const ProblemSpec& spec, const RelaxationParams& rp);

struct RatePoint {
  int k;
  double gap;       // |F(x^k) - F_star|
  double ref1;      // k^{-1}
  double ref2;      // k^{-2}
  double ref3;      // k^{-3}
};

std::vector<RatePoint> rate_trace(const SolveReport& report, double F_star);

}  // namespace sgl0

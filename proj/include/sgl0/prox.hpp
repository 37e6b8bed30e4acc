#pragma once

#include "sgl0/problem.hpp"

namespace sgl0 {

/// Per-iteration subproblem
///   argmin_{x in box}  f_bar_n(x; mu) + (alpha/2) ||x - z||^2
/// with z the gradient/subgradient-shifted center.
struct ProxRequest {
  Vec z;
  double alpha = 0.0;
  double mu = 0.0;
  const ProblemSpec* spec = nullptr;
};

/// Closed form for p = 1 (possibly overlapping groups, any box).
/// Thresholded coordinates are exact zeros.
Vec prox_p1_box(const ProxRequest& req);

/// Closed form for p = 2 (disjoint groups, unbounded box): elementwise soft
/// threshold followed by a per-group shrink.
Vec prox_p2_disjoint(const ProxRequest& req);

/// dispatch on spec->groups().p()
Vec prox(const ProxRequest& req);

/// Independent verification oracle: coordinatewise golden-section search
/// iterated to a fixed point. Test-scale only (n <= 4).
Vec prox_oracle(const ProxRequest& req, int grid_density = 64);

}  // namespace sgl0

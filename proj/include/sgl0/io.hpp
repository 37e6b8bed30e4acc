#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sgl0/bench.hpp"
#include "sgl0/diagnostics.hpp"
#include "sgl0/problem.hpp"
#include "sgl0/solver.hpp"

namespace sgl0 {

using json = nlohmann::json;

/// Problem instance <-> JSON tree (dense or CSR loss matrix, box with null
/// for infinite bounds, group sets/weights/p, lambdas).
ProblemSpec problem_from_json(const json& j);
json problem_to_json(const ProblemSpec& spec);
ProblemSpec load_problem(const std::string& path);

json report_to_json(const SolveReport& rep);
json certificate_to_json(const Certificate& cert);

/// columns: k, mu, F_relaxed, F_primal, support_size, step_norm, alpha, inner_iters
void write_trace_csv(std::ostream& os, const SolveReport& rep);
/// columns: k, gap, k^-1, k^-2, k^-3
void write_rate_csv(std::ostream& os, const std::vector<RatePoint>& pts);

void write_bench_header(std::ostream& os);
void write_bench_row(std::ostream& os, const BenchRow& row);
json bench_row_to_json(const BenchRow& row);

/// rows of space-separated reals
Mat load_dense_text(std::istream& is);
/// Matrix Market coordinate format (real general)
SpMat load_matrix_market(std::istream& is);

Vec vec_from_json(const json& j);
json vec_to_json(const Vec& v);

}  // namespace sgl0

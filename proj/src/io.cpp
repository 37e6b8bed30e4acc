#include "sgl0/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sgl0 {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// infinite bounds travel as null
double bound_from_json(const json& j, double sign) {
  if (j.is_null()) return sign * kInf;
  return j.get<double>();
}

json bound_to_json(double v) {
  if (std::isinf(v)) return nullptr;
  return v;
}

LossModel::Kind loss_kind_from_string(const std::string& s) {
  if (s == "least_squares") return LossModel::Kind::LeastSquares;
  if (s == "logistic") return LossModel::Kind::Logistic;
  if (s == "poisson") return LossModel::Kind::Poisson;
  throw std::invalid_argument("unknown loss kind: " + s);
}

const char* loss_kind_to_string(LossModel::Kind k) {
  switch (k) {
    case LossModel::Kind::LeastSquares: return "least_squares";
    case LossModel::Kind::Logistic: return "logistic";
    case LossModel::Kind::Poisson: return "poisson";
  }
  return "?";
}

LinearOperator matrix_from_json(const json& j) {
  const std::string fmt = j.value("format", "dense");
  if (fmt == "dense") {
    const auto& rows = j.at("data");
    if (rows.empty()) throw std::invalid_argument("matrix: empty dense data");
    Mat A(rows.size(), rows[0].size());
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const auto& row = rows[i];
      if (static_cast<Eigen::Index>(row.size()) != A.cols())
        throw std::invalid_argument("matrix: ragged dense rows");
      for (Eigen::Index c = 0; c < A.cols(); ++c) A(i, c) = row[c].get<double>();
    }
    return LinearOperator(std::move(A));
  }
  if (fmt == "csr") {
    const auto indptr = j.at("indptr").get<std::vector<int>>();
    const auto indices = j.at("indices").get<std::vector<int>>();
    const auto data = j.at("data").get<std::vector<double>>();
    const int m = static_cast<int>(indptr.size()) - 1;
    const int n = j.at("cols").get<int>();
    if (m < 1 || indices.size() != data.size())
      throw std::invalid_argument("matrix: malformed csr arrays");
    SpMat A(m, n);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(data.size());
    for (int i = 0; i < m; ++i) {
      if (indptr[i] > indptr[i + 1] || indptr[i + 1] > static_cast<int>(data.size()))
        throw std::invalid_argument("matrix: malformed csr indptr");
      for (int k = indptr[i]; k < indptr[i + 1]; ++k) {
        if (indices[k] < 0 || indices[k] >= n)
          throw std::invalid_argument("matrix: csr column index out of range");
        trip.emplace_back(i, indices[k], data[k]);
      }
    }
    A.setFromTriplets(trip.begin(), trip.end());
    return LinearOperator(std::move(A));
  }
  throw std::invalid_argument("matrix: format must be dense or csr");
}

json matrix_to_json(const LinearOperator& A) {
  json j;
  if (A.is_dense()) {
    j["format"] = "dense";
    json rows = json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index c = 0; c < A.cols(); ++c) row.push_back(A.dense()(i, c));
      rows.push_back(std::move(row));
    }
    j["data"] = std::move(rows);
  } else {
    const SpMat& S = A.sparse();
    j["format"] = "csr";
    j["cols"] = static_cast<int>(S.cols());
    std::vector<int> indptr{0}, indices;
    std::vector<double> data;
    for (int i = 0; i < S.rows(); ++i) {
      for (SpMat::InnerIterator it(S, i); it; ++it) {
        indices.push_back(static_cast<int>(it.col()));
        data.push_back(it.value());
      }
      indptr.push_back(static_cast<int>(indices.size()));
    }
    j["indptr"] = indptr;
    j["indices"] = indices;
    j["data"] = data;
  }
  return j;
}
}  // namespace

Vec vec_from_json(const json& j) {
  Vec v(j.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

ProblemSpec problem_from_json(const json& j) {
  const json& jl = j.at("loss");
  LinearOperator A = matrix_from_json(jl.at("A"));
  Vec b = vec_from_json(jl.at("b"));
  auto loss = std::make_shared<const LossModel>(
      loss_kind_from_string(jl.at("kind").get<std::string>()), std::move(A),
      std::move(b), jl.value("lambda_extra", 0.0));

  const Eigen::Index n = loss->dim();
  const json& jb = j.at("box");
  Vec lo(n), hi(n);
  const auto& jlo = jb.at("lower");
  const auto& jhi = jb.at("upper");
  if (static_cast<Eigen::Index>(jlo.size()) != n ||
      static_cast<Eigen::Index>(jhi.size()) != n)
    throw std::invalid_argument("box: bound length must match matrix columns");
  for (Eigen::Index i = 0; i < n; ++i) {
    lo[i] = bound_from_json(jlo[i], -1.0);
    hi[i] = bound_from_json(jhi[i], 1.0);
  }
  BoxConstraint box(std::move(lo), std::move(hi));

  GroupStructure groups;
  if (j.contains("groups")) {
    const json& jg = j.at("groups");
    auto sets = jg.at("sets").get<std::vector<std::vector<int>>>();
    Vec w = vec_from_json(jg.at("weights"));
    groups = GroupStructure(n, std::move(sets), std::move(w), jg.value("p", 1));
  } else {
    groups = GroupStructure::trivial(n);
  }

  return ProblemSpec(std::move(loss), std::move(box), std::move(groups),
                     j.value("lambda1", 0.0), j.value("lambda2", 0.0));
}

json problem_to_json(const ProblemSpec& spec) {
  json j;
  j["loss"]["kind"] = loss_kind_to_string(spec.loss().kind());
  j["loss"]["A"] = matrix_to_json(spec.loss().A());
  j["loss"]["b"] = vec_to_json(spec.loss().b());
  j["loss"]["lambda_extra"] = spec.loss().lambda_extra();

  json lo = json::array(), hi = json::array();
  for (Eigen::Index i = 0; i < spec.n(); ++i) {
    lo.push_back(bound_to_json(spec.box().lower()[i]));
    hi.push_back(bound_to_json(spec.box().upper()[i]));
  }
  j["box"]["lower"] = std::move(lo);
  j["box"]["upper"] = std::move(hi);

  j["groups"]["sets"] = spec.groups().groups();
  j["groups"]["weights"] = vec_to_json(spec.groups().weights());
  j["groups"]["p"] = spec.groups().p();

  j["lambda1"] = spec.lambda1();
  j["lambda2"] = spec.lambda2();
  return j;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open problem file: " + path);
  json j;
  in >> j;
  return problem_from_json(j);
}

json report_to_json(const SolveReport& rep) {
  json j;
  j["x_final"] = vec_to_json(rep.x_final);
  j["iterations"] = rep.iterations;
  j["stop_reason"] = to_string(rep.stop_reason);
  j["wall_time"] = rep.wall_time;
  j["support"] = rep.final_support();
  j["support_identified_at"] = rep.support_identified_at;
  j["trace"]["k"] = rep.trace_k;
  j["trace"]["mu"] = rep.trace_mu;
  j["trace"]["F_relaxed"] = rep.trace_F_relaxed;
  j["trace"]["F_primal"] = rep.trace_F_primal;
  j["trace"]["support_size"] = rep.trace_support_size;
  j["trace"]["step_norm"] = rep.trace_step_norm;
  j["trace"]["alpha"] = rep.alpha_trace;
  j["trace"]["inner_iters"] = rep.inner_counts;
  json st = json::array();
  for (const auto& [k, supp] : rep.support_trace)
    st.push_back({{"k", k}, {"support", supp}});
  j["support_trace"] = std::move(st);
  return j;
}

json certificate_to_json(const Certificate& cert) {
  json j;
  j["is_sw_d_stationary"] = cert.is_sw_d_stationary;
  j["lower_bound_ok"] = cert.lower_bound_ok;
  j["lower_bound_violations"] = cert.lower_bound_violations;
  j["stationarity_residual"] = cert.stationarity_residual;
  j["support"] = cert.support;
  j["F_primal"] = cert.F_primal;
  j["F_relaxed"] = cert.F_relaxed;
  return j;
}

namespace {
std::ostream& full(std::ostream& os) {
  os.precision(17);
  return os;
}
}  // namespace

void write_trace_csv(std::ostream& os, const SolveReport& rep) {
  full(os) << "k,mu,F_relaxed,F_primal,support_size,step_norm,alpha,inner_iters\n";
  for (std::size_t i = 0; i < rep.trace_k.size(); ++i) {
    os << rep.trace_k[i] << ',' << rep.trace_mu[i] << ',' << rep.trace_F_relaxed[i]
       << ',' << rep.trace_F_primal[i] << ',' << rep.trace_support_size[i] << ','
       << rep.trace_step_norm[i] << ',';
    // per-step columns are empty on the k = 0 row
    if (i >= 1 && i - 1 < rep.alpha_trace.size())
      os << rep.alpha_trace[i - 1] << ',' << rep.inner_counts[i - 1];
    else
      os << ',';
    os << '\n';
  }
}

void write_rate_csv(std::ostream& os, const std::vector<RatePoint>& pts) {
  full(os) << "k,gap,k^-1,k^-2,k^-3\n";
  for (const RatePoint& p : pts)
    os << p.k << ',' << p.gap << ',' << p.ref1 << ',' << p.ref2 << ',' << p.ref3
       << '\n';
}

void write_bench_header(std::ostream& os) {
  full(os) << "model,algorithm,n,m,s,noise,sigma,M,step_divisor,x0,trials,seed,"
              "mean_mse,mean_psnr,mean_iterations,mean_inner,mean_time,"
              "mean_last_step,mean_support,exact_sparsity_count,certified_count,"
              "exact_group_count\n";
}

void write_bench_row(std::ostream& os, const BenchRow& row) {
  const ExperimentSpec& es = row.spec;
  full(os) << (es.model == BenchModel::L0Signal ? "signal" : "group") << ','
           << to_string(es.algorithm) << ',' << es.n << ',' << es.m << ',' << es.s
           << ',' << to_string(es.noise) << ',' << es.sigma << ',' << es.M << ','
           << es.step_divisor << ',' << es.x0 << ',' << es.trials << ',' << es.seed
           << ',' << row.mean_mse << ',' << row.mean_psnr << ','
           << row.mean_iterations << ',' << row.mean_inner << ',' << row.mean_time
           << ',' << row.mean_last_step << ',' << row.mean_support << ','
           << row.exact_sparsity_count << ',' << row.certified_count << ','
           << row.exact_group_count << '\n';
}

json bench_row_to_json(const BenchRow& row) {
  const ExperimentSpec& es = row.spec;
  json j;
  j["spec"] = {{"model", es.model == BenchModel::L0Signal ? "signal" : "group"},
               {"algorithm", to_string(es.algorithm)},
               {"n", es.n},
               {"m", es.m},
               {"s", es.s},
               {"noise", to_string(es.noise)},
               {"sigma", es.sigma},
               {"M", es.M},
               {"step_divisor", es.step_divisor},
               {"x0", es.x0},
               {"trials", es.trials},
               {"seed", es.seed}};
  j["mean"] = {{"mse", row.mean_mse},
               {"psnr", row.mean_psnr},
               {"iterations", row.mean_iterations},
               {"inner", row.mean_inner},
               {"time", row.mean_time},
               {"last_step", row.mean_last_step},
               {"support", row.mean_support}};
  j["exact_sparsity_count"] = row.exact_sparsity_count;
  j["certified_count"] = row.certified_count;
  j["exact_group_count"] = row.exact_group_count;
  json trials = json::array();
  for (const TrialResult& tr : row.trials)
    trials.push_back({{"mse", tr.mse},
                      {"psnr", tr.psnr},
                      {"support_size", tr.support_size},
                      {"iterations", tr.iterations},
                      {"inner_mean", tr.inner_mean},
                      {"last_step_norm", tr.last_step_norm},
                      {"wall_time", tr.wall_time},
                      {"certified", tr.certified},
                      {"lower_bound_ok", tr.lower_bound_ok},
                      {"support_identified_early", tr.support_identified_early},
                      {"exact_group_support", tr.exact_group_support}});
  j["trials"] = std::move(trials);
  return j;
}

Mat load_dense_text(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("dense text: no data rows");
  Mat A(rows.size(), rows[0].size());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != A.cols())
      throw std::invalid_argument("dense text: ragged rows");
    for (Eigen::Index c = 0; c < A.cols(); ++c) A(i, c) = rows[i][c];
  }
  return A;
}

SpMat load_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
    throw std::invalid_argument("matrix market: missing header");
  if (line.find("coordinate") == std::string::npos ||
      line.find("real") == std::string::npos)
    throw std::invalid_argument("matrix market: only coordinate real supported");
  while (std::getline(is, line) && (line.empty() || line[0] == '%')) {
  }
  std::istringstream hs(line);
  int m = 0, n = 0;
  long long nnz = 0;
  if (!(hs >> m >> n >> nnz) || m < 1 || n < 1 || nnz < 0)
    throw std::invalid_argument("matrix market: bad size line");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(nnz);
  for (long long k = 0; k < nnz; ++k) {
    int i, j;
    double v;
    if (!(is >> i >> j >> v))
      throw std::invalid_argument("matrix market: truncated entries");
    if (i < 1 || i > m || j < 1 || j > n)
      throw std::invalid_argument("matrix market: entry out of range");
    trip.emplace_back(i - 1, j - 1, v);  // 1-based on disk
  }
  SpMat A(m, n);
  A.setFromTriplets(trip.begin(), trip.end());
  return A;
}

}  // namespace sgl0

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sgl0/bench.hpp"
#include "sgl0/diagnostics.hpp"
#include "sgl0/prox.hpp"
#include "sgl0/solver.hpp"

namespace py = pybind11;
using namespace sgl0;

namespace {

ProblemSpec make_problem(const Mat& A, const Vec& b, const Vec& lower, const Vec& upper,
                         const std::vector<std::vector<int>>& groups, const Vec& weights,
                         int p, double lambda1, double lambda2, const std::string& loss,
                         double lambda_extra) {
  LossModel::Kind kind;
  if (loss == "least_squares")
    kind = LossModel::Kind::LeastSquares;
  else if (loss == "logistic")
    kind = LossModel::Kind::Logistic;
  else if (loss == "poisson")
    kind = LossModel::Kind::Poisson;
  else
    throw std::invalid_argument("unknown loss kind: " + loss);
  auto lm = std::make_shared<const LossModel>(kind, LinearOperator(A), b, lambda_extra);
  GroupStructure gs = groups.empty()
                          ? GroupStructure::trivial(A.cols())
                          : GroupStructure(A.cols(), groups, weights, p);
  return ProblemSpec(std::move(lm), BoxConstraint(lower, upper), std::move(gs),
                     lambda1, lambda2);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sparse group l0 solver over box constraints";

  py::class_<ProblemSpec>(m, "Problem")
      .def(py::init(&make_problem), py::arg("A"), py::arg("b"), py::arg("lower"),
           py::arg("upper"), py::arg("groups") = std::vector<std::vector<int>>{},
           py::arg("weights") = Vec(), py::arg("p") = 1, py::arg("lambda1") = 1.0,
           py::arg("lambda2") = 0.0, py::arg("loss") = "least_squares",
           py::arg("lambda_extra") = 0.0)
      .def_property_readonly("n", &ProblemSpec::n)
      .def_property_readonly("lambda1", &ProblemSpec::lambda1)
      .def_property_readonly("lambda2", &ProblemSpec::lambda2)
      .def("eval_primal", [](const ProblemSpec& s, const Vec& x) { return eval_primal(s, x); })
      .def("eval_relaxed",
           [](const ProblemSpec& s, const Vec& x, double mu) { return eval_relaxed(s, x, mu); })
      .def("estimate_Lf",
           [](const ProblemSpec& s) { return s.loss().estimate_Lf(s.box()); });

  py::class_<RelaxationParams>(m, "RelaxationParams")
      .def_readonly("nu", &RelaxationParams::nu)
      .def_readonly("Lf", &RelaxationParams::Lf)
      .def_readonly("vartheta", &RelaxationParams::vartheta)
      .def_static("derive", &RelaxationParams::derive, py::arg("problem"),
                  py::arg("safety") = 0.99, py::arg("M") = 5.0,
                  py::arg("step_divisor") = 5.0)
      .def_static("with_Lf", &RelaxationParams::with_Lf, py::arg("problem"),
                  py::arg("Lf"), py::arg("safety") = 0.99, py::arg("M") = 5.0,
                  py::arg("step_divisor") = 5.0);

  py::class_<SolveReport>(m, "SolveReport")
      .def_readonly("x_final", &SolveReport::x_final)
      .def_readonly("iterations", &SolveReport::iterations)
      .def_readonly("wall_time", &SolveReport::wall_time)
      .def_readonly("trace_F_relaxed", &SolveReport::trace_F_relaxed)
      .def_readonly("trace_F_primal", &SolveReport::trace_F_primal)
      .def_readonly("trace_mu", &SolveReport::trace_mu)
      .def_readonly("support_identified_at", &SolveReport::support_identified_at)
      .def_property_readonly("stop_reason",
                             [](const SolveReport& r) { return to_string(r.stop_reason); })
      .def("final_support", &SolveReport::final_support);

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("is_sw_d_stationary", &Certificate::is_sw_d_stationary)
      .def_readonly("lower_bound_ok", &Certificate::lower_bound_ok)
      .def_readonly("stationarity_residual", &Certificate::stationarity_residual)
      .def_readonly("support", &Certificate::support)
      .def_readonly("F_primal", &Certificate::F_primal)
      .def_readonly("F_relaxed", &Certificate::F_relaxed);

  m.def("capped_theta", &capped_theta, py::arg("t"), py::arg("mu"));

  m.def(
      "solve",
      [](const ProblemSpec& spec, const RelaxationParams& rp, const std::string& algorithm,
         const Vec& x0, int window, double beta, double tol, int max_outer) {
        SolverConfig cfg;
        cfg.x0 = x0;
        cfg.window = window;
        cfg.beta = beta;
        cfg.tol = tol;
        cfg.max_outer = max_outer;
        return solve(spec, rp, cfg, algorithm_from_string(algorithm));
      },
      py::arg("problem"), py::arg("params"), py::arg("algorithm") = "line-search",
      py::arg("x0") = Vec(), py::arg("window") = 1, py::arg("beta") = 0.0,
      py::arg("tol") = 1e-15, py::arg("max_outer") = 20000);

  m.def(
      "prox",
      [](const ProblemSpec& spec, const Vec& z, double alpha, double mu) {
        return prox(ProxRequest{z, alpha, mu, &spec});
      },
      py::arg("problem"), py::arg("z"), py::arg("alpha"), py::arg("mu"));

  m.def(
      "certify",
      [](const ProblemSpec& spec, const RelaxationParams& rp, const Vec& x, double tol) {
        return certify(spec, rp, x, tol);
      },
      py::arg("problem"), py::arg("params"), py::arg("x"), py::arg("tol") = 1e-8);

  m.def("mse", &mse, py::arg("y"), py::arg("x_true"));
  m.def("psnr", &psnr, py::arg("y"), py::arg("x_true"));

  m.def(
      "bench_signal",
      [](int n, int m_, int s, double sigma, int trials, std::uint64_t seed,
         const std::string& algorithm, int jobs) {
        ExperimentSpec es;
        es.model = BenchModel::L0Signal;
        es.n = n;
        es.m = m_;
        es.s = s;
        es.sigma = sigma;
        es.trials = trials;
        es.seed = seed;
        es.algorithm = algorithm_from_string(algorithm);
        es.jobs = jobs;
        BenchRow row = run_signal_recovery(es);
        py::dict d;
        d["mean_mse"] = row.mean_mse;
        d["mean_psnr"] = row.mean_psnr;
        d["mean_iterations"] = row.mean_iterations;
        d["mean_support"] = row.mean_support;
        d["exact_sparsity_count"] = row.exact_sparsity_count;
        d["certified_count"] = row.certified_count;
        return d;
      },
      py::arg("n") = 160, py::arg("m") = 80, py::arg("s") = 16, py::arg("sigma") = 1e-2,
      py::arg("trials") = 10, py::arg("seed") = 7, py::arg("algorithm") = "line-search",
      py::arg("jobs") = 1);
}

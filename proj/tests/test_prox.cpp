#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sgl0/prox.hpp"
#include "test_util.hpp"

using namespace sgl0;

namespace {

ProblemSpec dummy_spec(BoxConstraint box, GroupStructure gs, double lambda1,
                       double lambda2, double lambda_extra = 0.0) {
  Eigen::Index n = box.size();
  return testutil::ls_problem(Mat::Identity(n, n), Vec::Zero(n), std::move(box),
                              std::move(gs), lambda1, lambda2, lambda_extra);
}

}  // namespace

TEST_CASE("p = 1 closed form: soft threshold, exact zeros, box clip") {
  ProblemSpec spec = dummy_spec(BoxConstraint::uniform(3, 0.0, 1.0),
                                GroupStructure::trivial(3), 1.0, 0.0);
  double alpha = 2.0, mu = 0.5;  // tau = 1 / (0.5 * 2) = 1
  Vec z(3);
  z << 0.8, 3.0, -2.0;
  Vec x = prox_p1_box(ProxRequest{z, alpha, mu, &spec});
  CHECK(x[0] == 0.0);  // |z| <= tau: exact zero, not epsilon-small
  CHECK(x[1] == 1.0);  // soft(3,1) = 2, clipped at the upper bound
  CHECK(x[2] == 0.0);  // soft(-2,1) = -1, clipped to the lower bound 0
}

TEST_CASE("p = 1 negative branch keeps sign before clipping") {
  ProblemSpec spec = dummy_spec(BoxConstraint::uniform(2, -1.5, 1.5),
                                GroupStructure::trivial(2), 1.0, 0.0);
  Vec z(2);
  z << -3.0, -1.2;
  Vec x = prox_p1_box(ProxRequest{z, 2.0, 0.5, &spec});  // tau = 1
  CHECK(x[0] == doctest::Approx(-1.5));                  // soft -> -2, clip
  CHECK(x[1] == doctest::Approx(-0.2));
}

TEST_CASE("random p = 1 requests match the search oracle") {
  int checked = 0;
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    CounterRng rng(42, trial);
    int n = 2 + static_cast<int>(rng.uniform_index(3));  // 2..4
    double lo = trial % 3 == 0 ? 0.0 : -rng.uniform(0.5, 3.0);
    double hi = rng.uniform(0.5, 3.0);
    GroupStructure gs = GroupStructure::trivial(n);
    double lambda2 = 0.0;
    if (trial % 2 == 0 && n >= 3) {
      // overlapping groups exercise the lambda_bar accumulation
      std::vector<int> tail;
      for (int j = 1; j < n; ++j) tail.push_back(j);
      gs = GroupStructure(n, {{0, 1}, tail},
                          (Vec(2) << rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0))
                              .finished(),
                          1);
      lambda2 = rng.uniform(0.1, 0.8);
    }
    double lambda_extra = trial % 5 == 0 ? rng.uniform(0.0, 0.5) : 0.0;
    ProblemSpec spec = dummy_spec(BoxConstraint::uniform(n, lo, hi), gs,
                                  rng.uniform(0.1, 1.0), lambda2, lambda_extra);
    ProxRequest req;
    req.alpha = rng.uniform(0.5, 4.0);
    req.mu = rng.uniform(0.2, 2.0);
    req.spec = &spec;
    req.z = Vec(n);
    for (int j = 0; j < n; ++j) req.z[j] = rng.uniform(-4.0, 4.0);

    Vec fast = prox(req);
    Vec slow = prox_oracle(req);
    CHECK((fast - slow).lpNorm<Eigen::Infinity>() <= 1e-6);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("p = 2 closed form matches the search oracle") {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    CounterRng rng(77, trial);
    ProblemSpec spec = dummy_spec(BoxConstraint::unbounded(4),
                                  GroupStructure::consecutive_blocks(4, 2, 2),
                                  rng.uniform(0.05, 0.6), rng.uniform(0.1, 1.0));
    ProxRequest req;
    req.alpha = rng.uniform(0.5, 4.0);
    req.mu = rng.uniform(0.2, 2.0);
    req.spec = &spec;
    req.z = Vec(4);
    for (int j = 0; j < 4; ++j) req.z[j] = rng.uniform(-4.0, 4.0);

    Vec fast = prox(req);
    Vec slow = prox_oracle(req);
    CHECK((fast - slow).lpNorm<Eigen::Infinity>() <= 1e-6);
  }
}

TEST_CASE("p = 2 worked value: group shrink of (2, 3)") {
  // lambda1 = 0 and lambda2 w / (mu alpha) = 1 shrink z = (2,3) by
  // (1 - 1/||z||) with ||z|| = sqrt(13)
  ProblemSpec spec = dummy_spec(BoxConstraint::unbounded(2),
                                GroupStructure(2, {{0, 1}}, Vec::Ones(1), 2),
                                0.0, 1.0);
  Vec z(2);
  z << 2.0, 3.0;
  Vec x = prox_p2_disjoint(ProxRequest{z, 1.0, 1.0, &spec});
  double scale = 1.0 - 1.0 / std::sqrt(13.0);
  CHECK(x[0] == doctest::Approx(2.0 * scale).epsilon(1e-10));
  CHECK(x[1] == doctest::Approx(3.0 * scale).epsilon(1e-10));

  // whole group below the shrink radius dies exactly
  Vec small(2);
  small << 0.3, 0.4;  // norm 0.5 < tau2 = 1
  Vec y = prox_p2_disjoint(ProxRequest{small, 1.0, 1.0, &spec});
  CHECK(y[0] == 0.0);
  CHECK(y[1] == 0.0);
}

TEST_CASE("prox request validation") {
  ProblemSpec spec = dummy_spec(BoxConstraint::uniform(2, -1.0, 1.0),
                                GroupStructure::trivial(2), 1.0, 0.0);
  Vec z = Vec::Zero(2);
  CHECK_THROWS_AS(prox(ProxRequest{z, 0.0, 1.0, &spec}), std::invalid_argument);
  CHECK_THROWS_AS(prox(ProxRequest{z, 1.0, 0.0, &spec}), std::invalid_argument);
  CHECK_THROWS_AS(prox(ProxRequest{z, 1.0, 1.0, nullptr}), std::invalid_argument);
  CHECK_THROWS_AS(prox(ProxRequest{Vec::Zero(3), 1.0, 1.0, &spec}),
                  std::invalid_argument);

  // p = 2 requires disjoint groups and an unbounded box
  ProblemSpec bounded = dummy_spec(BoxConstraint::uniform(2, -1.0, 1.0),
                                   GroupStructure(2, {{0, 1}}, Vec::Ones(1), 2),
                                   1.0, 1.0);
  CHECK_THROWS_AS(prox_p2_disjoint(ProxRequest{z, 1.0, 1.0, &bounded}),
                  std::invalid_argument);
  CHECK_THROWS_AS(prox_p2_disjoint(ProxRequest{z, 1.0, 1.0, &spec}),
                  std::invalid_argument);
  CHECK_THROWS_AS(prox_p1_box(ProxRequest{z, 1.0, 1.0, &bounded}),
                  std::invalid_argument);

  ProblemSpec big = dummy_spec(BoxConstraint::uniform(5, -1.0, 1.0),
                               GroupStructure::trivial(5), 1.0, 0.0);
  CHECK_THROWS_AS(prox_oracle(ProxRequest{Vec::Zero(5), 1.0, 1.0, &big}),
                  std::invalid_argument);
}

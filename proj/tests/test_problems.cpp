#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dds/problems.hpp"
#include "dds/rng.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <set>

using namespace dds;

TEST_CASE("eval counters tally per agent and reset") {
  EvalCounters c(3);
  CHECK(c.total() == 0);
  c.add(0);
  c.add(2);
  c.add(2);
  CHECK(c.count(0) == 1);
  CHECK(c.count(1) == 0);
  CHECK(c.count(2) == 2);
  CHECK(c.total() == 3);
  CHECK(c.per_agent() == std::vector<std::int64_t>{1, 0, 2});

  EvalCounters snapshot(c);
  c.add(1);
  CHECK(snapshot.total() == 3);
  CHECK(c.total() == 4);

  c.reset();
  CHECK(c.total() == 0);
  CHECK(c.per_agent() == std::vector<std::int64_t>{0, 0, 0});
}

TEST_CASE("logistic saturates without overflow") {
  CHECK(logistic(0.0) == 0.5);
  CHECK(logistic(800.0) == doctest::Approx(1.0));
  CHECK(logistic(-800.0) == doctest::Approx(0.0));
  CHECK(std::isfinite(logistic(-1e6)));
  CHECK(logistic(2.0) == doctest::Approx(1.0 / (1.0 + std::exp(-2.0))));
  CHECK(logistic(1.5) > logistic(1.0));
}

TEST_CASE("toy terms match their closed forms at the origin") {
  const int n = 3;
  Vector zero = Vector::Zero(n);
  SUBCASE("pure logistic part") {
    DecentralizedProblem p =
        toy_problem(n, Vector::Ones(n), Vector::Zero(n));
    for (int i = 0; i < n; ++i) CHECK(p.eval_local(i, zero) == 0.5);
  }
  SUBCASE("pure log part vanishes at zero") {
    DecentralizedProblem p =
        toy_problem(n, Vector::Zero(n), Vector::Ones(n));
    for (int i = 0; i < n; ++i) CHECK(p.eval_local(i, zero) == 0.0);
  }
  SUBCASE("gradient at zero") {
    // d/dt logistic(t) at 0 is 1/4; the log term has zero slope there.
    DecentralizedProblem p = toy_problem(n, Vector::Ones(n), Vector::Ones(n));
    Vector g = p.grad_local(1, zero);
    CHECK(g(0) == 0.0);
    CHECK(g(1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(g(2) == 0.0);
  }
}

TEST_CASE("toy terms are separable and start at the all-ones point") {
  DecentralizedProblem p = toy_problem(4, 7);
  CHECK(p.dim() == 4);
  CHECK(p.agents() == 4);
  CHECK((p.x0().array() == 1.0).all());

  Vector x = p.x0();
  const double before = p.eval_local(2, x);
  x(0) = -5.0;
  x(3) = 9.0;
  CHECK(p.eval_local(2, x) == before);
  x(2) = 0.5;
  CHECK(p.eval_local(2, x) != before);
}

TEST_CASE("seeded toy coefficients are reproducible") {
  DecentralizedProblem a = toy_problem(5, 42);
  DecentralizedProblem b = toy_problem(5, 42);
  DecentralizedProblem c = toy_problem(5, 43);
  Rng rng(substream(9, stream_tag("toy-points")));
  bool seed_matters = false;
  for (int rep = 0; rep < 10; ++rep) {
    Vector x(5);
    for (int l = 0; l < 5; ++l) x(l) = rng.gaussian();
    for (int i = 0; i < 5; ++i) {
      CHECK(a.eval_local(i, x) == b.eval_local(i, x));
      if (a.eval_local(i, x) != c.eval_local(i, x)) seed_matters = true;
    }
  }
  CHECK(seed_matters);
}

TEST_CASE("toy gradients agree with finite differences") {
  DecentralizedProblem p = toy_problem(6, 11);
  Rng rng(substream(12, stream_tag("toy-grad")));
  for (int rep = 0; rep < 10; ++rep) {
    Vector x(6);
    for (int l = 0; l < 6; ++l) x(l) = 2.0 * rng.gaussian();
    for (int i = 0; i < 6; ++i) {
      Vector want = oracle::fd_gradient(
          [&](const Vector& y) { return p.eval_local(i, y); }, x);
      CHECK(oracle::rel_err(p.grad_local(i, x), want) < 1e-5);
    }
  }
}

TEST_CASE("evaluation charges exactly one slot on the chosen channel") {
  DecentralizedProblem p = toy_problem(3, 1);
  p.reset_counters();
  Vector x = p.x0();
  p.eval_local(0, x);
  p.eval_local(0, x);
  p.eval_local(2, x, EvalChannel::Monitor);
  p.grad_local(1, x);
  CHECK(p.counters(EvalChannel::Solver).per_agent() ==
        std::vector<std::int64_t>{2, 0, 0});
  CHECK(p.counters(EvalChannel::Monitor).per_agent() ==
        std::vector<std::int64_t>{0, 0, 1});
  p.reset_counters();
  CHECK(p.counters(EvalChannel::Solver).total() == 0);
  CHECK(p.counters(EvalChannel::Monitor).total() == 0);
}

TEST_CASE("non-finite input is rejected before any charge") {
  DecentralizedProblem p = toy_problem(2, 1);
  p.reset_counters();
  Vector x(2);
  x << 1.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(p.eval_local(1, x), std::invalid_argument);
  x(1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(p.eval_local(1, x), std::invalid_argument);
  CHECK(p.counters(EvalChannel::Solver).count(1) == 0);
}

TEST_CASE("non-finite value surfaces as a tagged evaluation failure") {
  DecentralizedProblem p(
      "blowup", 1, 2,
      [](int i, const Vector& x) {
        return i == 0 ? x(0) : std::exp(x(0) * 1000.0);
      },
      nullptr, Vector::Zero(1));
  Vector x(1);
  x << 710.0;  // exp overflows to inf
  CHECK(p.eval_local(0, x) == 710.0);
  try {
    p.eval_local(1, x);
    FAIL("expected an evaluation failure");
  } catch (const EvalFailure& e) {
    CHECK(e.agent == 1);
  }
  CHECK(p.counters(EvalChannel::Solver).count(1) == 1);
}

TEST_CASE("agent index bounds are enforced") {
  DecentralizedProblem p = toy_problem(2, 1);
  CHECK_THROWS_AS(p.eval_local(-1, p.x0()), std::invalid_argument);
  CHECK_THROWS_AS(p.eval_local(2, p.x0()), std::invalid_argument);
  CHECK_THROWS_AS(p.eval_local(0, Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("residual registry respects the size bounds and has unique names") {
  const auto& suite = residual_suite();
  CHECK(suite.size() == 23);
  std::set<std::string> names;
  for (const auto& q : suite) {
    CAPTURE(q.name);
    CHECK(q.n >= 2);
    CHECK(q.n <= 30);
    CHECK(q.m >= 2);
    CHECK(q.m <= 65);
    CHECK(q.x0.size() == q.n);
    CHECK(names.insert(q.name).second);
  }
}

TEST_CASE("residual lookup finds every instance and only those") {
  for (const auto& q : residual_suite()) {
    const VectorResidualProblem* found = find_residual(q.name);
    REQUIRE(found != nullptr);
    CHECK(found->name == q.name);
  }
  CHECK(find_residual("no_such_function") == nullptr);
}

TEST_CASE("analytic jacobians agree with finite differences") {
  Rng rng(substream(3, stream_tag("jacobian-points")));
  for (const auto& q : residual_suite()) {
    CAPTURE(q.name);
    Matrix j0 = q.jacobian(q.x0);
    REQUIRE(j0.rows() == q.m);
    REQUIRE(j0.cols() == q.n);
    Matrix want = oracle::fd_jacobian(q.residual, q.x0, q.m);
    CHECK(oracle::rel_err_mat(j0, want) < 1e-5);

    Vector x = oracle::point_near(q.x0, rng);
    CHECK(oracle::rel_err_mat(q.jacobian(x),
                              oracle::fd_jacobian(q.residual, x, q.m)) < 1e-5);
  }
}

TEST_CASE("decentralized terms are the squared residual components") {
  Rng rng(substream(4, stream_tag("split-points")));
  for (const auto& q : residual_suite()) {
    CAPTURE(q.name);
    DecentralizedProblem p = q.decentralized();
    CHECK(p.name() == q.name);
    CHECK(p.dim() == q.n);
    CHECK(p.agents() == q.m);
    CHECK((p.x0() - q.x0).lpNorm<Eigen::Infinity>() == 0.0);

    Vector x = oracle::point_near(q.x0, rng);
    Vector r = q.residual(x);
    double sum = 0.0;
    for (int i = 0; i < q.m; ++i) {
      const double fi = p.eval_local(i, x);
      CHECK(fi >= 0.0);
      CHECK(fi == doctest::Approx(r(i) * r(i)).epsilon(1e-12));
      sum += fi;
    }
    CHECK(sum == doctest::Approx(r.squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("decentralized gradients agree with finite differences") {
  Rng rng(substream(5, stream_tag("grad-points")));
  for (const auto& q : residual_suite()) {
    CAPTURE(q.name);
    DecentralizedProblem p = q.decentralized();
    REQUIRE(p.has_gradient());
    for (int rep = 0; rep < 10; ++rep) {
      Vector x = oracle::point_near(q.x0, rng);
      const int i = static_cast<int>(rng.bits() % q.m);
      Vector want = oracle::fd_gradient(
          [&](const Vector& y) { return p.eval_local(i, y); }, x);
      CHECK(oracle::rel_err(p.grad_local(i, x), want) < 1e-5);
    }
  }
}

TEST_CASE("classic start values are reproduced") {
  // rosenbrock at (-1.2, 1): residuals (-4.4, 2.2), sum of squares 24.2.
  const VectorResidualProblem* rb = find_residual("rosenbrock");
  REQUIRE(rb != nullptr);
  DecentralizedProblem p = rb->decentralized();
  double total = 0.0;
  for (int i = 0; i < p.agents(); ++i) total += p.eval_local(i, rb->x0);
  CHECK(total == doctest::Approx(24.2).epsilon(1e-12));

  // Five uncoupled copies of the same pair start: 5 * 24.2.
  const VectorResidualProblem* ext = find_residual("ext_rosenbrock_10");
  REQUIRE(ext != nullptr);
  DecentralizedProblem pe = ext->decentralized();
  total = 0.0;
  for (int i = 0; i < pe.agents(); ++i) total += pe.eval_local(i, ext->x0);
  CHECK(total == doctest::Approx(121.0).epsilon(1e-12));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dds/bench.hpp"
#include "dds/network.hpp"
#include "dds/rng.hpp"
#include "oracles.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dds;

namespace {

// A trace whose chosen metric walks through `values` with the given
// cumulative evaluation counts.
RunTrace synthetic_trace(Metric m, const std::vector<double>& values,
                         const std::vector<std::int64_t>& evals) {
  RunTrace t;
  t.solver_id = "synthetic";
  for (std::size_t j = 0; j < values.size(); ++j) {
    TraceRow row;
    row.k = static_cast<std::int64_t>(j);
    row.cum_evals = evals[j];
    switch (m) {
      case Metric::FIterates: row.f_iterates = values[j]; break;
      case Metric::FMean: row.f_mean = values[j]; break;
      case Metric::Consensus: row.consensus = values[j]; break;
    }
    t.rows.push_back(row);
  }
  return t;
}

ProfileEntry cell(const std::string& problem, const std::string& solver,
                  int dim, std::optional<std::int64_t> t) {
  ProfileEntry e;
  e.problem = problem;
  e.solver = solver;
  e.dim = dim;
  e.t = t;
  return e;
}

const ProfileCurve& curve_of(const std::vector<ProfileCurve>& curves,
                             const std::string& solver) {
  for (const auto& c : curves)
    if (c.solver == solver) return c;
  REQUIRE(false);
  return curves.front();
}

double value_at(const ProfileCurve& c, double x) {
  // Step-function reading: last grid point <= x.
  double y = 0.0;
  for (std::size_t j = 0; j < c.x.size(); ++j)
    if (c.x[j] <= x + 1e-12) y = c.y[j];
  return y;
}

void check_profile_shape(const std::vector<ProfileCurve>& curves) {
  for (const auto& c : curves) {
    REQUIRE(c.x.size() == c.y.size());
    for (std::size_t j = 0; j < c.x.size(); ++j) {
      CHECK(c.y[j] >= 0.0);
      CHECK(c.y[j] <= 1.0);
      if (j > 0) {
        CHECK(c.x[j] > c.x[j - 1]);
        CHECK(c.y[j] >= c.y[j - 1]);
      }
    }
  }
}

}  // namespace

TEST_CASE("metric triple matches hand computation") {
  // Separable pair: f_i(v) = logistic(v_i).
  DecentralizedProblem p =
      toy_problem(2, Vector::Ones(2), Vector::Zero(2));
  Matrix x(2, 2);
  x << 0, 0, 0, 2;
  p.reset_counters();
  MetricTriple t = compute_metrics(p, x);

  auto sigma = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  CHECK(t.f_iterates == doctest::Approx(sigma(0) + sigma(2)).epsilon(1e-15));
  CHECK(t.f_mean == doctest::Approx(sigma(0) + sigma(1)).epsilon(1e-15));
  CHECK(t.consensus == doctest::Approx(2.0).epsilon(1e-15));

  CHECK(p.counters(EvalChannel::Monitor).total() == 4);
  CHECK(p.counters(EvalChannel::Solver).total() == 0);
}

TEST_CASE("metrics collapse at consensus") {
  DecentralizedProblem p = toy_problem(3, 6);
  Matrix x = Vector::Ones(3) * Vector::LinSpaced(3, -0.5, 0.5).transpose();
  MetricTriple t = compute_metrics(p, x);
  CHECK(t.consensus == 0.0);
  CHECK(t.f_iterates == doctest::Approx(t.f_mean).epsilon(1e-15));
}

TEST_CASE("metric names and row accessors line up") {
  CHECK(std::string(metric_name(Metric::FIterates)) == "f_iterates");
  CHECK(std::string(metric_name(Metric::FMean)) == "f_mean");
  CHECK(std::string(metric_name(Metric::Consensus)) == "consensus");
  TraceRow row;
  row.f_iterates = 1.5;
  row.f_mean = 2.5;
  row.consensus = 3.5;
  CHECK(metric_value(row, Metric::FIterates) == 1.5);
  CHECK(metric_value(row, Metric::FMean) == 2.5);
  CHECK(metric_value(row, Metric::Consensus) == 3.5);
}

TEST_CASE("convergence index walks the threshold") {
  RunTrace t = synthetic_trace(Metric::FIterates, {10, 5, 2, 1}, {0, 4, 9, 15});
  ConvergenceAnchors a{10.0, 1.0};

  SUBCASE("interior tolerance") {
    // threshold 1 + 0.1 * 9 = 1.9: first row at or below is the last.
    auto idx = convergence_index(t, Metric::FIterates, 0.1, a);
    REQUIRE(idx.has_value());
    CHECK(*idx == 15);
  }
  SUBCASE("halfway") {
    auto idx = convergence_index(t, Metric::FIterates, 0.5, a);
    REQUIRE(idx.has_value());
    CHECK(*idx == 4);
  }
  SUBCASE("boundary tolerance one is satisfied immediately") {
    auto idx = convergence_index(t, Metric::FIterates, 1.0, a);
    REQUIRE(idx.has_value());
    CHECK(*idx == 0);
  }
  SUBCASE("unreachable threshold") {
    ConvergenceAnchors far{10.0, -100.0};
    CHECK_FALSE(
        convergence_index(t, Metric::FIterates, 1e-3, far).has_value());
  }
  SUBCASE("tolerance outside (0, 1] is rejected") {
    CHECK_THROWS_AS(convergence_index(t, Metric::FIterates, 0.0, a),
                    std::invalid_argument);
    CHECK_THROWS_AS(convergence_index(t, Metric::FIterates, 1.1, a),
                    std::invalid_argument);
    CHECK_THROWS_AS(convergence_index(t, Metric::FIterates, -0.5, a),
                    std::invalid_argument);
  }
  SUBCASE("inverted anchors are rejected") {
    ConvergenceAnchors bad{1.0, 10.0};
    CHECK_THROWS_AS(convergence_index(t, Metric::FIterates, 0.5, bad),
                    std::invalid_argument);
  }
  SUBCASE("tightening the tolerance never lowers the index") {
    std::optional<std::int64_t> prev;
    for (double tol : {1.0, 0.5, 0.2, 0.1, 0.05}) {
      auto idx = convergence_index(t, Metric::FIterates, tol, a);
      REQUIRE(idx.has_value());
      if (prev) CHECK(*idx >= *prev);
      prev = idx;
    }
  }
  SUBCASE("flat anchors accept at the start") {
    ConvergenceAnchors flat{5.0, 5.0};
    RunTrace ft = synthetic_trace(Metric::FMean, {5, 5}, {0, 3});
    auto idx = convergence_index(ft, Metric::FMean, 0.5, flat);
    REQUIRE(idx.has_value());
    CHECK(*idx == 0);
  }
}

TEST_CASE("performance profile on a worked two-solver example") {
  std::vector<ProfileEntry> entries{
      cell("p1", "s1", 2, 10), cell("p1", "s2", 2, 20),
      cell("p2", "s1", 2, 40), cell("p2", "s2", 2, 20),
  };
  auto curves = performance_profile(entries);
  REQUIRE(curves.size() == 2);
  CHECK(curves[0].solver == "s1");  // first-appearance order
  CHECK(curves[1].solver == "s2");
  check_profile_shape(curves);

  const auto& s1 = curve_of(curves, "s1");
  const auto& s2 = curve_of(curves, "s2");
  CHECK(value_at(s1, 1.0) == 0.5);
  CHECK(value_at(s2, 1.0) == 0.5);
  CHECK(value_at(s1, 2.0) == 1.0);
  CHECK(value_at(s2, 2.0) == 1.0);
  CHECK(value_at(s1, 1.0) + value_at(s2, 1.0) >= 1.0);
}

TEST_CASE("performance profile handles unsolved and degenerate cells") {
  SUBCASE("unsolved cells stay in the denominator") {
    std::vector<ProfileEntry> entries{
        cell("p1", "s1", 2, 10), cell("p1", "s2", 2, 20),
        cell("p2", "s1", 2, 40), cell("p2", "s2", 2, std::nullopt),
        cell("p3", "s1", 2, std::nullopt), cell("p3", "s2", 2, std::nullopt),
    };
    auto curves = performance_profile(entries);
    check_profile_shape(curves);
    const auto& s1 = curve_of(curves, "s1");
    const auto& s2 = curve_of(curves, "s2");
    CHECK(value_at(s1, 1e9) == doctest::Approx(2.0 / 3));
    CHECK(value_at(s2, 1e9) == doctest::Approx(1.0 / 3));
  }
  SUBCASE("zero-cost winner saturates the ratio convention") {
    // t = 0 against t = 5: the winner scores ratio 1, the loser infinity.
    std::vector<ProfileEntry> entries{
        cell("p1", "s1", 2, 0), cell("p1", "s2", 2, 5)};
    auto curves = performance_profile(entries);
    const auto& s1 = curve_of(curves, "s1");
    const auto& s2 = curve_of(curves, "s2");
    CHECK(value_at(s1, 1.0) == 1.0);
    CHECK(value_at(s2, 1e15) == 0.0);
  }
  SUBCASE("single solver") {
    std::vector<ProfileEntry> entries{cell("p1", "s1", 2, 7),
                                      cell("p2", "s1", 3, 9)};
    auto curves = performance_profile(entries);
    REQUIRE(curves.size() == 1);
    CHECK(curves[0].x.front() == 1.0);
    CHECK(curves[0].y.front() == 1.0);
  }
  SUBCASE("duplicate cells are rejected") {
    std::vector<ProfileEntry> entries{cell("p1", "s1", 2, 7),
                                      cell("p1", "s1", 2, 9)};
    CHECK_THROWS_AS(performance_profile(entries), std::invalid_argument);
  }
  SUBCASE("an empty problem set is rejected") {
    CHECK_THROWS_AS(performance_profile({}), std::invalid_argument);
    CHECK_THROWS_AS(data_profile({}), std::invalid_argument);
  }
}

TEST_CASE("data profile groups by dimension-normalized budgets") {
  // n = 5: one group is six evaluations.
  std::vector<ProfileEntry> entries{
      cell("p1", "s1", 5, 30),            // kappa = 5
      cell("p1", "s2", 5, 18),            // kappa = 3, boundary exact
      cell("p2", "s1", 2, std::nullopt),  // unsolved
      cell("p2", "s2", 2, 0),             // kappa = 0
  };
  auto curves = data_profile(entries);
  check_profile_shape(curves);
  const auto& s1 = curve_of(curves, "s1");
  const auto& s2 = curve_of(curves, "s2");

  CHECK(value_at(s1, 0.0) == 0.0);
  CHECK(value_at(s1, 4.99) == 0.0);
  CHECK(value_at(s1, 5.0) == 0.5);
  CHECK(value_at(s1, 100.0) == 0.5);  // p2 never solved by s1

  CHECK(value_at(s2, 0.0) == 0.5);  // solved at zero cost
  CHECK(value_at(s2, 2.99) == 0.5);
  CHECK(value_at(s2, 3.0) == 1.0);

  // The grid starts at kappa = 0 for every curve.
  CHECK(s1.x.front() == 0.0);
  CHECK(s2.x.front() == 0.0);
}

TEST_CASE("profile csv is wide, shared-grid, and deterministic") {
  std::vector<ProfileEntry> entries{
      cell("p1", "s1", 2, 10), cell("p1", "s2", 2, 20),
      cell("p2", "s1", 2, 40), cell("p2", "s2", 2, 20),
  };
  auto curves = performance_profile(entries);
  std::ostringstream a, b;
  write_profile_csv(a, "gamma", curves);
  write_profile_csv(b, "gamma", curves);
  CHECK(a.str() == b.str());

  std::istringstream in(a.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "gamma,s1,s2");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == static_cast<int>(curves[0].x.size()));

  SUBCASE("empty curve list writes just the axis header") {
    std::ostringstream empty;
    write_profile_csv(empty, "kappa", {});
    CHECK(empty.str() == "kappa\n");
  }
  SUBCASE("mismatched grids are rejected") {
    auto broken = curves;
    broken[1].x.push_back(99.0);
    broken[1].y.push_back(1.0);
    std::ostringstream out;
    CHECK_THROWS_AS(write_profile_csv(out, "gamma", broken),
                    std::invalid_argument);
  }
}

TEST_CASE("anchors start consensus traces at their visited maximum") {
  RunTrace rising =
      synthetic_trace(Metric::Consensus, {0, 4, 7, 2}, {0, 10, 20, 30});
  RunTrace other =
      synthetic_trace(Metric::Consensus, {0, 3, 1}, {0, 10, 20});
  std::vector<BenchCell> cells{{"p", "a", 3, &rising}, {"p", "b", 3, &other}};

  ConvergenceAnchors ca = profile_anchors(cells, Metric::Consensus, rising);
  CHECK(ca.opt_start == 7.0);
  CHECK(ca.opt_low == 0.0);

  // Objective metrics anchor at the first row instead.
  RunTrace f1 = synthetic_trace(Metric::FIterates, {9, 3, 5}, {0, 10, 20});
  RunTrace f2 = synthetic_trace(Metric::FIterates, {9, 1, 2}, {0, 10, 20});
  std::vector<BenchCell> fcells{{"p", "a", 3, &f1}, {"p", "b", 3, &f2}};
  ConvergenceAnchors fa = profile_anchors(fcells, Metric::FIterates, f1);
  CHECK(fa.opt_start == 9.0);
  CHECK(fa.opt_low == 1.0);  // best value found by the other solver
}

TEST_CASE("tolerance labels use two-digit exponents") {
  CHECK(format_tol(1e-1) == "1e-01");
  CHECK(format_tol(1e-3) == "1e-03");
  CHECK(format_tol(1e-6) == "1e-06");
}

TEST_CASE("profile emission writes the full file set reproducibly") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path("bench_test_out");
  fs::remove_all(dir);
  fs::create_directories(dir);

  // Two tiny real runs per problem so every metric is meaningful.
  DecentralizedProblem p2 = toy_problem(2, 1);
  DecentralizedProblem p3 = toy_problem(3, 2);
  MixingMatrix w2 = build_mixing_matrix(generate_graph(2, 1.0, 1));
  MixingMatrix w3 = build_mixing_matrix(generate_graph(3, 0.8, 2));

  auto run = [&](const DecentralizedProblem& p, const MixingMatrix& w,
                 Algorithm a) {
    SolverConfig c;
    c.algorithm = a;
    c.max_iterations = 30;
    if (a == Algorithm::ZoDgdFd) c.alpha0 = 0.05;
    return run_solver(p, w, c);
  };
  RunTrace t2a = run(p2, w2, Algorithm::DdsObjective);
  RunTrace t2b = run(p2, w2, Algorithm::ZoDgdFd);
  RunTrace t3a = run(p3, w3, Algorithm::DdsObjective);
  RunTrace t3b = run(p3, w3, Algorithm::ZoDgdFd);
  t3b.completed = false;  // unsolved cell path

  std::vector<BenchCell> cells{
      {"toy2", "dds-objective", 2, &t2a},
      {"toy2", "zo-dgd-fd", 2, &t2b},
      {"toy3", "dds-objective", 3, &t3a},
      {"toy3", "zo-dgd-fd", 3, &t3b},
  };
  const std::vector<double> tols{1e-1, 1e-3};
  auto files = emit_profiles(cells, tols, dir.string());

  // 2 kinds x 3 metrics x 2 tols + the long format.
  CHECK(files.size() == 13);
  CHECK(files.back() == "profiles_long.csv");
  for (const auto& name : files) {
    CAPTURE(name);
    CHECK(fs::exists(dir / name));
  }
  CHECK(std::count_if(files.begin(), files.end(), [](const std::string& f) {
          return f.rfind("perf_", 0) == 0;
        }) == 6);
  CHECK(std::count_if(files.begin(), files.end(), [](const std::string& f) {
          return f.rfind("data_", 0) == 0;
        }) == 6);

  // Every wide file parses as a shared-grid step function in [0, 1].
  for (const auto& name : files) {
    if (name == "profiles_long.csv") continue;
    std::ifstream in(dir / name);
    std::string header;
    REQUIRE(std::getline(in, header));
    const bool perf = name.rfind("perf_", 0) == 0;
    CHECK(header.rfind(perf ? "gamma," : "kappa,", 0) == 0);
    std::string line;
    std::vector<double> prev;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      std::string fieldtext;
      std::vector<double> fields;
      while (std::getline(ls, fieldtext, ','))
        fields.push_back(std::stod(fieldtext));
      REQUIRE(fields.size() == 3);  // axis + two solvers
      for (std::size_t c = 1; c < fields.size(); ++c) {
        CHECK(fields[c] >= 0.0);
        CHECK(fields[c] <= 1.0);
        if (!prev.empty()) CHECK(fields[c] >= prev[c]);
      }
      prev = fields;
    }
  }

  // Byte-stable on re-emission.
  auto slurp = [&](const std::string& name) {
    std::ifstream in(dir / name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::vector<std::string> before;
  for (const auto& name : files) before.push_back(slurp(name));
  auto files2 = emit_profiles(cells, tols, dir.string());
  REQUIRE(files2 == files);
  for (std::size_t j = 0; j < files.size(); ++j)
    CHECK(slurp(files[j]) == before[j]);

  fs::remove_all(dir);
}

#include "wqed/entanglement.hpp"
#include "wqed/sweep.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace wqed;

namespace {

ChainSpec one_pair(double eta2) {
  ChainSpec spec;
  spec.set_eta2(eta2);
  spec.set_omega(1.0);
  return spec;
}

}  // namespace

TEST_CASE("parameters round trip through names") {
  ChainSpec spec;
  spec.n = 3;
  spec.hopping = {1.0, 1.0};
  apply_parameter(spec, "omega", 0.7);
  CHECK(spec.omega_a == 0.7);
  CHECK(spec.omega_b == 0.7);
  apply_parameter(spec, "eta2", 0.81);
  CHECK(spec.eta == doctest::Approx(0.9));
  apply_parameter(spec, "j23", 0.3);
  CHECK(spec.hopping[1] == 0.3);
  apply_parameter(spec, "j12_ratio", 2.0);
  CHECK(read_parameter(spec, "j12") == doctest::Approx(1.4));
  CHECK(read_parameter(spec, "j12_ratio") == doctest::Approx(2.0));
  CHECK_THROWS_AS(apply_parameter(spec, "j34", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(apply_parameter(spec, "j13", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(apply_parameter(spec, "bogus", 1.0), std::invalid_argument);
  CHECK_FALSE(is_parameter("bogus"));
  CHECK(is_parameter("j45"));
}

TEST_CASE("metric names round trip") {
  for (Metric m : {Metric::Concurrence, Metric::OuterPairConcurrence, Metric::Purity, Metric::Gap, Metric::Fidelity}) {
    CHECK(parse_metric(metric_name(m)) == m);
  }
  CHECK_THROWS_AS(parse_metric("entropy"), std::invalid_argument);
}

TEST_CASE("log axis hits its endpoints exactly") {
  const auto axis = SweepAxis::log("omega", 0.01, 100.0, 41);
  CHECK(axis.values.size() == 41);
  CHECK(axis.values.front() == 0.01);
  CHECK(axis.values.back() == 100.0);
  CHECK(axis.values[20] == doctest::Approx(1.0));
  CHECK_THROWS_AS(SweepAxis::log("omega", 0.0, 1.0, 3), std::invalid_argument);
}

TEST_CASE("single-point sweep equals the direct steady state") {
  SweepSpec s;
  s.base = one_pair(0.9);
  s.axes = {SweepAxis{"omega", {1.1648}}};
  s.metrics = {Metric::Concurrence, Metric::Purity};
  const auto table = sweep(s);
  ChainSpec point = s.base;
  point.set_omega(1.1648);
  const auto rho = steady_state(build_model(point)).rho;
  CHECK(table.at(0, "concurrence") == doctest::Approx(pair_concurrence(rho, 1)).epsilon(1e-12));
  CHECK(table.at(0, "purity") == doctest::Approx(purity(rho)).epsilon(1e-12));
  CHECK(table.metadata()["kind"] == "sweep");
}

TEST_CASE("sweeps are deterministic across thread counts") {
  SweepSpec s;
  s.base = one_pair(0.8);
  s.axes = {SweepAxis::log("omega", 0.1, 10.0, 7), SweepAxis::linear("delta", -0.5, 0.5, 3)};
  s.metrics = {Metric::Concurrence, Metric::Gap};
  s.threads = 1;
  const auto serial = sweep(s);
  s.threads = 4;
  const auto threaded = sweep(s);
  CHECK(serial.same_data(threaded));
  CHECK(serial.rows() == 21);
  // first axis varies slowest
  CHECK(serial.at(0, "omega") == serial.at(2, "omega"));
  CHECK(serial.at(1, "delta") == 0.0);
}

TEST_CASE("concurrence is invariant under common rescaling of rates") {
  SweepSpec s;
  s.base = one_pair(0.9);
  s.axes = {SweepAxis::log("omega", 0.1, 10.0, 5)};
  const auto unit = sweep(s);
  for (double k : {0.01, 37.0}) {
    SweepSpec scaled = s;
    scaled.base.gamma = k;
    scaled.axes = {SweepAxis::log("omega", 0.1 * k, 10.0 * k, 5)};
    const auto t = sweep(scaled);
    for (std::size_t r = 0; r < t.rows(); ++r) {
      CHECK(t.at(r, "concurrence") == doctest::Approx(unit.at(r, "concurrence")).epsilon(1e-9));
    }
  }
}

TEST_CASE("failed grid points are tagged, not fatal") {
  SweepSpec s;
  s.base = one_pair(1.0);
  // zero drive with eta = 1 has a degenerate steady manifold
  s.axes = {SweepAxis{"omega", {0.0, 1.0}}};
  s.solver.uniqueness = UniquenessCheck::SingularValues;
  s.base.delta = 0.0;
  const auto t = sweep(s);
  CHECK(t.rows() == 2);
  CHECK(std::isfinite(t.at(1, "concurrence")));
  if (!t.error(0).empty()) {
    CHECK(std::isnan(t.at(0, "concurrence")));
    CHECK(t.error(0).rfind("grid point (omega=0)", 0) == 0);
  }

  SweepSpec bad = s;
  bad.axes = {SweepAxis{"eta2", {0.5, 1.5}}};
  const auto u = sweep(bad);
  CHECK(u.error(0).empty());
  CHECK(u.error(1).rfind("grid point (eta2=1.5): ", 0) == 0);
  CHECK(std::isnan(u.at(1, "concurrence")));
  CHECK(u.at(1, "eta2") == 1.5);
}

TEST_CASE("sweep validation") {
  SweepSpec s;
  s.base = one_pair(0.9);
  CHECK_THROWS_AS(sweep(s), std::invalid_argument);
  s.axes = {SweepAxis{"omega", {1.0, 0.5, 2.0}}};
  CHECK_THROWS_AS(sweep(s), std::invalid_argument);
  s.axes = {SweepAxis::log("omega", 0.1, 1.0, 100), SweepAxis::log("gamma", 0.1, 1.0, 100)};
  s.budget = 5000;
  CHECK_THROWS_WITH_AS(sweep(s), "sweep grid has 10000 points, budget is 5000", std::invalid_argument);
  s.axes = {SweepAxis{"nope", {1.0}}};
  CHECK_THROWS_AS(sweep(s), std::invalid_argument);
}

TEST_CASE("parallel_for rethrows worker exceptions") {
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
}

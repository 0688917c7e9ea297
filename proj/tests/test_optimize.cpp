#include "wqed/optimize.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace wqed;

namespace {

OptimizeSpec symmetric_one_pair(double eta2) {
  OptimizeSpec s;
  s.base.set_eta2(eta2);
  s.free = {{"omega", 1e-2, 1e2}};
  s.objective = Objective::PairConcurrence;
  return s;
}

}  // namespace

TEST_CASE("1+1 symmetric optimum") {
  const auto r = optimize(symmetric_one_pair(0.9));
  CHECK(r.best_value == doctest::Approx(0.5650).epsilon(2e-4));
  CHECK(r.best_parameters[0] == doctest::Approx(1.1648).epsilon(1e-2));
  CHECK(r.best_value >= r.seed_value);
  CHECK_FALSE(r.budget_exhausted);
  CHECK(r.evaluations == r.iterates.rows());
}

TEST_CASE("optimum is reproducible") {
  const auto a = optimize(symmetric_one_pair(0.8));
  const auto b = optimize(symmetric_one_pair(0.8));
  CHECK(std::abs(a.best_value - b.best_value) < 1e-6);
  CHECK(a.iterates.same_data(b.iterates));
}

TEST_CASE("perfect transmission approaches a pure singlet") {
  auto s = symmetric_one_pair(1.0);
  s.free = {{"omega", 1e-4, 10.0}};
  CHECK(optimize(s).best_value > 0.99);
}

TEST_CASE("exhausted budget returns the best point so far") {
  auto s = symmetric_one_pair(0.9);
  s.max_evaluations = 12;
  const auto r = optimize(s);
  CHECK(r.budget_exhausted);
  CHECK(r.evaluations == 12);
  CHECK(r.best_value >= r.seed_value);
  CHECK(r.iterates.metadata()["budget_exhausted"] == true);
}

TEST_CASE("asymmetric drive on 2+2 beats the seed") {
  OptimizeSpec s;
  s.base.n = 2;
  s.base.hopping = {1.0};
  s.base.set_eta2(0.9);
  s.free = {{"omega_a", 1e-2, 10.0}, {"omega_b", 1e-2, 10.0}, {"j12", 1e-2, 10.0}};
  s.grid_points = 5;
  const auto r = optimize(s);
  CHECK(r.best_value >= r.seed_value);
  CHECK(r.best_value > 0.6);
  CHECK(r.best_spec.hopping[0] == r.best_parameters[2]);
}

TEST_CASE("optimizer validation") {
  auto s = symmetric_one_pair(0.9);
  s.free = {{"omega", 0.0, 1.0}};
  CHECK_THROWS_AS(optimize(s), std::invalid_argument);
  s.free = {{"omega", 2.0, 1.0}};
  CHECK_THROWS_AS(optimize(s), std::invalid_argument);
  s.free = {{"phase", 0.1, 1.0}};
  CHECK_THROWS_AS(optimize(s), std::invalid_argument);
  s.free = {{"omega", 0.1, 1.0}};
  s.objective = Objective::OuterPairConcurrence;
  CHECK_THROWS_AS(optimize(s), std::invalid_argument);
  s.objective = Objective::PairConcurrence;
  s.max_evaluations = 3;
  CHECK_THROWS_AS(optimize(s), std::invalid_argument);
}

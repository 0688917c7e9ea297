#include "support.hpp"

#include "wqed/analytic.hpp"
#include "wqed/entanglement.hpp"
#include "wqed/lindblad.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace wqed;
using wqed::testing::max_abs;
using wqed::testing::uniform;

namespace {

ChainSpec lossless_chain(double omega, std::vector<double> hopping, double gamma = 1.0) {
  ChainSpec spec;
  spec.n = static_cast<int>(hopping.size()) + 1;
  spec.gamma = gamma;
  spec.set_omega(omega);
  spec.hopping = std::move(hopping);
  return spec;
}

double fidelity(const PureState& psi, const PureState& target) {
  const double o = psi.overlap_modulus(target);
  return o * o;
}

PureState pair_product(std::initializer_list<PureState> pairs) {
  auto it = pairs.begin();
  PureState out = *it++;
  for (; it != pairs.end(); ++it) out = tensor(out, *it);
  return out;
}

PureState ket(int site, const char* which) {
  const std::string s = std::to_string(site);
  const SubsystemLayout l({"A" + s, "B" + s});
  if (std::string(which) == "S") return bell_state(Bell::Singlet, l);
  if (std::string(which) == "T") return bell_state(Bell::Triplet, l);
  return pair_vacuum(l);
}

double operator_distance(const LindbladModel& a, const LindbladModel& b) {
  double d = max_abs(a.H.matrix() - b.H.matrix());
  if (a.collapse_ops.size() != b.collapse_ops.size()) return 1e300;
  for (std::size_t k = 0; k < a.collapse_ops.size(); ++k) {
    d = std::max(d, max_abs(a.collapse_ops[k].matrix() - b.collapse_ops[k].matrix()));
  }
  return d;
}

}  // namespace

TEST_CASE("psi0 limits") {
  const PureState vac = psi0(0.0, 0.3, 1.0);
  CHECK(fidelity(vac, ket(1, "0")) == doctest::Approx(1.0));
  CHECK(fidelity(psi0(1e4, 0.0, 1.0), ket(1, "S")) > 1.0 - 1e-7);
  CHECK(concurrence(psi0(1.0, 0.0, 1.0).density()) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
  CHECK_THROWS_AS(psi0(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("psi0 concurrence closed form") {
  for (int trial = 0; trial < 20; ++trial) {
    const double omega = uniform(0.01, 5.0), delta = uniform(-2.0, 2.0), gamma = uniform(0.2, 3.0);
    const double expected = 2 * omega * omega / (4 * delta * delta + gamma * gamma + 2 * omega * omega);
    CHECK(std::abs(concurrence(psi0(omega, delta, gamma).density()) - expected) < 1e-9);
  }
}

TEST_CASE("psi2 regimes") {
  CHECK(fidelity(psi2(30.0, 1.0, 1.0), pair_product({ket(1, "S"), ket(2, "T")})) > 0.99);
  // needs j12 << omega as well as omega^2 << gamma j12
  CHECK(fidelity(psi2(0.01, 1.0, 0.001), pair_product({ket(1, "0"), ket(2, "T")})) > 0.95);
  CHECK(fidelity(psi2(1e-9, 1.0, 1.0), pair_product({ket(1, "0"), ket(2, "0")})) > 1.0 - 1e-12);
  CHECK_THROWS_AS(psi2(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("psi3 regime and coefficient structure") {
  const PureState psi = psi3(0.1, 1.0, 0.1, 0.001);
  CHECK(bell_fidelity(pair_state(psi.density(), 3), Bell::Singlet) > 0.9);

  const PureState decoupled = psi3(0.5, 1.0, 0.4, 0.0);
  const Vector& a = decoupled.amplitudes();
  CHECK(std::abs(a.dot(pair_product({ket(1, "S"), ket(2, "0"), ket(3, "0")}).amplitudes())) < 1e-15);
  CHECK(std::abs(a.dot(pair_product({ket(1, "0"), ket(2, "0"), ket(3, "0")}).amplitudes())) < 1e-15);
}

TEST_CASE("exact states are dark states of their lossless models") {
  for (int trial = 0; trial < 20; ++trial) {
    const double gamma = uniform(0.5, 2.0), omega = uniform(0.1, 2.0);
    const double j12 = uniform(0.1, 2.0), j23 = uniform(0.1, 2.0), delta = uniform(-1.0, 1.0);

    ChainSpec one = lossless_chain(omega, {}, gamma);
    one.delta = delta;
    const DarkStateReport r0 = verify_dark_state(psi0(omega, delta, gamma), build_model(one));
    CHECK(r0.passed);
    CHECK(r0.liouvillian_residual < 1e-9);

    const ChainSpec two = lossless_chain(omega, {j12}, gamma);
    const DarkStateReport r2 = verify_dark_state(psi2(omega, gamma, j12), build_model(two));
    CHECK(r2.passed);
    CHECK(r2.liouvillian_residual < 1e-9);

    const ChainSpec three = lossless_chain(omega, {j12, j23}, gamma);
    const DarkStateReport r3 = verify_dark_state(psi3(omega, gamma, j12, j23), build_model(three));
    CHECK(r3.passed);
    CHECK(r3.liouvillian_residual < 1e-9);
    const DarkStateReport rn = verify_dark_state(psi_hole_pair(three), build_model(three));
    CHECK(rn.passed);
    CHECK(rn.liouvillian_residual < 1e-9);
  }
}

TEST_CASE("hole-pair state on four sites") {
  const ChainSpec four = lossless_chain(0.9, {0.5, 0.7, 0.3});
  const PureState psi = psi_hole_pair(four);
  const LindbladModel m = build_model(four);
  const DarkStateReport r = verify_dark_state(psi, m);
  CHECK(r.passed);
  for (double c : r.collapse_norms) CHECK(c < 1e-12);
  CHECK(r.energy_residual < 1e-12);
}

TEST_CASE("hole-pair family reduces to the explicit states") {
  for (int trial = 0; trial < 5; ++trial) {
    const double gamma = uniform(0.5, 2.0), omega = uniform(0.1, 2.0);
    const double j12 = uniform(0.1, 2.0), j23 = uniform(0.1, 2.0);
    CHECK(psi_hole_pair(lossless_chain(omega, {}, gamma)).overlap_modulus(psi0(omega, 0.0, gamma)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(psi_hole_pair(lossless_chain(omega, {j12}, gamma)).overlap_modulus(psi2(omega, gamma, j12)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(psi_hole_pair(lossless_chain(omega, {j12, j23}, gamma)).overlap_modulus(psi3(omega, gamma, j12, j23)) ==
          doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("hole-pair preconditions") {
  ChainSpec lossy = lossless_chain(1.0, {0.5});
  lossy.set_eta2(0.9);
  CHECK_THROWS_AS(psi_hole_pair(lossy), std::invalid_argument);
  ChainSpec detuned = lossless_chain(1.0, {0.5});
  detuned.delta = 0.1;
  CHECK_THROWS_AS(psi_hole_pair(detuned), std::invalid_argument);
  CHECK_THROWS_AS(psi_hole_pair(lossless_chain(1.0, {0.5, 0.5, 0.5, 0.5})), std::invalid_argument);
}

TEST_CASE("dark-state check detects broken conditions") {
  ChainSpec lossy = lossless_chain(1.0, {1.0});
  lossy.set_eta2(0.9);
  const DarkStateReport r = verify_dark_state(psi2(1.0, 1.0, 1.0), build_model(lossy));
  CHECK_FALSE(r.passed);
  CHECK(r.collapse_norms.at(0) > 1e-3);

  ChainSpec undriven = lossless_chain(0.0, {0.4});
  undriven.set_eta2(0.5);
  undriven.delta = 0.3;
  const LindbladModel m = build_model(undriven);
  CHECK(verify_dark_state(basis_state(m.layout, {0, 0, 0, 0}), m).passed);
  CHECK_THROWS_AS(verify_dark_state(psi0(1.0, 0.0, 1.0), m), std::invalid_argument);
}

TEST_CASE("effective model parameters") {
  for (int trial = 0; trial < 10; ++trial) {
    const double omega = uniform(0.01, 1.0), gamma = uniform(0.5, 2.0), j = uniform(0.01, 1.0);
    const EffectiveModel e = effective_model(omega, gamma, j, uniform(0.0, 1.0));
    CHECK(e.omega_eff / e.gamma_eff == doctest::Approx(omega / (2 * j)).epsilon(1e-13));
  }
  const EffectiveModel sym = effective_model(0.3, 1.0, 0.2, 1.0);
  ChainSpec pair;
  pair.gamma = sym.gamma_eff;
  pair.set_omega(sym.omega_eff);
  const LindbladModel direct = build_model(pair);
  CHECK(max_abs(sym.model.H.matrix() - direct.H.matrix()) < 1e-15);
  REQUIRE(sym.model.collapse_ops.size() == 1);
  CHECK(max_abs(sym.model.collapse_ops[0].matrix() - direct.collapse_ops[0].matrix()) < 1e-15);
}

TEST_CASE("projection elimination reproduces the closed-form effective model") {
  for (int trial = 0; trial < 20; ++trial) {
    ChainSpec spec;
    spec.n = 2;
    spec.gamma = uniform(0.5, 2.0);
    spec.eta = uniform(0.0, 1.0);
    spec.set_omega(uniform(0.01, 1.0));
    spec.hopping = {uniform(0.01, 1.0)};
    if (trial == 0) spec.eta = 1.0;
    const EliminationResult num = adiabatic_eliminate(build_model(spec), spec);
    const EffectiveModel closed = effective_model(spec.omega_a, spec.gamma, spec.hopping[0], spec.eta);
    CAPTURE(spec.eta);
    CHECK(operator_distance(num.model, closed.model) < 1e-10);

    Matrix expected = Matrix::Identity(2, 2);
    expected(0, 1) = -2.0 * spec.eta;
    expected *= cplx(0.0, 2.0 / spec.gamma);
    CHECK(max_abs(num.manifold_inverse - expected) < 1e-12);
  }
}

TEST_CASE("elimination with a decoupled storage pair") {
  ChainSpec spec;
  spec.n = 2;
  spec.set_omega(0.4);
  spec.hopping = {0.0};
  const EliminationResult r = adiabatic_eliminate(build_model(spec), spec);
  CHECK(r.model.collapse_ops.empty());
  CHECK(max_abs(r.model.H.matrix()) < 1e-15);
}

TEST_CASE("elimination errors") {
  ChainSpec spec;
  spec.n = 2;
  spec.set_omega(0.4);
  spec.hopping = {0.2};
  LindbladModel m = build_model(spec);

  // no waveguide: drop dissipation and the cascaded exchange, leaving the excited block empty
  ChainSpec closed = spec;
  closed.eta = 0.0;
  LindbladModel bare = build_model(closed);
  bare.collapse_ops.clear();
  CHECK_THROWS_AS(adiabatic_eliminate(bare, spec), SolverError);

  ChainSpec single;
  CHECK_THROWS_AS(adiabatic_eliminate(m, single), std::invalid_argument);
  ChainSpec noisy = spec;
  noisy.t1 = 10.0;
  CHECK_THROWS_AS(adiabatic_eliminate(build_model(noisy), noisy), std::invalid_argument);
}

TEST_CASE("effective and full outer-pair concurrence agree in the weak regime") {
  for (double ratio : {0.5, 1.0, 2.0}) {
    ChainSpec spec;
    spec.n = 2;
    spec.set_eta2(0.9);
    spec.set_omega(0.02);
    spec.hopping = {0.02 * ratio};
    const double full = outer_pair_concurrence(steady_state(build_model(spec)).rho, spec);
    const EffectiveModel e = effective_model(0.02, 1.0, 0.02 * ratio, spec.eta);
    const double eff = concurrence(steady_state(e.model).rho);
    CAPTURE(ratio);
    CHECK(std::abs(full - eff) < 0.01);
  }
}

TEST_CASE("singlet population closed form") {
  CHECK(singlet_population(0.1, 1.0, 0.1) == doctest::Approx(2e-4 / (2e-4 + 1e-2 + 2e-2)).epsilon(1e-12));
  CHECK(singlet_population(0.1, 1.0, 0.1) == doctest::Approx(6.62e-3).epsilon(1e-3));
}

TEST_CASE("singlet population against the lossless steady state") {
  for (double omega : {0.01, 0.03, 0.05}) {
    for (double ratio : {0.5, 1.0, 2.0}) {
      const ChainSpec spec = lossless_chain(omega, {omega * ratio});
      const DensityMatrix rho = steady_state(build_model(spec)).rho;
      const Vector s = ket(1, "S").amplitudes();
      const Operator proj = tensor(Operator(ket(1, "S").layout(), s * s.adjoint()),
                                   Operator::identity(ket(2, "0").layout()));
      const Operator n_a = pauli("A1", Pauli::Plus, rho.layout()) * pauli("A1", Pauli::Minus, rho.layout());
      const double formula = singlet_population(omega, 1.0, omega * ratio);
      CHECK(std::abs(expectation(proj, rho).real() / formula - 1.0) < 0.1);
      CHECK(std::abs(2.0 * expectation(n_a, rho).real() / formula - 1.0) < 0.1);
    }
  }
}

TEST_CASE("rate estimates") {
  const RateEstimates r = rate_estimates(0.1, 1.0, 0.1, std::sqrt(0.9));
  CHECK(r.gamma_loss == doctest::Approx(singlet_population(0.1, 1.0, 0.1) * 0.1));
  CHECK(r.gamma_rel == doctest::Approx(16 * std::pow(0.1, 4) / 0.01));

  // ratio approaches a constant as the drive vanishes at fixed omega / j12
  double last = 0.0;
  for (double omega : {1e-2, 1e-3, 1e-4, 1e-5}) {
    const RateEstimates e = rate_estimates(omega, 1.0, omega, std::sqrt(0.9));
    const double ratio = e.gamma_rel / e.gamma_loss;
    if (omega < 1e-3) CHECK(ratio == doctest::Approx(last).epsilon(1e-3));
    last = ratio;
  }
}

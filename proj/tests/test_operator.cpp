#include "support.hpp"

#include "wqed/operator.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace wqed;
using wqed::testing::max_abs;

namespace {

const SubsystemLayout kA({"A"});
const SubsystemLayout kAB({"A", "B"});

}  // namespace

TEST_CASE("pauli z is diag(1, -1) with ground first") {
  const Operator z = pauli("A", Pauli::Z, kA);
  CHECK(z.matrix()(0, 0) == cplx(1.0));
  CHECK(z.matrix()(1, 1) == cplx(-1.0));
  CHECK(max_abs(z.matrix() - z.matrix().diagonal().asDiagonal().toDenseMatrix()) == 0.0);
}

TEST_CASE("lowering on B maps |0 1> to |0 0>") {
  const PureState in = basis_state(kAB, {0, 1});
  const Vector out = pauli("B", Pauli::Minus, kAB).matrix() * in.amplitudes();
  CHECK(max_abs(out - basis_state(kAB, {0, 0}).amplitudes()) == 0.0);
}

TEST_CASE("pauli rejects unknown labels") {
  CHECK_THROWS_AS(pauli("C", Pauli::X, kAB), std::invalid_argument);
}

TEST_CASE("operators on distinct sites commute") {
  const SubsystemLayout l = SubsystemLayout::chain(2);
  const Pauli all[] = {Pauli::X, Pauli::Y, Pauli::Z, Pauli::Plus, Pauli::Minus};
  for (const auto& s : l.labels()) {
    for (const auto& t : l.labels()) {
      if (s == t) continue;
      for (Pauli p : all)
        for (Pauli q : all) CHECK(commutator(pauli(s, p, l), pauli(t, q, l)).norm() == 0.0);
    }
  }
}

TEST_CASE("tensor products") {
  const Operator i2 = Operator::identity(kA);
  const Operator i2b = Operator::identity(SubsystemLayout({"B"}));
  CHECK(max_abs(tensor(i2, i2b).matrix() - Matrix::Identity(4, 4)) == 0.0);

  const Operator x = pauli("A", Pauli::X, kA);
  const Operator xi = tensor(x, i2b);
  CHECK(xi.layout() == kAB);
  CHECK(max_abs(xi.matrix() - pauli("A", Pauli::X, kAB).matrix()) == 0.0);

  const Operator big = tensor(x, Operator::identity(SubsystemLayout({"B", "C"})));
  CHECK(big.dim() == 8);

  CHECK_THROWS_AS(tensor(x, x), std::invalid_argument);
}

TEST_CASE("tensor is associative") {
  const Operator a(SubsystemLayout({"a"}), testing::random_matrix(2, 2));
  const Operator b(SubsystemLayout({"b"}), testing::random_matrix(2, 2));
  const Operator c(SubsystemLayout({"c"}), testing::random_matrix(2, 2));
  const Operator left = tensor(tensor(a, b), c);
  const Operator right = tensor(a, tensor(b, c));
  CHECK(left.layout() == right.layout());
  CHECK(max_abs(left.matrix() - right.matrix()) < 1e-14);
}

TEST_CASE("partial trace of the singlet is maximally mixed") {
  const DensityMatrix s = bell_state(Bell::Singlet, kAB).density();
  const DensityMatrix r = partial_trace(s, {"A"});
  CHECK(max_abs(r.matrix() - 0.5 * Matrix::Identity(2, 2)) < 1e-15);
  CHECK_THROWS_AS(partial_trace(s, {}), std::invalid_argument);
}

TEST_CASE("partial trace of a product state recovers the factor") {
  const SubsystemLayout la({"A1", "B1"});
  const SubsystemLayout lb({"A2"});
  const DensityMatrix ra = testing::random_density(la);
  const DensityMatrix rb = testing::random_density(lb);
  const Operator prod = tensor(Operator(la, ra.matrix()), Operator(lb, rb.matrix()));
  const DensityMatrix joint(prod.layout(), prod.matrix());
  CHECK(max_abs(partial_trace(joint, {"A1", "B1"}).matrix() - ra.matrix()) < 1e-14);
  CHECK(max_abs(partial_trace(joint, {"A2"}).matrix() - rb.matrix()) < 1e-14);
}

TEST_CASE("partial trace keeps non-contiguous sites in layout order") {
  const SubsystemLayout l({"A", "B", "C"});
  const PureState psi = basis_state(l, {1, 0, 0});
  const DensityMatrix r = partial_trace(psi.density(), {"C", "A"});
  CHECK(r.layout() == SubsystemLayout({"A", "C"}));
  CHECK(std::abs(r.matrix()(2, 2) - cplx(1.0)) < 1e-15);
}

TEST_CASE("partial trace is linear and trace preserving") {
  const SubsystemLayout l = SubsystemLayout::chain(2);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix r1 = testing::random_density(l);
    const DensityMatrix r2 = testing::random_density(l);
    const double p = testing::uniform(0.0, 1.0);
    const DensityMatrix mix(l, p * r1.matrix() + (1.0 - p) * r2.matrix());
    const std::vector<std::string> keep = {"B1", "A2"};
    const Matrix lhs = partial_trace(mix, keep).matrix();
    const Matrix rhs = p * partial_trace(r1, keep).matrix() + (1.0 - p) * partial_trace(r2, keep).matrix();
    CHECK(max_abs(lhs - rhs) < 1e-13);
    CHECK(std::abs(partial_trace(r1, {"A1"}).trace() - r1.trace()) < 1e-13);
  }
}

TEST_CASE("expectation values") {
  CHECK(expectation(pauli("A", Pauli::Z, kA), basis_state(kA, {0})) == cplx(1.0));
  const DensityMatrix rho = testing::random_density(kAB);
  CHECK(std::abs(expectation(Operator::identity(kAB), rho) - cplx(1.0)) < 1e-14);
  CHECK_THROWS_AS(expectation(Operator::identity(kA), rho), std::invalid_argument);

  // unnormalized input is normalized internally
  const PureState psi(kA, Vector::Constant(2, cplx(3.0)));
  CHECK(std::abs(expectation(pauli("A", Pauli::X, kA), psi) - cplx(1.0)) < 1e-14);
}

TEST_CASE("singlet projector expectation on an explicit four-qubit state") {
  const SubsystemLayout l = SubsystemLayout::chain(2);
  const double omega = 1.0, gamma = 1.0, j12 = 1.0;
  const PureState s = bell_state(Bell::Singlet, SubsystemLayout({"A1", "B1"}));
  const PureState t = bell_state(Bell::Triplet, SubsystemLayout({"A2", "B2"}));
  const PureState v1 = pair_vacuum(SubsystemLayout({"A1", "B1"}));
  const PureState v2 = pair_vacuum(SubsystemLayout({"A2", "B2"}));
  const cplx a(0.0, omega * omega / (gamma * j12));
  const double b = omega / (std::sqrt(2.0) * j12);
  const Vector amp = a * tensor(s, t).amplitudes() + b * tensor(v1, t).amplitudes() - tensor(v1, v2).amplitudes();
  const PureState psi(l, amp);

  const Operator proj = tensor(Operator(s.layout(), s.amplitudes() * s.amplitudes().adjoint()),
                               Operator::identity(t.layout()));
  const double expected = std::norm(a) / (std::norm(a) + b * b + 1.0);
  CHECK(std::abs(expectation(proj, psi).real() - expected) < 1e-14);
  CHECK(std::abs(expectation(proj, psi.density()).real() - expected) < 1e-14);
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix(kA, Matrix::Identity(2, 2) / 2.0));
  CHECK_THROWS_AS(DensityMatrix(kA, Matrix::Identity(2, 2)), std::invalid_argument);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(kA, neg), std::invalid_argument);
  Matrix nonherm = Matrix::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix(kA, nonherm), std::invalid_argument);
}

TEST_CASE("layouts reject duplicate labels") {
  CHECK_THROWS_AS(SubsystemLayout({"A", "A"}), std::invalid_argument);
  CHECK(SubsystemLayout::chain(3).dim() == 64);
}

TEST_CASE("normalization") {
  const PureState psi(kA, Vector::Constant(2, cplx(0.0, 2.0)));
  CHECK(std::abs(psi.normalized().norm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(PureState(kA, Vector::Zero(2)).normalized(), std::invalid_argument);
}

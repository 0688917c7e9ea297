// operator.hpp: tensor-product operator algebra over chains of two-level systems

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace wqed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultTol = 1e-10;

/// Ordered list of labelled subsystems. The first label is the most
/// significant factor of the Kronecker product, so basis index bits read
/// left to right in label order.
class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  /// All subsystems two-dimensional.
  explicit SubsystemLayout(std::vector<std::string> labels);
  SubsystemLayout(std::vector<std::string> labels, std::vector<int> dims);

  /// Sites A1, B1, A2, B2, ..., A_N, B_N.
  static SubsystemLayout chain(int sites);

  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t size() const { return labels_.size(); }
  Index dim() const { return total_; }

  bool contains(const std::string& label) const;
  /// Throws std::invalid_argument for unknown labels.
  std::size_t index_of(const std::string& label) const;

  /// Concatenation; labels must be disjoint.
  SubsystemLayout concat(const SubsystemLayout& other) const;
  /// Sub-layout holding `keep`, in this layout's order.
  SubsystemLayout subset(const std::vector<std::string>& keep) const;

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<int> dims_;
  Index total_ = 1;
};

/// Dense operator on the Hilbert space of a layout. Hermiticity is not
/// required; collapse operators are generally non-Hermitian.
class Operator {
 public:
  Operator() = default;
  Operator(SubsystemLayout layout, Matrix matrix);

  static Operator identity(const SubsystemLayout& layout);
  static Operator zero(const SubsystemLayout& layout);

  const SubsystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }

  bool is_hermitian(double tol = kDefaultTol) const;
  bool is_zero(double tol = 0.0) const;
  Operator adjoint() const;
  double norm() const { return matrix_.norm(); }

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(cplx s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(Operator a, cplx s) { return a *= s; }
  friend Operator operator*(cplx s, Operator a) { return a *= s; }
  friend Operator operator*(const Operator& a, const Operator& b);

 private:
  SubsystemLayout layout_;
  Matrix matrix_;
};

Operator commutator(const Operator& a, const Operator& b);

class DensityMatrix;

/// State vector; unnormalized construction allowed.
class PureState {
 public:
  PureState() = default;
  PureState(SubsystemLayout layout, Vector amplitudes);

  const SubsystemLayout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

  PureState normalized() const;
  DensityMatrix density() const;
  /// |<this|other>| after normalizing both.
  double overlap_modulus(const PureState& other) const;

 private:
  SubsystemLayout layout_;
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix (all within `tol`).
class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(SubsystemLayout layout, Matrix matrix, double tol = kDefaultTol);

  const SubsystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  cplx trace() const { return matrix_.trace(); }

  /// Symmetrizes and renormalizes before validating.
  static DensityMatrix from_approximate(SubsystemLayout layout, Matrix matrix,
                                        double tol = kDefaultTol);
  static DensityMatrix maximally_mixed(const SubsystemLayout& layout);

 private:
  SubsystemLayout layout_;
  Matrix matrix_;
};

enum class Pauli { X, Y, Z, Plus, Minus };

/// Single-site matrices in the basis (|0> = ground, |1> = excited):
/// sigma_z = diag(1, -1), sigma_minus |1> = |0>.
Matrix pauli_matrix(Pauli which);

/// Identity everywhere except `which` at `site`.
Operator pauli(const std::string& site, Pauli which, const SubsystemLayout& layout);
/// Arbitrary single-site matrix embedded at `site`.
Operator embed(const std::string& site, const Matrix& local, const SubsystemLayout& layout);

/// Kronecker product; layouts must be disjoint.
Operator tensor(const Operator& a, const Operator& b);
PureState tensor(const PureState& a, const PureState& b);

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep);

cplx expectation(const Operator& op, const DensityMatrix& rho);
/// Normalizes the state internally.
cplx expectation(const Operator& op, const PureState& psi);

/// Computational basis state from per-site occupations (0 or 1).
PureState basis_state(const SubsystemLayout& layout, const std::vector<int>& occupations);

/// Two-qubit Bell-type states on a two-site layout.
enum class Bell { Singlet, Triplet };
PureState bell_state(Bell which, const SubsystemLayout& pair);
/// |00> on a two-site layout.
PureState pair_vacuum(const SubsystemLayout& pair);

}  // namespace wqed

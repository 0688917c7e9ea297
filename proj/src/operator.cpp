#include "wqed/operator.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wqed {

namespace {

void require_same_layout(const SubsystemLayout& a, const SubsystemLayout& b, const char* what) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(what) + ": layout mismatch");
  }
}

}  // namespace

// ----------------------------------------------------------------------------
// SubsystemLayout

SubsystemLayout::SubsystemLayout(std::vector<std::string> labels)
    : SubsystemLayout(labels, std::vector<int>(labels.size(), 2)) {}

SubsystemLayout::SubsystemLayout(std::vector<std::string> labels, std::vector<int> dims)
    : labels_(std::move(labels)), dims_(std::move(dims)) {
  if (labels_.empty()) throw std::invalid_argument("SubsystemLayout: no subsystems");
  if (labels_.size() != dims_.size()) {
    throw std::invalid_argument("SubsystemLayout: labels and dims differ in length");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw std::invalid_argument("SubsystemLayout: duplicate label " + l);
  }
  total_ = 1;
  for (int d : dims_) {
    if (d < 1) throw std::invalid_argument("SubsystemLayout: dimension must be positive");
    total_ *= d;
  }
}

SubsystemLayout SubsystemLayout::chain(int sites) {
  if (sites < 1) throw std::invalid_argument("SubsystemLayout::chain: need at least one site");
  std::vector<std::string> labels;
  for (int j = 1; j <= sites; ++j) {
    labels.push_back("A" + std::to_string(j));
    labels.push_back("B" + std::to_string(j));
  }
  return SubsystemLayout(std::move(labels));
}

bool SubsystemLayout::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t SubsystemLayout::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument("unknown site label: " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  for (const auto& l : other.labels_) {
    if (contains(l)) throw std::invalid_argument("tensor: overlapping label " + l);
  }
  auto labels = labels_;
  auto dims = dims_;
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemLayout(std::move(labels), std::move(dims));
}

SubsystemLayout SubsystemLayout::subset(const std::vector<std::string>& keep) const {
  if (keep.empty()) throw std::invalid_argument("subset: empty label set");
  for (const auto& k : keep) index_of(k);
  std::vector<std::string> labels;
  std::vector<int> dims;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), labels_[i]) != keep.end()) {
      labels.push_back(labels_[i]);
      dims.push_back(dims_[i]);
    }
  }
  return SubsystemLayout(std::move(labels), std::move(dims));
}

// ----------------------------------------------------------------------------
// Operator

Operator::Operator(SubsystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != layout_.dim() || matrix_.cols() != layout_.dim()) {
    throw std::invalid_argument("Operator: matrix shape does not match layout dimension");
  }
}

Operator Operator::identity(const SubsystemLayout& layout) {
  return Operator(layout, Matrix::Identity(layout.dim(), layout.dim()));
}

Operator Operator::zero(const SubsystemLayout& layout) {
  return Operator(layout, Matrix::Zero(layout.dim(), layout.dim()));
}

bool Operator::is_hermitian(double tol) const {
  return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_zero(double tol) const {
  return matrix_.size() == 0 || matrix_.cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::adjoint() const { return Operator(layout_, matrix_.adjoint()); }

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_layout(layout_, rhs.layout_, "Operator +");
  matrix_ += rhs.matrix_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_layout(layout_, rhs.layout_, "Operator -");
  matrix_ -= rhs.matrix_;
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  matrix_ *= s;
  return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_layout(a.layout(), b.layout(), "Operator *");
  return Operator(a.layout(), a.matrix() * b.matrix());
}

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

// ----------------------------------------------------------------------------
// States

PureState::PureState(SubsystemLayout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.dim()) {
    throw std::invalid_argument("PureState: amplitude count does not match layout dimension");
  }
}

PureState PureState::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("PureState: cannot normalize the zero vector");
  return PureState(layout_, amplitudes_ / n);
}

DensityMatrix PureState::density() const {
  const Vector v = normalized().amplitudes();
  return DensityMatrix(layout_, v * v.adjoint());
}

double PureState::overlap_modulus(const PureState& other) const {
  require_same_layout(layout_, other.layout_, "overlap");
  return std::abs(normalized().amplitudes().dot(other.normalized().amplitudes()));
}

DensityMatrix::DensityMatrix(SubsystemLayout layout, Matrix matrix, double tol)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != layout_.dim() || matrix_.cols() != layout_.dim()) {
    throw std::invalid_argument("DensityMatrix: matrix shape does not match layout dimension");
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(matrix_.trace() - cplx(1.0)) > tol) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  const Matrix herm = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_approximate(SubsystemLayout layout, Matrix matrix, double tol) {
  Matrix herm = 0.5 * (matrix + matrix.adjoint());
  const cplx tr = herm.trace();
  if (std::abs(tr) == 0.0) throw std::invalid_argument("DensityMatrix: zero trace");
  herm /= tr.real();
  return DensityMatrix(std::move(layout), std::move(herm), tol);
}

DensityMatrix DensityMatrix::maximally_mixed(const SubsystemLayout& layout) {
  const Index d = layout.dim();
  return DensityMatrix(layout, Matrix::Identity(d, d) / static_cast<double>(d));
}

// ----------------------------------------------------------------------------
// Construction

Matrix pauli_matrix(Pauli which) {
  Matrix m = Matrix::Zero(2, 2);
  switch (which) {
    case Pauli::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Pauli::Y:
      m(0, 1) = cplx(0.0, -1.0);
      m(1, 0) = cplx(0.0, 1.0);
      break;
    case Pauli::Z:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    case Pauli::Plus:  // |1><0|
      m(1, 0) = 1.0;
      break;
    case Pauli::Minus:  // |0><1|
      m(0, 1) = 1.0;
      break;
  }
  return m;
}

Operator embed(const std::string& site, const Matrix& local, const SubsystemLayout& layout) {
  const std::size_t k = layout.index_of(site);
  const auto& dims = layout.dims();
  if (local.rows() != dims[k] || local.cols() != dims[k]) {
    throw std::invalid_argument("embed: local operator does not match site dimension");
  }
  Matrix m = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const Matrix factor = (i == k) ? local : Matrix::Identity(dims[i], dims[i]);
    Matrix next = Eigen::kroneckerProduct(m, factor).eval();
    m.swap(next);
  }
  return Operator(layout, std::move(m));
}

Operator pauli(const std::string& site, Pauli which, const SubsystemLayout& layout) {
  return embed(site, pauli_matrix(which), layout);
}

Operator tensor(const Operator& a, const Operator& b) {
  SubsystemLayout layout = a.layout().concat(b.layout());
  Matrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval();
  return Operator(std::move(layout), std::move(m));
}

PureState tensor(const PureState& a, const PureState& b) {
  SubsystemLayout layout = a.layout().concat(b.layout());
  Vector v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes()).eval();
  return PureState(std::move(layout), std::move(v));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::string>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  const SubsystemLayout& full = rho.layout();
  const SubsystemLayout reduced = full.subset(keep);
  const auto& dims = full.dims();
  const std::size_t n = dims.size();

  std::vector<bool> kept(n, false);
  for (const auto& k : keep) kept[full.index_of(k)] = true;

  // Per-site strides in the full index and the reduced index.
  std::vector<Index> stride(n), kept_stride(n, 0), traced_stride(n, 0);
  Index s = 1, ks = 1, ts = 1;
  for (std::size_t i = n; i-- > 0;) {
    stride[i] = s;
    s *= dims[i];
    if (kept[i]) {
      kept_stride[i] = ks;
      ks *= dims[i];
    } else {
      traced_stride[i] = ts;
      ts *= dims[i];
    }
  }

  const Index d = full.dim();
  std::vector<Index> kept_index(d), traced_index(d);
  for (Index idx = 0; idx < d; ++idx) {
    Index rem = idx, ki = 0, ti = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Index digit = rem / stride[i];
      rem %= stride[i];
      ki += digit * kept_stride[i];
      ti += digit * traced_stride[i];
    }
    kept_index[idx] = ki;
    traced_index[idx] = ti;
  }

  Matrix out = Matrix::Zero(reduced.dim(), reduced.dim());
  const Matrix& m = rho.matrix();
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      if (traced_index[i] == traced_index[j]) out(kept_index[i], kept_index[j]) += m(i, j);
    }
  }
  return DensityMatrix::from_approximate(reduced, std::move(out));
}

cplx expectation(const Operator& op, const DensityMatrix& rho) {
  require_same_layout(op.layout(), rho.layout(), "expectation");
  return (op.matrix() * rho.matrix()).trace();
}

cplx expectation(const Operator& op, const PureState& psi) {
  require_same_layout(op.layout(), psi.layout(), "expectation");
  const Vector v = psi.normalized().amplitudes();
  return v.dot(op.matrix() * v);
}

PureState basis_state(const SubsystemLayout& layout, const std::vector<int>& occupations) {
  if (occupations.size() != layout.size()) {
    throw std::invalid_argument("basis_state: one occupation per site required");
  }
  Index idx = 0;
  for (std::size_t i = 0; i < occupations.size(); ++i) {
    const int o = occupations[i];
    if (o < 0 || o >= layout.dims()[i]) throw std::invalid_argument("basis_state: occupation out of range");
    idx = idx * layout.dims()[i] + o;
  }
  Vector v = Vector::Zero(layout.dim());
  v(idx) = 1.0;
  return PureState(layout, std::move(v));
}

PureState bell_state(Bell which, const SubsystemLayout& pair) {
  if (pair.size() != 2 || pair.dim() != 4) throw std::invalid_argument("bell_state: two-qubit layout required");
  const double r = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  v(1) = r;                                        // |01>
  v(2) = (which == Bell::Singlet) ? -r : r;        // |10>
  return PureState(pair, std::move(v));
}

PureState pair_vacuum(const SubsystemLayout& pair) { return basis_state(pair, {0, 0}); }

}  // namespace wqed

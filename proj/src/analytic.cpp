#include "wqed/analytic.hpp"

#include "wqed/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wqed {

namespace {

constexpr cplx kI{0.0, 1.0};

enum class PairKet { Vacuum, Singlet, Triplet };

SubsystemLayout pair_layout(int site) {
  const std::string s = std::to_string(site);
  return SubsystemLayout({"A" + s, "B" + s});
}

PureState pair_ket(int site, PairKet which) {
  const SubsystemLayout layout = pair_layout(site);
  switch (which) {
    case PairKet::Vacuum: return pair_vacuum(layout);
    case PairKet::Singlet: return bell_state(Bell::Singlet, layout);
    case PairKet::Triplet: return bell_state(Bell::Triplet, layout);
  }
  throw std::logic_error("pair_ket: bad pair state");
}

PureState chain_ket(const std::vector<PairKet>& pairs) {
  PureState out = pair_ket(1, pairs.front());
  for (std::size_t j = 1; j < pairs.size(); ++j) out = tensor(out, pair_ket(static_cast<int>(j) + 1, pairs[j]));
  return out;
}

Vector amplitudes(const std::vector<PairKet>& pairs) { return chain_ket(pairs).amplitudes(); }

// Local 4x4 operator on pair `site` (1-based) of an n-site chain.
Matrix on_pair(int site, int n, const Matrix& local) {
  Matrix out = Matrix::Identity(1, 1);
  for (int j = 1; j <= n; ++j) {
    const Matrix f = (j == site) ? local : Matrix::Identity(4, 4);
    Matrix next(out.rows() * 4, out.cols() * 4);
    for (Index r = 0; r < out.rows(); ++r)
      for (Index c = 0; c < out.cols(); ++c) next.block(r * 4, c * 4, 4, 4) = out(r, c) * f;
    out = std::move(next);
  }
  return out;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace

PureState psi0(double omega, double delta, double gamma) {
  require_positive(gamma, "gamma");
  const cplx s_coef = -std::sqrt(2.0) * omega / cplx(2.0 * delta, gamma);
  const Vector v = pair_ket(1, PairKet::Vacuum).amplitudes() + s_coef * pair_ket(1, PairKet::Singlet).amplitudes();
  return PureState(pair_layout(1), v).normalized();
}

PureState psi2(double omega, double gamma, double j12) {
  require_positive(gamma, "gamma");
  require_positive(j12, "j12");
  using P = PairKet;
  const Vector v = kI * (omega * omega / (gamma * j12)) * amplitudes({P::Singlet, P::Triplet}) +
                   (omega / (std::sqrt(2.0) * j12)) * amplitudes({P::Vacuum, P::Triplet}) -
                   amplitudes({P::Vacuum, P::Vacuum});
  return PureState(SubsystemLayout::chain(2), v).normalized();
}

PureState psi3(double omega, double gamma, double j12, double j23) {
  require_positive(gamma, "gamma");
  require_positive(omega, "omega");
  require_positive(j12, "j12");
  using P = PairKet;
  const double r2 = std::sqrt(2.0);
  const Vector v = amplitudes({P::Vacuum, P::Vacuum, P::Singlet}) -
                   (omega / (r2 * j12)) * amplitudes({P::Vacuum, P::Triplet, P::Singlet}) -
                   kI * (omega * omega / (gamma * j12)) * amplitudes({P::Singlet, P::Triplet, P::Singlet}) -
                   (j23 / j12) * amplitudes({P::Singlet, P::Vacuum, P::Vacuum}) +
                   kI * (gamma * j23 / (r2 * omega * j12)) * amplitudes({P::Vacuum, P::Vacuum, P::Vacuum});
  return PureState(SubsystemLayout::chain(3), v).normalized();
}

PureState psi_hole_pair(const ChainSpec& spec) {
  spec.validate();
  if (spec.n > 4) throw std::invalid_argument("psi_hole_pair: n must be at most 4");
  if (std::abs(spec.eta - 1.0) > 1e-12) throw std::invalid_argument("psi_hole_pair: eta must be 1");
  if (spec.delta != 0.0) throw std::invalid_argument("psi_hole_pair: delta must be 0");
  if (spec.omega_a != spec.omega_b) throw std::invalid_argument("psi_hole_pair: drive must be symmetric");
  if (spec.t1 || !spec.t1_override.empty()) throw std::invalid_argument("psi_hole_pair: intrinsic decay not allowed");
  require_positive(spec.omega_a, "omega");

  const int n = spec.n;
  const double omega = spec.omega_a;
  const double gamma = spec.gamma;

  std::vector<PairKet> reference;
  std::vector<Matrix> tau;
  const Vector vac = pair_ket(1, PairKet::Vacuum).amplitudes();
  for (int j = 1; j <= n; ++j) {
    const PairKet which = (j % 2 == 1) ? PairKet::Singlet : PairKet::Triplet;
    reference.push_back(which);
    const Vector bell = pair_ket(1, which).amplitudes();
    tau.push_back(on_pair(j, n, std::sqrt(2.0) * vac * bell.adjoint()));
  }

  const Index dim = tau.front().rows();
  Matrix g = Matrix::Zero(dim, dim);
  for (int j = 1; j < n; ++j) {
    const double sign = (j % 2 == 1) ? -1.0 : 1.0;
    g += sign * spec.hopping[j - 1] * (tau[j - 1] * tau[j]);
  }
  g *= -kI * gamma / (2.0 * omega * omega);

  // exp(g) on the reference: g is nilpotent there, each tau_j annihilating its own site twice.
  Vector term = amplitudes(reference);
  Vector psi = term;
  for (int k = 1; k <= n; ++k) {
    term = (g * term) / static_cast<double>(k);
    if (term.norm() == 0.0) break;
    psi += term;
  }
  psi -= kI * (gamma / (2.0 * omega)) * (tau.front() * psi);
  return PureState(SubsystemLayout::chain(n), psi).normalized();
}

DarkStateReport verify_dark_state(const PureState& state, const LindbladModel& model, double tol) {
  if (!(state.layout() == model.layout)) throw std::invalid_argument("verify_dark_state: layout mismatch");
  const Vector psi = state.normalized().amplitudes();
  DarkStateReport report;
  bool ok = true;
  for (const auto& c : model.collapse_ops) {
    const double norm = (c.matrix() * psi).norm();
    report.collapse_norms.push_back(norm);
    ok = ok && norm < tol;
  }
  const Vector hpsi = model.H.matrix() * psi;
  const cplx e = psi.dot(hpsi);
  report.energy = e.real();
  report.energy_residual = (hpsi - e * psi).norm();
  report.liouvillian_residual = liouvillian_residual(model, psi * psi.adjoint());
  report.passed = ok && report.energy_residual < tol;
  return report;
}

EffectiveModel effective_model(double omega, double gamma, double j12, double eta) {
  require_positive(gamma, "gamma");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  EffectiveModel out;
  out.omega_eff = 2.0 * omega * j12 / gamma;
  out.gamma_eff = 4.0 * j12 * j12 / gamma;
  out.eta = eta;

  const SubsystemLayout layout = pair_layout(2);
  const auto sp = [&](const char* s) { return pauli(s, Pauli::Plus, layout); };
  const auto sm = [&](const char* s) { return pauli(s, Pauli::Minus, layout); };
  const auto sx = [&](const char* s) { return pauli(s, Pauli::X, layout); };

  const Operator exchange = sp("A2") * sm("B2") - sm("A2") * sp("B2");
  Operator h = cplx(out.omega_eff / 2.0) * (sx("A2") + cplx(2.0 * eta - 1.0) * sx("B2"));
  h += kI * (eta * out.gamma_eff / 2.0) * exchange;

  out.model.layout = layout;
  out.model.H = h;
  const double root = std::sqrt(out.gamma_eff);
  const double loss = std::sqrt(std::max(0.0, 1.0 - eta * eta));
  if (root > 0.0) {
    out.model.collapse_ops.push_back(canonical_jump_phase(cplx(root) * (cplx(eta) * sm("A2") + sm("B2"))));
    if (loss > 0.0) out.model.collapse_ops.push_back(canonical_jump_phase(cplx(root * loss) * sm("A2")));
  }
  return out;
}

Operator canonical_jump_phase(const Operator& op) {
  const Matrix& m = op.matrix();
  const double largest = m.cwiseAbs().maxCoeff();
  if (largest == 0.0) return op;
  for (Index c = 0; c < m.cols(); ++c) {
    for (Index r = 0; r < m.rows(); ++r) {
      if (std::abs(m(r, c)) >= largest * (1.0 - 1e-9)) {
        const cplx phase = std::conj(m(r, c)) / std::abs(m(r, c));
        return op * phase;
      }
    }
  }
  return op;
}

EliminationResult adiabatic_eliminate(const LindbladModel& model_2p2, const ChainSpec& spec) {
  if (spec.n != 2) throw std::invalid_argument("adiabatic_eliminate: n must be 2");
  if (spec.t1 || !spec.t1_override.empty()) {
    throw std::invalid_argument("adiabatic_eliminate: intrinsic decay not supported");
  }
  if (!(model_2p2.layout == SubsystemLayout::chain(2))) {
    throw std::invalid_argument("adiabatic_eliminate: model must be a 2+2 chain");
  }
  model_2p2.validate();

  // index = 4 * (A1 B1) + (A2 B2); ground manifold (A1 B1) = 00, excited = 01, 10
  constexpr Index g0 = 0;
  constexpr Index e0 = 4;
  const Matrix& h = model_2p2.H.matrix();
  Matrix h_nh = h;
  for (const auto& c : model_2p2.collapse_ops) h_nh -= 0.5 * kI * (c.matrix().adjoint() * c.matrix());

  const Matrix hg = h.block(g0, g0, 4, 4);
  const Matrix v_plus = h.block(e0, g0, 8, 4);
  const Matrix v_minus = h.block(g0, e0, 4, 8);
  const Eigen::FullPivLU<Matrix> lu(h_nh.block(e0, e0, 8, 8));
  if (!lu.isInvertible() || lu.rcond() < 1e-12) {
    throw SolverError("adiabatic_eliminate: non-Hermitian Hamiltonian is singular on the excited manifold");
  }
  const Matrix inv = lu.inverse();

  Matrix heff = hg - 0.5 * v_minus * (inv + inv.adjoint()) * v_plus;
  std::vector<Matrix> jumps;
  for (const auto& c : model_2p2.collapse_ops) {
    const Matrix l = c.matrix().block(g0, e0, 4, 8) * inv * v_plus;
    const cplx a = l.trace() / 4.0;
    const Matrix x = l - a * Matrix::Identity(4, 4);
    const Matrix shift = 0.5 * kI * std::conj(a) * x;
    heff += shift + shift.adjoint();
    jumps.push_back(x);
  }

  const auto rz = [](double theta) {
    Matrix r = Matrix::Zero(2, 2);
    r(0, 0) = std::polar(1.0, -theta / 2.0);
    r(1, 1) = std::polar(1.0, theta / 2.0);
    return r;
  };
  const Matrix ra = rz(M_PI / 2.0);
  const Matrix rb = rz(-M_PI / 2.0);
  Matrix u(4, 4);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) u.block(2 * i, 2 * j, 2, 2) = ra(i, j) * rb;

  EliminationResult out;
  const SubsystemLayout layout = pair_layout(2);
  out.model.layout = layout;
  Matrix hr = u * heff * u.adjoint();
  out.model.H = Operator(layout, 0.5 * (hr + hr.adjoint()));
  double scale = 0.0;
  for (const auto& x : jumps) scale = std::max(scale, x.norm());
  for (const auto& x : jumps) {
    if (x.norm() <= 1e-13 * std::max(1.0, scale)) continue;
    out.model.collapse_ops.push_back(canonical_jump_phase(Operator(layout, u * x * u.adjoint())));
  }

  out.manifold_inverse = Matrix(2, 2);
  out.manifold_inverse << inv(0, 0), inv(0, 4), inv(4, 0), inv(4, 4);
  return out;
}

double singlet_population(double omega, double gamma, double j12) {
  require_positive(gamma, "gamma");
  const double x = omega / gamma;
  const double y = j12 / gamma;
  const double x4 = x * x * x * x;
  const double den = 2.0 * x4 + x * x + 2.0 * y * y;
  return den > 0.0 ? 2.0 * x4 / den : 0.0;
}

RateEstimates rate_estimates(double omega, double gamma, double j12, double eta) {
  require_positive(gamma, "gamma");
  RateEstimates r;
  r.gamma_loss = singlet_population(omega, gamma, j12) * (1.0 - eta * eta) * gamma;
  const double omega_eff = 2.0 * omega * j12 / gamma;
  const double gamma_eff = 4.0 * j12 * j12 / gamma;
  r.gamma_rel = omega_eff > 0.0 ? std::pow(gamma_eff, 3) / (omega_eff * omega_eff)
                                : std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace wqed

#include "wqed/model.hpp"

#include "wqed/slh.hpp"

#include <cmath>
#include <stdexcept>

namespace wqed {

namespace {

std::string site(char chain, int j) { return std::string(1, chain) + std::to_string(j); }

Operator hopping_terms(const ChainSpec& spec, const SubsystemLayout& layout) {
  Operator h = Operator::zero(layout);
  for (int j = 1; j < spec.n; ++j) {
    const double J = spec.hopping[static_cast<std::size_t>(j - 1)];
    for (char s : {'A', 'B'}) {
      const Operator x = pauli(site(s, j), Pauli::Plus, layout) * pauli(site(s, j + 1), Pauli::Minus, layout);
      h += J * (x + x.adjoint());
    }
  }
  return h;
}

void append_intrinsic_decay(const ChainSpec& spec, LindbladModel& m) {
  for (const auto& label : m.layout.labels()) {
    std::optional<double> t1 = spec.t1;
    if (auto it = spec.t1_override.find(label); it != spec.t1_override.end()) t1 = it->second;
    if (t1) m.collapse_ops.push_back(std::sqrt(1.0 / *t1) * pauli(label, Pauli::Minus, m.layout));
  }
}

}  // namespace

void ChainSpec::set_eta2(double eta2) {
  if (!(eta2 >= 0.0 && eta2 <= 1.0)) throw std::invalid_argument("eta2 must lie in [0, 1]");
  eta = std::sqrt(eta2);
}

void ChainSpec::validate() const {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw std::invalid_argument("gamma must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
  if (!std::isfinite(omega_a)) throw std::invalid_argument("omega_a must be finite");
  if (!std::isfinite(omega_b)) throw std::invalid_argument("omega_b must be finite");
  if (!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
  if (hopping.size() != static_cast<std::size_t>(n - 1)) {
    throw std::invalid_argument("j must list n-1 hopping rates");
  }
  for (double J : hopping) {
    if (!(J >= 0.0) || !std::isfinite(J)) throw std::invalid_argument("j entries must be non-negative");
  }
  if (t1 && !(*t1 > 0.0)) throw std::invalid_argument("t1 must be positive");
  const SubsystemLayout layout = SubsystemLayout::chain(n);
  for (const auto& [label, value] : t1_override) {
    if (!layout.contains(label)) throw std::invalid_argument("t1 override for unknown site " + label);
    if (!(value > 0.0)) throw std::invalid_argument("t1 override for " + label + " must be positive");
  }
}

void LindbladModel::validate(double tol) const {
  if (!(H.layout() == layout)) throw std::invalid_argument("LindbladModel: Hamiltonian layout mismatch");
  for (const auto& c : collapse_ops) {
    if (!(c.layout() == layout)) throw std::invalid_argument("LindbladModel: collapse operator layout mismatch");
  }
  if (!H.is_hermitian(tol)) throw std::invalid_argument("LindbladModel: Hamiltonian is not Hermitian");
}

LindbladModel build_model(const ChainSpec& spec) {
  spec.validate();
  const SubsystemLayout layout = SubsystemLayout::chain(spec.n);
  const Operator sm_a = pauli("A1", Pauli::Minus, layout);
  const Operator sm_b = pauli("B1", Pauli::Minus, layout);
  const Operator exchange = sm_a.adjoint() * sm_b;

  Operator H = 0.5 * spec.omega_a * pauli("A1", Pauli::X, layout) +
               0.5 * spec.omega_b * pauli("B1", Pauli::X, layout) +
               0.5 * spec.delta * (pauli("A1", Pauli::Z, layout) - pauli("B1", Pauli::Z, layout)) +
               cplx(0.0, 0.5 * spec.eta * spec.gamma) * (exchange - exchange.adjoint()) +
               hopping_terms(spec, layout);

  LindbladModel m{layout, std::move(H), {}};
  const double sg = std::sqrt(spec.gamma);
  m.collapse_ops.push_back(sg * (spec.eta * sm_a + sm_b));
  const double loss = std::sqrt(1.0 - spec.eta2());
  if (loss > 0.0) m.collapse_ops.push_back((sg * loss) * sm_a);
  append_intrinsic_decay(spec, m);
  return m;
}

LindbladModel model_from_slh(const ChainSpec& spec) {
  spec.validate();
  const SubsystemLayout layout = SubsystemLayout::chain(spec.n);
  const SLHTriple qa = qubit_triple(spec.delta, spec.omega_a, spec.gamma, "A1", layout);
  const SLHTriple qb = qubit_triple(-spec.delta, spec.omega_b, spec.gamma, "B1", layout);
  const SLHTriple link = beamsplitter_triple(spec.eta, layout);
  const SLHTriple net = series_compose(qb, series_compose(link, qa));

  LindbladModel m{layout, net.H + hopping_terms(spec, layout), {}};
  for (const auto& l : net.L) {
    if (!l.is_zero()) m.collapse_ops.push_back(l);
  }
  append_intrinsic_decay(spec, m);
  return m;
}

LindbladModel swap_chains(const LindbladModel& model) {
  const SubsystemLayout& layout = model.layout;
  const Index d = layout.dim();
  const std::size_t n = layout.size();
  // Permutation of basis indices exchanging each (A_j, B_j) bit pair.
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(d);
  for (Index idx = 0; idx < d; ++idx) {
    Index out = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t partner = (k % 2 == 0) ? k + 1 : k - 1;
      const Index bit = (idx >> (n - 1 - partner)) & 1;
      out |= bit << (n - 1 - k);
    }
    perm.indices()(idx) = static_cast<int>(out);
  }
  auto apply = [&](const Operator& op) {
    return Operator(layout, perm * op.matrix() * perm.transpose());
  };
  LindbladModel out{layout, apply(model.H), {}};
  for (const auto& c : model.collapse_ops) out.collapse_ops.push_back(apply(c));
  return out;
}

}  // namespace wqed

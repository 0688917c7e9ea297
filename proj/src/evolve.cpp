#include "wqed/lindblad.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wqed {

namespace {

namespace ode = boost::numeric::odeint;
using State = std::vector<cplx>;

// rho' = -i (Heff rho - rho Heff^dag) + sum_k c_k rho c_k^dag
struct MasterEquation {
  Matrix heff;
  std::vector<Matrix> jumps;
  Index dim;

  explicit MasterEquation(const LindbladModel& model) : heff(model.H.matrix()), dim(model.layout.dim()) {
    for (const auto& op : model.collapse_ops) {
      const Matrix& c = op.matrix();
      heff -= cplx(0.0, 0.5) * (c.adjoint() * c);
      jumps.push_back(c);
    }
  }

  void operator()(const State& x, State& dxdt, double /*t*/) const {
    Eigen::Map<const Matrix> rho(x.data(), dim, dim);
    Eigen::Map<Matrix> out(dxdt.data(), dim, dim);
    out.noalias() = cplx(0.0, -1.0) * (heff * rho);
    out.noalias() += cplx(0.0, 1.0) * (rho * heff.adjoint());
    for (const auto& c : jumps) out.noalias() += c * rho * c.adjoint();
  }
};

}  // namespace

EvolutionTrace evolve(const LindbladModel& model, const DensityMatrix& rho0, const std::vector<double>& times,
                      const EvolveOptions& options) {
  model.validate();
  if (!(rho0.layout() == model.layout)) throw std::invalid_argument("evolve: initial state layout mismatch");
  if (times.empty()) throw std::invalid_argument("evolve: empty time grid");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw std::invalid_argument("evolve: times must be strictly increasing");
  }

  const MasterEquation rhs(model);
  const Index d = model.layout.dim();
  State x(rho0.matrix().data(), rho0.matrix().data() + d * d);

  EvolutionTrace trace;
  trace.times = times;
  trace.states.reserve(times.size());
  const double state_tol = std::max(kDefaultTol, 10.0 * options.rtol);

  auto observer = [&](const State& s, double /*t*/) {
    Matrix rho = Eigen::Map<const Matrix>(s.data(), d, d);
    trace.max_hermiticity_error =
        std::max(trace.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double drift = std::abs(rho.trace() - cplx(1.0));
    trace.max_trace_drift = std::max(trace.max_trace_drift, drift);
    trace.states.push_back(DensityMatrix::from_approximate(model.layout, std::move(rho), state_tol));
  };

  try {
    auto stepper = ode::make_dense_output(options.atol, options.rtol, ode::runge_kutta_dopri5<State>());
    const double span = times.back() - times.front();
    const double h0 = (span > 0.0) ? std::min(options.initial_step, span) : options.initial_step;
    ode::integrate_times(stepper, std::cref(rhs), x, times.begin(), times.end(), h0, observer,
                         ode::max_step_checker(options.max_steps));
  } catch (const ode::odeint_error& e) {
    throw SolverError(std::string("evolve: step budget exhausted (") + e.what() + ")");
  } catch (const std::overflow_error& e) {
    throw SolverError(std::string("evolve: step size underflow (") + e.what() + ")");
  } catch (const std::invalid_argument& e) {
    throw SolverError(std::string("evolve: ") + e.what());
  }

  if (trace.max_trace_drift > options.trace_drift_tol) {
    std::ostringstream msg;
    msg << "evolve: trace drift " << trace.max_trace_drift << " exceeds " << options.trace_drift_tol;
    throw SolverError(msg.str());
  }
  return trace;
}

}  // namespace wqed

#include "dpcontract/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpc {
namespace {

constexpr double kDivergenceGuard = 1e12;

Matrix central_difference(const std::function<Vector(int, const Vector&)>& fn, int k,
                          const Vector& x, int rows) {
  Matrix jac(rows, x.size());
  for (int i = 0; i < x.size(); ++i) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(i)));
    Vector xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    jac.col(i) = (fn(k, xp) - fn(k, xm)) / (2.0 * h);
  }
  return jac;
}

}  // namespace

Matrix SystemModel::step_jacobian(int k, const Vector& x) const {
  if (jac_f) return jac_f(k, x);
  return central_difference(step, k, x, state_dim);
}

Matrix SystemModel::observe_jacobian(int k, const Vector& x) const {
  if (jac_h) return jac_h(k, x);
  return central_difference(observe, k, x, output_dim);
}

SystemModel SystemModel::linear(const Matrix& A, const Matrix& H) {
  if (A.rows() != A.cols() || H.cols() != A.cols()) {
    throw std::invalid_argument("linear model: shape mismatch");
  }
  SystemModel m;
  m.state_dim = static_cast<int>(A.rows());
  m.output_dim = static_cast<int>(H.rows());
  m.step = [A](int, const Vector& x) { return A * x; };
  m.observe = [H](int, const Vector& x) { return H * x; };
  m.jac_f = [A](int, const Vector&) { return A; };
  m.jac_h = [H](int, const Vector&) { return H; };
  return m;
}

Trajectory simulate(const SystemModel& model, const Vector& x0, int k0, int horizon) {
  if (x0.size() != model.state_dim || !x0.allFinite()) {
    throw std::invalid_argument("simulate: invalid initial state");
  }
  if (horizon < 0) throw std::invalid_argument("simulate: horizon must be nonnegative");
  Trajectory traj;
  traj.k0 = k0;
  traj.states.reserve(horizon + 1);
  traj.outputs.reserve(horizon + 1);
  Vector x = x0;
  for (int j = 0; j <= horizon; ++j) {
    const int k = k0 + j;
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceGuard) {
      throw std::runtime_error("simulate: state diverged at step k=" + std::to_string(k));
    }
    traj.states.push_back(x);
    traj.outputs.push_back(model.observe(k, x));
    if (j < horizon) x = model.step(k, x);
  }
  return traj;
}

std::vector<double> output_deviation(const SystemModel& model, const Vector& xa,
                                     const Vector& xb, int k0, int horizon) {
  const Trajectory ta = simulate(model, xa, k0, horizon);
  const Trajectory tb = simulate(model, xb, k0, horizon);
  std::vector<double> gaps(ta.outputs.size());
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    gaps[j] = (ta.outputs[j] - tb.outputs[j]).lpNorm<1>();
  }
  return gaps;
}

}  // namespace dpc

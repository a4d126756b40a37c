#pragma once

#include "dpcontract/geometry.hpp"

#include <functional>
#include <vector>

namespace dpc {

enum class JacobianMode { Analytic, FiniteDifference };

/// Time-varying discrete-time system x_{k+1} = f_k(x_k), output h_k(x_k).
/// Jacobians fall back to scale-aware central differences when not supplied.
struct SystemModel {
  int state_dim = 0;
  int output_dim = 0;
  std::function<Vector(int, const Vector&)> step;
  std::function<Vector(int, const Vector&)> observe;
  std::function<Matrix(int, const Vector&)> jac_f;  // optional
  std::function<Matrix(int, const Vector&)> jac_h;  // optional

  JacobianMode jacobian_mode() const {
    return (jac_f && jac_h) ? JacobianMode::Analytic : JacobianMode::FiniteDifference;
  }

  Matrix step_jacobian(int k, const Vector& x) const;
  Matrix observe_jacobian(int k, const Vector& x) const;

  static SystemModel linear(const Matrix& A, const Matrix& H);
};

struct Trajectory {
  int k0 = 0;
  std::vector<Vector> states;
  std::vector<Vector> outputs;
};

Trajectory simulate(const SystemModel& model, const Vector& x0, int k0, int horizon);

// Per-step l1 output gap between trajectories started at xa and xb.
std::vector<double> output_deviation(const SystemModel& model, const Vector& xa,
                                     const Vector& xb, int k0, int horizon);

}  // namespace dpc

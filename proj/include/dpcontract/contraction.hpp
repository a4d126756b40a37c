#pragma once

#include "dpcontract/dynamics.hpp"
#include "dpcontract/geometry.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace dpc {

/// Candidate contraction metric P(x, k), symmetric PSD at every grid point.
struct MetricCandidate {
  std::function<Matrix(int, const Vector&)> evaluate;
};

struct LambdaSchedule {
  std::function<double(int)> value;  // k -> lambda_k > 0

  static LambdaSchedule geometric(double base, int k0) {
    return LambdaSchedule{[base, k0](int k) { return std::pow(base, k - k0); }};
  }
};

struct ContractionCertificate {
  double c1 = 1.0;
  double c2 = 1.0;
  LambdaSchedule lambda_schedule;
  MetricCandidate metric_candidate;
  MetricField ambient_metric;
  int k0 = 0;
  // Optional admissible-region predicate; grid points outside it are rejected.
  std::function<bool(int, const Vector&)> admissible;

  // alpha(zeta) = sqrt(m) * (c2/c1) * zeta / lambda_{k0}.
  double alpha_of_zeta(double zeta, int output_dim) const;
};

struct GridViolation {
  int k = 0;
  std::size_t grid_index = 0;
  Vector x;
  int inequality = 0;  // 1: output bound, 2: ambient bound, 3: contraction step
  double min_eigenvalue = 0.0;
};

struct GridVerificationReport {
  std::size_t points_checked = 0;
  std::vector<GridViolation> violations;
  bool passed = false;
  double tolerance = 0.0;
};

// Symmetrizes M and reports (min_eig >= -tol, min_eig).
std::pair<bool, double> check_psd(const Matrix& M, double tol);

using GridPoint = std::pair<int, Vector>;  // (k, x)

// Checks the three certificate inequalities at every grid point.
// Data-parallel over the grid; violation list is deterministic,
// sorted by (k, grid index).
GridVerificationReport verify_oib_grid(const SystemModel& model,
                                       const ContractionCertificate& cert,
                                       const std::vector<GridPoint>& grid, double tol);

// Single-threaded reference implementation, kept for testing and benchmarks.
GridVerificationReport verify_oib_grid_serial(const SystemModel& model,
                                              const ContractionCertificate& cert,
                                              const std::vector<GridPoint>& grid,
                                              double tol);

// Certificate from the augmented-parameter block construction:
// P(z,theta,k) = diag(I_n, lambda^{2(k-k0)} beta^2), lambda_k = lambda_bar^{k-k0},
// beta = lambda_bar*mu/(lambda_bar^2 - lambda^2), c1 = 1, c2 = max(theta_bar*beta, 1),
// ambient metric diag(I_n, 1/theta^2). Admissible tube: |z|_2 <= mu*lambda^{k-k0},
// 0 < theta <= theta_bar.
ContractionCertificate theorem3_certificate(int n, double lambda, double lambda_bar,
                                            double mu, double theta_bar, int k0);

double theorem3_beta(double lambda, double lambda_bar, double mu);

// PSD test of [[A11, A12], [A12^T, A22]] via direct eigenvalues, cross-checked
// against the Schur-complement route when A22 is strictly positive-definite.
bool schur_psd_2block(const Matrix& A11, const Matrix& A12, const Matrix& A22, double tol);

// Empirical per-step max over pairs of |delta output|_1 / d(xa, xb); a lower
// bound on lambda_k * alpha'(1) usable to falsify a claimed certificate.
std::vector<double> estimate_oib_empirical(const SystemModel& model, const MetricField& metric,
                                           const std::vector<std::pair<ManifoldPoint, ManifoldPoint>>& pairs,
                                           int k0, int horizon);

}  // namespace dpc

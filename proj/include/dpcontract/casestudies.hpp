#pragma once

#include "dpcontract/audit.hpp"
#include "dpcontract/contraction.hpp"
#include "dpcontract/dynamics.hpp"
#include "dpcontract/mechanism.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dpc {

//===----------------------------------------------------------------------===//
// Single-agent consensus
//===----------------------------------------------------------------------===//

struct ConsensusAgentConfig {
  std::vector<double> row_weights;  // a_{i,j}, each in (0,1), sum < 1
  double zeta = 1.0;
  double eps_total = 1.0;
  Chart metric_chart = Chart::Euclidean;  // euclidean | affine-line

  double row_sum() const;
};

struct ConsensusBuild {
  SystemModel model;
  MetricField metric;
  double diversity = 0.0;  // constant Laplace scale b
  NoiseSchedule noise;     // constant schedule over the requested horizon
};

ConsensusBuild build_consensus_model(const ConsensusAgentConfig& cfg, int k0, int horizon);

//===----------------------------------------------------------------------===//
// Parameter privacy (augmented (z, theta) system)
//===----------------------------------------------------------------------===//

struct ParameterPrivacyConfig {
  int n = 1;
  std::function<Matrix(double)> A_of_theta;
  std::function<Matrix(double)> dA_dtheta;
  double lambda = 1.0;      // spectral bound on A(theta)
  double lambda_bar = 1.1;  // > lambda
  double mu = 1.0;          // initial-state bound |z_{k0}|_2 <= mu
  double theta_bar = 1.0;   // theta in (0, theta_bar]
  double zeta = 1.0;
  EpsilonSchedule eps;
  int hypothesis_grid = 64;  // theta samples for the norm checks
};

struct ParameterBuild {
  SystemModel model;  // state (z, theta), output z
  MetricField metric;
  ContractionCertificate certificate;
  NoiseSchedule noise;
};

ParameterBuild build_parameter_model(const ParameterPrivacyConfig& cfg, int horizon);

//===----------------------------------------------------------------------===//
// Output regulation
//===----------------------------------------------------------------------===//

struct RegulationConfig {
  Matrix A, B, C, D;   // plant
  Matrix A_r, C_r;     // exo-system
  Matrix K_x;          // stabilizing state feedback
  std::optional<Matrix> K_r;  // feedforward; recomputed from the regulator
                              // equations when absent
  Vector r0;
  Vector x0;
  int horizon = 500;
  std::uint64_t seed = 0;
};

struct RegulatorSolution {
  Matrix X, U, K_r;
  double residual = 0.0;
};

// Solves X*A_r = A*X + B*U and C*X + D*U = C_r; K_r = U - K_x*X.
RegulatorSolution solve_regulator(const Matrix& A, const Matrix& B, const Matrix& C,
                                  const Matrix& D, const Matrix& A_r, const Matrix& C_r,
                                  const Matrix& K_x);

struct RegulationStep {
  int k = 0;
  Vector r;
  double y = 0.0;  // noisy reference output C_r*(r + v)
  double z = 0.0;  // tracking output
  double e = 0.0;  // z - y
};

// Closed loop: exo broadcasts the noisy reference vector r + v (per-coordinate
// Laplace b_k); controller applies u = K_x x + K_r (r + v).
// Pass nullptr noise for the noiseless v = 0 run.
std::vector<RegulationStep> simulate_regulation(const RegulationConfig& cfg,
                                                const NoiseSchedule* noise);

//===----------------------------------------------------------------------===//
// Section-5-style reproduction bundle
//===----------------------------------------------------------------------===//

struct ValueComparison {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double rel_error = 0.0;
};

struct Section5Report {
  double omega = 0.0;
  double beta_exact = 0.0;
  double b_exact = 0.0;        // under eps increments 100 * 1.1^k
  double b_tilde_exact = 0.0;  // under eps increments 500 * 1.1^k
  double b_rounded_beta = 0.0;        // with beta rounded to 1571
  double b_tilde_rounded_beta = 0.0;
  RegulatorSolution regulator;
  Matrix U_at_omega_paper_text;  // omega = pi/20, for the inconsistency table
  Matrix K_r_paper;              // printed [0.1511, 0.3090]
  std::vector<ValueComparison> table;
};

Matrix rotation2(double omega);
Matrix rotation2_derivative(double omega);

RegulationConfig section5_config(bool paper_constants, std::uint64_t seed, int horizon);
ParameterPrivacyConfig section5_parameter_config(int horizon);

Section5Report reproduce_section5(bool paper_constants = false);

}  // namespace dpc

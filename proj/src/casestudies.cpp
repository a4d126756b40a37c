#include "dpcontract/casestudies.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpc {

//===----------------------------------------------------------------------===//
// Consensus
//===----------------------------------------------------------------------===//

double ConsensusAgentConfig::row_sum() const {
  double s = 0.0;
  for (double a : row_weights) {
    if (!(a > 0.0 && a < 1.0)) {
      throw std::invalid_argument("consensus weights must lie in (0, 1)");
    }
    s += a;
  }
  if (!(s > 0.0 && s < 1.0)) {
    throw std::invalid_argument("consensus weight row sum must lie in (0, 1)");
  }
  return s;
}

ConsensusBuild build_consensus_model(const ConsensusAgentConfig& cfg, int k0, int horizon) {
  const double row_sum = cfg.row_sum();
  const double factor = 1.0 - row_sum;
  ConsensusBuild build;
  if (cfg.metric_chart == Chart::Euclidean) {
    build.model = SystemModel::linear(factor * Matrix::Identity(2, 2), Matrix::Identity(2, 2));
    build.metric = MetricField::identity(2);
  } else if (cfg.metric_chart == Chart::AffineLine) {
    // State is the x2-parameterization of the street x1 = 3*x2; the published
    // position is the embedded point (3*x2, x2).
    Matrix H(2, 1);
    H << 3.0, 1.0;
    build.model = SystemModel::linear(factor * Matrix::Identity(1, 1), H);
    build.metric = MetricField::affine_line();
  } else {
    throw std::invalid_argument("consensus case study supports euclidean or affine-line charts");
  }
  build.diversity = consensus_noise(cfg.zeta, cfg.eps_total, row_sum);
  build.noise = NoiseSchedule::constant(k0, build.diversity, horizon);
  return build;
}

//===----------------------------------------------------------------------===//
// Parameter privacy
//===----------------------------------------------------------------------===//

ParameterBuild build_parameter_model(const ParameterPrivacyConfig& cfg, int horizon) {
  if (!cfg.A_of_theta || !cfg.dA_dtheta) {
    throw std::invalid_argument("build_parameter_model: A(theta) and dA/dtheta required");
  }
  // Theorem hypotheses, checked numerically on a theta grid in (0, theta_bar].
  for (int i = 1; i <= cfg.hypothesis_grid; ++i) {
    const double theta = cfg.theta_bar * static_cast<double>(i) / cfg.hypothesis_grid;
    const double a_norm = cfg.A_of_theta(theta).operatorNorm();
    if (a_norm > cfg.lambda + 1e-9) {
      throw std::invalid_argument("parameter model hypothesis failed: |A(theta)|_2 = " +
                                  std::to_string(a_norm) + " > lambda at theta = " +
                                  std::to_string(theta));
    }
    const double da_norm = cfg.dA_dtheta(theta).operatorNorm();
    if (da_norm > 1.0 + 1e-9) {
      throw std::invalid_argument("parameter model hypothesis failed: |dA/dtheta|_2 = " +
                                  std::to_string(da_norm) + " > 1 at theta = " +
                                  std::to_string(theta));
    }
  }

  const int n = cfg.n;
  auto A = cfg.A_of_theta;
  auto dA = cfg.dA_dtheta;
  ParameterBuild build;
  build.model.state_dim = n + 1;
  build.model.output_dim = n;
  build.model.step = [A, n](int, const Vector& x) {
    Vector next(n + 1);
    next.head(n) = A(x(n)) * x.head(n);
    next(n) = x(n);
    return next;
  };
  build.model.observe = [n](int, const Vector& x) { return Vector(x.head(n)); };
  build.model.jac_f = [A, dA, n](int, const Vector& x) {
    Matrix j = Matrix::Zero(n + 1, n + 1);
    j.topLeftCorner(n, n) = A(x(n));
    j.block(0, n, n, 1) = dA(x(n)) * x.head(n);
    j(n, n) = 1.0;
    return j;
  };
  build.model.jac_h = [n](int, const Vector&) {
    Matrix j = Matrix::Zero(n, n + 1);
    j.topLeftCorner(n, n) = Matrix::Identity(n, n);
    return j;
  };
  build.metric = MetricField::augmented_fisher_rao(n);
  build.certificate = theorem3_certificate(n, cfg.lambda, cfg.lambda_bar, cfg.mu,
                                           cfg.theta_bar, cfg.eps.k0());
  build.noise = design_noise_theorem3(n, cfg.lambda, cfg.lambda_bar, cfg.mu, cfg.theta_bar,
                                      cfg.zeta, cfg.eps, horizon);
  return build;
}

//===----------------------------------------------------------------------===//
// Output regulation
//===----------------------------------------------------------------------===//

RegulatorSolution solve_regulator(const Matrix& A, const Matrix& B, const Matrix& C,
                                  const Matrix& D, const Matrix& A_r, const Matrix& C_r,
                                  const Matrix& K_x) {
  const int n = static_cast<int>(A.rows());
  const int p = static_cast<int>(B.cols());
  const int m = static_cast<int>(C.rows());
  const int nr = static_cast<int>(A_r.rows());
  if (A.cols() != n || B.rows() != n || C.cols() != n || D.rows() != m || D.cols() != p ||
      A_r.cols() != nr || C_r.rows() != m || C_r.cols() != nr) {
    throw std::invalid_argument("solve_regulator: inconsistent dimensions");
  }
  const int nx = n * nr;
  const int nu = p * nr;
  Matrix lhs = Matrix::Zero(nx + m * nr, nx + nu);
  Vector rhs = Vector::Zero(nx + m * nr);
  auto kron = [](const Matrix& lhs_m, const Matrix& rhs_m) {
    Matrix out(lhs_m.rows() * rhs_m.rows(), lhs_m.cols() * rhs_m.cols());
    for (int i = 0; i < lhs_m.rows(); ++i) {
      for (int j = 0; j < lhs_m.cols(); ++j) {
        out.block(i * rhs_m.rows(), j * rhs_m.cols(), rhs_m.rows(), rhs_m.cols()) =
            lhs_m(i, j) * rhs_m;
      }
    }
    return out;
  };
  // vec(X*A_r - A*X - B*U) = 0, vec(C*X + D*U) = vec(C_r)
  lhs.block(0, 0, nx, nx) = kron(A_r.transpose(), Matrix::Identity(n, n)) -
                            kron(Matrix::Identity(nr, nr), A);
  lhs.block(0, nx, nx, nu) = -kron(Matrix::Identity(nr, nr), B);
  lhs.block(nx, 0, m * nr, nx) = kron(Matrix::Identity(nr, nr), C);
  lhs.block(nx, nx, m * nr, nu) = kron(Matrix::Identity(nr, nr), D);
  for (int j = 0; j < nr; ++j) {
    for (int i = 0; i < m; ++i) rhs(nx + j * m + i) = C_r(i, j);
  }
  const Vector sol = lhs.colPivHouseholderQr().solve(rhs);
  RegulatorSolution out;
  out.residual = (lhs * sol - rhs).norm();
  if (out.residual >= 1e-9) {
    throw std::runtime_error("solve_regulator: regulator equations unsolvable, residual = " +
                             std::to_string(out.residual));
  }
  out.X = Matrix(n, nr);
  out.U = Matrix(p, nr);
  for (int j = 0; j < nr; ++j) {
    for (int i = 0; i < n; ++i) out.X(i, j) = sol(j * n + i);
    for (int i = 0; i < p; ++i) out.U(i, j) = sol(nx + j * p + i);
  }
  out.K_r = out.U - K_x * out.X;
  return out;
}

std::vector<RegulationStep> simulate_regulation(const RegulationConfig& cfg,
                                                const NoiseSchedule* noise) {
  const int nr = static_cast<int>(cfg.A_r.rows());
  if (cfg.C.rows() != 1) {
    throw std::invalid_argument("simulate_regulation: scalar tracking output expected");
  }
  Matrix K_r;
  if (cfg.K_r) {
    K_r = *cfg.K_r;
  } else {
    K_r = solve_regulator(cfg.A, cfg.B, cfg.C, cfg.D, cfg.A_r, cfg.C_r, cfg.K_x).K_r;
  }
  LaplaceSampler sampler(cfg.seed);
  std::vector<RegulationStep> record;
  record.reserve(cfg.horizon + 1);
  Vector r = cfg.r0;
  Vector x = cfg.x0;
  for (int k = 0; k <= cfg.horizon; ++k) {
    Vector v = Vector::Zero(nr);
    if (noise != nullptr) v = sampler.sample(k, nr, *noise);
    const Vector y_tilde = r + v;  // broadcast noisy reference vector
    const Vector u = cfg.K_x * x + K_r * y_tilde;
    const double z = (cfg.C * x + cfg.D * u)(0);
    RegulationStep step;
    step.k = k;
    step.r = r;
    step.y = (cfg.C_r * y_tilde)(0);
    step.z = z;
    step.e = z - step.y;
    record.push_back(std::move(step));
    x = cfg.A * x + cfg.B * u;
    r = cfg.A_r * r;
    if (!x.allFinite() || x.cwiseAbs().maxCoeff() > 1e12) {
      throw std::runtime_error("simulate_regulation: plant state diverged at k=" +
                               std::to_string(k));
    }
  }
  return record;
}

//===----------------------------------------------------------------------===//
// Reproduction bundle
//===----------------------------------------------------------------------===//

Matrix rotation2(double omega) {
  Matrix a(2, 2);
  a << std::cos(omega), std::sin(omega), -std::sin(omega), std::cos(omega);
  return a;
}

Matrix rotation2_derivative(double omega) {
  Matrix a(2, 2);
  a << -std::sin(omega), std::cos(omega), -std::cos(omega), -std::sin(omega);
  return a;
}

namespace {

constexpr double kOmegaDefault = M_PI / 10.0;  // matches the printed U
constexpr double kOmegaPaperText = M_PI / 20.0;
constexpr double kMu = 300.0;
constexpr double kThetaBar = 1.0;
constexpr double kZeta = 1.0;
constexpr double kLambda = 1.0;
constexpr double kLambdaBar = 1.1;

}  // namespace

RegulationConfig section5_config(bool paper_constants, std::uint64_t seed, int horizon) {
  RegulationConfig cfg;
  cfg.A = Matrix::Constant(1, 1, 1.0);
  cfg.B = Matrix::Constant(1, 1, 1.0);
  cfg.C = Matrix::Constant(1, 1, 1.0);
  cfg.D = Matrix::Constant(1, 1, 0.0);
  cfg.K_x = Matrix::Constant(1, 1, -0.3);
  cfg.A_r = rotation2(kOmegaDefault);
  cfg.C_r = Matrix(1, 2);
  cfg.C_r << 1.0, 0.0;
  if (paper_constants) {
    Matrix kr(1, 2);
    kr << 0.1511, 0.3090;
    cfg.K_r = kr;
  }
  cfg.r0 = Vector(2);
  cfg.r0 << 100.0, 0.0;
  cfg.x0 = Vector::Zero(1);
  cfg.horizon = horizon;
  cfg.seed = seed;
  return cfg;
}

ParameterPrivacyConfig section5_parameter_config(int horizon) {
  ParameterPrivacyConfig cfg;
  cfg.n = 2;
  cfg.A_of_theta = rotation2;
  cfg.dA_dtheta = rotation2_derivative;
  cfg.lambda = kLambda;
  cfg.lambda_bar = kLambdaBar;
  cfg.mu = kMu;
  cfg.theta_bar = kThetaBar;
  cfg.zeta = kZeta;
  cfg.eps = EpsilonSchedule::geometric(0, 100.0, 1.1, horizon);
  return cfg;
}

Section5Report reproduce_section5(bool paper_constants) {
  Section5Report rep;
  rep.omega = kOmegaDefault;
  rep.beta_exact = theorem3_beta(kLambda, kLambdaBar, kMu);
  const double sqrt_n = std::sqrt(2.0);
  const double scale = kZeta * sqrt_n * std::max(kThetaBar * rep.beta_exact, 1.0);
  rep.b_exact = scale / 100.0;
  rep.b_tilde_exact = scale / 500.0;
  const double scale_rounded = kZeta * sqrt_n * 1571.0;
  rep.b_rounded_beta = scale_rounded / 100.0;
  rep.b_tilde_rounded_beta = scale_rounded / 500.0;

  const RegulationConfig cfg = section5_config(paper_constants, 0, 500);
  rep.regulator = solve_regulator(cfg.A, cfg.B, cfg.C, cfg.D, cfg.A_r, cfg.C_r, cfg.K_x);
  const RegulatorSolution at_pi20 =
      solve_regulator(cfg.A, cfg.B, cfg.C, cfg.D, rotation2(kOmegaPaperText), cfg.C_r, cfg.K_x);
  rep.U_at_omega_paper_text = at_pi20.U;
  rep.K_r_paper = Matrix(1, 2);
  rep.K_r_paper << 0.1511, 0.3090;

  auto add = [&rep](const std::string& name, double computed, double reference) {
    const double denom = std::max(std::abs(reference), 1e-12);
    rep.table.push_back({name, computed, reference, std::abs(computed - reference) / denom});
  };
  add("beta", rep.beta_exact, 1571.0);
  add("b_k (beta rounded to 1571)", rep.b_rounded_beta, 22.21);
  add("b_tilde_k (beta rounded to 1571)", rep.b_tilde_rounded_beta, 4.442);
  add("b_k (exact beta)", rep.b_exact, 22.21);
  add("b_tilde_k (exact beta)", rep.b_tilde_exact, 4.442);
  add("X[0]", rep.regulator.X(0, 0), 1.0);
  add("X[1]", rep.regulator.X(0, 1), 0.0);
  add("U[0] (omega = pi/10)", rep.regulator.U(0, 0), -0.0489);
  add("U[1] (omega = pi/10)", rep.regulator.U(0, 1), 0.3090);
  add("U[0] (omega = pi/20, as stated in text)", rep.U_at_omega_paper_text(0, 0), -0.0489);
  add("U[1] (omega = pi/20, as stated in text)", rep.U_at_omega_paper_text(0, 1), 0.3090);
  add("K_r[0] (recomputed U - K_x X)", rep.regulator.K_r(0, 0), rep.K_r_paper(0, 0));
  add("K_r[1] (recomputed U - K_x X)", rep.regulator.K_r(0, 1), rep.K_r_paper(0, 1));
  return rep;
}

}  // namespace dpc

#include "dpcontract/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dpc {

double ContractionCertificate::alpha_of_zeta(double zeta, int output_dim) const {
  const double lam0 = lambda_schedule.value(k0);
  if (lam0 <= 0.0) throw std::invalid_argument("alpha_of_zeta: lambda_{k0} must be positive");
  return std::sqrt(static_cast<double>(output_dim)) * (c2 / c1) * zeta / lam0;
}

std::pair<bool, double> check_psd(const Matrix& M, double tol) {
  if (M.rows() != M.cols()) throw std::invalid_argument("check_psd: non-square matrix");
  const Matrix sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  return {min_eig >= -tol, min_eig};
}

namespace {

// Returns the violated-inequality min eigenvalues at one grid point;
// entries with inequality == 0 are unused slots.
void check_point(const SystemModel& model, const ContractionCertificate& cert,
                 const GridPoint& gp, std::size_t idx, double tol,
                 std::vector<GridViolation>& out) {
  const int k = gp.first;
  const Vector& x = gp.second;
  const Matrix p = cert.metric_candidate.evaluate(k, x);
  const Matrix jh = model.observe_jacobian(k, x);
  const Matrix jf = model.step_jacobian(k, x);
  const double lk = cert.lambda_schedule.value(k);
  const double lk1 = cert.lambda_schedule.value(k + 1);
  const Matrix p_next = cert.metric_candidate.evaluate(k + 1, model.step(k, x));
  const Matrix ambient = cert.ambient_metric.at(x);

  const Matrix lhs[3] = {
      p - cert.c1 * cert.c1 * jh.transpose() * jh,
      cert.c2 * cert.c2 * ambient - p,
      lk1 * lk1 * p - lk * lk * jf.transpose() * p_next * jf,
  };
  for (int i = 0; i < 3; ++i) {
    auto [ok, min_eig] = check_psd(lhs[i], tol);
    if (!ok) {
      out.push_back(GridViolation{k, idx, x, i + 1, min_eig});
    }
  }
}

void require_admissible(const ContractionCertificate& cert, const std::vector<GridPoint>& grid) {
  if (!cert.admissible) return;
  for (const auto& gp : grid) {
    if (!cert.admissible(gp.first, gp.second)) {
      throw std::invalid_argument(
          "verify_oib_grid: grid point outside the certificate's admissible region at k=" +
          std::to_string(gp.first));
    }
  }
}

void finalize(GridVerificationReport& report, std::size_t n_points, double tol) {
  std::sort(report.violations.begin(), report.violations.end(),
            [](const GridViolation& a, const GridViolation& b) {
              if (a.k != b.k) return a.k < b.k;
              if (a.grid_index != b.grid_index) return a.grid_index < b.grid_index;
              return a.inequality < b.inequality;
            });
  report.points_checked = n_points;
  report.tolerance = tol;
  report.passed = report.violations.empty();
}

}  // namespace

GridVerificationReport verify_oib_grid_serial(const SystemModel& model,
                                              const ContractionCertificate& cert,
                                              const std::vector<GridPoint>& grid,
                                              double tol) {
  if (grid.empty()) throw std::invalid_argument("verify_oib_grid: empty grid");
  require_admissible(cert, grid);
  GridVerificationReport report;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_point(model, cert, grid[i], i, tol, report.violations);
  }
  finalize(report, grid.size(), tol);
  return report;
}

GridVerificationReport verify_oib_grid(const SystemModel& model,
                                       const ContractionCertificate& cert,
                                       const std::vector<GridPoint>& grid, double tol) {
  if (grid.empty()) throw std::invalid_argument("verify_oib_grid: empty grid");
  require_admissible(cert, grid);
  GridVerificationReport report;
#ifdef _OPENMP
  const int n_threads = omp_get_max_threads();
#else
  const int n_threads = 1;
#endif
  std::vector<std::vector<GridViolation>> local(n_threads);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(grid.size()); ++i) {
#ifdef _OPENMP
    auto& bucket = local[omp_get_thread_num()];
#else
    auto& bucket = local[0];
#endif
    check_point(model, cert, grid[i], static_cast<std::size_t>(i), tol, bucket);
  }
  for (auto& bucket : local) {
    report.violations.insert(report.violations.end(), bucket.begin(), bucket.end());
  }
  finalize(report, grid.size(), tol);
  return report;
}

double theorem3_beta(double lambda, double lambda_bar, double mu) {
  if (lambda_bar <= lambda) {
    throw std::invalid_argument("theorem3_beta: lambda_bar must exceed lambda");
  }
  return lambda_bar * mu / (lambda_bar * lambda_bar - lambda * lambda);
}

ContractionCertificate theorem3_certificate(int n, double lambda, double lambda_bar,
                                            double mu, double theta_bar, int k0) {
  if (lambda <= 0.0 || lambda > 1.0) {
    throw std::invalid_argument("theorem3_certificate: lambda must be in (0, 1]");
  }
  if (mu <= 0.0 || theta_bar <= 0.0) {
    throw std::invalid_argument("theorem3_certificate: mu and theta_bar must be positive");
  }
  const double beta = theorem3_beta(lambda, lambda_bar, mu);
  ContractionCertificate cert;
  cert.c1 = 1.0;
  cert.c2 = std::max(theta_bar * beta, 1.0);
  cert.k0 = k0;
  cert.lambda_schedule = LambdaSchedule::geometric(lambda_bar, k0);
  cert.metric_candidate.evaluate = [n, lambda, beta, k0](int k, const Vector&) {
    Matrix p = Matrix::Identity(n + 1, n + 1);
    p(n, n) = std::pow(lambda, 2.0 * (k - k0)) * beta * beta;
    return p;
  };
  cert.ambient_metric = MetricField::augmented_fisher_rao(n);
  cert.admissible = [n, lambda, mu, theta_bar, k0](int k, const Vector& x) {
    const double z_norm = x.head(n).norm();
    const double theta = x(n);
    return theta > 0.0 && theta <= theta_bar + 1e-12 &&
           z_norm <= mu * std::pow(lambda, k - k0) + 1e-12;
  };
  return cert;
}

bool schur_psd_2block(const Matrix& A11, const Matrix& A12, const Matrix& A22, double tol) {
  if (A11.rows() != A11.cols() || A22.rows() != A22.cols() ||
      A12.rows() != A11.rows() || A12.cols() != A22.cols()) {
    throw std::invalid_argument("schur_psd_2block: block shape mismatch");
  }
  const auto [a11_psd, a11_min] = check_psd(A11, tol);
  if (!a11_psd) {
    throw std::invalid_argument("schur_psd_2block: A11 is not PSD within tol");
  }
  const int n1 = static_cast<int>(A11.rows());
  const int n2 = static_cast<int>(A22.rows());
  Matrix full(n1 + n2, n1 + n2);
  full.topLeftCorner(n1, n1) = A11;
  full.topRightCorner(n1, n2) = A12;
  full.bottomLeftCorner(n2, n1) = A12.transpose();
  full.bottomRightCorner(n2, n2) = A22;
  const bool direct = check_psd(full, tol).first;

  const auto [a22_pd, a22_min] = check_psd(A22, tol);
  if (a22_pd && a22_min > tol) {
    const Matrix schur = A11 - A12 * A22.ldlt().solve(A12.transpose());
    const bool via_schur = check_psd(schur, tol).first;
    if (via_schur != direct) {
      throw std::runtime_error("schur_psd_2block: Schur and eigenvalue routes disagree");
    }
  }
  return direct;
}

std::vector<double> estimate_oib_empirical(
    const SystemModel& model, const MetricField& metric,
    const std::vector<std::pair<ManifoldPoint, ManifoldPoint>>& pairs, int k0, int horizon) {
  if (pairs.empty()) throw std::invalid_argument("estimate_oib_empirical: no pairs");
  std::vector<double> ratios(horizon + 1, 0.0);
  for (const auto& [a, b] : pairs) {
    const double d = distance(a, b, metric);
    if (d <= 0.0) throw std::invalid_argument("estimate_oib_empirical: zero-distance pair");
    const auto gaps = output_deviation(model, a.coords, b.coords, k0, horizon);
    for (std::size_t j = 0; j < gaps.size(); ++j) {
      ratios[j] = std::max(ratios[j], gaps[j] / d);
    }
  }
  return ratios;
}

}  // namespace dpc

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace dpc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Charts with closed-form geodesic distances. No general geodesic solver
/// is provided; every use case in this library lives on one of these.
enum class Chart {
  Euclidean,       // R^n, metric I_n
  PositiveScalar,  // theta > 0, metric 1/theta^2 (Fisher-Rao)
  AffineLine,      // 1-d parameterization of the line x1 = 3*x2, metric 10
};

std::string chart_name(Chart c);

struct ManifoldPoint {
  Vector coords;
  Chart chart = Chart::Euclidean;

  ManifoldPoint() = default;
  ManifoldPoint(Vector c, Chart ch);

  int dim() const { return static_cast<int>(coords.size()); }
};

/// Point-dependent symmetric positive-definite metric matrix.
struct MetricField {
  std::function<Matrix(const Vector&)> evaluate;
  int dim = 0;

  // Evaluates and enforces symmetry/positive-definiteness.
  Matrix at(const Vector& x) const;

  static MetricField identity(int n);
  static MetricField fisher_rao_scalar();  // 1/theta^2 on theta > 0
  static MetricField affine_line();        // constant 10, x2-parameterized
  // diag(I_n, 1/theta^2) on the augmented state (z, theta).
  static MetricField augmented_fisher_rao(int n);
};

/// Uniformly sampled C^1 path gamma(s), s in [0,1].
struct PathCurve {
  std::vector<ManifoldPoint> samples;

  static PathCurve segment(const ManifoldPoint& a, const ManifoldPoint& b, int count);
};

// Midpoint-rule quadrature of the Riemannian length of `path`.
double path_length(const PathCurve& path, const MetricField& metric);

// Closed-form geodesic distance for the built-in charts.
double distance(const ManifoldPoint& a, const ManifoldPoint& b, const MetricField& metric);

bool is_adjacent(const ManifoldPoint& a, const ManifoldPoint& b,
                 const MetricField& metric, double zeta);

// Points at geodesic distance exactly zeta from `center` (adjacency-ball
// boundary). Euclidean: uniformly random directions; the 1-d charts return
// the two boundary points regardless of n_samples.
std::vector<ManifoldPoint> sphere_samples(const ManifoldPoint& center, double zeta,
                                          int n_samples, std::uint64_t seed);

}  // namespace dpc

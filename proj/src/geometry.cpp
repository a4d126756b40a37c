#include "dpcontract/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dpc {

std::string chart_name(Chart c) {
  switch (c) {
    case Chart::Euclidean: return "euclidean";
    case Chart::PositiveScalar: return "positive-scalar";
    case Chart::AffineLine: return "affine-line";
  }
  return "unknown";
}

ManifoldPoint::ManifoldPoint(Vector c, Chart ch) : coords(std::move(c)), chart(ch) {
  if (!coords.allFinite()) {
    throw std::invalid_argument("ManifoldPoint: non-finite coordinates");
  }
  if (chart == Chart::PositiveScalar) {
    if (coords.size() != 1 || coords(0) <= 0.0) {
      throw std::invalid_argument("positive-scalar chart requires a single coordinate theta > 0");
    }
  }
  if (chart == Chart::AffineLine && coords.size() != 1) {
    throw std::invalid_argument("affine-line chart is 1-dimensional");
  }
}

Matrix MetricField::at(const Vector& x) const {
  if (x.size() != dim) {
    throw std::invalid_argument("MetricField: dimension mismatch");
  }
  Matrix m = evaluate(x);
  if (m.rows() != dim || m.cols() != dim) {
    throw std::runtime_error("MetricField: evaluate returned wrong shape");
  }
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-9) {
    throw std::runtime_error("MetricField: asymmetric metric matrix");
  }
  Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::runtime_error("MetricField: metric not positive-definite");
  }
  return sym;
}

MetricField MetricField::identity(int n) {
  return MetricField{[n](const Vector&) { return Matrix::Identity(n, n); }, n};
}

MetricField MetricField::fisher_rao_scalar() {
  return MetricField{[](const Vector& x) {
                       Matrix m(1, 1);
                       m(0, 0) = 1.0 / (x(0) * x(0));
                       return m;
                     },
                     1};
}

MetricField MetricField::affine_line() {
  return MetricField{[](const Vector&) {
                       Matrix m(1, 1);
                       m(0, 0) = 10.0;
                       return m;
                     },
                     1};
}

MetricField MetricField::augmented_fisher_rao(int n) {
  return MetricField{[n](const Vector& x) {
                       Matrix m = Matrix::Identity(n + 1, n + 1);
                       const double theta = x(n);
                       m(n, n) = 1.0 / (theta * theta);
                       return m;
                     },
                     n + 1};
}

PathCurve PathCurve::segment(const ManifoldPoint& a, const ManifoldPoint& b, int count) {
  if (a.chart != b.chart || a.dim() != b.dim()) {
    throw std::invalid_argument("segment endpoints must share chart and dimension");
  }
  if (count < 2) throw std::invalid_argument("segment needs at least 2 samples");
  PathCurve p;
  p.samples.reserve(count);
  for (int j = 0; j < count; ++j) {
    const double s = static_cast<double>(j) / (count - 1);
    p.samples.emplace_back((1.0 - s) * a.coords + s * b.coords, a.chart);
  }
  return p;
}

double path_length(const PathCurve& path, const MetricField& metric) {
  const auto& pts = path.samples;
  if (pts.size() < 2) throw std::invalid_argument("path_length: need >= 2 samples");
  const Chart chart = pts.front().chart;
  double len = 0.0;
  const double ds = 1.0 / (static_cast<double>(pts.size()) - 1.0);
  for (std::size_t j = 0; j + 1 < pts.size(); ++j) {
    if (pts[j + 1].chart != chart) {
      throw std::invalid_argument("path_length: mixed charts along path");
    }
    const Vector tangent = (pts[j + 1].coords - pts[j].coords) / ds;
    const Vector mid = 0.5 * (pts[j].coords + pts[j + 1].coords);
    const Matrix p = metric.at(mid);
    const double q = tangent.dot(p * tangent);
    len += std::sqrt(std::max(q, 0.0)) * ds;
  }
  return len;
}

double distance(const ManifoldPoint& a, const ManifoldPoint& b, const MetricField& metric) {
  if (a.chart != b.chart) {
    throw std::invalid_argument("distance: points on different charts");
  }
  if (a.dim() != b.dim() || a.dim() != metric.dim) {
    throw std::invalid_argument("distance: dimension mismatch");
  }
  switch (a.chart) {
    case Chart::Euclidean:
      return (a.coords - b.coords).norm();
    case Chart::PositiveScalar:
      // max/min ordering keeps the result exactly symmetric in (a, b).
      return std::log(std::max(a.coords(0), b.coords(0)) / std::min(a.coords(0), b.coords(0)));
    case Chart::AffineLine:
      return std::sqrt(10.0) * std::abs(a.coords(0) - b.coords(0));
  }
  throw std::invalid_argument("distance: unsupported chart");
}

bool is_adjacent(const ManifoldPoint& a, const ManifoldPoint& b,
                 const MetricField& metric, double zeta) {
  if (zeta <= 0.0) throw std::invalid_argument("is_adjacent: zeta must be positive");
  return distance(a, b, metric) <= zeta;
}

std::vector<ManifoldPoint> sphere_samples(const ManifoldPoint& center, double zeta,
                                          int n_samples, std::uint64_t seed) {
  if (zeta < 0.0) throw std::invalid_argument("sphere_samples: negative radius");
  std::vector<ManifoldPoint> out;
  switch (center.chart) {
    case Chart::Euclidean: {
      std::mt19937_64 rng(seed);
      std::normal_distribution<double> gauss(0.0, 1.0);
      out.reserve(n_samples);
      for (int i = 0; i < n_samples; ++i) {
        Vector dir(center.dim());
        do {
          for (int j = 0; j < dir.size(); ++j) dir(j) = gauss(rng);
        } while (dir.norm() < 1e-12);
        out.emplace_back(center.coords + zeta * dir.normalized(), Chart::Euclidean);
      }
      break;
    }
    case Chart::PositiveScalar: {
      const double theta = center.coords(0);
      out.emplace_back(Vector::Constant(1, theta * std::exp(zeta)), Chart::PositiveScalar);
      out.emplace_back(Vector::Constant(1, theta * std::exp(-zeta)), Chart::PositiveScalar);
      break;
    }
    case Chart::AffineLine: {
      const double step = zeta / std::sqrt(10.0);
      out.emplace_back(Vector::Constant(1, center.coords(0) + step), Chart::AffineLine);
      out.emplace_back(Vector::Constant(1, center.coords(0) - step), Chart::AffineLine);
      break;
    }
  }
  return out;
}

}  // namespace dpc

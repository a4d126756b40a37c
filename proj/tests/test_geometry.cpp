#include "doctest.h"
#include "dpcontract/geometry.hpp"

#include <cmath>
#include <random>

using namespace dpc;

namespace {

ManifoldPoint euclid(std::initializer_list<double> coords) {
  Vector v(static_cast<int>(coords.size()));
  int i = 0;
  for (double c : coords) v(i++) = c;
  return ManifoldPoint(v, Chart::Euclidean);
}

ManifoldPoint scalar_pt(double theta, Chart chart) {
  return ManifoldPoint(Vector::Constant(1, theta), chart);
}

}  // namespace

TEST_CASE("path_length: Euclidean hypotenuse") {
  auto path = PathCurve::segment(euclid({0, 0}), euclid({3, 4}), 1000);
  CHECK(path_length(path, MetricField::identity(2)) == doctest::Approx(5.0).epsilon(1e-9));
}

TEST_CASE("path_length: Fisher-Rao segment 1 -> e") {
  auto path = PathCurve::segment(scalar_pt(1.0, Chart::PositiveScalar),
                                 scalar_pt(std::exp(1.0), Chart::PositiveScalar), 10000);
  CHECK(std::abs(path_length(path, MetricField::fisher_rao_scalar()) - 1.0) < 1e-6);
}

TEST_CASE("path_length: affine-line segment 0 -> 1") {
  auto path = PathCurve::segment(scalar_pt(0.0, Chart::AffineLine),
                                 scalar_pt(1.0, Chart::AffineLine), 100);
  CHECK(path_length(path, MetricField::affine_line()) ==
        doctest::Approx(std::sqrt(10.0)).epsilon(1e-9));
}

TEST_CASE("distance closed forms") {
  CHECK(distance(euclid({1, 2}), euclid({4, 6}), MetricField::identity(2)) ==
        doctest::Approx(5.0));
  CHECK(distance(scalar_pt(2.0, Chart::PositiveScalar), scalar_pt(8.0, Chart::PositiveScalar),
                 MetricField::fisher_rao_scalar()) == doctest::Approx(std::log(4.0)));
  CHECK(distance(scalar_pt(3.0, Chart::PositiveScalar), scalar_pt(3.0, Chart::PositiveScalar),
                 MetricField::fisher_rao_scalar()) == doctest::Approx(0.0));
}

TEST_CASE("is_adjacent boundary behavior") {
  const auto metric = MetricField::identity(2);
  CHECK(is_adjacent(euclid({0, 0}), euclid({0.6, 0.8}), metric, 1.0));
  CHECK_FALSE(is_adjacent(euclid({0, 0}), euclid({0.6, 0.8}), metric, 0.99));
  CHECK_FALSE(is_adjacent(scalar_pt(1.0, Chart::PositiveScalar),
                          scalar_pt(std::exp(2.0), Chart::PositiveScalar),
                          MetricField::fisher_rao_scalar(), 1.0));
}

TEST_CASE("chart and dimension errors") {
  CHECK_THROWS(distance(euclid({0, 0}), scalar_pt(1.0, Chart::PositiveScalar),
                        MetricField::identity(2)));
  CHECK_THROWS(ManifoldPoint(Vector::Constant(1, -1.0), Chart::PositiveScalar));
  CHECK_THROWS(path_length(PathCurve{}, MetricField::identity(1)));
}

TEST_CASE("metric field rejects asymmetric and indefinite matrices") {
  MetricField bad_sym{[](const Vector&) {
                        Matrix m(2, 2);
                        m << 1, 1, 0, 1;
                        return m;
                      },
                      2};
  CHECK_THROWS(bad_sym.at(Vector::Zero(2)));
  MetricField indefinite{[](const Vector&) {
                           Matrix m(2, 2);
                           m << 1, 2, 2, 1;
                           return m;
                         },
                         2};
  CHECK_THROWS(indefinite.at(Vector::Zero(2)));
}

TEST_CASE("distance symmetry and triangle inequality on random triples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  std::uniform_real_distribution<double> pos(0.1, 10.0);
  const auto eu = MetricField::identity(3);
  const auto fr = MetricField::fisher_rao_scalar();
  for (int trial = 0; trial < 2000; ++trial) {
    Vector a(3), b(3), c(3);
    for (int i = 0; i < 3; ++i) {
      a(i) = uni(rng);
      b(i) = uni(rng);
      c(i) = uni(rng);
    }
    ManifoldPoint pa(a, Chart::Euclidean), pb(b, Chart::Euclidean), pc(c, Chart::Euclidean);
    CHECK(distance(pa, pb, eu) == distance(pb, pa, eu));
    CHECK(distance(pa, pc, eu) <= distance(pa, pb, eu) + distance(pb, pc, eu) + 1e-9);

    auto ta = scalar_pt(pos(rng), Chart::PositiveScalar);
    auto tb = scalar_pt(pos(rng), Chart::PositiveScalar);
    auto tc = scalar_pt(pos(rng), Chart::PositiveScalar);
    CHECK(distance(ta, tb, fr) == distance(tb, ta, fr));
    CHECK(distance(ta, tc, fr) <= distance(ta, tb, fr) + distance(tb, tc, fr) + 1e-9);
  }
}

TEST_CASE("sampled path length dominates distance (infimum property)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  const auto metric = MetricField::identity(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = euclid({uni(rng), uni(rng)});
    auto b = euclid({uni(rng), uni(rng)});
    // Perturbed (non-geodesic) path through a random waypoint.
    auto mid = euclid({0.5 * (a.coords(0) + b.coords(0)) + uni(rng),
                       0.5 * (a.coords(1) + b.coords(1)) + uni(rng)});
    PathCurve path;
    auto first = PathCurve::segment(a, mid, 200).samples;
    auto second = PathCurve::segment(mid, b, 200).samples;
    path.samples = first;
    path.samples.insert(path.samples.end(), second.begin() + 1, second.end());
    CHECK(path_length(path, metric) >= distance(a, b, metric) - 1e-9);
  }
}

TEST_CASE("quadrature converges at second order on a smooth non-geodesic path") {
  const auto metric = MetricField::fisher_rao_scalar();
  auto curved = [](int count) {
    PathCurve p;
    for (int j = 0; j < count; ++j) {
      const double s = static_cast<double>(j) / (count - 1);
      p.samples.push_back(scalar_pt(1.0 + s + 0.3 * std::sin(3.0 * s), Chart::PositiveScalar));
    }
    return p;
  };
  const double fine = path_length(curved(200000), metric);  // reference value
  const double err_n = std::abs(path_length(curved(200), metric) - fine);
  const double err_2n = std::abs(path_length(curved(400), metric) - fine);
  CHECK(err_2n * 2.0 <= err_n);
}

TEST_CASE("sphere samples sit at the requested distance") {
  const auto eu = MetricField::identity(3);
  auto center = euclid({1, 2, 3});
  for (const auto& p : sphere_samples(center, 0.7, 32, 99)) {
    CHECK(distance(center, p, eu) == doctest::Approx(0.7).epsilon(1e-12));
  }
  const auto fr = MetricField::fisher_rao_scalar();
  auto theta = scalar_pt(2.0, Chart::PositiveScalar);
  auto pts = sphere_samples(theta, 0.5, 8, 1);
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    CHECK(distance(theta, p, fr) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

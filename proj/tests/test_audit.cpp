#include "doctest.h"
#include "dpcontract/audit.hpp"
#include "dpcontract/casestudies.hpp"

#include <cmath>
#include <random>

using namespace dpc;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SystemModel scalar_model(double a) {
  return SystemModel::linear(Matrix::Constant(1, 1, a), Matrix::Identity(1, 1));
}

// Fixed-output model used for hand-computed loss values.
SystemModel fixed_outputs(std::vector<double> ya) {
  SystemModel m;
  m.state_dim = 1;
  m.output_dim = 1;
  m.step = [](int, const Vector& x) { return x; };
  m.observe = [ya](int k, const Vector& x) {
    return Vector::Constant(1, x(0) * ya.at(static_cast<std::size_t>(k)));
  };
  return m;
}

}  // namespace

TEST_CASE("privacy_loss hand case: delta y = (1, 0.5), b = (2, 1)") {
  auto model = fixed_outputs({1.0, 0.5});
  auto noise = NoiseSchedule(0, {2.0, 1.0});
  auto report = privacy_loss(model, Vector::Constant(1, 1.0), Vector::Constant(1, 0.0),
                             noise, 0, 1);
  CHECK(report.cumulative_loss[0] == doctest::Approx(0.5));
  CHECK(report.cumulative_loss[1] == doctest::Approx(1.0));
}

TEST_CASE("privacy_loss of identical states is zero and always satisfied") {
  auto noise = NoiseSchedule::constant(0, 1.0, 5);
  auto eps = EpsilonSchedule(0, {0.1, 0.1, 0.1, 0.1, 0.1, 0.1});
  auto report = privacy_loss(scalar_model(0.5), Vector::Constant(1, 2.0),
                             Vector::Constant(1, 2.0), noise, 0, 5, eps);
  CHECK(report.satisfied);
  for (double l : report.cumulative_loss) CHECK(l == 0.0);
}

TEST_CASE("privacy_loss additivity over split horizons") {
  auto model = scalar_model(0.8);
  auto noise = NoiseSchedule::constant(0, 1.3, 10);
  const Vector xa = Vector::Constant(1, 1.0), xb = Vector::Constant(1, 0.4);
  auto full = privacy_loss(model, xa, xb, noise, 0, 10);
  auto head = privacy_loss(model, xa, xb, noise, 0, 4);
  // Restart the tail from the step-5 states.
  const Vector xa5 = simulate(model, xa, 0, 5).states.back();
  const Vector xb5 = simulate(model, xb, 0, 5).states.back();
  auto tail = privacy_loss(model, xa5, xb5, noise, 5, 5);
  CHECK(full.cumulative_loss.back() ==
        doctest::Approx(head.cumulative_loss.back() + tail.cumulative_loss.back())
            .epsilon(1e-12));
}

TEST_CASE("privacy_loss monotone in the diversity") {
  auto model = scalar_model(0.8);
  const Vector xa = Vector::Constant(1, 1.0), xb = Vector::Constant(1, 0.0);
  auto small = privacy_loss(model, xa, xb, NoiseSchedule::constant(0, 1.0, 8), 0, 8);
  auto large = privacy_loss(model, xa, xb, NoiseSchedule::constant(0, 2.0, 8), 0, 8);
  for (std::size_t j = 0; j < small.cumulative_loss.size(); ++j) {
    CHECK(large.cumulative_loss[j] <= small.cumulative_loss[j]);
  }
}

TEST_CASE("laplace interval probabilities") {
  CHECK(laplace_interval_probability({0.0, kInf}, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(laplace_interval_probability({0.0, kInf}, 1.0, 1.0) ==
        doctest::Approx(1.0 - 0.5 * std::exp(-1.0)));
  // Complementary half-lines sum to one.
  const double left = laplace_interval_probability({-kInf, 0.37}, 0.1, 2.3);
  const double right = laplace_interval_probability({0.37, kInf}, 0.1, 2.3);
  CHECK(left + right == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS(laplace_interval_probability({1.0, 0.0}, 0.0, 1.0));
}

TEST_CASE("box_probability product measure") {
  auto noise = NoiseSchedule::constant(0, 1.0, 1);
  BoxSet set;
  set.intervals = {{{0.0, kInf}}, {{0.0, kInf}}};
  std::vector<Vector> centers = {Vector::Zero(1), Vector::Zero(1)};
  CHECK(box_probability(centers, noise, set, 0) == doctest::Approx(0.25));
}

TEST_CASE("verify_dp_on_boxes half-line ratio below composed loss") {
  auto model = fixed_outputs({1.0});
  auto noise = NoiseSchedule(0, {1.0});
  auto eps = EpsilonSchedule(0, {1.0});
  BoxSet half;
  half.intervals = {{{0.0, kInf}}};
  auto result = verify_dp_on_boxes(model, Vector::Constant(1, 1.0), Vector::Constant(1, 0.0),
                                   noise, eps, {half}, 0, 0);
  CHECK(result.within_budget);
  CHECK(result.max_log_ratio ==
        doctest::Approx(std::log((1.0 - 0.5 * std::exp(-1.0)) / 0.5)).epsilon(1e-9));
  CHECK(result.max_log_ratio <= 1.0);  // L_0 = |1 - 0| / 1

  BoxSet full;
  full.intervals = {{{-kInf, kInf}}};
  auto trivial = verify_dp_on_boxes(model, Vector::Constant(1, 1.0), Vector::Constant(1, 0.0),
                                    noise, eps, {full}, 0, 0);
  CHECK(trivial.max_log_ratio == doctest::Approx(0.0));
}

TEST_CASE("adversarial midpoint boxes approach but never exceed the composition sum") {
  auto model = scalar_model(0.7);
  auto noise = NoiseSchedule::constant(0, 0.4, 4);
  auto eps = EpsilonSchedule::from_values(0, {10, 20, 30, 40, 50});
  const Vector xa = Vector::Constant(1, 1.0), xb = Vector::Constant(1, -0.5);
  auto loss = privacy_loss(model, xa, xb, noise, 0, 4);
  const auto ya = simulate(model, xa, 0, 4).outputs;
  const auto yb = simulate(model, xb, 0, 4).outputs;
  // Half-lines keyed at the per-step midpoints, opening toward ya.
  BoxSet boxes;
  for (int j = 0; j <= 4; ++j) {
    const double mid = 0.5 * (ya[j](0) + yb[j](0));
    Interval iv = ya[j](0) >= yb[j](0) ? Interval{mid, kInf} : Interval{-kInf, mid};
    boxes.intervals.push_back({iv});
  }
  auto result = verify_dp_on_boxes(model, xa, xb, noise, eps, {boxes}, 0, 4);
  CHECK(result.max_log_ratio <= loss.cumulative_loss.back() + 1e-9);
  CHECK(result.max_log_ratio > 0.5 * loss.cumulative_loss.back());
}

TEST_CASE("randomized boxes: exact box log-ratio bounded by cumulative loss") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  std::uniform_real_distribution<double> pos(0.3, 2.0);
  auto big_eps = EpsilonSchedule::from_values(0, {100, 200, 300, 400});
  for (int trial = 0; trial < 300; ++trial) {
    auto model = scalar_model(uni(rng) * 0.4);
    const Vector xa = Vector::Constant(1, uni(rng));
    const Vector xb = Vector::Constant(1, uni(rng));
    std::vector<double> b;
    for (int j = 0; j < 4; ++j) b.push_back(pos(rng));
    NoiseSchedule noise(0, b);
    BoxSet set;
    for (int j = 0; j < 4; ++j) {
      const double lo = uni(rng);
      set.intervals.push_back({{lo, lo + pos(rng)}});
    }
    auto loss = privacy_loss(model, xa, xb, noise, 0, 3);
    auto result = verify_dp_on_boxes(model, xa, xb, noise, big_eps, {set}, 0, 3);
    CHECK(result.max_log_ratio <= loss.cumulative_loss.back() + 1e-9);
  }
}

TEST_CASE("worst_pair_search finds the boundary and respects zeta = 0") {
  auto model = scalar_model(0.5);
  auto metric = MetricField::identity(1);
  auto noise = NoiseSchedule::constant(0, 1.0, 6);
  auto eps = EpsilonSchedule::from_values(0, {10, 10, 10, 10, 10, 10, 10});
  ManifoldPoint center(Vector::Constant(1, 1.0), Chart::Euclidean);
  auto report = worst_pair_search(model, metric, center, 1.0, noise, eps, 0, 6, 16);
  // Scalar Euclidean boundary: worst pair is at distance exactly 1.
  CHECK(std::abs(report.worst_xb(0) - 1.0) == doctest::Approx(1.0));
  CHECK(report.worst_loss == doctest::Approx(2.0 * (1.0 - std::pow(0.5, 7))));

  auto zero = worst_pair_search(model, metric, center, 0.0, noise, eps, 0, 6, 16);
  CHECK(zero.worst_loss == 0.0);

  // Loss is monotone in the radius for this linear chain.
  auto half = worst_pair_search(model, metric, center, 0.5, noise, eps, 0, 6, 16);
  CHECK(half.worst_loss < report.worst_loss);
}

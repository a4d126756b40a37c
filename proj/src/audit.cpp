#include "dpcontract/audit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpc {

namespace {

bool lexicographic_less(const Vector& a, const Vector& b) {
  for (int i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return a.size() < b.size();
}

}  // namespace

PrivacyAuditReport privacy_loss(const SystemModel& model, const Vector& xa, const Vector& xb,
                                const NoiseSchedule& noise, int k0, int horizon,
                                const std::optional<EpsilonSchedule>& eps) {
  const auto gaps = output_deviation(model, xa, xb, k0, horizon);
  PrivacyAuditReport report;
  report.k0 = k0;
  report.per_step_loss.resize(gaps.size());
  report.cumulative_loss.resize(gaps.size());
  double cum = 0.0;
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    const double b = noise.at(k0 + static_cast<int>(j));
    report.per_step_loss[j] = gaps[j] / b;
    cum += report.per_step_loss[j];
    report.cumulative_loss[j] = cum;
  }
  report.worst_xa = xa;
  report.worst_xb = xb;
  report.worst_k = k0 + horizon;
  report.worst_loss = cum;
  if (eps) {
    report.budget.resize(gaps.size());
    report.satisfied = true;
    for (std::size_t j = 0; j < gaps.size(); ++j) {
      const double budget = eps->value(k0 + static_cast<int>(j));
      report.budget[j] = budget;
      report.worst_margin = std::min(report.worst_margin, budget - report.cumulative_loss[j]);
      if (report.cumulative_loss[j] > budget * (1.0 + 1e-9)) {
        report.satisfied = false;
      }
    }
  }
  return report;
}

double laplace_cdf(double t, double location, double b) {
  const double z = (t - location) / b;
  return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
}

double laplace_interval_probability(const Interval& s, double location, double b) {
  if (!(s.lo <= s.hi)) throw std::invalid_argument("malformed interval: lo > hi");
  const double hi = std::isinf(s.hi) ? 1.0 : laplace_cdf(s.hi, location, b);
  const double lo = std::isinf(s.lo) && s.lo < 0.0 ? 0.0 : laplace_cdf(s.lo, location, b);
  return std::max(hi - lo, 0.0);
}

double box_probability(const std::vector<Vector>& center_outputs, const NoiseSchedule& noise,
                       const BoxSet& set, int k0) {
  if (set.intervals.size() != center_outputs.size()) {
    throw std::invalid_argument("box_probability: set steps do not match outputs length");
  }
  double p = 1.0;
  for (std::size_t j = 0; j < set.intervals.size(); ++j) {
    const double b = noise.at(k0 + static_cast<int>(j));
    const Vector& y = center_outputs[j];
    if (static_cast<int>(set.intervals[j].size()) != y.size()) {
      throw std::invalid_argument("box_probability: coordinate count mismatch");
    }
    for (int i = 0; i < y.size(); ++i) {
      p *= laplace_interval_probability(set.intervals[j][i], y(i), b);
    }
  }
  return p;
}

BoxRatioResult verify_dp_on_boxes(const SystemModel& model, const Vector& xa, const Vector& xb,
                                  const NoiseSchedule& noise, const EpsilonSchedule& eps,
                                  const std::vector<BoxSet>& sets, int k0, int horizon) {
  const Trajectory ta = simulate(model, xa, k0, horizon);
  const Trajectory tb = simulate(model, xb, k0, horizon);
  BoxRatioResult result;
  result.within_budget = true;
  for (const auto& set : sets) {
    const int steps = static_cast<int>(set.intervals.size());
    if (steps < 1 || steps > horizon + 1) {
      throw std::invalid_argument("verify_dp_on_boxes: box set length out of range");
    }
    std::vector<Vector> ya(ta.outputs.begin(), ta.outputs.begin() + steps);
    std::vector<Vector> yb(tb.outputs.begin(), tb.outputs.begin() + steps);
    const double pa = box_probability(ya, noise, set, k0);
    const double pb = box_probability(yb, noise, set, k0);
    double log_ratio;
    if (pb == 0.0) {
      log_ratio = pa == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      log_ratio = std::log(pa / pb);
    }
    result.max_log_ratio = std::max(result.max_log_ratio, log_ratio);
    if (log_ratio > eps.value(k0 + steps - 1) * (1.0 + 1e-9) + 1e-12) {
      result.within_budget = false;
    }
  }
  return result;
}

PrivacyAuditReport worst_pair_search(const SystemModel& model, const MetricField& metric,
                                     const ManifoldPoint& center, double zeta,
                                     const NoiseSchedule& noise, const EpsilonSchedule& eps,
                                     int k0, int horizon, int n_samples, std::uint64_t seed) {
  if (zeta == 0.0) {
    return privacy_loss(model, center.coords, center.coords, noise, k0, horizon, eps);
  }
  const auto boundary = sphere_samples(center, zeta, n_samples, seed);
  std::vector<PrivacyAuditReport> reports(boundary.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(boundary.size()); ++i) {
    reports[i] =
        privacy_loss(model, center.coords, boundary[i].coords, noise, k0, horizon, eps);
  }
  // Deterministic merge: worst loss first, ties by lexicographic pair order.
  std::size_t best = 0;
  for (std::size_t i = 1; i < reports.size(); ++i) {
    if (reports[i].worst_loss > reports[best].worst_loss ||
        (reports[i].worst_loss == reports[best].worst_loss &&
         lexicographic_less(reports[i].worst_xb, reports[best].worst_xb))) {
      best = i;
    }
  }
  return reports[best];
}

}  // namespace dpc

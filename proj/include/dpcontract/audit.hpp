#pragma once

#include "dpcontract/dynamics.hpp"
#include "dpcontract/geometry.hpp"
#include "dpcontract/mechanism.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace dpc {

struct PrivacyAuditReport {
  int k0 = 0;
  std::vector<double> per_step_loss;    // |delta y_k|_1 / b_k
  std::vector<double> cumulative_loss;  // L_k
  std::vector<double> budget;           // epsilon_k (empty if no schedule supplied)
  bool satisfied = false;
  double worst_margin = std::numeric_limits<double>::infinity();  // min_k (eps_k - L_k)
  Vector worst_xa, worst_xb;
  int worst_k = 0;
  double worst_loss = 0.0;
};

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// Product set S = S_{k0} x ... x S_K where each S_k is a coordinate box.
struct BoxSet {
  // intervals[j][i]: step k0+j, output coordinate i.
  std::vector<std::vector<Interval>> intervals;
};

// Exact worst-case cumulative privacy loss L_k = sum |delta y_i|_1 / b_i
// (the log sup-ratio of the Laplace product mechanism), checked against eps.
PrivacyAuditReport privacy_loss(const SystemModel& model, const Vector& xa, const Vector& xb,
                                const NoiseSchedule& noise, int k0, int horizon,
                                const std::optional<EpsilonSchedule>& eps = std::nullopt);

double laplace_cdf(double t, double location, double b);
double laplace_interval_probability(const Interval& s, double location, double b);

// Exact probability that the noisy output sequence centered at
// `center_outputs` lands in the box set.
double box_probability(const std::vector<Vector>& center_outputs, const NoiseSchedule& noise,
                       const BoxSet& set, int k0);

struct BoxRatioResult {
  double max_log_ratio = -std::numeric_limits<double>::infinity();
  bool within_budget = false;
};

// Checks P(y in S) <= e^{eps_k} P(y' in S) exactly on each supplied box.
BoxRatioResult verify_dp_on_boxes(const SystemModel& model, const Vector& xa, const Vector& xb,
                                  const NoiseSchedule& noise, const EpsilonSchedule& eps,
                                  const std::vector<BoxSet>& sets, int k0, int horizon);

// Worst privacy loss over sampled pairs (center, boundary point at distance
// zeta). The model state is the chart coordinate vector.
PrivacyAuditReport worst_pair_search(const SystemModel& model, const MetricField& metric,
                                     const ManifoldPoint& center, double zeta,
                                     const NoiseSchedule& noise, const EpsilonSchedule& eps,
                                     int k0, int horizon, int n_samples,
                                     std::uint64_t seed = 0x5eedULL);

}  // namespace dpc

#pragma once

#include "dpcontract/geometry.hpp"

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace dpc {

/// Cumulative privacy budget epsilon_k, stored as per-step increments from k0
/// with the convention epsilon_{k0-1} = 0.
class EpsilonSchedule {
 public:
  EpsilonSchedule() = default;
  EpsilonSchedule(int k0, std::vector<double> increments);

  static EpsilonSchedule from_values(int k0, const std::vector<double>& values);
  // epsilon_k = c * sum_{i=k0}^{k} q^{i-k0}
  static EpsilonSchedule geometric(int k0, double c, double q, int horizon);

  int k0() const { return k0_; }
  int horizon() const { return static_cast<int>(increments_.size()) - 1; }
  double increment(int k) const;  // epsilon_k - epsilon_{k-1}
  double value(int k) const;      // epsilon_k

 private:
  int k0_ = 0;
  std::vector<double> increments_;
};

/// Per-step Laplace diversity b_k.
class NoiseSchedule {
 public:
  NoiseSchedule() = default;
  NoiseSchedule(int k0, std::vector<double> diversities);

  static NoiseSchedule constant(int k0, double b, int horizon);

  int k0() const { return k0_; }
  int horizon() const { return static_cast<int>(diversities_.size()) - 1; }
  double at(int k) const;

 private:
  int k0_ = 0;
  std::vector<double> diversities_;
};

// b_k = lambda_k * alpha(zeta) / (epsilon_k - epsilon_{k-1}), tight.
// `safety` >= 1 multiplies every diversity.
NoiseSchedule design_noise(const std::function<double(int)>& lambda_schedule,
                           double alpha_of_zeta, const EpsilonSchedule& eps, int horizon,
                           double safety = 1.0);

// Exponential-decay design: epsilon_k = c * sum q^{i-k0},
// b_k = c_bar * alpha(zeta) * lambda_bar^{k-k0} / (c * q^{k-k0}).
std::pair<NoiseSchedule, EpsilonSchedule> design_noise_exponential(
    double c_bar, double lambda_bar, double alpha_of_zeta, double c, double q, int k0,
    int horizon);

// b_k = lambda_bar^{k-k0} * zeta * sqrt(n) * max(theta_bar*beta, 1) / increment.
NoiseSchedule design_noise_theorem3(int n, double lambda, double lambda_bar, double mu,
                                    double theta_bar, double zeta,
                                    const EpsilonSchedule& eps, int horizon);

// Constant diversity b = sqrt(2)*zeta / (eps_total * row_sum) for the
// single-agent consensus reduction.
double consensus_noise(double zeta, double eps_total, double a_row_sum);

/// Seeded Laplace stream with per-step substreams: draws for step k do not
/// depend on which other steps were sampled.
class LaplaceSampler {
 public:
  explicit LaplaceSampler(std::uint64_t seed, double location = 0.0)
      : seed_(seed), location_(location) {}

  // m i.i.d. Lap(location, b) draws for step k via inverse CDF.
  Vector sample(int k, int m, double b) const;
  Vector sample(int k, int m, const NoiseSchedule& noise) const;

  LaplaceSampler with_substream(std::uint64_t index) const;

  static double inverse_cdf(double u, double location, double b);

 private:
  std::uint64_t seed_ = 0;
  double location_ = 0.0;
};

}  // namespace dpc

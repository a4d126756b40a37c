#include "dpcontract/mechanism.hpp"

#include "dpcontract/contraction.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace dpc {

EpsilonSchedule::EpsilonSchedule(int k0, std::vector<double> increments)
    : k0_(k0), increments_(std::move(increments)) {
  for (std::size_t j = 0; j < increments_.size(); ++j) {
    if (!(increments_[j] >= 0.0) || !std::isfinite(increments_[j])) {
      throw std::invalid_argument("EpsilonSchedule: negative or non-finite increment at k=" +
                                  std::to_string(k0_ + static_cast<int>(j)));
    }
  }
}

EpsilonSchedule EpsilonSchedule::from_values(int k0, const std::vector<double>& values) {
  std::vector<double> inc(values.size());
  double prev = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    inc[j] = values[j] - prev;
    prev = values[j];
  }
  return EpsilonSchedule(k0, std::move(inc));
}

EpsilonSchedule EpsilonSchedule::geometric(int k0, double c, double q, int horizon) {
  if (c <= 0.0 || q <= 0.0) throw std::invalid_argument("geometric schedule: c, q must be positive");
  std::vector<double> inc(horizon + 1);
  for (int j = 0; j <= horizon; ++j) inc[j] = c * std::pow(q, j);
  return EpsilonSchedule(k0, std::move(inc));
}

double EpsilonSchedule::increment(int k) const {
  const int j = k - k0_;
  if (j < 0 || j >= static_cast<int>(increments_.size())) {
    throw std::out_of_range("EpsilonSchedule: step " + std::to_string(k) + " not covered");
  }
  return increments_[j];
}

double EpsilonSchedule::value(int k) const {
  const int j = k - k0_;
  if (j < 0 || j >= static_cast<int>(increments_.size())) {
    throw std::out_of_range("EpsilonSchedule: step " + std::to_string(k) + " not covered");
  }
  double sum = 0.0;
  for (int i = 0; i <= j; ++i) sum += increments_[i];
  return sum;
}

NoiseSchedule::NoiseSchedule(int k0, std::vector<double> diversities)
    : k0_(k0), diversities_(std::move(diversities)) {
  for (std::size_t j = 0; j < diversities_.size(); ++j) {
    if (!(diversities_[j] > 0.0) || !std::isfinite(diversities_[j])) {
      throw std::invalid_argument("NoiseSchedule: diversity must be positive and finite at k=" +
                                  std::to_string(k0_ + static_cast<int>(j)));
    }
  }
}

NoiseSchedule NoiseSchedule::constant(int k0, double b, int horizon) {
  return NoiseSchedule(k0, std::vector<double>(horizon + 1, b));
}

double NoiseSchedule::at(int k) const {
  const int j = k - k0_;
  if (j < 0 || j >= static_cast<int>(diversities_.size())) {
    throw std::out_of_range("NoiseSchedule: step " + std::to_string(k) + " not covered");
  }
  return diversities_[j];
}

NoiseSchedule design_noise(const std::function<double(int)>& lambda_schedule,
                           double alpha_of_zeta, const EpsilonSchedule& eps, int horizon,
                           double safety) {
  if (alpha_of_zeta <= 0.0) throw std::invalid_argument("design_noise: alpha(zeta) must be positive");
  if (safety < 1.0) throw std::invalid_argument("design_noise: safety multiplier must be >= 1");
  const int k0 = eps.k0();
  std::vector<double> b(horizon + 1);
  for (int j = 0; j <= horizon; ++j) {
    const int k = k0 + j;
    const double inc = eps.increment(k);
    if (inc <= 0.0) {
      throw std::invalid_argument("design_noise: epsilon not strictly increasing at k=" +
                                  std::to_string(k));
    }
    b[j] = safety * lambda_schedule(k) * alpha_of_zeta / inc;
  }
  return NoiseSchedule(k0, std::move(b));
}

std::pair<NoiseSchedule, EpsilonSchedule> design_noise_exponential(
    double c_bar, double lambda_bar, double alpha_of_zeta, double c, double q, int k0,
    int horizon) {
  if (lambda_bar <= 0.0 || lambda_bar >= 1.0) {
    throw std::invalid_argument("design_noise_exponential: lambda_bar must be in (0, 1)");
  }
  if (q < lambda_bar || q >= 1.0) {
    throw std::invalid_argument("design_noise_exponential: q must be in [lambda_bar, 1)");
  }
  if (c <= 0.0 || c_bar <= 0.0) {
    throw std::invalid_argument("design_noise_exponential: c and c_bar must be positive");
  }
  EpsilonSchedule eps = EpsilonSchedule::geometric(k0, c, q, horizon);
  std::vector<double> b(horizon + 1);
  for (int j = 0; j <= horizon; ++j) {
    b[j] = c_bar * alpha_of_zeta * std::pow(lambda_bar, j) / (c * std::pow(q, j));
  }
  return {NoiseSchedule(k0, std::move(b)), std::move(eps)};
}

NoiseSchedule design_noise_theorem3(int n, double lambda, double lambda_bar, double mu,
                                    double theta_bar, double zeta,
                                    const EpsilonSchedule& eps, int horizon) {
  if (zeta <= 0.0) throw std::invalid_argument("design_noise_theorem3: zeta must be positive");
  const double beta = theorem3_beta(lambda, lambda_bar, mu);
  const double alpha = std::sqrt(static_cast<double>(n)) * std::max(theta_bar * beta, 1.0);
  const int k0 = eps.k0();
  return design_noise([lambda_bar, k0](int k) { return std::pow(lambda_bar, k - k0); },
                      zeta * alpha, eps, horizon);
}

double consensus_noise(double zeta, double eps_total, double a_row_sum) {
  if (zeta <= 0.0 || eps_total <= 0.0) {
    throw std::invalid_argument("consensus_noise: zeta and epsilon must be positive");
  }
  if (!(a_row_sum > 0.0 && a_row_sum < 1.0)) {
    throw std::invalid_argument("consensus_noise: weight row sum must be in (0, 1)");
  }
  return std::sqrt(2.0) * zeta / (eps_total * a_row_sum);
}

namespace {

// splitmix64, used to derive independent per-step engine seeds.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double LaplaceSampler::inverse_cdf(double u, double location, double b) {
  const double d = u - 0.5;
  const double s = (d > 0.0) - (d < 0.0);
  return location - b * s * std::log1p(-2.0 * std::abs(d));
}

Vector LaplaceSampler::sample(int k, int m, double b) const {
  if (b <= 0.0) throw std::invalid_argument("sample: diversity must be positive");
  std::mt19937_64 rng(mix(seed_ ^ mix(static_cast<std::uint64_t>(k) + 0x51ed270b7a0fULL)));
  std::uniform_real_distribution<double> uni(std::nextafter(0.0, 1.0),
                                             std::nextafter(1.0, 0.0));
  Vector v(m);
  for (int i = 0; i < m; ++i) v(i) = inverse_cdf(uni(rng), location_, b);
  return v;
}

Vector LaplaceSampler::sample(int k, int m, const NoiseSchedule& noise) const {
  return sample(k, m, noise.at(k));
}

LaplaceSampler LaplaceSampler::with_substream(std::uint64_t index) const {
  return LaplaceSampler(mix(seed_ + 0x100000001b3ULL * (index + 1)), location_);
}

}  // namespace dpc

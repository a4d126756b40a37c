// Compares the OpenMP grid-verification kernel against the serial reference.

#include "dpcontract/contraction.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

using namespace dpc;

namespace {

double time_ms(const std::function<GridVerificationReport()>& fn, GridVerificationReport* out) {
  const auto start = std::chrono::steady_clock::now();
  *out = fn();
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int k_max = argc > 1 ? std::atoi(argv[1]) : 20;
  const int z_points = argc > 2 ? std::atoi(argv[2]) : 120;
  const int theta_points = argc > 3 ? std::atoi(argv[3]) : 120;

  const double lambda = 0.9, lambda_bar = 1.0, mu = 1.0, theta_bar = 0.9;
  SystemModel model;
  model.state_dim = 2;
  model.output_dim = 1;
  model.step = [](int, const Vector& x) {
    Vector next(2);
    next(0) = x(1) * x(0);
    next(1) = x(1);
    return next;
  };
  model.observe = [](int, const Vector& x) { return Vector(x.head(1)); };
  model.jac_f = [](int, const Vector& x) {
    Matrix j(2, 2);
    j << x(1), x(0), 0, 1;
    return j;
  };
  model.jac_h = [](int, const Vector&) {
    Matrix j(1, 2);
    j << 1, 0;
    return j;
  };
  auto cert = theorem3_certificate(1, lambda, lambda_bar, mu, theta_bar, 0);

  std::vector<GridPoint> grid;
  for (int k = 0; k < k_max; ++k) {
    const double z_max = mu * std::pow(lambda, k);
    for (int iz = 0; iz < z_points; ++iz) {
      for (int it = 1; it <= theta_points; ++it) {
        Vector x(2);
        x << -z_max + 2.0 * z_max * iz / (z_points - 1), theta_bar * it / theta_points;
        grid.emplace_back(k, x);
      }
    }
  }

  GridVerificationReport serial_rep, parallel_rep;
  const double t_serial =
      time_ms([&] { return verify_oib_grid_serial(model, cert, grid, 1e-9); }, &serial_rep);
  const double t_parallel =
      time_ms([&] { return verify_oib_grid(model, cert, grid, 1e-9); }, &parallel_rep);

  std::printf("grid points:        %zu\n", grid.size());
  std::printf("threads:            %d\n", omp_get_max_threads());
  std::printf("serial reference:   %9.2f ms (passed=%d, violations=%zu)\n", t_serial,
              serial_rep.passed, serial_rep.violations.size());
  std::printf("openmp kernel:      %9.2f ms (passed=%d, violations=%zu)\n", t_parallel,
              parallel_rep.passed, parallel_rep.violations.size());
  std::printf("speedup:            %9.2fx\n", t_serial / t_parallel);
  if (serial_rep.passed != parallel_rep.passed ||
      serial_rep.violations.size() != parallel_rep.violations.size()) {
    std::printf("MISMATCH between serial and parallel results\n");
    return 1;
  }
  return 0;
}

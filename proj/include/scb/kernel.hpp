#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace scb {

// Smoothing kernel with precomputed moment constants.
//   psi = (1/2) * int u^2 K(u) du,  phi = int K(u)^2 du.
// Kernels are immutable after construction and safe to share across threads.
struct Kernel {
  std::function<double(double)> evaluate;
  double k0 = 1.0;   // support half-width: evaluate(u) == 0 for |u| > k0
  double psi = 0.0;
  double phi = 0.0;
  int order = 2;     // 2 for base kernels, 4 for jackknife-induced kernels

  double operator()(double u) const { return evaluate(u); }
};

// (psi, phi) by adaptive composite Simpson quadrature on [-k0, k0].
// Panels are doubled until successive refinements agree to 1e-12.
// breakpoints lists interior kink locations (e.g. the base support edge of a
// jackknife-induced kernel); the quadrature splits there so the doubling
// converges at smooth-integrand rates.
std::pair<double, double> compute_moments(const std::function<double(double)>& kernel_fn,
                                          double k0, const std::vector<double>& breakpoints = {});

// Epanechnikov kernel K(u) = 3/4 (1 - u^2) on [-1, 1].
Kernel make_epanechnikov();

// Uniform kernel K(u) = 1/2 on [-1, 1].
Kernel make_uniform();

// Fourth-order kernel K*(u) = 2 K(u) - K(u / sqrt(2)) / sqrt(2).
// Support widens to sqrt(2) * k0 and the second moment vanishes.
Kernel make_fourth_order(const Kernel& base);

}  // namespace scb

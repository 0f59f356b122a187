#include "scb/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scb {

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = f(a) + f(b);
  for (int i = 1; i < panels; ++i) {
    const double v = f(a + i * h);
    if (!std::isfinite(v)) throw std::runtime_error("kernel: non-finite value during quadrature");
    sum += (i % 2 == 1 ? 4.0 : 2.0) * v;
  }
  return sum * h / 3.0;
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  int panels = 64;
  double prev = simpson(f, a, b, panels);
  for (int iter = 0; iter < 24; ++iter) {
    panels *= 2;
    const double cur = simpson(f, a, b, panels);
    if (std::abs(cur - prev) < 1e-12) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace

std::pair<double, double> compute_moments(const std::function<double(double)>& kernel_fn,
                                          double k0, const std::vector<double>& breakpoints) {
  std::vector<double> edges{-k0};
  for (double b : breakpoints)
    if (b > -k0 && b < k0) edges.push_back(b);
  edges.push_back(k0);
  std::sort(edges.begin(), edges.end());

  auto piecewise = [&edges](const std::function<double(double)>& f) {
    double total = 0.0;
    for (std::size_t i = 1; i < edges.size(); ++i) total += integrate(f, edges[i - 1], edges[i]);
    return total;
  };
  const double psi = 0.5 * piecewise([&](double u) { return u * u * kernel_fn(u); });
  const double phi =
      piecewise([&](double u) { const double k = kernel_fn(u); return k * k; });
  return {psi, phi};
}

Kernel make_epanechnikov() {
  Kernel k;
  k.evaluate = [](double u) { return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0; };
  k.k0 = 1.0;
  k.order = 2;
  std::tie(k.psi, k.phi) = compute_moments(k.evaluate, k.k0);
  return k;
}

Kernel make_uniform() {
  Kernel k;
  k.evaluate = [](double u) { return std::abs(u) <= 1.0 ? 0.5 : 0.0; };
  k.k0 = 1.0;
  k.order = 2;
  std::tie(k.psi, k.phi) = compute_moments(k.evaluate, k.k0);
  return k;
}

Kernel make_fourth_order(const Kernel& base) {
  if (base.order != 2)
    throw std::invalid_argument("make_fourth_order: base kernel must have order 2");
  const double root2 = std::sqrt(2.0);
  Kernel k;
  auto base_eval = base.evaluate;
  k.evaluate = [base_eval, root2](double u) {
    return 2.0 * base_eval(u) - base_eval(u / root2) / root2;
  };
  k.k0 = root2 * base.k0;
  k.order = 4;
  // the base support edge is a kink of K*
  std::tie(k.psi, k.phi) = compute_moments(k.evaluate, k.k0, {-base.k0, base.k0});
  return k;
}

}  // namespace scb

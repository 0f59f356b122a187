#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "scb/kernel.hpp"

using namespace scb;

namespace {

// independent quadrature oracle: composite Simpson with fixed fine panels,
// split at the given points to avoid kinks
double oracle_integral(const std::function<double(double)>& f, double a, double b,
                       std::vector<double> splits = {}) {
  splits.push_back(a);
  splits.push_back(b);
  std::sort(splits.begin(), splits.end());
  double total = 0.0;
  for (std::size_t s = 1; s < splits.size(); ++s) {
    const double lo = splits[s - 1], hi = splits[s];
    if (!(hi > lo) || hi < a || lo > b) continue;
    const int panels = 4096;
    const double h = (hi - lo) / panels;
    double acc = f(lo) + f(hi);
    for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    total += acc * h / 3.0;
  }
  return total;
}

}  // namespace

TEST_CASE("epanechnikov kernel values and moments") {
  const Kernel k = make_epanechnikov();
  CHECK(k.evaluate(0.0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(k.evaluate(2.0) == 0.0);
  CHECK(k.k0 == 1.0);
  CHECK(k.order == 2);
  CHECK(k.psi == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(k.phi == doctest::Approx(0.6).epsilon(1e-10));
}

TEST_CASE("uniform kernel moments") {
  const Kernel k = make_uniform();
  CHECK(k.psi == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(k.phi == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("compute_moments of the zero function") {
  const auto [psi, phi] = compute_moments([](double) { return 0.0; }, 1.0);
  CHECK(psi == 0.0);
  CHECK(phi == 0.0);
}

TEST_CASE("compute_moments rejects non-finite kernels") {
  CHECK_THROWS_AS(compute_moments([](double) { return std::nan(""); }, 1.0),
                  std::runtime_error);
}

TEST_CASE("base kernels integrate to one, are symmetric and compactly supported") {
  for (const Kernel& k : {make_epanechnikov(), make_uniform()}) {
    const double mass = oracle_integral([&](double u) { return k(u); }, -k.k0, k.k0);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
    for (double u : {0.1, 0.37, 0.6, 0.95}) CHECK(k(u) == doctest::Approx(k(-u)).epsilon(1e-14));
    CHECK(k(k.k0 + 1e-9) == 0.0);
    CHECK(k(-k.k0 - 1e-9) == 0.0);
  }
}

TEST_CASE("fourth-order kernel from the epanechnikov base") {
  const Kernel base = make_epanechnikov();
  const Kernel k = make_fourth_order(base);
  const double root2 = std::sqrt(2.0);

  CHECK(k.order == 4);
  CHECK(k.k0 == doctest::Approx(root2).epsilon(1e-14));
  CHECK(k.evaluate(0.0) == doctest::Approx(2.0 * 0.75 - 0.75 / root2).epsilon(1e-12));
  CHECK(k.evaluate(0.0) == doctest::Approx(0.96967).epsilon(1e-4));

  // vanishing second moment and unit mass
  CHECK(std::fabs(k.psi) < 1e-10);
  const double mass = oracle_integral([&](double u) { return k(u); }, -k.k0, k.k0, {-1.0, 1.0});
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(k.phi > 0.0);
  CHECK(k.phi == doctest::Approx(oracle_integral([&](double u) { return k(u) * k(u); }, -k.k0,
                                                 k.k0, {-1.0, 1.0}))
                     .epsilon(1e-10));

  // symmetry of the induced kernel
  for (double u : {0.2, 0.8, 1.1, 1.4}) CHECK(k(u) == doctest::Approx(k(-u)).epsilon(1e-14));
}

TEST_CASE("make_fourth_order rejects an order-4 base") {
  const Kernel k4 = make_fourth_order(make_epanechnikov());
  CHECK_THROWS_AS(make_fourth_order(k4), std::invalid_argument);
}

TEST_CASE("compute_moments matches the independent oracle on the fourth-order kernel") {
  const Kernel k = make_fourth_order(make_epanechnikov());
  const auto [psi, phi] = compute_moments(k.evaluate, k.k0, {-1.0, 1.0});
  const double psi_oracle =
      0.5 * oracle_integral([&](double u) { return u * u * k(u); }, -k.k0, k.k0, {-1.0, 1.0});
  CHECK(psi == doctest::Approx(psi_oracle).epsilon(1e-10));
  CHECK(std::fabs(psi) < 1e-10);
  CHECK(phi == doctest::Approx(0.91508).epsilon(1e-4));
}

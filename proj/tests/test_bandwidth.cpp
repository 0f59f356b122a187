#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "scb/bandwidth.hpp"
#include "scb/processes.hpp"
#include "scb/rng.hpp"

using namespace scb;

namespace {

// dense-matrix oracle for RSC(x; b): build K, X explicitly and evaluate
// (1 + 2 lambda) / trace{K - K X S^-1 X^T K} * (Y - X beta)' K (Y - X beta)
double bf_rsc(const std::vector<double>& xs, const std::vector<double>& ys, const Kernel& kernel,
              double b, double x) {
  const std::size_t n = xs.size();
  std::vector<double> w(n), d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = xs[i] - x;
    w[i] = kernel(d[i] / b);
  }
  // S = X' K X, S* = X' K^2 X with rows (1, d_i)
  double s00 = 0, s01 = 0, s11 = 0, t00 = 0, t01 = 0, t11 = 0, g0 = 0, g1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    s00 += w[i];
    s01 += w[i] * d[i];
    s11 += w[i] * d[i] * d[i];
    t00 += w[i] * w[i];
    t01 += w[i] * w[i] * d[i];
    t11 += w[i] * w[i] * d[i] * d[i];
    g0 += w[i] * ys[i];
    g1 += w[i] * d[i] * ys[i];
  }
  const double det = s00 * s11 - s01 * s01;
  const double i00 = s11 / det, i01 = -s01 / det, i11 = s00 / det;
  const double beta0 = i00 * g0 + i01 * g1;
  const double beta1 = i01 * g0 + i11 * g1;

  // lambda = (S^-1 S* S^-1)_00 via full 2x2 products
  const double m00 = i00 * t00 + i01 * t01, m01 = i00 * t01 + i01 * t11;
  const double lambda = m00 * i00 + m01 * i01;

  // trace{K - H} with H = K X S^-1 X' K built element by element
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double h_ii =
        w[i] * w[i] * (i00 + i01 * d[i] + (i01 + i11 * d[i]) * d[i]);
    trace += w[i] - h_ii;
  }

  double wrss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - beta0 - beta1 * d[i];
    wrss += w[i] * r * r;
  }
  return (1.0 + 2.0 * lambda) / trace * wrss;
}

SampleSet noisy_quadratic(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = 2.0 * rng.uniform() - 1.0;
    y[i] = x[i] * x[i] + 0.3 * rng.normal();
  }
  return SampleSet(x, y, -0.8, 0.8);
}

}  // namespace

TEST_CASE("rsc_at vanishes on exactly linear data") {
  std::vector<double> x, y;
  for (int i = 0; i < 40; ++i) {
    x.push_back(0.05 * i);
    y.push_back(2.0 - 3.0 * x.back());
  }
  const SampleSet data(x, y, 0.2, 1.8);
  const Kernel k = make_epanechnikov();
  for (double t : {0.4, 1.0, 1.6}) CHECK(std::fabs(rsc_at(data, k, 0.5, t)) < 1e-18);
}

TEST_CASE("rsc_at matches the dense-matrix oracle") {
  const std::vector<double> xs{0.05, 0.21, 0.33, 0.48, 0.62, 0.80};
  const std::vector<double> ys{0.9, -0.4, 1.3, 0.2, -1.1, 0.6};
  const SampleSet data(xs, ys, 0.1, 0.7);
  const Kernel k = make_epanechnikov();
  for (double b : {0.6, 1.0})
    for (double x : {0.3, 0.45, 0.55}) {
      const double got = rsc_at(data, k, b, x, 2);
      const double want = bf_rsc(xs, ys, k, b, x);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("rsc_at scales quadratically in the response") {
  const SampleSet data = noisy_quadratic(200, 11);
  std::vector<double> scaled = data.y;
  for (double& v : scaled) v *= 3.0;
  const SampleSet data3(data.x, scaled, data.t1, data.t2);
  const Kernel k = make_epanechnikov();
  const double base = rsc_at(data, k, 0.3, 0.1);
  CHECK(rsc_at(data3, k, 0.3, 0.1) == doctest::Approx(9.0 * base).epsilon(1e-12));
}

TEST_CASE("irsc is a renormalized riemann sum") {
  const SampleSet data = noisy_quadratic(300, 7);
  const Kernel k = make_epanechnikov();

  SUBCASE("single-point grid reduces to RSC times the interval length") {
    RSCConfig config;
    config.integration_grid = {0.2};
    const double want = rsc_at(data, k, 0.25, 0.2, config.min_effective_points) *
                        (data.t2 - data.t1);
    CHECK(irsc(data, k, 0.25, config) == doctest::Approx(want).epsilon(1e-12));
  }
  SUBCASE("degenerate points are dropped and the sum renormalized") {
    RSCConfig with_bad;
    with_bad.integration_grid = {0.0, 100.0};  // no sample near 100
    RSCConfig clean;
    clean.integration_grid = {0.0};
    CHECK(irsc(data, k, 0.25, with_bad) ==
          doctest::Approx(irsc(data, k, 0.25, clean)).epsilon(1e-12));
  }
  SUBCASE("all-degenerate grid throws") {
    RSCConfig config;
    config.integration_grid = {50.0, 100.0};
    CHECK_THROWS_AS(irsc(data, k, 0.05, config), std::runtime_error);
  }
  SUBCASE("empty grid rejected") {
    RSCConfig config;
    CHECK_THROWS_AS(irsc(data, k, 0.25, config), std::invalid_argument);
  }
}

TEST_CASE("select_bandwidth bookkeeping") {
  const SampleSet data = noisy_quadratic(400, 3);
  const Kernel k = make_epanechnikov();

  SUBCASE("single candidate") {
    RSCConfig config;
    config.candidate_bandwidths = {0.3};
    config.integration_grid = even_spaced(data.t1, data.t2, 10);
    const Selection sel = select_bandwidth(data, k, config);
    CHECK(sel.b_star == 0.3);
    CHECK(sel.b_flat == 0.3);
    CHECK(sel.table.size() == 1);
    CHECK(sel.table[0].irsc_value == doctest::Approx(irsc(data, k, 0.3, config)));
  }
  SUBCASE("exact ties keep the earlier, smaller candidate") {
    RSCConfig config;
    config.candidate_bandwidths = {0.3, 0.3};
    config.integration_grid = even_spaced(data.t1, data.t2, 10);
    const Selection sel = select_bandwidth(data, k, config);
    CHECK(sel.table[0].irsc_value == sel.table[1].irsc_value);
    CHECK(sel.b_star == sel.table[0].bandwidth);
  }
  SUBCASE("unevaluable candidates appear as NaN and are excluded") {
    RSCConfig config;
    config.candidate_bandwidths = {1e-9, 0.3};
    config.integration_grid = even_spaced(data.t1, data.t2, 10);
    const Selection sel = select_bandwidth(data, k, config);
    CHECK(std::isnan(sel.table[0].irsc_value));
    CHECK(sel.b_star == 0.3);
  }
  SUBCASE("throws when nothing evaluates") {
    RSCConfig config;
    config.candidate_bandwidths = {1e-9};
    config.integration_grid = even_spaced(data.t1, data.t2, 10);
    CHECK_THROWS_AS(select_bandwidth(data, k, config), std::runtime_error);
  }
}

TEST_CASE("default config selects a sensible bandwidth on the sine model") {
  const GeneratedSeries s = generate(model1_spec(31), 2500);
  std::vector<double> x, y;
  for (const auto& [a, b] : s.lag_pairs) {
    x.push_back(a);
    y.push_back(b);
  }
  const SampleSet data(x, y, -1.1, 1.1);
  const RSCConfig config = default_rsc_config(data);
  CHECK(config.candidate_bandwidths.size() == 20);
  CHECK(config.integration_grid.size() == 50);
  // the IRSC profile is quite flat on this model, so accept a wide but
  // non-degenerate range for the argmin
  const Selection sel = select_bandwidth(data, make_epanechnikov(), config);
  CHECK(sel.b_star >= 0.05);
  CHECK(sel.b_star <= 0.45);
  CHECK(sel.b_flat <= sel.b_star);
}

TEST_CASE("selection is invariant to shifting the response") {
  const SampleSet data = noisy_quadratic(400, 19);
  std::vector<double> shifted = data.y;
  for (double& v : shifted) v += 5.0;
  const SampleSet moved(data.x, shifted, data.t1, data.t2);
  const Kernel k = make_epanechnikov();
  const RSCConfig config = default_rsc_config(data);
  const Selection a = select_bandwidth(data, k, config);
  const Selection b = select_bandwidth(moved, k, config);
  CHECK(a.b_star == b.b_star);
  for (std::size_t i = 0; i < a.table.size(); ++i)
    CHECK(a.table[i].irsc_value == doctest::Approx(b.table[i].irsc_value).epsilon(1e-9));
}

TEST_CASE("fit_pipeline recovers a noiseless line") {
  std::vector<double> x, y;
  Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    x.push_back(2.0 * rng.uniform() - 1.0);
    y.push_back(2.0 + 3.0 * x.back());
  }
  const SampleSet data(x, y, -0.8, 0.8);
  const RSCConfig config = default_rsc_config(data);
  const FitResult fit = fit_pipeline(data, make_epanechnikov(), config, config, 100);

  for (std::size_t j = 0; j < fit.mu.grid.size(); ++j) {
    if (fit.mu.floored(j)) continue;
    CHECK(fit.mu.values[j] == doctest::Approx(2.0 + 3.0 * fit.mu.grid[j]).epsilon(1e-8));
  }
  // residuals pass through the nearest-grid predictor, whose step width
  // (range 2, 100 points, slope 3) leaves squared residuals up to about 9e-4
  for (std::size_t j = 0; j < fit.sigma2.grid.size(); ++j) {
    if (fit.sigma2.floored(j)) continue;
    CHECK(fit.sigma2.values[j] <= 1e-3);
    CHECK(fit.sigma2.values[j] >= 0.0);  // clamp keeps it nonnegative
  }
  CHECK(fit.b_star == fit.mu_selection.b_star);
  CHECK(fit.h_star == fit.sigma_selection.b_star);
}

TEST_CASE("fit_pipeline is deterministic and tracks the truth on the sine model") {
  const GeneratedSeries s = generate(model1_spec(63), 2500);
  std::vector<double> x, y;
  for (const auto& [a, b] : s.lag_pairs) {
    x.push_back(a);
    y.push_back(b);
  }
  const SampleSet data(x, y, -1.1, 1.1);
  const RSCConfig config = default_rsc_config(data);
  const Kernel k = make_epanechnikov();
  const FitResult f1 = fit_pipeline(data, k, config, config);
  const FitResult f2 = fit_pipeline(data, k, config, config);
  CHECK(f1.b_star == f2.b_star);
  CHECK(f1.h_star == f2.h_star);
  CHECK(f1.mu.floor_hits == f2.mu.floor_hits);
  CHECK(f1.sigma2.floor_hits == f2.sigma2.floor_hits);
  for (std::size_t j = 0; j < f1.mu.values.size(); ++j)
    if (!f1.mu.floored(j)) CHECK(f1.mu.values[j] == f2.mu.values[j]);
  for (std::size_t j = 0; j < f1.sigma2.values.size(); ++j)
    if (!f1.sigma2.floored(j)) CHECK(f1.sigma2.values[j] == f2.sigma2.values[j]);
  CHECK(f1.nu_eps == f2.nu_eps);

  // sup error of the bias-corrected mean over T should be modest at n = 2500
  const Predictor mu_hat = curve_predictor(f1.mu);
  const Predictor s2_hat = curve_predictor(f1.sigma2);
  double mu_err = 0.0, s2_err = 0.0;
  for (double t : even_spaced(-1.1, 1.1, 45)) {
    mu_err = std::max(mu_err, std::fabs(mu_hat(t) - 0.9 * std::sin(t)));
    s2_err = std::max(s2_err, std::fabs(s2_hat(t) - 0.16));
  }
  CHECK(mu_err < 0.1);
  CHECK(s2_err < 0.08);
  CHECK(f1.nu_eps == doctest::Approx(2.0).epsilon(0.25));
}

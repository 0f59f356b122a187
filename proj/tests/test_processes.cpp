#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numeric>

#include "scb/processes.hpp"
#include "scb/rng.hpp"

using namespace scb;

namespace {

double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_var(const std::vector<double>& v) {
  const double m = sample_mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

double autocov(const std::vector<double>& v, std::size_t lag) {
  const double m = sample_mean(v);
  double s = 0.0;
  for (std::size_t i = lag; i < v.size(); ++i) s += (v[i] - m) * (v[i - lag] - m);
  return s / static_cast<double>(v.size() - lag);
}

// direct-summation oracle for Xi_n on an explicit theta sequence
double bf_xi(const std::vector<double>& theta, std::size_t n) {
  auto Theta = [&theta](std::size_t m) {
    double s = 0.0;
    for (std::size_t i = 0; i < std::min(m, theta.size()); ++i) s += theta[i];
    return s;
  };
  double v = static_cast<double>(n) * Theta(2 * n) * Theta(2 * n);
  for (std::size_t k = n; k < theta.size() + n; ++k) {
    const double d = Theta(n + k) - Theta(k);
    v += d * d;
  }
  return v;
}

}  // namespace

TEST_CASE("noiseless nonlinear AR stays at the fixed point") {
  NonlinearArParams p;
  p.mu = [](double x) { return 0.9 * std::sin(x); };
  p.sigma = [](double) { return 0.0; };
  p.mu_deriv = [](double x) { return 0.9 * std::cos(x); };
  p.sigma_deriv = [](double) { return 0.0; };
  ProcessSpec spec;
  spec.params = p;
  spec.seed = 1;
  const GeneratedSeries s = generate(spec, 50);
  for (double v : s.values) CHECK(v == 0.0);
  CHECK(s.lag_pairs.size() == 49);
}

TEST_CASE("model 1 stationary range matches the documented 92-95 percent") {
  const GeneratedSeries s = generate(model1_spec(777), 100000);
  std::size_t inside = 0;
  for (double v : s.values)
    if (std::fabs(v) <= 1.1) ++inside;
  const double frac = static_cast<double>(inside) / static_cast<double>(s.values.size());
  CHECK(frac >= 0.92);
  CHECK(frac <= 0.95);
}

TEST_CASE("model 2 variance matches the stationary value") {
  // E Y^2 = a2 / (1 - b2) = 0.4 / 0.8 = 0.5
  const GeneratedSeries s = generate(model2_spec(4242), 1000000);
  CHECK(sample_var(s.values) == doctest::Approx(0.5).epsilon(0.10));
}

TEST_CASE("generate is deterministic and lag pairs line up") {
  const GeneratedSeries a = generate(model1_spec(99), 500);
  const GeneratedSeries b = generate(model1_spec(99), 500);
  CHECK(a.values == b.values);
  const GeneratedSeries c = generate(model1_spec(100), 500);
  CHECK(a.values != c.values);
  for (std::size_t i = 0; i < a.lag_pairs.size(); ++i) {
    CHECK(a.lag_pairs[i].first == a.values[i]);
    CHECK(a.lag_pairs[i].second == a.values[i + 1]);
  }
}

TEST_CASE("generate refuses unstable recursions unless forced") {
  ProcessSpec spec;
  spec.params = ArchParams{0.4, 1.44};  // sigma'(inf) = 1.2 > 1
  spec.seed = 5;
  spec.burn_in = 10;
  CHECK_THROWS_AS(generate(spec, 100), std::runtime_error);
  const GeneratedSeries s = generate(spec, 100, /*force=*/true);
  CHECK(s.values.size() == 100);
}

TEST_CASE("farima coefficients") {
  const std::vector<double> a = farima_coefficients(0.2, 10);
  CHECK(a[0] == 1.0);
  CHECK(a[1] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(a[2] == doctest::Approx(0.2 * 1.2 / 2.0).epsilon(1e-15));
  for (double v : a) CHECK(v > 0.0);

  const std::vector<double> white = farima_coefficients(0.0, 5);
  CHECK(white[0] == 1.0);
  for (std::size_t i = 1; i < white.size(); ++i) CHECK(white[i] == 0.0);

  CHECK_THROWS_AS(farima_coefficients(0.5, 5), std::domain_error);
  CHECK_THROWS_AS(farima_coefficients(0.2, -1), std::invalid_argument);
}

TEST_CASE("farima coefficients match the Stirling limit") {
  const int n = 100000;
  const std::vector<double> a = farima_coefficients(0.2, n);
  const double value = a[static_cast<std::size_t>(n)] * std::tgamma(0.2) *
                       std::pow(static_cast<double>(n), 0.8);
  CHECK(value >= 0.99);
  CHECK(value <= 1.01);
}

TEST_CASE("simulate_linear filter arithmetic") {
  SUBCASE("identity filter returns the innovations") {
    const std::vector<double> eta{0.3, -1.2, 0.5};
    CHECK(simulate_linear({1.0}, eta) == eta);
  }
  SUBCASE("two-tap filter of ones") {
    const std::vector<double> ones(6, 1.0);
    const std::vector<double> out = simulate_linear({1.0, 1.0}, ones);
    CHECK(out.size() == 5);
    for (double v : out) CHECK(v == 2.0);
  }
  SUBCASE("seeded run is deterministic with the right length") {
    const std::vector<double> a = simulate_linear({1.0, 0.5, 0.25}, 100, 7);
    const std::vector<double> b = simulate_linear({1.0, 0.5, 0.25}, 100, 7);
    CHECK(a == b);
    CHECK(a.size() == 100);
  }
  SUBCASE("heavy-tailed innovations have unit variance") {
    const std::vector<double> v = simulate_linear({1.0}, 200000, 9, Innovation::HeavyTailed);
    CHECK(std::fabs(sample_mean(v)) < 0.02);
    CHECK(sample_var(v) == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("long-memory filter decays slower than white noise") {
  const std::vector<double> lrd =
      simulate_linear(farima_coefficients(0.4, 2000), 10000, 2718);
  const std::vector<double> srd = simulate_linear({1.0}, 10000, 2718);
  const double lrd_rho = autocov(lrd, 10) / autocov(lrd, 0);
  const double srd_rho = autocov(srd, 10) / autocov(srd, 0);
  CHECK(lrd_rho > srd_rho);
  // theoretical lag-10 autocorrelation at d = 0.4 is about 0.42
  CHECK(lrd_rho > 0.2);
}

TEST_CASE("xi_n explicit sequences") {
  SUBCASE("zero sequence") {
    ThetaModel t;
    t.values = {0.0, 0.0, 0.0};
    CHECK(xi_n(t, 5).value == 0.0);
    CHECK(xi_n(t, 5).tail_bound == 0.0);
  }
  SUBCASE("matches the direct-summation oracle") {
    ThetaModel t;
    for (int i = 1; i <= 40; ++i) t.values.push_back(1.0 / (i * i));
    for (std::size_t n : {1u, 3u, 10u, 25u})
      CHECK(xi_n(t, n).value == doctest::Approx(bf_xi(t.values, n)).epsilon(1e-12));
  }
  SUBCASE("geometric tail is short-range: Xi_n / n bounded") {
    ThetaModel t;
    for (int i = 1; i <= 2000; ++i) t.values.push_back(std::pow(0.5, i));
    for (std::size_t n : {10u, 100u, 1000u}) {
      const double ratio = xi_n(t, n).value / static_cast<double>(n);
      CHECK(ratio > 0.5);
      CHECK(ratio < 1.5);
    }
  }
  SUBCASE("monotone in pointwise-dominating sequences") {
    ThetaModel small, big;
    for (int i = 1; i <= 50; ++i) {
      small.values.push_back(1.0 / (i + 1));
      big.values.push_back(1.0 / i);
    }
    for (std::size_t n : {2u, 7u, 20u})
      CHECK(xi_n(small, n).value <= xi_n(big, n).value);
  }
  SUBCASE("negative theta rejected") {
    ThetaModel t;
    t.values = {0.5, -0.1};
    CHECK_THROWS_AS(xi_n(t, 2), std::domain_error);
  }
}

TEST_CASE("xi_n parametric tail") {
  SUBCASE("divergent tail rejected") {
    ThetaModel t;
    t.parametric = true;
    t.beta = 0.5;
    CHECK_THROWS_AS(xi_n(t, 10), std::domain_error);
  }
  SUBCASE("consistent with a long explicit truncation") {
    ThetaModel par;
    par.parametric = true;
    par.coefficient = 1.0;
    par.beta = 0.8;
    par.truncation_multiplier = 200;
    const std::size_t n = 50;
    const XiResult r = xi_n(par, n);

    ThetaModel exp;
    for (std::size_t i = 1; i <= par.truncation_multiplier * n + n; ++i)
      exp.values.push_back(std::pow(static_cast<double>(i), -0.8));
    const XiResult e = xi_n(exp, n);
    // the explicit version zeroes the tail; parametric includes it up to K
    CHECK(std::fabs(r.value - e.value) / r.value < 0.01);
    CHECK(r.tail_bound > 0.0);
    CHECK(r.tail_bound < 0.01 * r.value);
  }
}

TEST_CASE("check_stability") {
  SUBCASE("model 1 margin is about 0.1") {
    const StabilityResult r = check_stability(model1_spec(1), 2.0);
    CHECK(r.stable);
    CHECK(r.margin == doctest::Approx(0.1).epsilon(0.02));
  }
  SUBCASE("arch norm q=2 equals the coefficient") {
    ProcessSpec ok;
    ok.params = ArchParams{0.25, 0.81};
    const StabilityResult a = check_stability(ok, 2.0);
    CHECK(a.stable);
    CHECK(a.margin == doctest::Approx(0.1).epsilon(0.05));

    ProcessSpec bad;
    bad.params = ArchParams{0.25, 1.44};
    const StabilityResult b = check_stability(bad, 2.0);
    CHECK(!b.stable);
    CHECK(b.margin == doctest::Approx(-0.2).epsilon(0.05));
  }
  SUBCASE("linear specs are unconditionally stable") {
    ProcessSpec lin;
    lin.params = LinearParams{{1.0, 0.5}, Innovation::Normal};
    CHECK(check_stability(lin, 2.0).stable);
  }
  SUBCASE("finite-difference fallback when derivatives are absent") {
    NonlinearArParams p;
    p.mu = [](double x) { return 0.9 * std::sin(x); };
    p.sigma = [](double) { return 0.4; };
    ProcessSpec spec;
    spec.params = p;
    const StabilityResult r = check_stability(spec, 2.0);
    CHECK(r.stable);
    CHECK(r.margin == doctest::Approx(0.1).epsilon(0.02));
  }
  SUBCASE("general q path agrees with the analytic arch bound") {
    ProcessSpec spec;
    spec.params = ArchParams{0.25, 0.81};
    const StabilityResult r = check_stability(spec, 4.0);
    // ||eta||_4 = 3^{1/4} for a standard normal; 0.9 * 1.3161 = 1.184 > 1
    CHECK(!r.stable);
    CHECK(r.margin == doctest::Approx(1.0 - 0.9 * std::pow(3.0, 0.25)).epsilon(0.05));
  }
}

TEST_CASE("ar1-arch1 spec matches its published coefficients at the mean map") {
  const ProcessSpec spec = ar1_arch1_spec(3);
  const auto& p = std::get<NonlinearArParams>(spec.params);
  CHECK(p.mu(0.0) == doctest::Approx(0.00022).epsilon(1e-12));
  CHECK(p.mu(1.0) == doctest::Approx(0.00022 + 0.138).epsilon(1e-12));
  CHECK(p.sigma(0.0) == doctest::Approx(std::sqrt(0.000058)).epsilon(1e-12));
  CHECK(check_stability(spec, 2.0).stable);
  const GeneratedSeries s = generate(spec, 1000);
  CHECK(s.values.size() == 1000);
}

TEST_CASE("kind names") {
  CHECK(std::string(model1_spec(0).kind_name()) == "nonlinear_ar");
  CHECK(std::string(model2_spec(0).kind_name()) == "arch");
  ProcessSpec lin;
  lin.params = LinearParams{};
  CHECK(std::string(lin.kind_name()) == "linear");
  ProcessSpec fa;
  fa.params = FarimaParams{0.2, 100};
  CHECK(std::string(fa.kind_name()) == "farima");
}

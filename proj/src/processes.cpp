#include "scb/processes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "scb/rng.hpp"

namespace scb {

namespace {

constexpr std::uint64_t kStabilitySeed = 0x57AB1117u;
constexpr int kStabilityDraws = 100000;
constexpr int kStabilityGrid = 201;
constexpr double kStabilityRange = 50.0;

double draw_innovation(Rng& rng, Innovation innovation) {
  if (innovation == Innovation::Normal) return rng.normal();
  // Student t(5) scaled to unit variance: Z / sqrt(chi2_5 / 5) * sqrt(3/5).
  const double z = rng.normal();
  double chi2 = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double g = rng.normal();
    chi2 += g * g;
  }
  return z / std::sqrt(chi2 / 5.0) * std::sqrt(3.0 / 5.0);
}

}  // namespace

const char* ProcessSpec::kind_name() const {
  switch (params.index()) {
    case 0: return "nonlinear_ar";
    case 1: return "arch";
    case 2: return "linear";
    default: return "farima";
  }
}

ProcessSpec model1_spec(std::uint64_t seed) {
  NonlinearArParams p;
  p.mu = [](double x) { return 0.9 * std::sin(x); };
  p.sigma = [](double) { return 0.4; };
  p.mu_deriv = [](double x) { return 0.9 * std::cos(x); };
  p.sigma_deriv = [](double) { return 0.0; };
  ProcessSpec spec;
  spec.params = std::move(p);
  spec.seed = seed;
  return spec;
}

ProcessSpec model2_spec(std::uint64_t seed) {
  ProcessSpec spec;
  spec.params = ArchParams{0.4, 0.2};
  spec.seed = seed;
  return spec;
}

ProcessSpec ar1_arch1_spec(std::uint64_t seed) {
  NonlinearArParams p;
  auto var = [](double x) { return 0.000058 - 0.0011 * x + 0.257 * x * x; };
  p.mu = [](double x) { return 0.00022 + 0.138 * x; };
  p.sigma = [var](double x) { return std::sqrt(var(x)); };
  p.mu_deriv = [](double) { return 0.138; };
  p.sigma_deriv = [var](double x) { return (-0.0011 + 2.0 * 0.257 * x) / (2.0 * std::sqrt(var(x))); };
  ProcessSpec spec;
  spec.params = std::move(p);
  spec.seed = seed;
  return spec;
}

std::vector<double> farima_coefficients(double d, int n_max) {
  if (!(std::fabs(d) < 0.5)) throw std::domain_error("farima_coefficients: |d| < 1/2 required");
  if (n_max < 0) throw std::invalid_argument("farima_coefficients: n_max >= 0");
  std::vector<double> a(static_cast<std::size_t>(n_max) + 1);
  a[0] = 1.0;
  for (int n = 1; n <= n_max; ++n)
    a[static_cast<std::size_t>(n)] =
        a[static_cast<std::size_t>(n) - 1] * (static_cast<double>(n) - 1.0 + d) / static_cast<double>(n);
  return a;
}

std::vector<double> simulate_linear(const std::vector<double>& coeffs,
                                    const std::vector<double>& innovations) {
  if (coeffs.empty()) throw std::invalid_argument("simulate_linear: empty coefficient sequence");
  if (innovations.size() < coeffs.size())
    throw std::invalid_argument("simulate_linear: need at least one innovation per coefficient");
  const std::size_t lag = coeffs.size() - 1;
  const std::size_t n = innovations.size() - lag;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    // eta_{i-j} lives at innovations[i - j + lag]
    for (std::size_t j = 0; j < coeffs.size(); ++j) acc += coeffs[j] * innovations[i + lag - j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> simulate_linear(const std::vector<double>& coeffs, std::size_t n,
                                    std::uint64_t seed, Innovation innovation) {
  if (coeffs.empty()) throw std::invalid_argument("simulate_linear: empty coefficient sequence");
  Rng rng(seed);
  std::vector<double> eta(n + coeffs.size() - 1);
  for (auto& e : eta) e = draw_innovation(rng, innovation);
  return simulate_linear(coeffs, eta);
}

StabilityResult check_stability(const ProcessSpec& spec, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("check_stability: q >= 1 required");
  // Linear filters have no recursion; no contraction condition applies.
  if (std::holds_alternative<LinearParams>(spec.params) ||
      std::holds_alternative<FarimaParams>(spec.params))
    return {true, 1.0};

  std::function<double(double)> mu_d, sigma_d;
  if (const auto* nl = std::get_if<NonlinearArParams>(&spec.params)) {
    mu_d = nl->mu_deriv;
    sigma_d = nl->sigma_deriv;
    if (!mu_d) {
      auto mu = nl->mu;
      mu_d = [mu](double x) {
        const double h = 1e-5 * (1.0 + std::fabs(x));
        return (mu(x + h) - mu(x - h)) / (2.0 * h);
      };
    }
    if (!sigma_d) {
      auto sg = nl->sigma;
      sigma_d = [sg](double x) {
        const double h = 1e-5 * (1.0 + std::fabs(x));
        return (sg(x + h) - sg(x - h)) / (2.0 * h);
      };
    }
  } else {
    const auto& arch = std::get<ArchParams>(spec.params);
    const double a2 = arch.a2, b2 = arch.b2;
    mu_d = [](double) { return 0.0; };
    sigma_d = [a2, b2](double x) { return b2 * x / std::sqrt(a2 + b2 * x * x); };
  }

  Rng rng(kStabilitySeed);
  std::vector<double> eta(kStabilityDraws);
  for (auto& e : eta) e = rng.normal();

  // q = 2 reduces to mu'^2 + 2 mu' sigma' m1 + sigma'^2 m2 with the sample
  // moments m1, m2; this keeps the check O(draws + grid).
  double m1 = 0.0, m2 = 0.0;
  if (q == 2.0) {
    for (double e : eta) {
      m1 += e;
      m2 += e * e;
    }
    m1 /= eta.size();
    m2 /= eta.size();
  }

  double sup = 0.0;
  for (int j = 0; j < kStabilityGrid; ++j) {
    const double x = -kStabilityRange +
                     2.0 * kStabilityRange * static_cast<double>(j) / (kStabilityGrid - 1);
    const double md = mu_d(x);
    const double sd = sigma_d(x);
    double norm;
    if (q == 2.0) {
      norm = std::sqrt(std::max(0.0, md * md + 2.0 * md * sd * m1 + sd * sd * m2));
    } else {
      double acc = 0.0;
      for (double e : eta) acc += std::pow(std::fabs(md + sd * e), q);
      norm = std::pow(acc / eta.size(), 1.0 / q);
    }
    sup = std::max(sup, norm);
  }
  return {sup < 1.0, 1.0 - sup};
}

GeneratedSeries generate(const ProcessSpec& spec, std::size_t n, bool force) {
  if (n < 2) throw std::invalid_argument("generate: n >= 2 required");
  if (spec.burn_in < 0) throw std::invalid_argument("generate: burn_in >= 0 required");

  GeneratedSeries out;
  if (std::holds_alternative<LinearParams>(spec.params)) {
    const auto& p = std::get<LinearParams>(spec.params);
    out.values = simulate_linear(p.coeffs, n, spec.seed, p.innovation);
  } else if (std::holds_alternative<FarimaParams>(spec.params)) {
    const auto& p = std::get<FarimaParams>(spec.params);
    if (!(std::fabs(p.d) < 0.5)) throw std::domain_error("generate: farima |d| < 1/2 required");
    out.values = simulate_linear(farima_coefficients(p.d, p.truncation), n, spec.seed, p.innovation);
  } else {
    if (!force) {
      const StabilityResult st = check_stability(spec, 2.0);
      if (!st.stable)
        throw std::runtime_error(std::string("generate: unstable ") + spec.kind_name() +
                                 " spec (margin " + std::to_string(st.margin) +
                                 "); pass force to override");
    }
    std::function<double(double)> mu, sigma;
    if (const auto* nl = std::get_if<NonlinearArParams>(&spec.params)) {
      mu = nl->mu;
      sigma = nl->sigma;
    } else {
      const auto& arch = std::get<ArchParams>(spec.params);
      mu = [](double) { return 0.0; };
      sigma = [arch](double x) { return std::sqrt(arch.a2 + arch.b2 * x * x); };
    }
    Rng rng(spec.seed);
    double y = 0.0;
    for (int i = 0; i < spec.burn_in; ++i) y = mu(y) + sigma(y) * rng.normal();
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      y = mu(y) + sigma(y) * rng.normal();
      out.values.push_back(y);
    }
  }

  out.lag_pairs.reserve(n - 1);
  for (std::size_t i = 1; i < out.values.size(); ++i)
    out.lag_pairs.emplace_back(out.values[i - 1], out.values[i]);
  return out;
}

XiResult xi_n(const ThetaModel& theta, std::size_t n) {
  if (n == 0) throw std::invalid_argument("xi_n: n >= 1 required");
  XiResult res;

  if (!theta.parametric) {
    const std::vector<double>& t = theta.values;  // t[i] = theta_{i+1}, tail zero
    for (double v : t)
      if (v < 0) throw std::domain_error("xi_n: theta must be nonnegative");
    auto Theta = [&t](std::size_t m) {
      double s = 0.0;
      for (std::size_t i = 0; i < std::min(m, t.size()); ++i) s += t[i];
      return s;
    };
    const double th2n = Theta(2 * n);
    res.value = static_cast<double>(n) * th2n * th2n;
    // Theta_{n+k} - Theta_k vanishes once k >= len(theta).
    for (std::size_t k = n; k < t.size(); ++k) {
      const double diff = Theta(n + k) - Theta(k);
      res.value += diff * diff;
    }
    res.tail_bound = 0.0;
    return res;
  }

  const double beta = theta.beta;
  const double c = theta.coefficient;
  if (!(beta > 0.5)) throw std::domain_error("xi_n: parametric tail requires beta > 1/2");
  if (c < 0) throw std::domain_error("xi_n: coefficient must be nonnegative");

  auto th = [c, beta](std::size_t i) { return c * std::pow(static_cast<double>(i), -beta); };

  double th2n = 0.0;
  for (std::size_t i = 1; i <= 2 * n; ++i) th2n += th(i);
  res.value = static_cast<double>(n) * th2n * th2n;

  const std::size_t K = theta.truncation_multiplier * n;
  // D_k = Theta_{n+k} - Theta_k = sum_{i=k+1}^{n+k} theta_i, updated incrementally.
  double d = 0.0;
  for (std::size_t i = n + 1; i <= 2 * n; ++i) d += th(i);
  for (std::size_t k = n; k <= K; ++k) {
    res.value += d * d;
    d += th(n + k + 1) - th(k + 1);
  }
  // For k > K: D_k <= c n (k+1)^{-beta} <= c n k^{-beta}, so the remainder is
  // bounded by c^2 n^2 sum_{k>K} k^{-2 beta} <= c^2 n^2 K^{1-2 beta}/(2 beta - 1).
  res.tail_bound = c * c * static_cast<double>(n) * static_cast<double>(n) *
                   std::pow(static_cast<double>(K), 1.0 - 2.0 * beta) / (2.0 * beta - 1.0);
  return res;
}

}  // namespace scb

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "scb/sample.hpp"

namespace scb {

enum class Innovation { Normal, HeavyTailed };  // heavy tail: t(5) scaled to unit variance

struct NonlinearArParams {
  std::function<double(double)> mu;
  std::function<double(double)> sigma;
  // closed-form derivatives when available; check_stability falls back to
  // central differences otherwise
  std::function<double(double)> mu_deriv;
  std::function<double(double)> sigma_deriv;
};

// sigma(x) = sqrt(a2 + b2 x^2); stability needs sqrt(b2) ||eta||_q < 1
struct ArchParams {
  double a2 = 0.0;
  double b2 = 0.0;
};

struct LinearParams {
  std::vector<double> coeffs;  // a_0, a_1, ..., truncated MA filter
  Innovation innovation = Innovation::Normal;
};

struct FarimaParams {
  double d = 0.0;
  int truncation = 10000;
  Innovation innovation = Innovation::Normal;
};

struct ProcessSpec {
  std::variant<NonlinearArParams, ArchParams, LinearParams, FarimaParams> params;
  std::uint64_t seed = 0;
  int burn_in = 1000;

  const char* kind_name() const;
};

// Built-in models.
ProcessSpec model1_spec(std::uint64_t seed);  // Y_i = 0.9 sin(Y_{i-1}) + 0.4 eps_i
ProcessSpec model2_spec(std::uint64_t seed);  // Y_i = sqrt(0.4 + 0.2 Y_{i-1}^2) eps_i
// AR(1)-ARCH(1) with the S&P-style published coefficients.
ProcessSpec ar1_arch1_spec(std::uint64_t seed);

struct GeneratedSeries {
  std::vector<double> values;                          // n values
  std::vector<std::pair<double, double>> lag_pairs;    // (Y_{i-1}, Y_i), n-1 pairs
};

// Deterministic simulation of the process; recursions start at 0 and discard
// burn_in values. Unstable recursive specs are refused unless force is set.
GeneratedSeries generate(const ProcessSpec& spec, std::size_t n, bool force = false);

// FARIMA(0, d, 0) MA coefficients a_0..a_N via the Gamma-ratio recursion
// a_n = a_{n-1} (n - 1 + d) / n.
std::vector<double> farima_coefficients(double d, int n_max);

// Moving-average filter of seeded i.i.d. innovations.
std::vector<double> simulate_linear(const std::vector<double>& coeffs, std::size_t n,
                                    std::uint64_t seed, Innovation innovation = Innovation::Normal);
// Test hook: explicit innovations, eta_{i-j} = innovations[i - j + len(coeffs) - 1].
std::vector<double> simulate_linear(const std::vector<double>& coeffs,
                                    const std::vector<double>& innovations);

// Predictive-dependence profile: either an explicit finite sequence (zero
// tail) or the parametric tail theta_i = C i^{-beta}, beta > 1/2.
struct ThetaModel {
  std::vector<double> values;     // explicit mode when nonempty
  bool parametric = false;
  double coefficient = 1.0;       // C
  double beta = 0.0;
  std::size_t truncation_multiplier = 100;  // parametric sum truncates at mult * n
};

struct XiResult {
  double value = 0.0;
  double tail_bound = 0.0;  // bound on the truncated remainder (parametric mode)
};

// Xi_n = n Theta_{2n}^2 + sum_{k>=n} (Theta_{n+k} - Theta_k)^2.
XiResult xi_n(const ThetaModel& theta, std::size_t n);

struct StabilityResult {
  bool stable = false;
  double margin = 0.0;  // 1 - sup_x ||mu'(x) + sigma'(x) eta||_q
};

// Monte Carlo check of the contraction condition over a wide x grid,
// 1e5 seeded eta draws.
StabilityResult check_stability(const ProcessSpec& spec, double q);

}  // namespace scb

#include "scb/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace scb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double sample_sd(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (v.size() - 1));
}

CurveEstimate jackknife_combine(const CurveEstimate& a, const CurveEstimate& b, bool clamp) {
  CurveEstimate out;
  out.grid = a.grid;
  out.bandwidth = a.bandwidth;
  out.density = a.density;
  out.values.resize(a.values.size());
  for (std::size_t j = 0; j < a.values.size(); ++j) {
    if (a.floored(j) || b.floored(j)) {
      out.values[j] = kNaN;
      out.floor_hits.insert(j);
      continue;
    }
    double v = 2.0 * a.values[j] - b.values[j];
    if (clamp && v < kVarianceClamp) v = kVarianceClamp;
    out.values[j] = v;
  }
  return out;
}

}  // namespace

RSCConfig default_rsc_config(const SampleSet& data) {
  RSCConfig config;
  const double href =
      1.06 * sample_sd(data.x) * std::pow(static_cast<double>(data.size()), -0.2);
  const double lo = 0.25 * href, hi = 4.0 * href;
  config.candidate_bandwidths.resize(20);
  for (int i = 0; i < 20; ++i)
    config.candidate_bandwidths[static_cast<std::size_t>(i)] =
        lo * std::pow(hi / lo, static_cast<double>(i) / 19.0);
  config.integration_grid = even_spaced(data.t1, data.t2, 50);
  return config;
}

double rsc_at(const SampleSet& data, const Kernel& kernel, double b, double x,
              int min_effective_points) {
  const LocalLineFit fit = local_linear_fit(data, kernel, b, x, min_effective_points);
  if (!(fit.trace_term > 0))
    throw degenerate_design_error("rsc_at: nonpositive trace term");
  double wrss = 0.0;
  const double radius = kernel.k0 * b;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double d = data.x[i] - x;
    if (std::fabs(d) > radius) continue;
    const double w = kernel(d / b);
    if (w == 0.0) continue;
    const double r = data.y[i] - fit.intercept - fit.slope * d;
    wrss += w * r * r;
  }
  return (1.0 + 2.0 * fit.lambda) / fit.trace_term * wrss;
}

double irsc(const SampleSet& data, const Kernel& kernel, double b, const RSCConfig& config) {
  if (config.integration_grid.empty())
    throw std::invalid_argument("irsc: empty integration grid");
  double sum = 0.0;
  std::size_t kept = 0;
  for (double x : config.integration_grid) {
    try {
      sum += rsc_at(data, kernel, b, x, config.min_effective_points);
      ++kept;
    } catch (const degenerate_design_error&) {
      // dropped; renormalized below
    }
  }
  if (kept == 0) throw std::runtime_error("irsc: every integration point degenerate");
  return sum * (data.t2 - data.t1) / static_cast<double>(kept);
}

Selection select_bandwidth(const SampleSet& data, const Kernel& kernel, const RSCConfig& config) {
  if (config.candidate_bandwidths.empty())
    throw std::invalid_argument("select_bandwidth: no candidates");
  Selection sel;
  double best = std::numeric_limits<double>::infinity();
  for (double b : config.candidate_bandwidths) {
    double value = kNaN;
    try {
      value = irsc(data, kernel, b, config);
    } catch (const std::runtime_error&) {
    }
    sel.table.push_back({b, value});
    if (std::isfinite(value) && value < best) {  // strict: ties keep the smaller b
      best = value;
      sel.b_star = b;
    }
  }
  if (!std::isfinite(best))
    throw std::runtime_error("select_bandwidth: no candidate produced a finite IRSC");
  for (const auto& row : sel.table) {
    if (std::isfinite(row.irsc_value) && row.irsc_value <= kFlatnessFactor * best) {
      sel.b_flat = row.bandwidth;
      break;
    }
  }
  return sel;
}

FitResult fit_pipeline(const SampleSet& data, const Kernel& kernel, const RSCConfig& config_mu,
                       const RSCConfig& config_sigma, int fit_grid_count, bool local_linear) {
  if (fit_grid_count < 2) throw std::invalid_argument("fit_pipeline: fit_grid_count >= 2");
  FitResult result;
  const double floor = default_density_floor(data);
  const auto [xmin_it, xmax_it] = std::minmax_element(data.x.begin(), data.x.end());
  const std::vector<double> grid = even_spaced(*xmin_it, *xmax_it, fit_grid_count);

  auto fit_curve = [&](const SampleSet& d, const std::vector<double>& ys, double b) {
    return local_linear ? local_linear_curve(d, ys, kernel, b, grid, floor)
                        : mean_nw(SampleSet(d.x, ys, d.t1, d.t2), kernel, b, grid, floor);
  };

  // steps (1)-(2): mean bandwidth
  result.mu_selection = select_bandwidth(data, kernel, config_mu);
  result.b_star = result.mu_selection.b_star;

  // steps (3)-(4): fit at b* and sqrt(2) b*, jackknife-combine
  CurveEstimate mu_a = fit_curve(data, data.y, result.b_star);
  CurveEstimate mu_b = fit_curve(data, data.y, std::sqrt(2.0) * result.b_star);
  mu_a.bandwidth = result.b_star;
  result.mu = jackknife_combine(mu_a, mu_b, /*clamp=*/false);

  // step (5): squared residuals through the fitted curve
  const Predictor mu_hat = curve_predictor(result.mu);
  std::vector<double> sq(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data.y[i] - mu_hat(data.x[i]);
    sq[i] = r * r;
  }

  // step (6): variance bandwidth on the squared residuals
  const SampleSet resid(data.x, sq, data.t1, data.t2);
  result.sigma_selection = select_bandwidth(resid, kernel, config_sigma);
  result.h_star = result.sigma_selection.b_star;

  // step (7): fit, combine, clamp, and estimate nu_eps
  CurveEstimate s_a = fit_curve(data, sq, result.h_star);
  CurveEstimate s_b = fit_curve(data, sq, std::sqrt(2.0) * result.h_star);
  s_a.bandwidth = result.h_star;
  result.sigma2 = jackknife_combine(s_a, s_b, /*clamp=*/true);

  const Predictor s2_hat = curve_predictor(result.sigma2);
  const Predictor sd_hat = [s2_hat](double x) {
    return std::sqrt(std::max(s2_hat(x), kVarianceClamp));
  };
  result.nu_eps = nu_epsilon_hat(data, mu_hat, sd_hat);
  return result;
}

}  // namespace scb

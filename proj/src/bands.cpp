#include "scb/bands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace scb {

EvaluationGrid build_grid(double t1, double t2, double k0, double bandwidth) {
  if (!(t1 < t2)) throw std::invalid_argument("build_grid: require t1 < t2");
  if (!(k0 > 0) || !(bandwidth > 0))
    throw std::invalid_argument("build_grid: k0 and bandwidth must be positive");
  const double step = 2.0 * k0 * bandwidth;
  const auto m = static_cast<long>(std::ceil((t2 - t1) / step));
  if (m < 1) throw std::runtime_error("build_grid: bandwidth too large for the interval");
  EvaluationGrid g;
  g.rule = SpacingRule::Bandwidth2k0b;
  g.points.reserve(static_cast<std::size_t>(m));
  for (long j = 0; j < m; ++j) g.points.push_back(t1 + step * static_cast<double>(j));
  return g;
}

EvaluationGrid even_grid(double t1, double t2, int k) {
  if (!(t1 < t2)) throw std::invalid_argument("even_grid: require t1 < t2");
  EvaluationGrid g;
  g.rule = SpacingRule::EvenK;
  g.points = even_spaced(t1, t2, k);
  return g;
}

double gumbel_normalizer(int m, double z) {
  if (m < 2) throw std::invalid_argument("gumbel_normalizer: need m >= 2");
  const double s = std::sqrt(2.0 * std::log(static_cast<double>(m)));
  return s - (0.5 * std::log(std::log(static_cast<double>(m))) + std::log(2.0 * std::sqrt(M_PI))) / s +
         z / s;
}

double asymptotic_cutoff(int m, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("asymptotic_cutoff: alpha in (0,1)");
  const double z = -std::log(std::log(std::pow(1.0 - alpha, -0.5)));
  return gumbel_normalizer(m, z);
}

double finite_sample_cutoff(int m, double alpha) {
  if (m < 1) throw std::invalid_argument("finite_sample_cutoff: need m >= 1");
  if (!(alpha > 0 && alpha < 1))
    throw std::invalid_argument("finite_sample_cutoff: alpha in (0,1)");
  const double p = 0.5 * (1.0 + std::pow(1.0 - alpha, 1.0 / static_cast<double>(m)));
  return inverse_normal_cdf(p);
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

// Acklam's rational approximation to the standard normal quantile.
double acklam(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double q, r;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  q = p - 0.5;
  r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double inverse_normal_cdf(double p) {
  if (!(p > 0 && p < 1)) throw std::domain_error("inverse_normal_cdf: p must lie in (0,1)");
  double x = acklam(p);
  // one Newton step against the erfc-based CDF
  for (int i = 0; i < 2; ++i) {
    const double err = normal_cdf(x) - p;
    const double d = normal_pdf(x);
    if (d <= 0) break;
    x -= err / d;
  }
  return x;
}

namespace {

double pick_cutoff(CutoffKind kind, int m, double alpha) {
  return kind == CutoffKind::Asymptotic ? asymptotic_cutoff(m, alpha)
                                        : finite_sample_cutoff(m, alpha);
}

void assemble(ConfidenceBand& band, const CurveEstimate& fstar, double nb_product,
              double width_const, double density_floor, const char* what) {
  const std::size_t m = band.grid.points.size();
  band.lower.resize(m);
  band.upper.resize(m);
  band.density = fstar.values;
  bool any = false;
  for (std::size_t j = 0; j < m; ++j) {
    const double f = fstar.values[j];
    if (!std::isfinite(band.center[j]) || !(f > density_floor)) {
      band.floor_hits.insert(j);
      band.lower[j] = band.upper[j] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double hw = band.cutoff * width_const * band.scale[j] / std::sqrt(nb_product * f);
    band.lower[j] = band.center[j] - hw;
    band.upper[j] = band.center[j] + hw;
    any = true;
  }
  if (!any) throw std::runtime_error(std::string(what) + ": empty band (all grid points floored)");
}

}  // namespace

ConfidenceBand scb_mean(const SampleSet& data, const Kernel& kernel, double bandwidth,
                        double alpha, CutoffKind cutoff_kind, const EvaluationGrid& grid,
                        const Predictor& sd_predictor, double density_floor) {
  if (kernel.order != 2) throw std::invalid_argument("scb_mean: pass the base (order-2) kernel");
  const Kernel kstar = make_fourth_order(kernel);
  ConfidenceBand band;
  band.grid = grid;
  band.level = 1.0 - alpha;
  band.cutoff_kind = cutoff_kind;
  band.cutoff = pick_cutoff(cutoff_kind, static_cast<int>(grid.m()), alpha);
  band.target = BandTarget::Mean;
  band.bandwidth = bandwidth;
  band.n = data.size();

  const CurveEstimate center = mean_jackknife(data, kernel, bandwidth, grid.points, density_floor);
  const CurveEstimate fstar = density_nw(data, kstar, bandwidth, grid.points);
  band.center = center.values;
  band.scale.resize(grid.m());
  for (std::size_t j = 0; j < grid.m(); ++j) band.scale[j] = sd_predictor(grid.points[j]);
  for (std::size_t j : center.floor_hits) band.floor_hits.insert(j);

  assemble(band, fstar, static_cast<double>(data.size()) * bandwidth, std::sqrt(kstar.phi),
           density_floor, "scb_mean");
  return band;
}

ConfidenceBand scb_variance(const SampleSet& data, const Kernel& kernel, double h, double alpha,
                            CutoffKind cutoff_kind, const EvaluationGrid& grid,
                            const Predictor& mean_predictor, double nu_eps, double density_floor,
                            double studentizer_bandwidth_mult) {
  if (kernel.order != 2) throw std::invalid_argument("scb_variance: pass the base (order-2) kernel");
  if (!(nu_eps > 0)) throw std::invalid_argument("scb_variance: nu_eps must be positive");
  const Kernel kstar = make_fourth_order(kernel);
  ConfidenceBand band;
  band.grid = grid;
  band.level = 1.0 - alpha;
  band.cutoff_kind = cutoff_kind;
  band.cutoff = pick_cutoff(cutoff_kind, static_cast<int>(grid.m()), alpha);
  band.target = BandTarget::Variance;
  band.bandwidth = h;
  band.nu_eps = nu_eps;
  band.n = data.size();

  const CurveEstimate center =
      variance_jackknife(data, mean_predictor, kernel, h, grid.points, density_floor);
  const CurveEstimate stud = variance_residual(
      data, mean_predictor, kernel, studentizer_bandwidth_mult * h, grid.points, density_floor);
  const CurveEstimate fstar = density_nw(data, kstar, h, grid.points);

  band.center = center.values;
  band.scale.resize(grid.m());
  for (std::size_t j = 0; j < grid.m(); ++j) {
    const double s = stud.floored(j) || !std::isfinite(stud.values[j])
                         ? std::numeric_limits<double>::quiet_NaN()
                         : std::max(stud.values[j], kVarianceClamp);
    band.scale[j] = s;
    if (!std::isfinite(band.center[j]) || !std::isfinite(s)) band.floor_hits.insert(j);
  }

  assemble(band, fstar, static_cast<double>(data.size()) * h, std::sqrt(kstar.phi * nu_eps),
           density_floor, "scb_variance");
  return band;
}

Validation validate_parametric(const ConfidenceBand& band,
                               const std::function<double(double)>& candidate) {
  Validation v;
  for (std::size_t j = 0; j < band.grid.points.size(); ++j) {
    if (band.floored(j)) continue;
    const double x = band.grid.points[j];
    const double c = candidate(x);
    if (c < band.lower[j] || c > band.upper[j])
      v.violations.push_back({x, c, band.lower[j], band.upper[j]});
  }
  v.accept = v.violations.empty();
  return v;
}

std::string to_string(CutoffKind kind) {
  return kind == CutoffKind::Asymptotic ? "asymptotic" : "finite_sample";
}
std::string to_string(BandTarget target) {
  return target == BandTarget::Mean ? "mean" : "variance";
}
std::string to_string(SpacingRule rule) {
  return rule == SpacingRule::Bandwidth2k0b ? "bandwidth_2k0b" : "even_k";
}

}  // namespace scb

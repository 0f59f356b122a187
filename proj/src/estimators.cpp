#include "scb/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace scb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Sample reordered by ascending x. Fixing the summation order (ascending x,
// stable in y) makes every estimate invariant under permutation of the input
// pairs, bit for bit.
struct Sorted {
  std::vector<double> x, y;

  explicit Sorted(const SampleSet& data) {
    std::vector<std::size_t> idx(data.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (data.x[a] != data.x[b]) return data.x[a] < data.x[b];
      return data.y[a] < data.y[b];
    });
    x.reserve(idx.size());
    y.reserve(idx.size());
    for (std::size_t i : idx) {
      x.push_back(data.x[i]);
      y.push_back(data.y[i]);
    }
  }

  // [first, last) covering |x_i - center| <= radius
  std::pair<std::size_t, std::size_t> window(double center, double radius) const {
    auto lo = std::lower_bound(x.begin(), x.end(), center - radius);
    auto hi = std::upper_bound(x.begin(), x.end(), center + radius);
    return {static_cast<std::size_t>(lo - x.begin()), static_cast<std::size_t>(hi - x.begin())};
  }
};

struct NwSums {
  double den = 0.0;  // sum of weights
  double num = 0.0;  // sum of weight * response
};

NwSums nw_sums(const Sorted& s, const std::vector<double>& resp, const Kernel& kernel,
               double b, double gx) {
  auto [lo, hi] = s.window(gx, kernel.k0 * b);
  NwSums out;
  for (std::size_t i = lo; i < hi; ++i) {
    const double w = kernel((gx - s.x[i]) / b);
    out.den += w;
    out.num += w * resp[i];
  }
  return out;
}

CurveEstimate nw_ratio_curve(const SampleSet& data, const std::vector<double>& resp_sorted,
                             const Sorted& s, const Kernel& kernel, double bandwidth,
                             const std::vector<double>& grid, double density_floor,
                             const char* what) {
  const double n = static_cast<double>(data.size());
  CurveEstimate out;
  out.grid = grid;
  out.bandwidth = bandwidth;
  out.values.resize(grid.size());
  out.density.resize(grid.size());
  bool any = false;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const NwSums sums = nw_sums(s, resp_sorted, kernel, bandwidth, grid[j]);
    const double f = sums.den / (n * bandwidth);
    out.density[j] = f;
    if (f > density_floor) {
      out.values[j] = sums.num / sums.den;
      any = true;
    } else {
      out.values[j] = kNaN;
      out.floor_hits.insert(j);
    }
  }
  if (!any) throw std::runtime_error(std::string(what) + ": every grid point is below the density floor");
  return out;
}

std::vector<double> squared_residuals(const Sorted& s, const Predictor& mean_predictor) {
  std::vector<double> r2(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double r = s.y[i] - mean_predictor(s.x[i]);
    r2[i] = r * r;
  }
  return r2;
}

}  // namespace

SampleSet::SampleSet(std::vector<double> xs, std::vector<double> ys, double lo, double hi)
    : x(std::move(xs)), y(std::move(ys)), t1(lo), t2(hi) {
  if (x.size() != y.size()) throw std::invalid_argument("SampleSet: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("SampleSet: need at least 2 pairs");
  if (!(t1 < t2)) throw std::invalid_argument("SampleSet: require t1 < t2");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw std::invalid_argument("SampleSet: non-finite coordinate");
}

double SampleSet::range_width() const {
  auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

double default_density_floor(const SampleSet& data) {
  const double w = data.range_width();
  return w > 0 ? 0.05 / w : 0.0;
}

CurveEstimate density_nw(const SampleSet& data, const Kernel& kernel, double bandwidth,
                         const std::vector<double>& grid) {
  if (!(bandwidth > 0)) throw std::invalid_argument("density_nw: bandwidth must be positive");
  if (grid.empty()) throw std::invalid_argument("density_nw: empty grid");
  Sorted s(data);
  const double n = static_cast<double>(data.size());
  CurveEstimate out;
  out.grid = grid;
  out.bandwidth = bandwidth;
  out.values.resize(grid.size());
  out.density.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const NwSums sums = nw_sums(s, s.y, kernel, bandwidth, grid[j]);
    out.values[j] = sums.den / (n * bandwidth);
    out.density[j] = out.values[j];
  }
  return out;
}

CurveEstimate mean_nw(const SampleSet& data, const Kernel& kernel, double bandwidth,
                      const std::vector<double>& grid, double density_floor) {
  if (!(bandwidth > 0)) throw std::invalid_argument("mean_nw: bandwidth must be positive");
  Sorted s(data);
  return nw_ratio_curve(data, s.y, s, kernel, bandwidth, grid, density_floor, "mean_nw");
}

namespace {

CurveEstimate jackknife_combine(const CurveEstimate& narrow, const CurveEstimate& wide,
                                bool clamp) {
  CurveEstimate out = narrow;
  for (std::size_t j = 0; j < out.grid.size(); ++j) {
    if (narrow.floored(j) || wide.floored(j)) {
      out.values[j] = kNaN;
      out.floor_hits.insert(j);
      continue;
    }
    double v = 2.0 * narrow.values[j] - wide.values[j];
    if (clamp && v < kVarianceClamp) {
      v = kVarianceClamp;
      out.floor_hits.insert(j);
    }
    out.values[j] = v;
  }
  return out;
}

}  // namespace

CurveEstimate mean_jackknife(const SampleSet& data, const Kernel& kernel, double bandwidth,
                             const std::vector<double>& grid, double density_floor) {
  if (!(bandwidth > 0))
    throw std::invalid_argument("mean_jackknife: bandwidth must be positive");
  if (grid.empty()) throw std::invalid_argument("mean_jackknife: empty grid");
  // Combine the kernel sums, not the ratios: the numerator/denominator
  // assembly is exactly the Nadaraya-Watson estimator under the induced
  // fourth-order kernel, while 2 mu(b) - mu(sqrt(2) b) of the ratios only
  // agrees asymptotically.
  const double root2 = std::sqrt(2.0);
  Sorted s(data);
  const double n = static_cast<double>(data.size());
  CurveEstimate out;
  out.grid = grid;
  out.bandwidth = bandwidth;
  out.values.resize(grid.size());
  out.density.resize(grid.size());
  bool any = false;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const NwSums narrow = nw_sums(s, s.y, kernel, bandwidth, grid[j]);
    const NwSums wide = nw_sums(s, s.y, kernel, root2 * bandwidth, grid[j]);
    const double den = 2.0 * narrow.den / (n * bandwidth) - wide.den / (n * root2 * bandwidth);
    const double num = 2.0 * narrow.num / (n * bandwidth) - wide.num / (n * root2 * bandwidth);
    out.density[j] = den;  // density under the induced fourth-order kernel
    if (den > density_floor) {
      out.values[j] = num / den;
      any = true;
    } else {
      out.values[j] = kNaN;
      out.floor_hits.insert(j);
    }
  }
  if (!any)
    throw std::runtime_error("mean_jackknife: every grid point is below the density floor");
  return out;
}

LocalLineFit local_linear_fit(const SampleSet& data, const Kernel& kernel, double bandwidth,
                              double x, int min_points) {
  if (!(bandwidth > 0)) throw std::invalid_argument("local_linear_fit: bandwidth must be positive");
  Sorted s(data);
  auto [lo, hi] = s.window(x, kernel.k0 * bandwidth);

  // S = X^T K X and S* = X^T K^2 X with rows (1, x_i - x).
  double s0 = 0, s1 = 0, s2 = 0;        // S entries
  double t0 = 0, t1 = 0, t2 = 0;        // S* entries
  double ky0 = 0, ky1 = 0;              // X^T K Y
  int weighted = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double d = s.x[i] - x;
    const double w = kernel(d / bandwidth);
    if (w == 0.0) continue;
    ++weighted;
    s0 += w;
    s1 += w * d;
    s2 += w * d * d;
    const double w2 = w * w;
    t0 += w2;
    t1 += w2 * d;
    t2 += w2 * d * d;
    ky0 += w * s.y[i];
    ky1 += w * d * s.y[i];
  }
  if (weighted < min_points)
    throw degenerate_design_error("local_linear_fit: fewer weighted points than required");

  const double det = s0 * s2 - s1 * s1;
  // condition number of the symmetric 2x2 via its eigenvalues
  const double tr = s0 + s2;
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  const double lam_max = 0.5 * (tr + disc);
  const double lam_min = 0.5 * (tr - disc);
  if (!(lam_min > 0) || lam_max / lam_min > 1e12)
    throw degenerate_design_error("local_linear_fit: singular local design");

  const double inv00 = s2 / det, inv01 = -s1 / det, inv11 = s0 / det;
  LocalLineFit fit;
  fit.intercept = inv00 * ky0 + inv01 * ky1;
  fit.slope = inv01 * ky0 + inv11 * ky1;

  // lambda = (S^-1 S* S^-1)_00
  const double a0 = inv00 * t0 + inv01 * t1;  // first row of S^-1 S*
  const double a1 = inv00 * t1 + inv01 * t2;
  fit.lambda = a0 * inv00 + a1 * inv01;

  // trace{K - K X S^-1 X^T K} = sum w_i - sum w_i^2 row_i S^-1 row_i^T
  double hat = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double d = s.x[i] - x;
    const double w = kernel(d / bandwidth);
    if (w == 0.0) continue;
    hat += w * w * (inv00 + 2.0 * inv01 * d + inv11 * d * d);
  }
  fit.trace_term = s0 - hat;
  return fit;
}

CurveEstimate local_linear_curve(const SampleSet& data, const std::vector<double>& ys,
                                 const Kernel& kernel, double bandwidth,
                                 const std::vector<double>& grid, double density_floor) {
  if (ys.size() != data.size()) throw std::invalid_argument("local_linear_curve: length mismatch");
  SampleSet work(data.x, ys, data.t1, data.t2);
  const CurveEstimate dens = density_nw(work, kernel, bandwidth, grid);
  CurveEstimate out;
  out.grid = grid;
  out.bandwidth = bandwidth;
  out.density = dens.values;
  out.values.resize(grid.size());
  bool any = false;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (out.density[j] <= density_floor) {
      out.values[j] = kNaN;
      out.floor_hits.insert(j);
      continue;
    }
    try {
      out.values[j] = local_linear_fit(work, kernel, bandwidth, grid[j]).intercept;
      any = true;
    } catch (const degenerate_design_error&) {
      out.values[j] = kNaN;
      out.floor_hits.insert(j);
    }
  }
  if (!any) throw std::runtime_error("local_linear_curve: every grid point degenerate or floored");
  return out;
}

CurveEstimate variance_residual(const SampleSet& data, const Predictor& mean_predictor,
                                const Kernel& kernel, double h, const std::vector<double>& grid,
                                double density_floor) {
  if (!(h > 0)) throw std::invalid_argument("variance_residual: bandwidth must be positive");
  Sorted s(data);
  const std::vector<double> r2 = squared_residuals(s, mean_predictor);
  return nw_ratio_curve(data, r2, s, kernel, h, grid, density_floor, "variance_residual");
}

CurveEstimate variance_jackknife(const SampleSet& data, const Predictor& mean_predictor,
                                 const Kernel& kernel, double h, const std::vector<double>& grid,
                                 double density_floor) {
  const CurveEstimate a = variance_residual(data, mean_predictor, kernel, h, grid, density_floor);
  const CurveEstimate b =
      variance_residual(data, mean_predictor, kernel, std::sqrt(2.0) * h, grid, density_floor);
  return jackknife_combine(a, b, /*clamp=*/true);
}

double nu_epsilon_hat(const SampleSet& data, const Predictor& mean_predictor,
                      const Predictor& sd_predictor) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.x[i] < data.t1 || data.x[i] > data.t2) continue;
    const double sd = sd_predictor(data.x[i]);
    if (!(sd > 0)) throw std::invalid_argument("nu_epsilon_hat: nonpositive sd inside T");
    const double e = (data.y[i] - mean_predictor(data.x[i])) / sd;
    const double e2 = e * e;
    sum += e2 * e2;
    ++count;
  }
  if (count == 0) throw std::runtime_error("nu_epsilon_hat: no samples inside T");
  return sum / static_cast<double>(count) - 1.0;
}

double nearest_grid_predict(const CurveEstimate& curve, double x) {
  const auto& g = curve.grid;
  if (g.empty()) throw std::invalid_argument("nearest_grid_predict: empty curve");
  // candidates by expanding outward from the insertion point, skipping floored
  auto it = std::lower_bound(g.begin(), g.end(), x);
  std::ptrdiff_t right = it - g.begin();
  std::ptrdiff_t left = right - 1;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
  // expand outward in nondecreasing distance; at equal distance take the
  // smaller index, so the first non-floored candidate is the answer
  while (left >= 0 || right < n) {
    const double dl = left >= 0 ? std::abs(x - g[left]) : std::numeric_limits<double>::infinity();
    const double dr = right < n ? std::abs(g[right] - x) : std::numeric_limits<double>::infinity();
    std::ptrdiff_t cand;
    if (dl <= dr) { cand = left; --left; } else { cand = right; ++right; }
    if (!curve.floored(static_cast<std::size_t>(cand)))
      return curve.values[static_cast<std::size_t>(cand)];
  }
  throw std::runtime_error("nearest_grid_predict: no non-floored grid point");
}

Predictor curve_predictor(const CurveEstimate& curve) {
  return [curve](double x) { return nearest_grid_predict(curve, x); };
}

std::vector<double> even_spaced(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("even_spaced: need at least 2 points");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return g;
}

}  // namespace scb

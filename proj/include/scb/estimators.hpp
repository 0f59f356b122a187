#pragma once

#include <functional>

#include "scb/kernel.hpp"
#include "scb/sample.hpp"

namespace scb {

using Predictor = std::function<double(double)>;

// Kernel density estimate f_hat(x) = (1/(n b)) sum K((x - x_i)/b) on the grid.
// Never floors; consumers apply the floor.
CurveEstimate density_nw(const SampleSet& data, const Kernel& kernel, double bandwidth,
                         const std::vector<double>& grid);

// Nadaraya-Watson conditional mean. Grid points whose density estimate is at
// or below density_floor get a NaN value and a floor_hits entry.
// Throws if every grid point floors.
CurveEstimate mean_nw(const SampleSet& data, const Kernel& kernel, double bandwidth,
                      const std::vector<double>& grid, double density_floor);

// Jackknife bias-corrected mean: 2 * mean(b) - mean(sqrt(2) b).
// Equivalent to mean_nw with the fourth-order kernel of make_fourth_order.
CurveEstimate mean_jackknife(const SampleSet& data, const Kernel& kernel, double bandwidth,
                             const std::vector<double>& grid, double density_floor);

struct LocalLineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double lambda = 0.0;      // first diagonal of S^-1 S* S^-1
  double trace_term = 0.0;  // trace{K - K X S^-1 X^T K}
};

// Weighted least-squares line through the kernel window at x.
// Throws degenerate_design_error when fewer than min_points samples carry
// weight or the 2x2 normal matrix has condition number above 1e12.
LocalLineFit local_linear_fit(const SampleSet& data, const Kernel& kernel, double bandwidth,
                              double x, int min_points = 2);

// Local linear regression of ys on data.x evaluated over the grid; degenerate
// designs become floored points.
CurveEstimate local_linear_curve(const SampleSet& data, const std::vector<double>& ys,
                                 const Kernel& kernel, double bandwidth,
                                 const std::vector<double>& grid, double density_floor);

// Residual-based conditional variance: NW smooth of (y_i - mu(x_i))^2.
CurveEstimate variance_residual(const SampleSet& data, const Predictor& mean_predictor,
                                const Kernel& kernel, double h, const std::vector<double>& grid,
                                double density_floor);

// 2 * sigma2(h) - sigma2(sqrt(2) h); values below 1e-12 are clamped to 1e-12
// and flagged (the combination can go negative).
CurveEstimate variance_jackknife(const SampleSet& data, const Predictor& mean_predictor,
                                 const Kernel& kernel, double h, const std::vector<double>& grid,
                                 double density_floor);

// Fourth-moment estimator: mean of eps_hat^4 over samples with x_i in T, minus 1,
// with eps_hat_i = (y_i - mu(x_i)) / sd(x_i).
double nu_epsilon_hat(const SampleSet& data, const Predictor& mean_predictor,
                      const Predictor& sd_predictor);

// Value at the nearest non-floored grid point; ties break toward the smaller
// grid index.
double nearest_grid_predict(const CurveEstimate& curve, double x);

// Predictor wrapping nearest_grid_predict over a fitted curve.
Predictor curve_predictor(const CurveEstimate& curve);

// Evenly spaced fit grid (the 300-point prediction trick).
std::vector<double> even_spaced(double lo, double hi, int count);

constexpr double kVarianceClamp = 1e-12;

}  // namespace scb

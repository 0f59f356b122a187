#pragma once

#include <vector>

#include "scb/estimators.hpp"
#include "scb/kernel.hpp"
#include "scb/sample.hpp"

namespace scb {

struct RSCConfig {
  std::vector<double> candidate_bandwidths;  // increasing positive reals
  std::vector<double> integration_grid;      // points inside [t1, t2]
  int min_effective_points = 10;
};

// 20 log-spaced candidates over [0.25, 4] x the normal-reference bandwidth
// 1.06 sd(x) n^{-1/5}, and a 50-point even integration grid over [t1, t2].
RSCConfig default_rsc_config(const SampleSet& data);

// RSC(x; b) = (1 + 2 lambda) / trace{K - K X S^-1 X^T K} * (Y - X beta)' K (Y - X beta).
// Degenerate local designs raise degenerate_design_error (the skip signal).
double rsc_at(const SampleSet& data, const Kernel& kernel, double b, double x,
              int min_effective_points = 10);

// Riemann sum of rsc_at over the integration grid; degenerate points are
// dropped and the sum renormalized by the covered length. Throws when every
// point is degenerate.
double irsc(const SampleSet& data, const Kernel& kernel, double b, const RSCConfig& config);

struct SelectionRow {
  double bandwidth = 0.0;
  double irsc_value = 0.0;  // NaN when every integration point was degenerate
};

constexpr double kFlatnessFactor = 1.08;

struct Selection {
  double b_star = 0.0;  // argmin of IRSC; ties break toward the smaller bandwidth
  double b_flat = 0.0;  // smallest candidate with IRSC <= kFlatnessFactor * min
  std::vector<SelectionRow> table;
};

// Candidates whose IRSC cannot be evaluated appear in the table as NaN and are
// excluded from the argmin; throws only if no candidate evaluates.
Selection select_bandwidth(const SampleSet& data, const Kernel& kernel, const RSCConfig& config);

struct FitResult {
  CurveEstimate mu;      // bias-corrected mean curve on the fit grid
  CurveEstimate sigma2;  // bias-corrected variance curve (clamped below)
  double b_star = 0.0;
  double h_star = 0.0;
  double nu_eps = 0.0;
  Selection mu_selection;
  Selection sigma_selection;
};

// The seven-step pipeline: select b*, fit the mean at b* and sqrt(2) b*
// (local linear by default, local constant otherwise), jackknife-combine,
// form squared residuals, select h* on them, fit and combine the variance,
// estimate nu_eps from the studentized residuals.
FitResult fit_pipeline(const SampleSet& data, const Kernel& kernel, const RSCConfig& config_mu,
                       const RSCConfig& config_sigma, int fit_grid_count = 300,
                       bool local_linear = true);

}  // namespace scb

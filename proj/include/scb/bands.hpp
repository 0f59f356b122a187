#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "scb/estimators.hpp"
#include "scb/kernel.hpp"
#include "scb/sample.hpp"

namespace scb {

enum class SpacingRule { Bandwidth2k0b, EvenK };
enum class CutoffKind { Asymptotic, FiniteSample };
enum class BandTarget { Mean, Variance };

struct EvaluationGrid {
  std::vector<double> points;
  SpacingRule rule = SpacingRule::EvenK;

  std::size_t m() const { return points.size(); }
};

// Theorem-style grid x_j = T1 + 2 k0 b j with m = ceil((T2-T1)/(2 k0 b)).
EvaluationGrid build_grid(double t1, double t2, double k0, double bandwidth);

// k points evenly spaced over [t1, t2] inclusive.
EvaluationGrid even_grid(double t1, double t2, int k);

// Extreme-value cutoff B_m(z_alpha) with z_alpha = -log log[(1-alpha)^{-1/2}].
double asymptotic_cutoff(int m, double alpha);

// Normalizing sequence B_m(z) of the Gumbel limit.
double gumbel_normalizer(int m, double z);

// q* with P{|Z| <= q*} = (1-alpha)^{1/m}: the exact (1-alpha) quantile of the
// max of m absolute standard normals.
double finite_sample_cutoff(int m, double alpha);

// Phi^{-1}(p), absolute error below 1e-9 (rational approximation plus a
// Newton step against std::erfc).
double inverse_normal_cdf(double p);

struct ConfidenceBand {
  EvaluationGrid grid;
  std::vector<double> center, lower, upper;
  std::vector<double> scale;    // studentizer values used in the half-width
  std::vector<double> density;  // fourth-order-kernel density at the grid
  double level = 0.95;
  double cutoff = 0.0;
  CutoffKind cutoff_kind = CutoffKind::FiniteSample;
  BandTarget target = BandTarget::Mean;
  std::set<std::size_t> floor_hits;
  // metadata
  double bandwidth = 0.0;
  double nu_eps = 0.0;  // variance bands only
  std::size_t n = 0;

  bool floored(std::size_t i) const { return floor_hits.count(i) != 0; }
};

// SCB for the mean: jackknife center, width
//   cutoff * sqrt(phi_{K*}) * sd(x) / sqrt(n b f*(x)),
// with f* the density under the induced fourth-order kernel.
ConfidenceBand scb_mean(const SampleSet& data, const Kernel& kernel, double bandwidth,
                        double alpha, CutoffKind cutoff_kind, const EvaluationGrid& grid,
                        const Predictor& sd_predictor, double density_floor);

// SCB for the variance: jackknife-corrected center, width
//   cutoff * sqrt(phi_{K*} nu_eps) * sigma2_stud(x) / sqrt(n h f*(x)),
// studentized by the plain residual smoother at bandwidth
// studentizer_bandwidth_mult * h (a smoother, uniformly consistent scale;
// self-studentizing by the corrected center materially under-covers).
ConfidenceBand scb_variance(const SampleSet& data, const Kernel& kernel, double h, double alpha,
                            CutoffKind cutoff_kind, const EvaluationGrid& grid,
                            const Predictor& mean_predictor, double nu_eps, double density_floor,
                            double studentizer_bandwidth_mult = 2.0);

struct Violation {
  double x = 0.0;
  double candidate = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct Validation {
  bool accept = false;
  std::vector<Violation> violations;
};

// Accept iff the candidate lies inside [lower, upper] at every non-floored
// grid point.
Validation validate_parametric(const ConfidenceBand& band,
                               const std::function<double(double)>& candidate);

std::string to_string(CutoffKind kind);
std::string to_string(BandTarget target);
std::string to_string(SpacingRule rule);

}  // namespace scb

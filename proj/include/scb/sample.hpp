#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

namespace scb {

// Regression pairs (x_i, y_i) plus the evaluation interval T = [t1, t2].
struct SampleSet {
  std::vector<double> x;
  std::vector<double> y;
  double t1 = 0.0;
  double t2 = 0.0;

  SampleSet() = default;
  SampleSet(std::vector<double> xs, std::vector<double> ys, double lo, double hi);

  std::size_t size() const { return x.size(); }
  double range_width() const;
};

// Curve evaluated on a grid. Grid points where the estimated covariate
// density fell at or below the floor carry a NaN value and their index is
// recorded in floor_hits (variance clamps are also recorded there but keep
// a finite value).
struct CurveEstimate {
  std::vector<double> grid;
  std::vector<double> values;
  double bandwidth = 0.0;
  std::vector<double> density;
  std::set<std::size_t> floor_hits;

  bool floored(std::size_t i) const { return floor_hits.count(i) != 0; }
};

// Relative floor: 5% of a uniform density on the sample range.
double default_density_floor(const SampleSet& data);

// Raised by local-linear machinery when the local design is singular or
// carries too few weighted points; the IRSC integrator treats it as a skip.
struct degenerate_design_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace scb

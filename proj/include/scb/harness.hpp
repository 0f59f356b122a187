#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "scb/bands.hpp"
#include "scb/kernel.hpp"
#include "scb/processes.hpp"

namespace scb {

struct CoverageConfig {
  ProcessSpec process;                 // per-replication seeds override process.seed
  std::size_t n = 2500;
  std::size_t replications = 2000;
  std::vector<double> bandwidths;
  double t1 = -1.1, t2 = 1.1;          // band interval T
  int grid_points = 20;                // even_k evaluation grid size
  double level = 0.95;
  std::vector<CutoffKind> cutoff_kinds{CutoffKind::Asymptotic, CutoffKind::FiniteSample};
  BandTarget target = BandTarget::Mean;
  std::function<double(double)> truth; // function the band must cover
  int fit_grid_count = 300;
  std::uint64_t master_seed = 0;
  bool true_sigma = false;             // mean target: studentize with the known sigma
  std::function<double(double)> sigma_oracle;  // used when true_sigma is set
  std::function<double(double)> mean_oracle;   // variance target centering; empty = zero
  double containment_slack = 0.0;      // tolerance for the containment check
  Kernel kernel = make_epanechnikov();
  unsigned threads = 0;                // 0 = hardware concurrency
  bool verbose = false;                // progress on stderr
};

// Benchmark experiment presets (truth and process wired in).
CoverageConfig model1_coverage_config(std::vector<double> bandwidths, std::uint64_t master_seed);
CoverageConfig model2_coverage_config(std::vector<double> bandwidths, std::uint64_t master_seed);

enum class ReplicationOutcome { Covered, NotCovered, Failed };

// One series, one band, one containment check; band-construction failure maps
// to Failed (tallied as non-coverage).
ReplicationOutcome run_single_replication(const CoverageConfig& config, double bandwidth,
                                          CutoffKind cutoff_kind, std::uint64_t seed);

struct CoverageCell {
  double bandwidth = 0.0;
  CutoffKind cutoff_kind = CutoffKind::FiniteSample;
  std::size_t cover_count = 0;
  std::size_t failures = 0;
  double coverage = 0.0;
  double mc_standard_error = 0.0;
};

struct CoverageReport {
  std::size_t replications = 0;
  std::uint64_t master_seed = 0;
  BandTarget target = BandTarget::Mean;
  double level = 0.95;
  std::vector<CoverageCell> cells;  // bandwidth-major, cutoff-minor

  const CoverageCell& cell(double bandwidth, CutoffKind kind) const;
};

// Parallel map of run_single_replication over replications x bandwidths x
// cutoff kinds, with seed_i = derive_seed(master_seed, i); each replication's
// series is generated once and reused across bandwidths and cutoffs.
CoverageReport run_coverage(const CoverageConfig& config);

// Wide layout: one column per bandwidth, one row per cutoff kind.
std::string coverage_table_csv(const CoverageReport& report);

}  // namespace scb

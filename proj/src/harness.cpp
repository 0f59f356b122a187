#include "scb/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "scb/estimators.hpp"
#include "scb/rng.hpp"

namespace scb {

namespace {

SampleSet make_sample(const CoverageConfig& config, std::uint64_t seed) {
  ProcessSpec spec = config.process;
  spec.seed = seed;
  const GeneratedSeries series = generate(spec, config.n);
  std::vector<double> x, y;
  x.reserve(series.lag_pairs.size());
  y.reserve(series.lag_pairs.size());
  for (const auto& [xi, yi] : series.lag_pairs) {
    x.push_back(xi);
    y.push_back(yi);
  }
  return SampleSet(std::move(x), std::move(y), config.t1, config.t2);
}

bool contains_truth(const ConfidenceBand& band, const std::function<double(double)>& truth,
                    double slack) {
  for (std::size_t j = 0; j < band.grid.points.size(); ++j) {
    if (band.floored(j)) continue;
    const double t = truth(band.grid.points[j]);
    if (t < band.lower[j] - slack || t > band.upper[j] + slack) return false;
  }
  return true;
}

// One replication over every (bandwidth, cutoff) cell, sharing the series and
// the per-bandwidth curve fits.
std::vector<ReplicationOutcome> evaluate_series(const CoverageConfig& config,
                                                const SampleSet& data) {
  const std::size_t cells = config.bandwidths.size() * config.cutoff_kinds.size();
  std::vector<ReplicationOutcome> out(cells, ReplicationOutcome::Failed);
  const double floor = default_density_floor(data);
  const EvaluationGrid grid = even_grid(config.t1, config.t2, config.grid_points);
  const double alpha = 1.0 - config.level;
  const auto [xmin_it, xmax_it] = std::minmax_element(data.x.begin(), data.x.end());
  const std::vector<double> fit_grid = even_spaced(*xmin_it, *xmax_it, config.fit_grid_count);

  for (std::size_t bi = 0; bi < config.bandwidths.size(); ++bi) {
    const double b = config.bandwidths[bi];
    try {
      if (config.target == BandTarget::Mean) {
        Predictor sd_pred;
        const CurveEstimate mu_fit =
            mean_jackknife(data, config.kernel, b, fit_grid, floor);
        if (config.true_sigma) {
          if (!config.sigma_oracle)
            throw std::invalid_argument("run_coverage: true_sigma needs sigma_oracle");
          sd_pred = config.sigma_oracle;
        } else {
          const CurveEstimate var_fit = variance_jackknife(
              data, curve_predictor(mu_fit), config.kernel, b, fit_grid, floor);
          const Predictor v = curve_predictor(var_fit);
          sd_pred = [v](double x) { return std::sqrt(std::max(v(x), kVarianceClamp)); };
        }
        for (std::size_t ci = 0; ci < config.cutoff_kinds.size(); ++ci) {
          const ConfidenceBand band = scb_mean(data, config.kernel, b, alpha,
                                               config.cutoff_kinds[ci], grid, sd_pred, floor);
          out[bi * config.cutoff_kinds.size() + ci] =
              contains_truth(band, config.truth, config.containment_slack)
                  ? ReplicationOutcome::Covered
                  : ReplicationOutcome::NotCovered;
        }
      } else {
        const Predictor mean_pred =
            config.mean_oracle ? config.mean_oracle : Predictor([](double) { return 0.0; });
        const CurveEstimate var_fit =
            variance_jackknife(data, mean_pred, config.kernel, b, fit_grid, floor);
        const Predictor v = curve_predictor(var_fit);
        const Predictor sd_pred = [v](double x) {
          return std::sqrt(std::max(v(x), kVarianceClamp));
        };
        const double nu = nu_epsilon_hat(data, mean_pred, sd_pred);
        for (std::size_t ci = 0; ci < config.cutoff_kinds.size(); ++ci) {
          const ConfidenceBand band =
              scb_variance(data, config.kernel, b, alpha, config.cutoff_kinds[ci], grid,
                           mean_pred, nu, floor);
          out[bi * config.cutoff_kinds.size() + ci] =
              contains_truth(band, config.truth, config.containment_slack)
                  ? ReplicationOutcome::Covered
                  : ReplicationOutcome::NotCovered;
        }
      }
    } catch (const std::exception&) {
      // cells for this bandwidth stay Failed
    }
  }
  return out;
}

void validate_config(const CoverageConfig& config) {
  if (config.replications < 1) throw std::invalid_argument("coverage: replications >= 1");
  if (config.n < 100) throw std::invalid_argument("coverage: n >= 100");
  if (config.bandwidths.empty()) throw std::invalid_argument("coverage: no bandwidths");
  if (config.cutoff_kinds.empty()) throw std::invalid_argument("coverage: no cutoff kinds");
  if (!config.truth) throw std::invalid_argument("coverage: truth function required");
  if (!(config.level > 0 && config.level < 1))
    throw std::invalid_argument("coverage: level in (0,1)");
}

}  // namespace

CoverageConfig model1_coverage_config(std::vector<double> bandwidths, std::uint64_t master_seed) {
  CoverageConfig config;
  config.process = model1_spec(0);
  config.bandwidths = std::move(bandwidths);
  config.t1 = -1.1;
  config.t2 = 1.1;
  config.target = BandTarget::Mean;
  config.truth = [](double x) { return 0.9 * std::sin(x); };
  config.sigma_oracle = [](double) { return 0.4; };
  config.master_seed = master_seed;
  return config;
}

CoverageConfig model2_coverage_config(std::vector<double> bandwidths, std::uint64_t master_seed) {
  CoverageConfig config;
  config.process = model2_spec(0);
  config.bandwidths = std::move(bandwidths);
  config.t1 = -1.0;
  config.t2 = 1.0;
  config.target = BandTarget::Variance;
  config.truth = [](double x) { return 0.4 + 0.2 * x * x; };
  config.master_seed = master_seed;
  return config;
}

ReplicationOutcome run_single_replication(const CoverageConfig& config, double bandwidth,
                                          CutoffKind cutoff_kind, std::uint64_t seed) {
  CoverageConfig one = config;
  one.bandwidths = {bandwidth};
  one.cutoff_kinds = {cutoff_kind};
  validate_config(one);
  try {
    const SampleSet data = make_sample(one, seed);
    return evaluate_series(one, data).front();
  } catch (const std::exception&) {
    return ReplicationOutcome::Failed;
  }
}

const CoverageCell& CoverageReport::cell(double bandwidth, CutoffKind kind) const {
  for (const auto& c : cells)
    if (c.bandwidth == bandwidth && c.cutoff_kind == kind) return c;
  throw std::out_of_range("CoverageReport::cell: no such cell");
}

CoverageReport run_coverage(const CoverageConfig& config) {
  validate_config(config);
  const std::size_t n_cells = config.bandwidths.size() * config.cutoff_kinds.size();
  const unsigned threads = config.threads != 0
                               ? config.threads
                               : std::max(1u, std::thread::hardware_concurrency());

  std::vector<std::vector<std::size_t>> covers(threads, std::vector<std::size_t>(n_cells, 0));
  std::vector<std::vector<std::size_t>> fails(threads, std::vector<std::size_t>(n_cells, 0));
  std::atomic<std::size_t> done{0};

  auto worker = [&](unsigned t) {
    for (std::size_t rep = t; rep < config.replications; rep += threads) {
      std::vector<ReplicationOutcome> outcomes;
      try {
        const SampleSet data = make_sample(config, derive_seed(config.master_seed, rep));
        outcomes = evaluate_series(config, data);
      } catch (const std::exception&) {
        outcomes.assign(n_cells, ReplicationOutcome::Failed);
      }
      for (std::size_t c = 0; c < n_cells; ++c) {
        if (outcomes[c] == ReplicationOutcome::Covered) ++covers[t][c];
        if (outcomes[c] == ReplicationOutcome::Failed) ++fails[t][c];
      }
      const std::size_t k = ++done;
      if (config.verbose && k % std::max<std::size_t>(1, config.replications / 20) == 0)
        std::fprintf(stderr, "coverage: %zu/%zu replications\n", k, config.replications);
    }
  };

  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();

  CoverageReport report;
  report.replications = config.replications;
  report.master_seed = config.master_seed;
  report.target = config.target;
  report.level = config.level;
  for (std::size_t bi = 0; bi < config.bandwidths.size(); ++bi) {
    for (std::size_t ci = 0; ci < config.cutoff_kinds.size(); ++ci) {
      CoverageCell cell;
      cell.bandwidth = config.bandwidths[bi];
      cell.cutoff_kind = config.cutoff_kinds[ci];
      const std::size_t idx = bi * config.cutoff_kinds.size() + ci;
      for (unsigned t = 0; t < threads; ++t) {
        cell.cover_count += covers[t][idx];
        cell.failures += fails[t][idx];
      }
      cell.coverage = static_cast<double>(cell.cover_count) /
                      static_cast<double>(config.replications);
      cell.mc_standard_error = std::sqrt(cell.coverage * (1.0 - cell.coverage) /
                                         static_cast<double>(config.replications));
      report.cells.push_back(cell);
    }
  }
  return report;
}

std::string coverage_table_csv(const CoverageReport& report) {
  std::vector<double> bandwidths;
  std::vector<CutoffKind> kinds;
  for (const auto& c : report.cells) {
    if (std::find(bandwidths.begin(), bandwidths.end(), c.bandwidth) == bandwidths.end())
      bandwidths.push_back(c.bandwidth);
    if (std::find(kinds.begin(), kinds.end(), c.cutoff_kind) == kinds.end())
      kinds.push_back(c.cutoff_kind);
  }
  std::ostringstream os;
  os << "cutoff";
  for (double b : bandwidths) os << ",b=" << b;
  os << "\n";
  for (CutoffKind kind : kinds) {
    os << to_string(kind);
    for (double b : bandwidths) os << "," << report.cell(b, kind).coverage;
    os << "\n";
  }
  os << "failures";
  for (double b : bandwidths) {
    std::size_t f = 0;
    for (CutoffKind kind : kinds) f += report.cell(b, kind).failures;
    os << "," << f;
  }
  os << "\n";
  return os.str();
}

}  // namespace scb

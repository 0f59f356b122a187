// scb: simultaneous confidence bands for conditional mean and volatility
// functions of a time series, with seeded process generators, RSC/IRSC
// bandwidth selection, and Monte Carlo coverage experiments.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scb/bands.hpp"
#include "scb/bandwidth.hpp"
#include "scb/estimators.hpp"
#include "scb/harness.hpp"
#include "scb/io.hpp"
#include "scb/kernel.hpp"
#include "scb/processes.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct OutputTarget {
  std::string path;    // empty = stdout
  std::string format;  // csv | json

  template <typename WriteCsv, typename WriteJson>
  void write(WriteCsv csv, WriteJson json) const {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file " + path);
      os = &file;
    }
    if (format == "json")
      json(*os);
    else
      csv(*os);
  }
};

scb::MetaMap base_meta(const std::string& command, std::uint64_t seed) {
  scb::MetaMap meta;
  meta["version"] = kVersion;
  meta["command"] = command;
  meta["seed"] = std::to_string(seed);
  return meta;
}

// x,y data file: CSV with a header row naming columns x and y (fallback: the
// first two columns).
scb::SampleSet read_xy(const std::string& path, double t1, double t2) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open data file " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty data file " + path);
  std::istringstream head(line);
  std::string cell;
  std::size_t xcol = 0, ycol = 1, idx = 0;
  while (std::getline(head, cell, ',')) {
    if (cell == "x") xcol = idx;
    if (cell == "y") ycol = idx;
    ++idx;
  }
  std::vector<double> x, y;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<double> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(std::stod(cell));
    if (cells.size() <= std::max(xcol, ycol))
      throw std::runtime_error("short row " + std::to_string(row) + " in " + path);
    x.push_back(cells[xcol]);
    y.push_back(cells[ycol]);
  }
  return scb::SampleSet(std::move(x), std::move(y), t1, t2);
}

scb::ProcessSpec make_process(const std::string& model, double d, int truncation,
                              std::uint64_t seed, int burn_in) {
  scb::ProcessSpec spec;
  if (model == "model1")
    spec = scb::model1_spec(seed);
  else if (model == "model2")
    spec = scb::model2_spec(seed);
  else if (model == "ar1arch1")
    spec = scb::ar1_arch1_spec(seed);
  else if (model == "farima")
    spec = scb::ProcessSpec{scb::FarimaParams{d, truncation}, seed, 0};
  else
    throw CLI::ValidationError("--model", "unknown model " + model);
  spec.burn_in = burn_in;
  return spec;
}

struct BandOptions {
  double alpha = 0.05;
  std::string cutoff = "finite";
  std::string grid = "k=20";
  double t1 = -1.0, t2 = 1.0;
  double bandwidth = 0.0;
  bool auto_bandwidth = false;
};

scb::CutoffKind parse_cutoff(const std::string& s) {
  if (s == "finite") return scb::CutoffKind::FiniteSample;
  if (s == "asymptotic") return scb::CutoffKind::Asymptotic;
  throw CLI::ValidationError("--cutoff", "expected finite|asymptotic");
}

scb::EvaluationGrid parse_grid(const std::string& s, double t1, double t2, double k0, double b) {
  if (s == "auto") return scb::build_grid(t1, t2, k0, b);
  if (s.rfind("k=", 0) == 0) return scb::even_grid(t1, t2, std::stoi(s.substr(2)));
  throw CLI::ValidationError("--grid", "expected k=<count>|auto");
}

double resolve_bandwidth(const scb::SampleSet& data, const scb::Kernel& kernel,
                         const BandOptions& opt) {
  if (opt.auto_bandwidth)
    return scb::select_bandwidth(data, kernel, scb::default_rsc_config(data)).b_star;
  if (!(opt.bandwidth > 0))
    throw CLI::ValidationError("--bandwidth", "pass a positive bandwidth or --auto");
  return opt.bandwidth;
}

void add_band_options(CLI::App* cmd, BandOptions& opt) {
  cmd->add_option("--alpha", opt.alpha, "significance level")->check(CLI::Range(1e-6, 0.5));
  cmd->add_option("--cutoff", opt.cutoff, "finite|asymptotic");
  cmd->add_option("--grid", opt.grid, "k=<count>|auto");
  cmd->add_option("--interval", [&opt](const std::vector<std::string>& vals) {
        opt.t1 = std::stod(vals[0]);
        opt.t2 = std::stod(vals[1]);
        return true;
      }, "band interval T1 T2")->expected(2);
  cmd->add_option("--bandwidth", opt.bandwidth, "smoothing bandwidth");
  cmd->add_flag("--auto", opt.auto_bandwidth, "select the bandwidth by IRSC");
}

// Library-default mean band: jackknife center, sigma-hat studentization.
scb::ConfidenceBand build_mean_band(const scb::SampleSet& data, const scb::Kernel& kernel,
                                    double b, const BandOptions& opt) {
  const double floor = scb::default_density_floor(data);
  const auto [lo, hi] = std::minmax_element(data.x.begin(), data.x.end());
  const std::vector<double> fit_grid = scb::even_spaced(*lo, *hi, 300);
  const scb::CurveEstimate mu = scb::mean_jackknife(data, kernel, b, fit_grid, floor);
  const scb::CurveEstimate var =
      scb::variance_jackknife(data, scb::curve_predictor(mu), kernel, b, fit_grid, floor);
  const scb::Predictor v = scb::curve_predictor(var);
  const scb::Predictor sd = [v](double x) {
    return std::sqrt(std::max(v(x), scb::kVarianceClamp));
  };
  return scb::scb_mean(data, kernel, b, opt.alpha, parse_cutoff(opt.cutoff),
                       parse_grid(opt.grid, opt.t1, opt.t2, kernel.k0, b), sd, floor);
}

scb::ConfidenceBand build_var_band(const scb::SampleSet& data, const scb::Kernel& kernel,
                                   double h, double mean_bandwidth, const BandOptions& opt) {
  const double floor = scb::default_density_floor(data);
  const auto [lo, hi] = std::minmax_element(data.x.begin(), data.x.end());
  const std::vector<double> fit_grid = scb::even_spaced(*lo, *hi, 300);
  const double mb = mean_bandwidth > 0 ? mean_bandwidth : h;
  const scb::CurveEstimate mu = scb::mean_jackknife(data, kernel, mb, fit_grid, floor);
  const scb::Predictor mean_pred = scb::curve_predictor(mu);
  const scb::CurveEstimate var =
      scb::variance_jackknife(data, mean_pred, kernel, h, fit_grid, floor);
  const scb::Predictor v = scb::curve_predictor(var);
  const scb::Predictor sd = [v](double x) {
    return std::sqrt(std::max(v(x), scb::kVarianceClamp));
  };
  const double nu = scb::nu_epsilon_hat(data, mean_pred, sd);
  return scb::scb_variance(data, kernel, h, opt.alpha, parse_cutoff(opt.cutoff),
                           parse_grid(opt.grid, opt.t1, opt.t2, kernel.k0, h), mean_pred, nu,
                           floor);
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::istringstream is(csv);
  std::string cell;
  while (std::getline(is, cell, ',')) out.push_back(std::stod(cell));
  return out;
}

// Ordinary least squares of y on powers 0..degree of x.
std::vector<double> poly_ols(const std::vector<double>& x, const std::vector<double>& y,
                             int degree) {
  const int p = degree + 1;
  std::vector<double> xtx(static_cast<std::size_t>(p) * p, 0.0), xty(p, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> row(p, 1.0);
    for (int j = 1; j < p; ++j) row[j] = row[j - 1] * x[i];
    for (int a = 0; a < p; ++a) {
      xty[a] += row[a] * y[i];
      for (int b = 0; b < p; ++b) xtx[static_cast<std::size_t>(a) * p + b] += row[a] * row[b];
    }
  }
  // Gaussian elimination with partial pivoting.
  std::vector<double> beta = xty;
  for (int col = 0; col < p; ++col) {
    int piv = col;
    for (int r = col + 1; r < p; ++r)
      if (std::fabs(xtx[static_cast<std::size_t>(r) * p + col]) >
          std::fabs(xtx[static_cast<std::size_t>(piv) * p + col]))
        piv = r;
    for (int c = 0; c < p; ++c)
      std::swap(xtx[static_cast<std::size_t>(col) * p + c],
                xtx[static_cast<std::size_t>(piv) * p + c]);
    std::swap(beta[col], beta[piv]);
    const double d = xtx[static_cast<std::size_t>(col) * p + col];
    if (d == 0.0) throw std::runtime_error("poly_ols: singular normal equations");
    for (int r = 0; r < p; ++r) {
      if (r == col) continue;
      const double f = xtx[static_cast<std::size_t>(r) * p + col] / d;
      for (int c = 0; c < p; ++c)
        xtx[static_cast<std::size_t>(r) * p + c] -= f * xtx[static_cast<std::size_t>(col) * p + c];
      beta[r] -= f * beta[col];
    }
  }
  for (int r = 0; r < p; ++r) beta[r] /= xtx[static_cast<std::size_t>(r) * p + r];
  return beta;
}

std::function<double(double)> poly_fn(const std::vector<double>& coeffs) {
  return [coeffs](double x) {
    double acc = 0.0, pow_x = 1.0;
    for (double c : coeffs) {
      acc += c * pow_x;
      pow_x *= x;
    }
    return acc;
  };
}

std::string join_doubles(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(10);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simultaneous confidence bands for mean and volatility functions"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  OutputTarget out;
  out.format = "csv";
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--out", out.path, "output file (default stdout)");
  app.add_option("--format", out.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));

  // gen
  auto* gen = app.add_subcommand("gen", "simulate a built-in process");
  std::string gen_model = "model1";
  std::size_t gen_n = 2500;
  int gen_burn = 1000, gen_trunc = 10000;
  double gen_d = 0.2;
  bool gen_force = false;
  gen->add_option("--model", gen_model, "model1|model2|ar1arch1|farima");
  gen->add_option("--n", gen_n, "series length");
  gen->add_option("--burn-in", gen_burn, "burn-in length");
  gen->add_option("--d", gen_d, "farima fractional parameter");
  gen->add_option("--truncation", gen_trunc, "farima truncation lags");
  gen->add_flag("--force", gen_force, "generate even if the stability check fails");

  // select-bw
  auto* selbw = app.add_subcommand("select-bw", "IRSC bandwidth selection on x,y data");
  std::string selbw_data;
  double selbw_t1 = -1.0, selbw_t2 = 1.0;
  int selbw_minpts = 10;
  std::string selbw_candidates;
  selbw->add_option("--data", selbw_data, "x,y CSV file")->required();
  selbw->add_option("--interval", [&](const std::vector<std::string>& vals) {
            selbw_t1 = std::stod(vals[0]);
            selbw_t2 = std::stod(vals[1]);
            return true;
          }, "interval T1 T2")->expected(2)->required();
  selbw->add_option("--min-points", selbw_minpts, "minimum effective points per fit");
  selbw->add_option("--candidates", selbw_candidates, "comma-separated bandwidths");

  // band-mean / band-var
  auto* bmean = app.add_subcommand("band-mean", "simultaneous band for the mean function");
  auto* bvar = app.add_subcommand("band-var", "simultaneous band for the variance function");
  std::string bmean_data, bvar_data;
  BandOptions bmean_opt, bvar_opt;
  double bvar_mean_bw = 0.0;
  bmean->add_option("--data", bmean_data, "x,y CSV file")->required();
  add_band_options(bmean, bmean_opt);
  bvar->add_option("--data", bvar_data, "x,y CSV file")->required();
  add_band_options(bvar, bvar_opt);
  bvar->add_option("--mean-bandwidth", bvar_mean_bw, "bandwidth for the mean fit (default: h)");

  // validate
  auto* val = app.add_subcommand("validate", "check a polynomial candidate against a saved band");
  std::string val_band, val_coeffs, val_band_format = "auto";
  val->add_option("--band", val_band, "band file from band-mean/band-var")->required();
  val->add_option("--coeffs", val_coeffs, "polynomial coefficients c0,c1,...")->required();
  val->add_option("--band-format", val_band_format, "csv|json|auto");

  // coverage
  auto* cov = app.add_subcommand("coverage", "Monte Carlo coverage experiment");
  std::string cov_model = "model1", cov_bandwidths = "0.14";
  std::size_t cov_reps = 2000, cov_n = 2500;
  double cov_level = 0.95;
  unsigned cov_threads = 0;
  bool cov_true_sigma = false, cov_verbose = false;
  cov->add_option("--model", cov_model, "model1|model2");
  cov->add_option("--bandwidths", cov_bandwidths, "comma-separated bandwidths");
  cov->add_option("--replications", cov_reps, "number of replications");
  cov->add_option("--n", cov_n, "series length per replication");
  cov->add_option("--level", cov_level, "nominal coverage level");
  cov->add_option("--threads", cov_threads, "worker threads (0 = auto)");
  cov->add_flag("--true-sigma", cov_true_sigma, "studentize with the known sigma (model1)");
  cov->add_flag("--verbose", cov_verbose, "progress on stderr");

  // fit
  auto* fit = app.add_subcommand("fit", "seven-step pipeline with candidate validation");
  std::string fit_data, fit_prices, fit_column = "price";
  double fit_t1 = 0.0, fit_t2 = 0.0, fit_alpha = 0.05;
  bool fit_interval_set = false;
  fit->add_option("--data", fit_data, "x,y CSV file");
  fit->add_option("--prices", fit_prices, "price CSV file (log returns, lag embedding)");
  fit->add_option("--column", fit_column, "price column name or index");
  fit->add_option("--alpha", fit_alpha, "significance level for the validation bands");
  fit->add_option("--interval", [&](const std::vector<std::string>& vals) {
         fit_t1 = std::stod(vals[0]);
         fit_t2 = std::stod(vals[1]);
         fit_interval_set = true;
         return true;
       }, "interval T1 T2")->expected(2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const scb::Kernel kernel = scb::make_epanechnikov();
  try {
    if (gen->parsed()) {
      const scb::ProcessSpec spec = make_process(gen_model, gen_d, gen_trunc, seed, gen_burn);
      const scb::GeneratedSeries series = scb::generate(spec, gen_n, gen_force);
      scb::MetaMap meta = base_meta("gen", seed);
      meta["model"] = gen_model;
      meta["n"] = std::to_string(gen_n);
      meta["burn_in"] = std::to_string(gen_burn);
      out.write([&](std::ostream& os) { scb::write_series_csv(os, series.values, meta); },
                [&](std::ostream& os) { scb::write_series_json(os, series.values, meta); });
      return kExitAccept;
    }

    if (selbw->parsed()) {
      const scb::SampleSet data = read_xy(selbw_data, selbw_t1, selbw_t2);
      scb::RSCConfig config = scb::default_rsc_config(data);
      config.min_effective_points = selbw_minpts;
      if (!selbw_candidates.empty()) config.candidate_bandwidths = parse_doubles(selbw_candidates);
      const scb::Selection sel = scb::select_bandwidth(data, kernel, config);
      scb::MetaMap meta = base_meta("select-bw", seed);
      meta["data"] = selbw_data;
      meta["interval"] = std::to_string(selbw_t1) + ".." + std::to_string(selbw_t2);
      out.write([&](std::ostream& os) { scb::write_selection_csv(os, sel, meta); },
                [&](std::ostream& os) { scb::write_selection_json(os, sel, meta); });
      return kExitAccept;
    }

    if (bmean->parsed() || bvar->parsed()) {
      const bool mean_mode = bmean->parsed();
      const BandOptions& opt = mean_mode ? bmean_opt : bvar_opt;
      const scb::SampleSet data = read_xy(mean_mode ? bmean_data : bvar_data, opt.t1, opt.t2);
      const double b = resolve_bandwidth(data, kernel, opt);
      const scb::ConfidenceBand band = mean_mode
                                           ? build_mean_band(data, kernel, b, opt)
                                           : build_var_band(data, kernel, b, bvar_mean_bw, opt);
      scb::MetaMap meta = base_meta(mean_mode ? "band-mean" : "band-var", seed);
      meta["data"] = mean_mode ? bmean_data : bvar_data;
      meta["alpha"] = std::to_string(opt.alpha);
      meta["auto_bandwidth"] = opt.auto_bandwidth ? "1" : "0";
      out.write([&](std::ostream& os) { scb::write_band_csv(os, band, meta); },
                [&](std::ostream& os) { scb::write_band_json(os, band, meta); });
      return kExitAccept;
    }

    if (val->parsed()) {
      std::ifstream is(val_band);
      if (!is) throw std::runtime_error("cannot open band file " + val_band);
      std::string fmt = val_band_format;
      if (fmt == "auto")
        fmt = val_band.size() > 5 && val_band.substr(val_band.size() - 5) == ".json" ? "json"
                                                                                     : "csv";
      const scb::BandFile file =
          fmt == "json" ? scb::read_band_json(is) : scb::read_band_csv(is);
      const std::vector<double> coeffs = parse_doubles(val_coeffs);
      const scb::Validation verdict = scb::validate_parametric(file.band, poly_fn(coeffs));
      if (verdict.accept) {
        std::cout << "accept\n";
        return kExitAccept;
      }
      std::cout << "reject (" << verdict.violations.size() << " violations)\n";
      for (const auto& v : verdict.violations)
        std::cout << "  x=" << v.x << " candidate=" << v.candidate << " band=[" << v.lower
                  << "," << v.upper << "]\n";
      return kExitReject;
    }

    if (cov->parsed()) {
      scb::CoverageConfig config =
          cov_model == "model2"
              ? scb::model2_coverage_config(parse_doubles(cov_bandwidths), seed)
              : scb::model1_coverage_config(parse_doubles(cov_bandwidths), seed);
      if (cov_model != "model1" && cov_model != "model2")
        throw CLI::ValidationError("--model", "coverage supports model1|model2");
      config.replications = cov_reps;
      config.n = cov_n;
      config.level = cov_level;
      config.threads = cov_threads;
      config.true_sigma = cov_true_sigma;
      config.verbose = cov_verbose;
      const scb::CoverageReport report = scb::run_coverage(config);
      scb::MetaMap meta = base_meta("coverage", seed);
      meta["model"] = cov_model;
      meta["replications"] = std::to_string(cov_reps);
      meta["n"] = std::to_string(cov_n);
      out.write(
          [&](std::ostream& os) {
            for (const auto& [k, v] : meta) os << "# " << k << "=" << v << "\n";
            os << scb::coverage_table_csv(report);
          },
          [&](std::ostream& os) {
            nlohmann::json j;
            j["meta"] = meta;
            for (const auto& cell : report.cells)
              j["cells"].push_back({{"bandwidth", cell.bandwidth},
                                    {"cutoff", scb::to_string(cell.cutoff_kind)},
                                    {"coverage", cell.coverage},
                                    {"mc_se", cell.mc_standard_error},
                                    {"failures", cell.failures}});
            os << j.dump(2) << "\n";
          });
      return kExitAccept;
    }

    if (fit->parsed()) {
      scb::SampleSet data = [&] {
        if (!fit_data.empty()) {
          if (!fit_interval_set) {
            // peek at the x range
            scb::SampleSet probe = read_xy(fit_data, -1e300, 1e300);
            const auto [lo, hi] = std::minmax_element(probe.x.begin(), probe.x.end());
            fit_t1 = *lo;
            fit_t2 = *hi;
            return probe;
          }
          return read_xy(fit_data, fit_t1, fit_t2);
        }
        if (fit_prices.empty())
          throw CLI::ValidationError("--data", "fit needs --data or --prices");
        const scb::PriceSeries prices = scb::ingest_prices(fit_prices, fit_column);
        const std::vector<double> returns = scb::log_returns(prices);
        if (!fit_interval_set)
          std::tie(fit_t1, fit_t2) = scb::symmetric_coverage_interval(returns, 0.944);
        scb::LagEmbedResult embedded = scb::lag_embed(returns, fit_t1, fit_t2);
        std::cerr << "retained fraction: " << embedded.retained_fraction << "\n";
        return embedded.sample;
      }();

      const scb::RSCConfig config = scb::default_rsc_config(data);
      const scb::FitResult result =
          scb::fit_pipeline(data, kernel, config, config, 300, /*local_linear=*/true);

      // least-squares candidates, echoing the linear-mean / quadratic-variance
      // validation workflow
      const std::vector<double> lin_mu = poly_ols(data.x, data.y, 1);
      const auto mu_fn = poly_fn(lin_mu);
      std::vector<double> sq(data.size());
      for (std::size_t i = 0; i < data.size(); ++i) {
        const double r = data.y[i] - mu_fn(data.x[i]);
        sq[i] = r * r;
      }
      const std::vector<double> quad_s2 = poly_ols(data.x, sq, 2);
      double const_s2 = 0.0;
      for (double v : sq) const_s2 += v;
      const_s2 /= static_cast<double>(sq.size());

      BandOptions opt;
      opt.alpha = fit_alpha;
      opt.t1 = fit_t1;
      opt.t2 = fit_t2;
      const scb::ConfidenceBand mean_band = build_mean_band(data, kernel, result.b_star, opt);
      const scb::ConfidenceBand var_band =
          build_var_band(data, kernel, result.h_star, result.b_star, opt);

      const bool mean_ok = scb::validate_parametric(mean_band, poly_fn(lin_mu)).accept;
      const bool var_ok = scb::validate_parametric(var_band, poly_fn(quad_s2)).accept;
      const bool const_ok =
          scb::validate_parametric(var_band, [const_s2](double) { return const_s2; }).accept;

      scb::MetaMap meta = base_meta("fit", seed);
      meta["b_star"] = std::to_string(result.b_star);
      meta["h_star"] = std::to_string(result.h_star);
      meta["nu_eps"] = std::to_string(result.nu_eps);
      meta["interval"] = std::to_string(fit_t1) + ".." + std::to_string(fit_t2);
      meta["linear_mean_coeffs"] = join_doubles(lin_mu);
      meta["quadratic_var_coeffs"] = join_doubles(quad_s2);
      meta["constant_var"] = std::to_string(const_s2);
      meta["verdict_linear_mean"] = mean_ok ? "accept" : "reject";
      meta["verdict_quadratic_variance"] = var_ok ? "accept" : "reject";
      meta["verdict_constant_variance"] = const_ok ? "accept" : "reject";

      out.write(
          [&](std::ostream& os) {
            for (const auto& [k, v] : meta) os << "# " << k << "=" << v << "\n";
            os << "x,mu,sigma2\n";
            os.precision(17);
            for (std::size_t j = 0; j < result.mu.grid.size(); ++j)
              os << result.mu.grid[j] << "," << result.mu.values[j] << ","
                 << result.sigma2.values[j] << "\n";
          },
          [&](std::ostream& os) {
            nlohmann::json j;
            j["meta"] = meta;
            j["grid"] = result.mu.grid;
            j["mu"] = result.mu.values;
            j["sigma2"] = result.sigma2.values;
            os << j.dump(2) << "\n";
          });
      std::cout << (mean_ok ? "accept" : "reject") << " linear mean\n";
      std::cout << (var_ok ? "accept" : "reject") << " quadratic variance\n";
      std::cout << (const_ok ? "accept" : "reject") << " constant variance\n";
      return kExitAccept;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}

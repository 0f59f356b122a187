#include "scb/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace scb {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

void write_meta(std::ostream& os, const MetaMap& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << "=" << v << "\n";
}

double parse_cell(const std::string& s) {
  const std::string t = trim(s);
  if (t == "nan") return kNaN;
  std::size_t pos = 0;
  const double v = std::stod(t, &pos);
  if (pos != t.size()) throw std::invalid_argument("bad numeric cell: " + s);
  return v;
}

nlohmann::json band_to_json(const ConfidenceBand& band, const MetaMap& meta) {
  nlohmann::json j;
  j["meta"] = meta;
  j["level"] = band.level;
  j["cutoff"] = band.cutoff;
  j["cutoff_kind"] = to_string(band.cutoff_kind);
  j["target"] = to_string(band.target);
  j["spacing_rule"] = to_string(band.grid.rule);
  j["bandwidth"] = band.bandwidth;
  j["nu_eps"] = band.nu_eps;
  j["n"] = band.n;
  auto num = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < band.grid.points.size(); ++i) {
    points.push_back({{"x", band.grid.points[i]},
                      {"center", num(band.center[i])},
                      {"lower", num(band.lower[i])},
                      {"upper", num(band.upper[i])},
                      {"scale", num(i < band.scale.size() ? band.scale[i] : kNaN)},
                      {"floored", band.floored(i)}});
  }
  j["points"] = std::move(points);
  return j;
}

ConfidenceBand band_from_fields(double level, double cutoff, const std::string& cutoff_kind,
                                const std::string& target, const std::string& spacing,
                                double bandwidth, double nu_eps, std::size_t n) {
  ConfidenceBand band;
  band.level = level;
  band.cutoff = cutoff;
  band.cutoff_kind =
      cutoff_kind == "asymptotic" ? CutoffKind::Asymptotic : CutoffKind::FiniteSample;
  band.target = target == "variance" ? BandTarget::Variance : BandTarget::Mean;
  band.grid.rule = spacing == "bandwidth_2k0b" ? SpacingRule::Bandwidth2k0b : SpacingRule::EvenK;
  band.bandwidth = bandwidth;
  band.nu_eps = nu_eps;
  band.n = n;
  return band;
}

}  // namespace

PriceSeries ingest_prices(const std::string& path, const std::string& column) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("ingest_prices: cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("ingest_prices: empty file " + path);
  const std::vector<std::string> header = split_csv(trim(line));

  std::size_t col = header.size();
  const std::string sel = trim(column);
  bool numeric = !sel.empty() && sel.find_first_not_of("0123456789") == std::string::npos;
  if (numeric) {
    col = static_cast<std::size_t>(std::stoul(sel));
    if (col >= header.size())
      throw std::runtime_error("ingest_prices: column index " + sel + " out of range");
  } else {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == sel) col = i;
    if (col == header.size())
      throw std::runtime_error("ingest_prices: no column named '" + sel + "'");
  }

  PriceSeries series;
  series.source = path;
  std::size_t row = 1;  // 1-based, header is row 1
  while (std::getline(is, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (col >= cells.size() || trim(cells[col]).empty())
      throw std::runtime_error("ingest_prices: missing value at row " + std::to_string(row));
    double v;
    try {
      v = parse_cell(cells[col]);
    } catch (const std::exception&) {
      throw std::runtime_error("ingest_prices: non-numeric value at row " + std::to_string(row));
    }
    if (!(v > 0))
      throw std::runtime_error("ingest_prices: nonpositive price at row " + std::to_string(row));
    series.prices.push_back(v);
  }
  if (series.prices.size() < 3)
    throw std::runtime_error("ingest_prices: need at least 3 price rows");
  return series;
}

std::vector<double> log_returns(const PriceSeries& series) {
  std::vector<double> out;
  out.reserve(series.prices.size() - 1);
  for (std::size_t i = 1; i < series.prices.size(); ++i)
    out.push_back(std::log(series.prices[i]) - std::log(series.prices[i - 1]));
  return out;
}

LagEmbedResult lag_embed(const std::vector<double>& returns, double t1, double t2) {
  if (returns.size() < 2) throw std::invalid_argument("lag_embed: need at least 2 returns");
  if (!(t1 < t2)) throw std::invalid_argument("lag_embed: require t1 < t2");
  std::vector<double> x, y;
  for (std::size_t i = 1; i < returns.size(); ++i) {
    if (returns[i - 1] < t1 || returns[i - 1] > t2) continue;
    x.push_back(returns[i - 1]);
    y.push_back(returns[i]);
  }
  if (x.size() < 2) throw std::runtime_error("lag_embed: fewer than 2 pairs retained by T");
  LagEmbedResult res{SampleSet(std::move(x), std::move(y), t1, t2),
                     static_cast<double>(0)};
  res.retained_fraction =
      static_cast<double>(res.sample.size()) / static_cast<double>(returns.size() - 1);
  return res;
}

std::pair<double, double> symmetric_coverage_interval(const std::vector<double>& returns,
                                                      double fraction) {
  if (returns.empty()) throw std::invalid_argument("symmetric_coverage_interval: empty sample");
  if (!(fraction > 0 && fraction <= 1))
    throw std::invalid_argument("symmetric_coverage_interval: fraction in (0,1]");
  std::vector<double> mag(returns.size());
  std::transform(returns.begin(), returns.end(), mag.begin(),
                 [](double v) { return std::fabs(v); });
  std::sort(mag.begin(), mag.end());
  const std::size_t k = std::min(
      mag.size() - 1,
      static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(mag.size())) - 1));
  return {-mag[k], mag[k]};
}

void write_band_csv(std::ostream& os, const ConfidenceBand& band, const MetaMap& meta) {
  write_meta(os, meta);
  os << "# level=" << band.level << "\n";
  os << "# cutoff=" << std::setprecision(17) << band.cutoff << "\n";
  os << "# cutoff_kind=" << to_string(band.cutoff_kind) << "\n";
  os << "# target=" << to_string(band.target) << "\n";
  os << "# spacing_rule=" << to_string(band.grid.rule) << "\n";
  os << "# bandwidth=" << band.bandwidth << "\n";
  os << "# nu_eps=" << band.nu_eps << "\n";
  os << "# n=" << band.n << "\n";
  os << "x,center,lower,upper,scale,floored\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < band.grid.points.size(); ++i) {
    auto cell = [&os](double v) {
      if (std::isfinite(v))
        os << v;
      else
        os << "nan";
    };
    cell(band.grid.points[i]);
    os << ",";
    cell(band.center[i]);
    os << ",";
    cell(band.lower[i]);
    os << ",";
    cell(band.upper[i]);
    os << ",";
    cell(i < band.scale.size() ? band.scale[i] : kNaN);
    os << "," << (band.floored(i) ? 1 : 0) << "\n";
  }
}

BandFile read_band_csv(std::istream& is) {
  BandFile file;
  MetaMap fields;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string::npos)
        fields[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
      continue;
    }
    if (!header_seen) {
      if (line.rfind("x,", 0) != 0)
        throw std::runtime_error("read_band_csv: missing column header");
      header_seen = true;
      continue;
    }
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 6) throw std::runtime_error("read_band_csv: malformed row: " + line);
    file.band.grid.points.push_back(parse_cell(cells[0]));
    file.band.center.push_back(parse_cell(cells[1]));
    file.band.lower.push_back(parse_cell(cells[2]));
    file.band.upper.push_back(parse_cell(cells[3]));
    file.band.scale.push_back(parse_cell(cells[4]));
    if (parse_cell(cells[5]) != 0.0)
      file.band.floor_hits.insert(file.band.grid.points.size() - 1);
  }
  if (!header_seen) throw std::runtime_error("read_band_csv: empty input");

  auto field = [&fields](const char* key, const std::string& fallback) {
    auto it = fields.find(key);
    return it == fields.end() ? fallback : it->second;
  };
  file.band = [&] {
    ConfidenceBand shell = band_from_fields(
        std::stod(field("level", "0.95")), std::stod(field("cutoff", "0")),
        field("cutoff_kind", "finite_sample"), field("target", "mean"),
        field("spacing_rule", "even_k"), std::stod(field("bandwidth", "0")),
        std::stod(field("nu_eps", "0")), std::stoul(field("n", "0")));
    shell.grid.points = std::move(file.band.grid.points);
    shell.center = std::move(file.band.center);
    shell.lower = std::move(file.band.lower);
    shell.upper = std::move(file.band.upper);
    shell.scale = std::move(file.band.scale);
    shell.floor_hits = std::move(file.band.floor_hits);
    return shell;
  }();
  for (const char* key :
       {"level", "cutoff", "cutoff_kind", "target", "spacing_rule", "bandwidth", "nu_eps", "n"})
    fields.erase(key);
  file.meta = std::move(fields);
  return file;
}

void write_band_json(std::ostream& os, const ConfidenceBand& band, const MetaMap& meta) {
  os << band_to_json(band, meta).dump(2) << "\n";
}

BandFile read_band_json(std::istream& is) {
  nlohmann::json j;
  is >> j;
  BandFile file;
  file.band = band_from_fields(j.value("level", 0.95), j.value("cutoff", 0.0),
                               j.value("cutoff_kind", std::string("finite_sample")),
                               j.value("target", std::string("mean")),
                               j.value("spacing_rule", std::string("even_k")),
                               j.value("bandwidth", 0.0), j.value("nu_eps", 0.0),
                               j.value("n", std::size_t{0}));
  if (j.contains("meta")) file.meta = j["meta"].get<MetaMap>();
  auto num = [](const nlohmann::json& v) { return v.is_null() ? kNaN : v.get<double>(); };
  for (const auto& p : j.at("points")) {
    file.band.grid.points.push_back(p.at("x").get<double>());
    file.band.center.push_back(num(p.at("center")));
    file.band.lower.push_back(num(p.at("lower")));
    file.band.upper.push_back(num(p.at("upper")));
    file.band.scale.push_back(num(p.at("scale")));
    if (p.at("floored").get<bool>())
      file.band.floor_hits.insert(file.band.grid.points.size() - 1);
  }
  return file;
}

void write_selection_csv(std::ostream& os, const Selection& selection, const MetaMap& meta) {
  write_meta(os, meta);
  os << "# b_star=" << std::setprecision(17) << selection.b_star << "\n";
  os << "# b_flat=" << selection.b_flat << "\n";
  double best = std::numeric_limits<double>::infinity();
  for (const auto& row : selection.table)
    if (std::isfinite(row.irsc_value)) best = std::min(best, row.irsc_value);
  os << "b,irsc,relative_irsc\n" << std::setprecision(17);
  for (const auto& row : selection.table) {
    os << row.bandwidth << ",";
    if (std::isfinite(row.irsc_value))
      os << row.irsc_value << "," << row.irsc_value / best;
    else
      os << "nan,nan";
    os << "\n";
  }
}

void write_selection_json(std::ostream& os, const Selection& selection, const MetaMap& meta) {
  nlohmann::json j;
  j["meta"] = meta;
  j["b_star"] = selection.b_star;
  j["b_flat"] = selection.b_flat;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : selection.table)
    rows.push_back({{"b", row.bandwidth},
                    {"irsc", std::isfinite(row.irsc_value) ? nlohmann::json(row.irsc_value)
                                                           : nlohmann::json(nullptr)}});
  j["table"] = std::move(rows);
  os << j.dump(2) << "\n";
}

void write_series_csv(std::ostream& os, const std::vector<double>& values, const MetaMap& meta) {
  write_meta(os, meta);
  os << "value\n" << std::setprecision(17);
  for (double v : values) os << v << "\n";
}

void write_series_json(std::ostream& os, const std::vector<double>& values, const MetaMap& meta) {
  nlohmann::json j;
  j["meta"] = meta;
  j["values"] = values;
  os << j.dump(2) << "\n";
}

}  // namespace scb

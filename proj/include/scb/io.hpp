#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "scb/bands.hpp"
#include "scb/bandwidth.hpp"
#include "scb/sample.hpp"

namespace scb {

using MetaMap = std::map<std::string, std::string>;

struct PriceSeries {
  std::vector<double> prices;
  std::string source;
};

// CSV with a mandatory header row; column selected by name, or by 0-based
// index when the selector parses as an integer. Nonpositive or non-numeric
// cells are rejected with their 1-based row number.
PriceSeries ingest_prices(const std::string& path, const std::string& column);

// Y_i = log(S_{i+1}) - log(S_i).
std::vector<double> log_returns(const PriceSeries& series);

struct LagEmbedResult {
  SampleSet sample;
  double retained_fraction = 0.0;  // pairs kept by the X-membership filter
};

// Pairs (Y_{i-1}, Y_i) retained when X = Y_{i-1} lies in [t1, t2].
LagEmbedResult lag_embed(const std::vector<double>& returns, double t1, double t2);

// Symmetric interval [-q, q] around zero covering ~fraction of the sample.
std::pair<double, double> symmetric_coverage_interval(const std::vector<double>& returns,
                                                      double fraction);

// Band serialization: "# key=value" reproducibility header, then
// x,center,lower,upper,scale,floored rows. Floored rows carry "nan".
void write_band_csv(std::ostream& os, const ConfidenceBand& band, const MetaMap& meta);
void write_band_json(std::ostream& os, const ConfidenceBand& band, const MetaMap& meta);

struct BandFile {
  ConfidenceBand band;
  MetaMap meta;
};

BandFile read_band_csv(std::istream& is);
BandFile read_band_json(std::istream& is);

// b,irsc,relative_irsc table with the same header convention.
void write_selection_csv(std::ostream& os, const Selection& selection, const MetaMap& meta);
void write_selection_json(std::ostream& os, const Selection& selection, const MetaMap& meta);

// Single-column series output.
void write_series_csv(std::ostream& os, const std::vector<double>& values, const MetaMap& meta);
void write_series_json(std::ostream& os, const std::vector<double>& values, const MetaMap& meta);

}  // namespace scb

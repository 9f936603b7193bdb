#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fdepth/core.hpp"
#include "fdepth/depths.hpp"
#include "fdepth/evaluation.hpp"

namespace fdepth {

// Malformed or mistyped benchmark configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

// Sample CSV: a header of grid abscissae, one row of values per curve, and an
// optional trailing `label` column holding `normal` or `outlier`. Blank lines
// are skipped. Errors are ParseError carrying the 1-based line number.
FunctionalSample parse_sample_csv(std::istream& in);
FunctionalSample read_sample_csv(const std::filesystem::path& path);

void write_sample_csv(std::ostream& out, const FunctionalSample& sample);

// `index,depth` rows, in the given order of sample indices.
void write_depths_csv(std::ostream& out, const DepthVector& depths, std::span<const std::size_t> order);

// Header of abscissae, then one row with the curve values.
void write_curve_csv(std::ostream& out, const Grid& grid, const Curve& curve);

// Keys: master_seed, S, n, T, q, alpha, K, models, methods, band_J, mbd_j.
// All optional; unknown keys and wrong types raise ConfigError.
BenchmarkConfig parse_benchmark_config(std::string_view json_text);

// `method,model,mean_ise,se_ise,S`
void write_results_csv(std::ostream& out, const ResultTable& table);
void write_results_json(std::ostream& out, const ResultTable& table);

}  // namespace fdepth

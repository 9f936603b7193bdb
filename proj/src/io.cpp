#include "fdepth/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "fdepth/errors.hpp"

namespace fdepth {

std::string format_double(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) throw DataError("cannot format value");
  return std::string(buf, end);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_number(std::string_view field, std::size_t line) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
    throw ParseError(line, "cannot parse number '" + std::string(field) + "'");
  if (!std::isfinite(value)) throw ParseError(line, "non-finite value '" + std::string(field) + "'");
  return value;
}

}  // namespace

FunctionalSample parse_sample_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::vector<double>> abscissae;
  bool has_labels = false;
  std::size_t header_line = 0;
  std::vector<std::vector<double>> rows;
  std::vector<Label> labels;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (!abscissae) {
      header_line = line_no;
      if (fields.back() == "label") {
        has_labels = true;
        fields.pop_back();
      }
      if (fields.empty()) throw ParseError(line_no, "header has no grid abscissae");
      std::vector<double> points;
      for (auto f : fields) points.push_back(parse_number(f, line_no));
      for (std::size_t k = 1; k < points.size(); ++k) {
        if (!(points[k - 1] < points[k])) throw ParseError(line_no, "grid abscissae must be strictly increasing");
      }
      abscissae = std::move(points);
      continue;
    }
    const std::size_t expected = abscissae->size() + (has_labels ? 1 : 0);
    if (fields.size() != expected)
      throw ParseError(line_no, "expected " + std::to_string(expected) + " fields, found " + std::to_string(fields.size()));
    if (has_labels) {
      const auto tag = fields.back();
      if (tag == "normal") {
        labels.push_back(Label::normal);
      } else if (tag == "outlier") {
        labels.push_back(Label::outlier);
      } else {
        throw ParseError(line_no, "label must be 'normal' or 'outlier', found '" + std::string(tag) + "'");
      }
      fields.pop_back();
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (auto f : fields) row.push_back(parse_number(f, line_no));
    rows.push_back(std::move(row));
  }
  if (!abscissae) throw ParseError(line_no, "missing header row");
  if (rows.empty()) throw ParseError(header_line, "no curves after the header");

  std::optional<std::vector<Label>> maybe_labels;
  if (has_labels) maybe_labels = std::move(labels);
  return validate_sample(Grid(std::move(*abscissae)), std::move(rows), std::move(maybe_labels));
}

FunctionalSample read_sample_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return parse_sample_csv(in);
}

namespace {

void write_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k > 0) out << ',';
    out << format_double(values[k]);
  }
}

}  // namespace

void write_sample_csv(std::ostream& out, const FunctionalSample& sample) {
  const bool labelled = sample.labels().has_value();
  write_row(out, sample.grid().points());
  if (labelled) out << ",label";
  out << '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    write_row(out, sample.curve(i).values());
    if (labelled) out << ',' << ((*sample.labels())[i] == Label::outlier ? "outlier" : "normal");
    out << '\n';
  }
}

void write_depths_csv(std::ostream& out, const DepthVector& depths, std::span<const std::size_t> order) {
  out << "index,depth\n";
  for (std::size_t i : order) out << i << ',' << format_double(depths.values.at(i)) << '\n';
}

void write_curve_csv(std::ostream& out, const Grid& grid, const Curve& curve) {
  write_row(out, grid.points());
  out << '\n';
  write_row(out, curve.values());
  out << '\n';
}

namespace {

using nlohmann::json;

template <typename T>
T get_unsigned(const json& value, const char* key) {
  if (!value.is_number_unsigned())
    throw ConfigError(std::string("config key '") + key + "' must be a nonnegative integer");
  return value.get<T>();
}

double get_number(const json& value, const char* key) {
  if (!value.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  return value.get<double>();
}

int get_int(const json& value, const char* key) {
  if (!value.is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
  return value.get<int>();
}

}  // namespace

BenchmarkConfig parse_benchmark_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  BenchmarkConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "master_seed") {
      config.master_seed = get_unsigned<std::uint64_t>(value, "master_seed");
    } else if (key == "S") {
      config.replications = get_unsigned<std::size_t>(value, "S");
    } else if (key == "n") {
      config.n = get_unsigned<std::size_t>(value, "n");
    } else if (key == "T") {
      config.T = get_unsigned<std::size_t>(value, "T");
    } else if (key == "q") {
      config.q = get_number(value, "q");
    } else if (key == "alpha") {
      config.alpha = get_number(value, "alpha");
    } else if (key == "K") {
      config.K = get_number(value, "K");
    } else if (key == "band_J") {
      config.band_order = get_int(value, "band_J");
    } else if (key == "mbd_j") {
      config.mbd_order = get_int(value, "mbd_j");
    } else if (key == "models") {
      if (!value.is_array()) throw ConfigError("config key 'models' must be an array of integers");
      config.models.clear();
      for (const auto& m : value) config.models.push_back(get_int(m, "models"));
    } else if (key == "methods") {
      if (!value.is_array()) throw ConfigError("config key 'methods' must be an array of method names");
      config.methods.clear();
      for (const auto& m : value) {
        if (!m.is_string()) throw ConfigError("config key 'methods' must hold strings");
        const auto method = parse_estimator(m.get<std::string>());
        if (!method) throw ConfigError("unknown method '" + m.get<std::string>() + "'");
        config.methods.push_back(*method);
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  try {
    config.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

void write_results_csv(std::ostream& out, const ResultTable& table) {
  out << "method,model,mean_ise,se_ise,S\n";
  for (const auto& row : table) {
    out << to_string(row.method) << ',' << row.model << ',' << format_double(row.mean_ise) << ','
        << format_double(row.se_ise) << ',' << row.replications << '\n';
  }
}

void write_results_json(std::ostream& out, const ResultTable& table) {
  // Built by hand so the doubles use the same shortest round-trip form as the CSV.
  out << "[\n";
  for (std::size_t r = 0; r < table.size(); ++r) {
    const auto& row = table[r];
    out << "  {\"method\": \"" << to_string(row.method) << "\", \"model\": " << row.model
        << ", \"mean_ise\": " << format_double(row.mean_ise) << ", \"se_ise\": " << format_double(row.se_ise)
        << ", \"S\": " << row.replications << '}' << (r + 1 < table.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

}  // namespace fdepth

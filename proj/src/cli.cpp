#include "fdepth/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fdepth/errors.hpp"
#include "fdepth/estimators.hpp"
#include "fdepth/io.hpp"
#include "fdepth/simulation.hpp"

namespace fdepth::cli {
namespace {

struct DepthOptions {
  std::string input;
  std::string method;
  int band_order = 3;
  int mbd_order = 2;
  std::optional<double> bandwidth;
  double bandwidth_quantile = 0.15;
};

DepthMethod to_depth_method(const DepthOptions& opts) {
  DepthMethod method;
  method.kind = *parse_depth_kind(opts.method);
  method.band_order = opts.band_order;
  method.mbd_order = opts.mbd_order;
  method.bandwidth =
      opts.bandwidth ? BandwidthRule::fixed(*opts.bandwidth) : BandwidthRule::quantile(opts.bandwidth_quantile);
  return method;
}

void add_depth_options(CLI::App& cmd, DepthOptions& opts, std::vector<std::string> methods) {
  cmd.add_option("--input", opts.input, "Sample CSV file")->required();
  cmd.add_option("--method", opts.method, "Depth method")->required()->check(CLI::IsMember(std::move(methods)));
  cmd.add_option("--band-order", opts.band_order, "Band depth order J")->capture_default_str();
  cmd.add_option("--mbd-order", opts.mbd_order, "Modified band depth order j")->capture_default_str();
  cmd.add_option("--bandwidth", opts.bandwidth, "Fixed h-mode bandwidth h");
  cmd.add_option("--bandwidth-quantile", opts.bandwidth_quantile,
                 "Quantile of pairwise distances used as h-mode bandwidth")
      ->capture_default_str();
}

// Writes to `path` when given, else to `out`.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path.empty()) {
    write(out);
    out.flush();
    return;
  }
  std::ostringstream buffer;
  write(buffer);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << buffer.str();
  if (!file.flush()) throw IoError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Functional data depths, depth-trimmed means and the contamination benchmark", "fdepth"};
  app.require_subcommand(1);

  DepthOptions depth_opts;
  bool sorted = false;
  auto* depth_cmd = app.add_subcommand("depth", "Depth of every curve of a sample with respect to the sample");
  add_depth_options(*depth_cmd, depth_opts, {"hrd", "fmj", "bd", "mbd", "fsd", "hmode"});
  depth_cmd->add_flag("--sorted", sorted, "List curves deepest first");

  DepthOptions estimate_opts;
  double alpha = 0.2;
  auto* estimate_cmd = app.add_subcommand("estimate", "Depth-trimmed mean of a sample");
  add_depth_options(*estimate_cmd, estimate_opts, {"hrd", "fmj", "bd", "mbd", "fsd", "hmode", "mean"});
  estimate_cmd->add_option("--alpha", alpha, "Fraction of least deep curves to trim")->capture_default_str();

  int model = 0;
  std::size_t n = 50;
  std::size_t T = 30;
  double q = 0.1;
  double K = 25.0;
  std::uint64_t seed = 0;
  std::string sim_output;
  auto* simulate_cmd = app.add_subcommand("simulate", "Generate one labelled sample from a contamination model");
  simulate_cmd->add_option("--model", model, "Model id")->required()->check(CLI::Range(0, kModelCount - 1));
  simulate_cmd->add_option("--n", n, "Number of curves")->capture_default_str();
  simulate_cmd->add_option("--T", T, "Grid size")->capture_default_str();
  simulate_cmd->add_option("--q", q, "Contamination probability")->capture_default_str();
  simulate_cmd->add_option("--K", K, "Contamination size")->capture_default_str();
  simulate_cmd->add_option("--seed", seed, "Random seed")->required();
  simulate_cmd->add_option("--output", sim_output, "Output CSV (default: stdout)");

  std::string config_path;
  std::string bench_output;
  std::string format = "csv";
  unsigned threads = 0;
  auto* benchmark_cmd = app.add_subcommand("benchmark", "Monte Carlo comparison of the location estimators");
  benchmark_cmd->add_option("--config", config_path, "JSON configuration (default: all defaults)");
  benchmark_cmd->add_option("--output", bench_output, "Output file (default: stdout)");
  benchmark_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  benchmark_cmd->add_option("--threads", threads, "Worker threads (0: all cores)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (depth_cmd->parsed()) {
      const auto sample = read_sample_csv(depth_opts.input);
      const auto depths = compute_depths(sample, to_depth_method(depth_opts));
      std::vector<std::size_t> order(sample.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      if (sorted) order = depth_order(depths);
      write_depths_csv(out, depths, order);
    } else if (estimate_cmd->parsed()) {
      const auto sample = read_sample_csv(estimate_opts.input);
      Curve estimate;
      if (estimate_opts.method == "mean") {
        TrimSpec{alpha}.retained_count(sample.size());
        estimate = untrimmed_mean(sample);
      } else {
        const auto depths = compute_depths(sample, to_depth_method(estimate_opts));
        estimate = depth_trimmed_mean(sample, depths, TrimSpec{alpha});
      }
      write_curve_csv(out, sample.grid(), estimate);
    } else if (simulate_cmd->parsed()) {
      ModelSpec spec;
      spec.model_id = model;
      spec.n = n;
      spec.q = q;
      spec.K = K;
      spec.grid = make_grid(T);
      RngStream rng(seed);
      const auto sample = generate_model(spec, rng);
      emit(sim_output, out, [&](std::ostream& os) { write_sample_csv(os, sample); });
    } else if (benchmark_cmd->parsed()) {
      BenchmarkConfig config = config_path.empty() ? BenchmarkConfig{} : parse_benchmark_config(read_text(config_path));
      config.threads = threads;
      const auto table = run_benchmark(config);
      emit(bench_output, out, [&](std::ostream& os) {
        if (format == "json") {
          write_results_json(os, table);
        } else {
          write_results_csv(os, table);
        }
      });
    }
  } catch (const IoError& e) {
    err << "fdepth: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "fdepth: " << e.what() << '\n';
    return kData;
  } catch (const DataError& e) {
    err << "fdepth: " << e.what() << '\n';
    return kData;
  } catch (const DimensionError& e) {
    err << "fdepth: " << e.what() << '\n';
    return kData;
  } catch (const ConfigError& e) {
    err << "fdepth: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "fdepth: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "fdepth: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace fdepth::cli

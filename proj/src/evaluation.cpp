#include "fdepth/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "fdepth/errors.hpp"

namespace fdepth {

std::string_view to_string(Estimator method) {
  switch (method) {
    case Estimator::hrd: return "hrd";
    case Estimator::fmj: return "fmj";
    case Estimator::bd: return "bd";
    case Estimator::mbd: return "mbd";
    case Estimator::fsd: return "fsd";
    case Estimator::mean: return "mean";
  }
  return "unknown";
}

std::optional<Estimator> parse_estimator(std::string_view name) {
  for (auto method : kAllEstimators) {
    if (to_string(method) == name) return method;
  }
  return std::nullopt;
}

double ise(const Curve& estimate, const Grid& grid) {
  if (estimate.size() != grid.size())
    throw DimensionError("estimate has " + std::to_string(estimate.size()) + " values, grid has " +
                         std::to_string(grid.size()));
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double err = estimate[k] - true_mean(grid[k]);
    sum += err * err;
  }
  return sum / static_cast<double>(grid.size());
}

namespace {

DepthKind depth_kind_for(Estimator method) {
  switch (method) {
    case Estimator::hrd: return DepthKind::hrd;
    case Estimator::fmj: return DepthKind::fmj;
    case Estimator::bd: return DepthKind::bd;
    case Estimator::mbd: return DepthKind::mbd;
    case Estimator::fsd: return DepthKind::fsd;
    case Estimator::mean: break;
  }
  throw InvalidArgument("the untrimmed mean has no depth");
}

}  // namespace

std::map<Estimator, double> run_replication(const ModelGenerator& generator, std::span<const Estimator> methods,
                                            const ReplicationParams& params, RngStream& rng) {
  const FunctionalSample sample = generator.generate(rng);
  std::map<Estimator, double> out;
  for (Estimator method : methods) {
    if (out.contains(method)) continue;
    if (method == Estimator::mean) {
      out[method] = ise(untrimmed_mean(sample), sample.grid());
      continue;
    }
    const DepthMethod depth{
        .kind = depth_kind_for(method), .band_order = params.band_order, .mbd_order = params.mbd_order};
    const DepthVector depths = compute_depths(sample, depth);
    out[method] = ise(depth_trimmed_mean(sample, depths, params.trim), sample.grid());
  }
  return out;
}

void BenchmarkConfig::validate() const {
  if (replications == 0) throw InvalidArgument("replication count S must be at least 1");
  if (models.empty()) throw InvalidArgument("at least one model is required");
  if (methods.empty()) throw InvalidArgument("at least one method is required");
  for (std::size_t a = 0; a < models.size(); ++a) {
    if (models[a] < 0 || models[a] >= kModelCount)
      throw InvalidArgument("model id must be in 0..5, got " + std::to_string(models[a]));
    if (std::find(models.begin(), models.begin() + static_cast<std::ptrdiff_t>(a), models[a]) !=
        models.begin() + static_cast<std::ptrdiff_t>(a))
      throw InvalidArgument("model " + std::to_string(models[a]) + " listed twice");
  }
  for (std::size_t a = 0; a < methods.size(); ++a) {
    if (std::find(methods.begin(), methods.begin() + static_cast<std::ptrdiff_t>(a), methods[a]) !=
        methods.begin() + static_cast<std::ptrdiff_t>(a))
      throw InvalidArgument("method " + std::string(to_string(methods[a])) + " listed twice");
  }
  if (T == 0) throw InvalidArgument("grid size T must be positive");
  TrimSpec{alpha}.retained_count(n);
  for (Estimator method : methods) {
    if (method == Estimator::mean) continue;
    DepthMethod{.kind = depth_kind_for(method), .band_order = band_order, .mbd_order = mbd_order}.validate(n);
  }
}

BenchmarkError::BenchmarkError(int model, std::size_t replication, const std::string& what)
    : std::runtime_error("model " + std::to_string(model) + ", replication " + std::to_string(replication) + ": " +
                         what),
      model_(model),
      replication_(replication) {}

ResultTable run_benchmark(const BenchmarkConfig& config) {
  config.validate();
  const ReplicationParams params{TrimSpec{config.alpha}, config.band_order, config.mbd_order};
  const std::size_t S = config.replications;
  const std::size_t method_count = config.methods.size();

  unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, S));

  // ise_by_model[model slot][replication * method_count + method slot]
  std::vector<std::vector<double>> ise_by_model;
  for (int model : config.models) {
    ModelSpec spec;
    spec.model_id = model;
    spec.n = config.n;
    spec.q = config.q;
    spec.K = config.K;
    spec.grid = make_grid(config.T);
    const ModelGenerator generator(spec);

    std::vector<double> values(S * method_count, 0.0);
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::optional<std::size_t> failed_at;
    std::string failure;

    auto worker = [&] {
      for (;;) {
        const std::size_t rep = next.fetch_add(1);
        if (rep >= S) return;
        try {
          RngStream rng(replication_seed(config.master_seed, model, rep));
          const auto result = run_replication(generator, config.methods, params, rng);
          for (std::size_t m = 0; m < method_count; ++m) values[rep * method_count + m] = result.at(config.methods[m]);
        } catch (const std::exception& e) {
          std::lock_guard lock(failure_mutex);
          if (!failed_at || rep < *failed_at) {
            failed_at = rep;
            failure = e.what();
          }
          next.store(S);
          return;
        }
      }
    };

    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
    }
    if (failed_at) throw BenchmarkError(model, *failed_at, failure);
    ise_by_model.push_back(std::move(values));
  }

  ResultTable table;
  for (std::size_t m = 0; m < method_count; ++m) {
    for (std::size_t slot = 0; slot < config.models.size(); ++slot) {
      const auto& values = ise_by_model[slot];
      double sum = 0.0;
      for (std::size_t rep = 0; rep < S; ++rep) sum += values[rep * method_count + m];
      const double mean = sum / static_cast<double>(S);
      double se = 0.0;
      if (S > 1) {
        double ss = 0.0;
        for (std::size_t rep = 0; rep < S; ++rep) {
          const double d = values[rep * method_count + m] - mean;
          ss += d * d;
        }
        se = std::sqrt(ss / static_cast<double>(S - 1)) / std::sqrt(static_cast<double>(S));
      }
      table.push_back({config.methods[m], config.models[slot], mean, se, S});
    }
  }
  return table;
}

const ResultRow* find_row(const ResultTable& table, Estimator method, int model) {
  for (const auto& row : table) {
    if (row.method == method && row.model == model) return &row;
  }
  return nullptr;
}

}  // namespace fdepth

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdepth/core.hpp"
#include "fdepth/depths.hpp"
#include "fdepth/estimators.hpp"
#include "fdepth/simulation.hpp"

namespace fdepth {

// Location estimators compared by the benchmark: five depth-trimmed means and
// the untrimmed mean.
enum class Estimator { hrd, fmj, bd, mbd, fsd, mean };

inline constexpr std::array<Estimator, 6> kAllEstimators = {Estimator::hrd, Estimator::fmj, Estimator::bd,
                                                            Estimator::mbd, Estimator::fsd, Estimator::mean};

std::string_view to_string(Estimator method);
std::optional<Estimator> parse_estimator(std::string_view name);

// Integrated squared error against g(t) = 4t, averaged over the grid points.
double ise(const Curve& estimate, const Grid& grid);

struct ReplicationParams {
  TrimSpec trim{};
  int band_order = 3;
  int mbd_order = 2;
};

// One generated sample shared by every requested estimator.
std::map<Estimator, double> run_replication(const ModelGenerator& generator, std::span<const Estimator> methods,
                                            const ReplicationParams& params, RngStream& rng);

struct BenchmarkConfig {
  std::uint64_t master_seed = 20190601;
  std::size_t replications = 1000;
  std::vector<int> models = {0, 1, 2, 3, 4, 5};
  std::vector<Estimator> methods{kAllEstimators.begin(), kAllEstimators.end()};
  std::size_t n = 50;
  std::size_t T = 30;
  double q = 0.1;
  double K = 25.0;
  double alpha = 0.2;
  int band_order = 3;
  int mbd_order = 2;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct ResultRow {
  Estimator method;
  int model;
  double mean_ise;
  double se_ise;  // sample standard deviation / sqrt(S); 0 when S = 1
  std::size_t replications;
};

using ResultTable = std::vector<ResultRow>;

class BenchmarkError : public std::runtime_error {
 public:
  BenchmarkError(int model, std::size_t replication, const std::string& what);
  int model() const noexcept { return model_; }
  std::size_t replication() const noexcept { return replication_; }

 private:
  int model_;
  std::size_t replication_;
};

// Rows ordered by method, then model, following the config's ordering.
// Replications run on `threads` workers, each with a stream seeded from
// (master_seed, model, replication index); aggregation runs in index order so
// the table does not depend on the thread count.
ResultTable run_benchmark(const BenchmarkConfig& config);

const ResultRow* find_row(const ResultTable& table, Estimator method, int model);

}  // namespace fdepth

#include "fdepth/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fdepth/errors.hpp"

namespace fdepth {

std::size_t TrimSpec::retained_count(std::size_t n) const {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("trim fraction alpha must lie in [0, 1)");
  const auto trimmed = static_cast<std::size_t>(std::floor(static_cast<double>(n) * alpha));
  if (trimmed >= n) throw InvalidArgument("trim fraction leaves no curves for n=" + std::to_string(n));
  return n - trimmed;
}

std::vector<std::size_t> depth_order(const DepthVector& depths) {
  std::vector<std::size_t> order(depths.values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return depths.values[a] > depths.values[b]; });
  return order;
}

namespace {

Curve mean_of(const FunctionalSample& sample, std::span<const std::size_t> indices) {
  const std::size_t T = sample.grid().size();
  std::vector<double> sum(T, 0.0);
  for (std::size_t i : indices) {
    const Curve& c = sample.curve(i);
    for (std::size_t k = 0; k < T; ++k) sum[k] += c[k];
  }
  for (double& s : sum) s /= static_cast<double>(indices.size());
  return Curve(std::move(sum));
}

}  // namespace

Curve depth_trimmed_mean(const FunctionalSample& sample, const DepthVector& depths, const TrimSpec& spec) {
  if (depths.values.size() != sample.size())
    throw DimensionError("depth vector has " + std::to_string(depths.values.size()) + " entries for " +
                         std::to_string(sample.size()) + " curves");
  const std::size_t keep = spec.retained_count(sample.size());
  auto order = depth_order(depths);
  order.resize(keep);
  // Sum retained curves in index order so alpha = 0 reproduces the plain mean bit for bit.
  std::sort(order.begin(), order.end());
  return mean_of(sample, order);
}

Curve untrimmed_mean(const FunctionalSample& sample) {
  std::vector<std::size_t> all(sample.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return mean_of(sample, all);
}

}  // namespace fdepth

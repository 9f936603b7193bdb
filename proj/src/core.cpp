#include "fdepth/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fdepth/errors.hpp"

namespace fdepth {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw InvalidArgument("grid must contain at least one point");
  for (std::size_t k = 0; k < points_.size(); ++k) {
    if (!std::isfinite(points_[k])) throw DataError("grid point " + std::to_string(k) + " is not finite");
    if (k > 0 && !(points_[k - 1] < points_[k]))
      throw InvalidArgument("grid points must be strictly increasing (index " + std::to_string(k) + ")");
  }
}

Grid make_grid(std::size_t T) {
  if (T == 0) throw InvalidArgument("grid size T must be positive");
  std::vector<double> points(T);
  for (std::size_t k = 1; k <= T; ++k) points[k - 1] = static_cast<double>(k) / static_cast<double>(T);
  return Grid(std::move(points));
}

std::size_t FunctionalSample::outlier_count() const noexcept {
  if (!labels_) return 0;
  return static_cast<std::size_t>(std::count(labels_->begin(), labels_->end(), Label::outlier));
}

FunctionalSample validate_sample(Grid grid, std::vector<Curve> curves, std::optional<std::vector<Label>> labels) {
  if (curves.empty()) throw InvalidArgument("sample must contain at least one curve");
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (curves[i].size() != grid.size())
      throw DimensionError("row " + std::to_string(i) + " has " + std::to_string(curves[i].size()) +
                           " values, expected " + std::to_string(grid.size()));
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (!std::isfinite(curves[i][k]))
        throw DataError("row " + std::to_string(i) + " has a non-finite value at index " + std::to_string(k));
    }
  }
  if (labels && labels->size() != curves.size())
    throw DimensionError("label count " + std::to_string(labels->size()) + " does not match curve count " +
                         std::to_string(curves.size()));
  return FunctionalSample(std::move(grid), std::move(curves), std::move(labels));
}

FunctionalSample validate_sample(Grid grid, std::vector<std::vector<double>> rows,
                                 std::optional<std::vector<Label>> labels) {
  std::vector<Curve> curves;
  curves.reserve(rows.size());
  for (auto& row : rows) curves.emplace_back(std::move(row));
  return validate_sample(std::move(grid), std::move(curves), std::move(labels));
}

double grid_norm(std::span<const double> a) {
  // Scaled by the largest magnitude so tiny or huge values neither underflow
  // nor overflow when squared.
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : a) {
    const double r = v / scale;
    sum += r * r;
  }
  return scale * std::sqrt(sum);
}

void require_same_grid(const Curve& a, const Curve& b) {
  if (a.size() != b.size())
    throw DimensionError("curves have different lengths (" + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + ")");
}

void require_on_grid(const Curve& x, const FunctionalSample& sample) {
  if (x.size() != sample.grid().size())
    throw DimensionError("target curve has " + std::to_string(x.size()) + " values, sample grid has " +
                         std::to_string(sample.grid().size()));
}

}  // namespace fdepth

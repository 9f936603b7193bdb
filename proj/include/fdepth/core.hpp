#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace fdepth {

// Common abscissa t_1 < ... < t_T shared by every curve of a sample.
class Grid {
 public:
  // Throws InvalidArgument unless `points` is nonempty and strictly increasing.
  explicit Grid(std::vector<double> points);

  std::size_t size() const noexcept { return points_.size(); }
  std::span<const double> points() const noexcept { return points_; }
  double operator[](std::size_t k) const { return points_[k]; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<double> points_;
};

// Grid with points k/T, k = 1..T (t = 0 excluded, t = 1 included).
Grid make_grid(std::size_t T);

// One functional observation: its values over a grid.
class Curve {
 public:
  Curve() = default;
  explicit Curve(std::vector<double> values) : values_(std::move(values)) {}
  Curve(std::initializer_list<double> values) : values_(values) {}

  static Curve constant(std::size_t T, double value) { return Curve(std::vector<double>(T, value)); }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double& operator[](std::size_t k) { return values_[k]; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const Curve&, const Curve&) = default;

 private:
  std::vector<double> values_;
};

enum class Label { normal, outlier };

// n >= 1 finite curves on one grid, optionally labelled. Only constructible
// through validate_sample, so every instance satisfies its invariants.
class FunctionalSample {
 public:
  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return curves_.size(); }
  const Curve& curve(std::size_t i) const { return curves_[i]; }
  const std::vector<Curve>& curves() const noexcept { return curves_; }
  const std::optional<std::vector<Label>>& labels() const noexcept { return labels_; }
  std::size_t outlier_count() const noexcept;

  friend FunctionalSample validate_sample(Grid grid, std::vector<std::vector<double>> rows,
                                          std::optional<std::vector<Label>> labels);
  friend FunctionalSample validate_sample(Grid grid, std::vector<Curve> curves,
                                          std::optional<std::vector<Label>> labels);

 private:
  FunctionalSample(Grid grid, std::vector<Curve> curves, std::optional<std::vector<Label>> labels)
      : grid_(std::move(grid)), curves_(std::move(curves)), labels_(std::move(labels)) {}

  Grid grid_;
  std::vector<Curve> curves_;
  std::optional<std::vector<Label>> labels_;
};

// Throws InvalidArgument for an empty row set, DimensionError naming the first
// ragged row, DataError for a non-finite value.
FunctionalSample validate_sample(Grid grid, std::vector<std::vector<double>> rows,
                                 std::optional<std::vector<Label>> labels = std::nullopt);
FunctionalSample validate_sample(Grid grid, std::vector<Curve> curves,
                                 std::optional<std::vector<Label>> labels = std::nullopt);
inline FunctionalSample validate_sample(Grid grid, std::initializer_list<std::initializer_list<double>> rows,
                                        std::optional<std::vector<Label>> labels = std::nullopt) {
  return validate_sample(std::move(grid), std::vector<std::vector<double>>(rows.begin(), rows.end()),
                         std::move(labels));
}

// Unscaled Euclidean norm over the grid values.
double grid_norm(std::span<const double> a);
inline double grid_norm(const Curve& a) { return grid_norm(a.values()); }

// Throws DimensionError when the two curves have different lengths.
void require_same_grid(const Curve& a, const Curve& b);
void require_on_grid(const Curve& x, const FunctionalSample& sample);

}  // namespace fdepth

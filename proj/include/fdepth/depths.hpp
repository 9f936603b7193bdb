#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fdepth/core.hpp"

namespace fdepth {

enum class DepthKind { hrd, fmj, bd, mbd, fsd, hmode };

std::string_view to_string(DepthKind kind);
std::optional<DepthKind> parse_depth_kind(std::string_view name);

// Bandwidth selector for h-mode depth: either a fixed h, or the p-quantile of
// the n(n-1)/2 pairwise grid-norm distances within the reference sample.
struct BandwidthRule {
  enum class Kind { quantile, fixed };
  Kind kind = Kind::quantile;
  double value = 0.15;

  static BandwidthRule fixed(double h) { return {Kind::fixed, h}; }
  static BandwidthRule quantile(double p) { return {Kind::quantile, p}; }
};

struct DepthMethod {
  DepthKind kind = DepthKind::mbd;
  int band_order = 3;  // J, band depth only
  int mbd_order = 2;   // j, modified band depth only
  BandwidthRule bandwidth{};

  // Throws InvalidArgument for orders < 2 or orders exceeding the sample size n.
  void validate(std::size_t n) const;
};

struct DepthVector {
  DepthKind method;
  std::vector<double> values;
};

// Exact binomial coefficient; throws InvalidArgument on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// a(t_k) >= b(t_k) at every grid index.
bool dominates(const Curve& a, const Curve& b);

double half_region_depth(const Curve& x, const FunctionalSample& sample);

// Majority half region of each reference curve: upper when more sample curves
// lie above it than below, lower in the opposite case, both on a tie.
struct MajoritySide {
  bool upper;
  bool lower;
};
std::vector<MajoritySide> majority_sides(const FunctionalSample& sample);

double functional_majority_depth(const Curve& x, const FunctionalSample& sample);
double functional_majority_depth(const Curve& x, const FunctionalSample& sample,
                                 std::span<const MajoritySide> sides);

// Non-strict containment in the pointwise min/max envelope of `tuple` (size >= 2).
bool in_band(const Curve& x, std::span<const Curve> tuple);
double band_fraction(const Curve& x, std::span<const Curve> tuple);

// Sum over j = 2..J of the fraction of distinct-index j-subsets whose band
// contains x everywhere. Range [0, J-1].
double band_depth(const Curve& x, const FunctionalSample& sample, int J = 3);

// Average over distinct-index j-subsets of the fraction of grid points where x
// lies inside the band.
double modified_band_depth(const Curve& x, const FunctionalSample& sample, int j = 2);

// Spatial sign v / |v|, zero at zero.
Curve spatial_sign(std::span<const double> v);

double functional_spatial_depth(const Curve& x, const FunctionalSample& sample);

// Resolves the bandwidth for `sample`; throws BandwidthError if h <= 0.
double resolve_bandwidth(const FunctionalSample& sample, const BandwidthRule& rule);

// Mean Gaussian kernel exp(-(|x - x_i| / h)^2 / 2) over the sample. Needs n >= 2.
double h_mode_depth(const Curve& x, const FunctionalSample& sample, const BandwidthRule& rule = {});

// Depth of every sample curve with respect to the sample itself, in sample order.
DepthVector compute_depths(const FunctionalSample& sample, const DepthMethod& method);

}  // namespace fdepth

#pragma once

#include <cstddef>
#include <vector>

#include "fdepth/core.hpp"
#include "fdepth/depths.hpp"

namespace fdepth {

// Fraction alpha in [0, 1) of least-deep curves to discard.
struct TrimSpec {
  double alpha = 0.2;

  // n - floor(n * alpha); throws InvalidArgument if alpha is out of range or
  // nothing would be retained.
  std::size_t retained_count(std::size_t n) const;
};

// Sample indices ordered deepest first, ties broken by ascending index.
std::vector<std::size_t> depth_order(const DepthVector& depths);

// Pointwise mean of the n - floor(n * alpha) deepest curves.
Curve depth_trimmed_mean(const FunctionalSample& sample, const DepthVector& depths, const TrimSpec& spec);

Curve untrimmed_mean(const FunctionalSample& sample);

}  // namespace fdepth

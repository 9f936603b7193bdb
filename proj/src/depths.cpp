#include "fdepth/depths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fdepth/errors.hpp"

namespace fdepth {

std::string_view to_string(DepthKind kind) {
  switch (kind) {
    case DepthKind::hrd: return "hrd";
    case DepthKind::fmj: return "fmj";
    case DepthKind::bd: return "bd";
    case DepthKind::mbd: return "mbd";
    case DepthKind::fsd: return "fsd";
    case DepthKind::hmode: return "hmode";
  }
  return "unknown";
}

std::optional<DepthKind> parse_depth_kind(std::string_view name) {
  for (auto kind : {DepthKind::hrd, DepthKind::fmj, DepthKind::bd, DepthKind::mbd, DepthKind::fsd, DepthKind::hmode}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

void DepthMethod::validate(std::size_t n) const {
  if (kind == DepthKind::bd) {
    if (band_order < 2) throw InvalidArgument("band order J must be at least 2");
    if (static_cast<std::size_t>(band_order) > n)
      throw InvalidArgument("band order J=" + std::to_string(band_order) + " exceeds sample size " + std::to_string(n));
  }
  if (kind == DepthKind::mbd) {
    if (mbd_order < 2) throw InvalidArgument("band order j must be at least 2");
    if (static_cast<std::size_t>(mbd_order) > n)
      throw InvalidArgument("band order j=" + std::to_string(mbd_order) + " exceeds sample size " + std::to_string(n));
  }
  if (kind == DepthKind::hmode && n < 2) throw InvalidArgument("h-mode depth needs at least two curves");
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t factor = n - k + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor)
      throw InvalidArgument("binomial coefficient C(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
    result = result * factor / i;
  }
  return result;
}

bool dominates(const Curve& a, const Curve& b) {
  require_same_grid(a, b);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return false;
  }
  return true;
}

double half_region_depth(const Curve& x, const FunctionalSample& sample) {
  require_on_grid(x, sample);
  std::size_t above = 0;
  std::size_t below = 0;
  for (const auto& c : sample.curves()) {
    if (dominates(c, x)) ++above;
    if (dominates(x, c)) ++below;
  }
  return static_cast<double>(std::min(above, below)) / static_cast<double>(sample.size());
}

std::vector<MajoritySide> majority_sides(const FunctionalSample& sample) {
  const std::size_t n = sample.size();
  std::vector<std::size_t> upper_mass(n, 0);
  std::vector<std::size_t> lower_mass(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      if (dominates(sample.curve(i), sample.curve(r))) {
        ++upper_mass[r];
        ++lower_mass[i];
      }
    }
  }
  std::vector<MajoritySide> sides(n);
  for (std::size_t r = 0; r < n; ++r) {
    sides[r] = {upper_mass[r] >= lower_mass[r], lower_mass[r] >= upper_mass[r]};
  }
  return sides;
}

double functional_majority_depth(const Curve& x, const FunctionalSample& sample,
                                 std::span<const MajoritySide> sides) {
  require_on_grid(x, sample);
  if (sides.size() != sample.size()) throw DimensionError("majority sides do not match the sample");
  std::size_t hits = 0;
  for (std::size_t r = 0; r < sample.size(); ++r) {
    const Curve& ref = sample.curve(r);
    if ((sides[r].upper && dominates(x, ref)) || (sides[r].lower && dominates(ref, x))) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(sample.size());
}

double functional_majority_depth(const Curve& x, const FunctionalSample& sample) {
  require_on_grid(x, sample);
  const auto sides = majority_sides(sample);
  return functional_majority_depth(x, sample, sides);
}

namespace {

void require_tuple(const Curve& x, std::span<const Curve> tuple) {
  if (tuple.size() < 2) throw InvalidArgument("a band needs at least two curves");
  for (const auto& c : tuple) require_same_grid(x, c);
}

bool inside_at(const Curve& x, std::span<const Curve> tuple, std::size_t k) {
  bool has_low = false;
  bool has_high = false;
  for (const auto& c : tuple) {
    has_low = has_low || c[k] <= x[k];
    has_high = has_high || c[k] >= x[k];
  }
  return has_low && has_high;
}

// Subset enumeration for band depth. Each sample curve gets a bit mask with
// bit k set where it lies strictly above x at t_k and bit T+k set where it lies
// strictly below. A subset's band misses x somewhere iff the AND of its
// members' masks is nonzero.
class BandCounter {
 public:
  BandCounter(const Curve& x, const FunctionalSample& sample, std::size_t max_order)
      : n_(sample.size()), words_((2 * x.size() + 63) / 64), max_order_(max_order),
        masks_(n_ * words_, 0), scratch_((max_order + 1) * words_, 0), counts_(max_order + 1, 0) {
    const std::size_t T = x.size();
    for (std::size_t i = 0; i < n_; ++i) {
      const Curve& c = sample.curve(i);
      std::uint64_t* mask = &masks_[i * words_];
      for (std::size_t k = 0; k < T; ++k) {
        if (c[k] > x[k]) set_bit(mask, k);
        if (c[k] < x[k]) set_bit(mask, T + k);
      }
    }
    std::uint64_t* root = &scratch_[0];
    for (std::size_t b = 0; b < 2 * T; ++b) set_bit(root, b);
    visit(0, 0);
  }

  // Number of distinct-index subsets of size `order` whose band contains x.
  std::uint64_t count(std::size_t order) const { return counts_[order]; }

 private:
  static void set_bit(std::uint64_t* words, std::size_t b) { words[b / 64] |= std::uint64_t{1} << (b % 64); }

  void visit(std::size_t start, std::size_t size) {
    const std::uint64_t* running = &scratch_[size * words_];
    std::uint64_t* next = &scratch_[(size + 1) * words_];
    for (std::size_t i = start; i < n_; ++i) {
      const std::uint64_t* mask = &masks_[i * words_];
      std::uint64_t any = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        next[w] = running[w] & mask[w];
        any |= next[w];
      }
      const std::size_t members = size + 1;
      if (any == 0) {
        // Every extension with indices above i keeps containing x.
        const std::size_t pool = n_ - i - 1;
        for (std::size_t order = std::max<std::size_t>(2, members); order <= max_order_; ++order) {
          counts_[order] += binomial(pool, order - members);
        }
      } else if (members < max_order_) {
        visit(i + 1, members);
      }
    }
  }

  std::size_t n_;
  std::size_t words_;
  std::size_t max_order_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::uint64_t> scratch_;
  std::vector<std::uint64_t> counts_;
};

}  // namespace

bool in_band(const Curve& x, std::span<const Curve> tuple) {
  require_tuple(x, tuple);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!inside_at(x, tuple, k)) return false;
  }
  return true;
}

double band_fraction(const Curve& x, std::span<const Curve> tuple) {
  require_tuple(x, tuple);
  std::size_t inside = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (inside_at(x, tuple, k)) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(x.size());
}

double band_depth(const Curve& x, const FunctionalSample& sample, int J) {
  require_on_grid(x, sample);
  DepthMethod{.kind = DepthKind::bd, .band_order = J}.validate(sample.size());
  const auto order = static_cast<std::size_t>(J);
  const BandCounter counter(x, sample, order);

  // Sum the fractions over a common denominator and divide once, so the result
  // is the correctly rounded value of the exact rational (5/3, not 2/3 + 1).
  constexpr std::uint64_t kExact = std::uint64_t{1} << 53;
  std::uint64_t denominator = 1;
  bool exact = true;
  for (std::size_t j = 2; j <= order && exact; ++j) {
    const std::uint64_t step = binomial(sample.size(), j) / std::gcd(denominator, binomial(sample.size(), j));
    exact = step <= kExact / denominator;
    if (exact) denominator *= step;
  }
  if (exact) {
    // Each term is at most the denominator, so the sum cannot overflow.
    std::uint64_t numerator = 0;
    for (std::size_t j = 2; j <= order; ++j) numerator += counter.count(j) * (denominator / binomial(sample.size(), j));
    if (numerator <= kExact) return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  double depth = 0.0;
  for (std::size_t j = 2; j <= order; ++j) {
    depth += static_cast<double>(counter.count(j)) / static_cast<double>(binomial(sample.size(), j));
  }
  return depth;
}

double modified_band_depth(const Curve& x, const FunctionalSample& sample, int j) {
  require_on_grid(x, sample);
  DepthMethod{.kind = DepthKind::mbd, .mbd_order = j}.validate(sample.size());
  // At each t_k a j-subset misses x iff all members lie strictly below or all
  // strictly above, so the containing subsets number C(n,j) - C(below,j) - C(above,j).
  const std::size_t n = sample.size();
  const auto order = static_cast<std::uint64_t>(j);
  const std::uint64_t subsets = binomial(n, order);
  std::uint64_t hits = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::size_t below = 0;
    std::size_t above = 0;
    for (const auto& c : sample.curves()) {
      below += c[k] < x[k];
      above += c[k] > x[k];
    }
    hits += subsets - binomial(below, order) - binomial(above, order);
  }
  return static_cast<double>(hits) / (static_cast<double>(subsets) * static_cast<double>(x.size()));
}

Curve spatial_sign(std::span<const double> v) {
  Curve sign(std::vector<double>(v.begin(), v.end()));
  const double norm = grid_norm(v);
  if (norm == 0.0) {
    std::fill(sign.values().begin(), sign.values().end(), 0.0);
    return sign;
  }
  for (double& s : sign.values()) s /= norm;
  return sign;
}

double functional_spatial_depth(const Curve& x, const FunctionalSample& sample) {
  require_on_grid(x, sample);
  const std::size_t T = x.size();
  std::vector<double> sum(T, 0.0);
  std::vector<double> diff(T);
  for (const auto& c : sample.curves()) {
    for (std::size_t k = 0; k < T; ++k) diff[k] = x[k] - c[k];
    const double norm = grid_norm(diff);
    if (norm == 0.0) continue;
    for (std::size_t k = 0; k < T; ++k) sum[k] += diff[k] / norm;
  }
  for (double& s : sum) s /= static_cast<double>(sample.size());
  return 1.0 - grid_norm(sum);
}

namespace {

double pairwise_distance_quantile(const FunctionalSample& sample, double p) {
  const std::size_t n = sample.size();
  const std::size_t T = sample.grid().size();
  std::vector<double> distances;
  distances.reserve(n * (n - 1) / 2);
  std::vector<double> diff(T);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < T; ++k) diff[k] = sample.curve(i)[k] - sample.curve(j)[k];
      distances.push_back(grid_norm(diff));
    }
  }
  std::sort(distances.begin(), distances.end());
  // Linear interpolation between order statistics at position p * (m - 1).
  const double pos = p * static_cast<double>(distances.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, distances.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return distances[lo] + frac * (distances[hi] - distances[lo]);
}

double kernel_mean(const Curve& x, const FunctionalSample& sample, double h) {
  const std::size_t T = x.size();
  std::vector<double> diff(T);
  double sum = 0.0;
  for (const auto& c : sample.curves()) {
    for (std::size_t k = 0; k < T; ++k) diff[k] = x[k] - c[k];
    const double u = grid_norm(diff) / h;
    sum += std::exp(-0.5 * u * u);
  }
  return sum / static_cast<double>(sample.size());
}

}  // namespace

double resolve_bandwidth(const FunctionalSample& sample, const BandwidthRule& rule) {
  double h = 0.0;
  if (rule.kind == BandwidthRule::Kind::fixed) {
    h = rule.value;
  } else {
    if (!(rule.value >= 0.0 && rule.value <= 1.0))
      throw InvalidArgument("bandwidth quantile must lie in [0, 1]");
    if (sample.size() < 2) throw InvalidArgument("h-mode depth needs at least two curves");
    h = pairwise_distance_quantile(sample, rule.value);
  }
  if (!(h > 0.0) || !std::isfinite(h))
    throw BandwidthError("h-mode bandwidth must be positive and finite, got " + std::to_string(h));
  return h;
}

double h_mode_depth(const Curve& x, const FunctionalSample& sample, const BandwidthRule& rule) {
  require_on_grid(x, sample);
  if (sample.size() < 2) throw InvalidArgument("h-mode depth needs at least two curves");
  return kernel_mean(x, sample, resolve_bandwidth(sample, rule));
}

DepthVector compute_depths(const FunctionalSample& sample, const DepthMethod& method) {
  method.validate(sample.size());
  const std::size_t n = sample.size();
  DepthVector out{method.kind, std::vector<double>(n)};
  switch (method.kind) {
    case DepthKind::hrd:
      for (std::size_t i = 0; i < n; ++i) out.values[i] = half_region_depth(sample.curve(i), sample);
      break;
    case DepthKind::fmj: {
      const auto sides = majority_sides(sample);
      for (std::size_t i = 0; i < n; ++i) out.values[i] = functional_majority_depth(sample.curve(i), sample, sides);
      break;
    }
    case DepthKind::bd:
      for (std::size_t i = 0; i < n; ++i) out.values[i] = band_depth(sample.curve(i), sample, method.band_order);
      break;
    case DepthKind::mbd:
      for (std::size_t i = 0; i < n; ++i) out.values[i] = modified_band_depth(sample.curve(i), sample, method.mbd_order);
      break;
    case DepthKind::fsd:
      for (std::size_t i = 0; i < n; ++i) out.values[i] = functional_spatial_depth(sample.curve(i), sample);
      break;
    case DepthKind::hmode: {
      const double h = resolve_bandwidth(sample, method.bandwidth);
      for (std::size_t i = 0; i < n; ++i) out.values[i] = kernel_mean(sample.curve(i), sample, h);
      break;
    }
  }
  return out;
}

}  // namespace fdepth

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fdepth/core.hpp"
#include "fdepth/rng.hpp"

namespace fdepth {

enum class CovarianceKernel {
  exp_abs,  // exp(-0.45 |s - t|)
  sq_exp,   // exp(-(s - t)^2)
};

double covariance(CovarianceKernel kernel, double s, double t);

Eigen::MatrixXd gram_matrix(const Grid& grid, CovarianceKernel kernel);

// Lower-triangular L with L L^T = M. On failure retries once with 1e-10 added
// to the diagonal, then throws NumericalError.
Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& m);

// Zero-mean Gaussian process on a fixed grid. The Gram matrix is factored once
// at construction; sample() is const and safe to call from several threads,
// each with its own stream.
class GaussianProcess {
 public:
  GaussianProcess(const Grid& grid, CovarianceKernel kernel);

  // L z with z a vector of T standard normals drawn from `rng`.
  Curve sample(RngStream& rng) const;

  const Eigen::MatrixXd& factor() const noexcept { return factor_; }

 private:
  Eigen::MatrixXd factor_;
};

Curve gp_sample(const Grid& grid, CovarianceKernel kernel, RngStream& rng);

inline constexpr int kModelCount = 6;

struct ModelSpec {
  int model_id = 0;
  std::size_t n = 50;
  double q = 0.1;         // contamination probability
  double K = 25.0;        // contamination size, models 3-5
  double l = 2.0 / 30.0;  // peak width, model 3
  Grid grid = make_grid(30);

  void validate() const;
};

// Mean function shared by all models, g(t) = 4t.
inline double true_mean(double t) { return 4.0 * t; }

// Per-curve random draws, kept for inspection and tests.
struct CurveDraw {
  bool contaminated = false;
  double sign = 0.0;                   // models 3-5
  std::optional<double> onset;         // models 3-4: peak start / jump time
  Curve base;                          // the uncontaminated curve with the same noise
};

struct GeneratedSample {
  FunctionalSample sample;
  std::vector<CurveDraw> draws;
};

// Builds labelled samples for one contamination model. Per curve the draws are
// taken in a fixed order: the contamination flag (models 1-5), the sign
// (models 3-5, drawn whatever the flag), the onset time (models 3-4), then the
// T normals of the noise vector.
class ModelGenerator {
 public:
  explicit ModelGenerator(ModelSpec spec);

  const ModelSpec& spec() const noexcept { return spec_; }
  GeneratedSample generate_detailed(RngStream& rng) const;
  FunctionalSample generate(RngStream& rng) const { return generate_detailed(rng).sample; }

 private:
  ModelSpec spec_;
  GaussianProcess process_;
};

FunctionalSample generate_model(const ModelSpec& spec, RngStream& rng);

}  // namespace fdepth

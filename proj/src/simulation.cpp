#include "fdepth/simulation.hpp"

#include <cmath>
#include <string>

#include "fdepth/errors.hpp"

namespace fdepth {

double covariance(CovarianceKernel kernel, double s, double t) {
  switch (kernel) {
    case CovarianceKernel::exp_abs: return std::exp(-0.45 * std::abs(t - s));
    case CovarianceKernel::sq_exp: return std::exp(-(s - t) * (s - t));
  }
  return 0.0;
}

Eigen::MatrixXd gram_matrix(const Grid& grid, CovarianceKernel kernel) {
  const auto T = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd gram(T, T);
  for (Eigen::Index a = 0; a < T; ++a) {
    for (Eigen::Index b = 0; b < T; ++b) gram(a, b) = covariance(kernel, grid[a], grid[b]);
  }
  return gram;
}

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InvalidArgument("cholesky_factor needs a nonempty square matrix");
  if (!m.isApprox(m.transpose(), 1e-12)) throw InvalidArgument("cholesky_factor needs a symmetric matrix");

  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() == Eigen::Success) return llt.matrixL();

  Eigen::MatrixXd jittered = m;
  jittered.diagonal().array() += 1e-10;
  llt.compute(jittered);
  if (llt.info() == Eigen::Success) return llt.matrixL();
  throw NumericalError("matrix is not positive definite, even after diagonal jitter");
}

GaussianProcess::GaussianProcess(const Grid& grid, CovarianceKernel kernel)
    : factor_(cholesky_factor(gram_matrix(grid, kernel))) {}

Curve GaussianProcess::sample(RngStream& rng) const {
  const Eigen::Index T = factor_.rows();
  Eigen::VectorXd z(T);
  for (Eigen::Index k = 0; k < T; ++k) z(k) = rng.normal();
  const Eigen::VectorXd e = factor_.triangularView<Eigen::Lower>() * z;
  return Curve(std::vector<double>(e.data(), e.data() + T));
}

Curve gp_sample(const Grid& grid, CovarianceKernel kernel, RngStream& rng) {
  return GaussianProcess(grid, kernel).sample(rng);
}

void ModelSpec::validate() const {
  if (model_id < 0 || model_id >= kModelCount)
    throw InvalidArgument("model id must be in 0..5, got " + std::to_string(model_id));
  if (n == 0) throw InvalidArgument("curves per sample n must be positive");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("contamination probability q must lie in [0, 1]");
  if (!std::isfinite(K)) throw InvalidArgument("contamination size K must be finite");
  if (!(l > 0.0 && l < 1.0)) throw InvalidArgument("peak width l must lie in (0, 1)");
}

namespace {

CovarianceKernel kernel_for(int model_id) {
  return model_id <= 2 ? CovarianceKernel::exp_abs : CovarianceKernel::sq_exp;
}

ModelSpec checked(ModelSpec spec) {
  spec.validate();
  return spec;
}

}  // namespace

ModelGenerator::ModelGenerator(ModelSpec spec)
    : spec_(checked(std::move(spec))), process_(spec_.grid, kernel_for(spec_.model_id)) {}

GeneratedSample ModelGenerator::generate_detailed(RngStream& rng) const {
  const Grid& grid = spec_.grid;
  const std::size_t T = grid.size();
  const int model = spec_.model_id;

  std::vector<Curve> curves;
  std::vector<Label> labels;
  std::vector<CurveDraw> draws;
  curves.reserve(spec_.n);
  labels.reserve(spec_.n);
  draws.reserve(spec_.n);

  for (std::size_t i = 0; i < spec_.n; ++i) {
    CurveDraw draw;
    if (model >= 1) draw.contaminated = rng.bernoulli(spec_.q);
    if (model >= 3) draw.sign = rng.sign();
    if (model == 3) draw.onset = rng.uniform() * (1.0 - spec_.l);
    if (model == 4) draw.onset = rng.uniform();
    const Curve noise = process_.sample(rng);

    std::vector<double> base(T);
    for (std::size_t k = 0; k < T; ++k) base[k] = true_mean(grid[k]) + noise[k];
    draw.base = Curve(base);

    std::vector<double> y = base;
    if (draw.contaminated) {
      for (std::size_t k = 0; k < T; ++k) {
        const double t = grid[k];
        switch (model) {
          case 1: y[k] = 8.0 * t - 2.0 + noise[k]; break;
          case 2: y[k] = 4.0 * std::exp(t) + noise[k]; break;
          case 3:
            if (t >= *draw.onset && t <= *draw.onset + spec_.l) y[k] = base[k] + draw.sign * spec_.K;
            break;
          case 4:
            if (t >= *draw.onset) y[k] = base[k] + draw.sign * spec_.K;
            break;
          case 5: y[k] = base[k] + draw.sign * spec_.K; break;
          default: break;
        }
      }
    }
    curves.emplace_back(std::move(y));
    labels.push_back(draw.contaminated ? Label::outlier : Label::normal);
    draws.push_back(std::move(draw));
  }
  return {validate_sample(grid, std::move(curves), std::move(labels)), std::move(draws)};
}

FunctionalSample generate_model(const ModelSpec& spec, RngStream& rng) {
  return ModelGenerator(spec).generate(rng);
}

}  // namespace fdepth

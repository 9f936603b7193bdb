#include <cmath>

#include <gtest/gtest.h>

#include "fdepth/errors.hpp"
#include "fdepth/simulation.hpp"

namespace fdepth {
namespace {

TEST(CholeskyTest, Identity) {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_TRUE(cholesky_factor(id).isApprox(id, 0.0));
}

TEST(CholeskyTest, TwoByTwo) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 0.5, 0.5, 1;
  const Eigen::MatrixXd L = cholesky_factor(m);
  EXPECT_DOUBLE_EQ(L(0, 0), 1.0);
  EXPECT_EQ(L(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(L(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(L(1, 1), std::sqrt(0.75));
}

TEST(CholeskyTest, RankDeficientGoesThroughJitter) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 1, 1, 1;
  const Eigen::MatrixXd L = cholesky_factor(m);
  EXPECT_NEAR(L(1, 1), std::sqrt(2e-10), 1e-10);
  EXPECT_TRUE((L * L.transpose()).isApprox(m, 1e-9));
}

TEST(CholeskyTest, IndefiniteAndMalformed) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 2, 1;
  EXPECT_THROW(cholesky_factor(m), NumericalError);
  Eigen::MatrixXd asym(2, 2);
  asym << 1, 0.1, 0.2, 1;
  EXPECT_THROW(cholesky_factor(asym), InvalidArgument);
  EXPECT_THROW(cholesky_factor(Eigen::MatrixXd(2, 3)), InvalidArgument);
}

TEST(GramMatrixTest, UnitDiagonalSymmetricPositive) {
  for (auto kernel : {CovarianceKernel::exp_abs, CovarianceKernel::sq_exp}) {
    const auto g = gram_matrix(make_grid(30), kernel);
    for (Eigen::Index a = 0; a < 30; ++a) {
      EXPECT_EQ(g(a, a), 1.0);
      for (Eigen::Index b = 0; b < 30; ++b) {
        EXPECT_EQ(g(a, b), g(b, a));
        EXPECT_GT(g(a, b), 0.0);
        EXPECT_LE(g(a, b), 1.0);
      }
    }
  }
}

TEST(GramMatrixTest, FactorsReproduceKernel) {
  const auto exp_abs = gram_matrix(make_grid(30), CovarianceKernel::exp_abs);
  const Eigen::MatrixXd L = cholesky_factor(exp_abs);
  const Eigen::MatrixXd back = L * L.transpose();
  for (Eigen::Index a = 0; a < 30; ++a)
    for (Eigen::Index b = 0; b < 30; ++b) EXPECT_NEAR(back(a, b), exp_abs(a, b), 1e-10 * std::abs(exp_abs(a, b)));

  // The squared-exponential Gram matrix is numerically singular on this grid
  // and is factored with jitter.
  const auto sq_exp = gram_matrix(make_grid(30), CovarianceKernel::sq_exp);
  const Eigen::MatrixXd Ls = cholesky_factor(sq_exp);
  EXPECT_LT((Ls * Ls.transpose() - sq_exp).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(GaussianProcessTest, MomentsMatchKernel) {
  const Grid grid = make_grid(30);
  const GaussianProcess gp(grid, CovarianceKernel::exp_abs);
  RngStream rng(123);
  const int draws = 10000;
  std::vector<double> sum(30, 0.0);
  double cross = 0.0;
  for (int d = 0; d < draws; ++d) {
    const Curve e = gp.sample(rng);
    for (std::size_t k = 0; k < 30; ++k) sum[k] += e[k];
    cross += e[0] * e[1];
  }
  for (double s : sum) EXPECT_LT(std::abs(s / draws), 4.0 / 100.0);
  const double rho = std::exp(-0.45 / 30.0);
  const double se = std::sqrt((1.0 + rho * rho) / draws);
  EXPECT_LT(std::abs(cross / draws - rho), 4.0 * se);
}

TEST(GaussianProcessTest, FreeFunctionMatchesSampler) {
  const Grid grid = make_grid(10);
  RngStream a(9), b(9);
  EXPECT_EQ(gp_sample(grid, CovarianceKernel::sq_exp, a), GaussianProcess(grid, CovarianceKernel::sq_exp).sample(b));
}

TEST(RngStreamTest, Deterministic) {
  RngStream a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const double x = a.normal();
    EXPECT_EQ(x, b.normal());
    if (i == 0) EXPECT_NE(x, c.normal());
  }
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(ModelSpecTest, Validation) {
  ModelSpec spec;
  spec.model_id = 6;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.model_id = -1;
  EXPECT_THROW(ModelGenerator{spec}, InvalidArgument);
  spec.model_id = 1;
  spec.q = 1.5;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec.q = 0.1;
  spec.l = 1.0;
  EXPECT_THROW(spec.validate(), InvalidArgument);
}

TEST(GenerateModelTest, ModelZeroHasNoOutliers) {
  ModelSpec spec;
  spec.q = 0.9;
  RngStream rng(1);
  const auto s = generate_model(spec, rng);
  EXPECT_EQ(s.size(), 50u);
  EXPECT_EQ(s.grid().size(), 30u);
  ASSERT_TRUE(s.labels().has_value());
  EXPECT_EQ(s.outlier_count(), 0u);
}

TEST(GenerateModelTest, ModelFiveOutlierCountMatchesBinomial) {
  ModelSpec spec;
  spec.model_id = 5;
  const ModelGenerator gen(spec);
  double total = 0.0;
  for (std::uint64_t r = 0; r < 1000; ++r) {
    RngStream rng(replication_seed(77, 5, r));
    total += static_cast<double>(gen.generate(rng).outlier_count());
  }
  const double se = std::sqrt(50 * 0.1 * 0.9 / 1000.0);
  EXPECT_LT(std::abs(total / 1000.0 - 5.0), 4 * se);
}

TEST(GenerateModelTest, LabelsMatchContaminationDraws) {
  for (int model = 1; model <= 5; ++model) {
    ModelSpec spec;
    spec.model_id = model;
    spec.q = 0.4;
    RngStream rng(static_cast<std::uint64_t>(model));
    const auto g = ModelGenerator(spec).generate_detailed(rng);
    for (std::size_t i = 0; i < g.draws.size(); ++i) {
      EXPECT_EQ((*g.sample.labels())[i] == Label::outlier, g.draws[i].contaminated);
      if (!g.draws[i].contaminated) EXPECT_EQ(g.sample.curve(i), g.draws[i].base);
    }
  }
}

TEST(GenerateModelTest, PeakSupport) {
  ModelSpec spec;
  spec.model_id = 3;
  spec.q = 1.0;
  const ModelGenerator gen(spec);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RngStream rng(seed);
    const auto g = gen.generate_detailed(rng);
    for (std::size_t i = 0; i < spec.n; ++i) {
      const auto& draw = g.draws[i];
      ASSERT_TRUE(draw.contaminated);
      ASSERT_TRUE(draw.onset.has_value());
      EXPECT_GE(*draw.onset, 0.0);
      EXPECT_LE(*draw.onset, 1.0 - spec.l);
      std::size_t touched = 0;
      std::size_t first = 0;
      for (std::size_t k = 0; k < 30; ++k) {
        const double t = spec.grid[k];
        const bool inside = t >= *draw.onset && t <= *draw.onset + spec.l;
        const double y = g.sample.curve(i)[k];
        if (inside) {
          EXPECT_EQ(y, draw.base[k] + draw.sign * 25.0);
          if (touched == 0) first = k;
          EXPECT_EQ(k, first + touched);  // contiguous
          ++touched;
        } else {
          EXPECT_EQ(y, draw.base[k]);
        }
      }
      EXPECT_GE(touched, 2u);
      EXPECT_LE(touched, 3u);
    }
  }
}

TEST(GenerateModelTest, PartialAndShiftSupport) {
  for (int model : {4, 5}) {
    ModelSpec spec;
    spec.model_id = model;
    spec.q = 1.0;
    RngStream rng(8);
    const auto g = ModelGenerator(spec).generate_detailed(rng);
    for (std::size_t i = 0; i < spec.n; ++i) {
      const auto& draw = g.draws[i];
      EXPECT_TRUE(draw.sign == 1.0 || draw.sign == -1.0);
      for (std::size_t k = 0; k < 30; ++k) {
        const bool inside = model == 5 || spec.grid[k] >= *draw.onset;
        const double expected = inside ? draw.base[k] + draw.sign * 25.0 : draw.base[k];
        EXPECT_EQ(g.sample.curve(i)[k], expected);
      }
    }
  }
}

TEST(GenerateModelTest, TrendAndShapeOutliers) {
  for (int model : {1, 2}) {
    ModelSpec spec;
    spec.model_id = model;
    spec.q = 1.0;
    RngStream rng(10);
    const auto g = ModelGenerator(spec).generate_detailed(rng);
    for (std::size_t i = 0; i < spec.n; ++i) {
      for (std::size_t k = 0; k < 30; ++k) {
        const double t = spec.grid[k];
        const double noise = g.draws[i].base[k] - 4.0 * t;
        const double mean = model == 1 ? 8.0 * t - 2.0 : 4.0 * std::exp(t);
        EXPECT_NEAR(g.sample.curve(i)[k], mean + noise, 1e-12);
      }
    }
  }
}

TEST(GenerateModelTest, DeterministicForSeed) {
  for (int model = 0; model < kModelCount; ++model) {
    ModelSpec spec;
    spec.model_id = model;
    RngStream a(55), b(55);
    const auto s1 = generate_model(spec, a);
    const auto s2 = generate_model(spec, b);
    EXPECT_EQ(s1.curves(), s2.curves());
    EXPECT_EQ(s1.labels(), s2.labels());
  }
}

TEST(GenerateModelTest, StreamsStayAlignedAcrossQ) {
  // Contamination draws happen whatever q is, so the base curves are identical.
  ModelSpec clean;
  clean.model_id = 4;
  clean.q = 0.0;
  ModelSpec dirty = clean;
  dirty.q = 1.0;
  RngStream a(3), b(3);
  const auto g0 = ModelGenerator(clean).generate_detailed(a);
  const auto g1 = ModelGenerator(dirty).generate_detailed(b);
  for (std::size_t i = 0; i < clean.n; ++i) {
    EXPECT_EQ(g0.draws[i].base, g1.draws[i].base);
    EXPECT_EQ(g0.sample.curve(i), g0.draws[i].base);
  }
}

}  // namespace
}  // namespace fdepth

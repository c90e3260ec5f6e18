#include <gtest/gtest.h>

#include <cmath>

#include "nolhd/construct.hpp"
#include "nolhd/criteria.hpp"
#include "nolhd/fixtures.hpp"
#include "nolhd/rng.hpp"

using namespace nolhd;

namespace {

double round_to(double v, int digits) {
  const double s = std::pow(10.0, digits);
  return std::round(v * s) / s;
}

// Independent oracle: correlation and criteria straight from the formulas,
// written without reusing any library internals.
double corr_oracle(const Matrix& x, int a, int b) {
  const int n = x.rows();
  double ma = 0, mb = 0;
  for (int i = 0; i < n; ++i) {
    ma += x(i, a);
    mb += x(i, b);
  }
  ma /= n;
  mb /= n;
  double num = 0, da = 0, db = 0;
  for (int i = 0; i < n; ++i) {
    num += (x(i, a) - ma) * (x(i, b) - mb);
    da += (x(i, a) - ma) * (x(i, a) - ma);
    db += (x(i, b) - mb) * (x(i, b) - mb);
  }
  return num / std::sqrt(da * db);
}

}  // namespace

TEST(CorrelationMatrix, IdenticalAndReversedColumns) {
  Matrix m(6, 2);
  const std::vector<double> lv = centered_levels(6);
  for (int i = 0; i < 6; ++i) {
    m(i, 0) = lv[i];
    m(i, 1) = lv[i];
  }
  EXPECT_NEAR(correlation_matrix(m)(0, 1), 1.0, 1e-15);
  for (int i = 0; i < 6; ++i) m(i, 1) = lv[5 - i];
  EXPECT_NEAR(correlation_matrix(m)(0, 1), -1.0, 1e-15);
}

TEST(CorrelationMatrix, ConstantColumnIsAnError) {
  Matrix m(4, 2, 1.0);
  for (int i = 0; i < 4; ++i) m(i, 0) = i;
  try {
    correlation_matrix(m);
    FAIL() << "expected degenerate-column error";
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("column 1"), std::string::npos);
  }
}

TEST(CorrelationMatrix, InvariantUnderAffineRescaling) {
  Rng rng(3);
  const DesignMatrix x = random_latin_hypercube(12, 5, -5.5, 5.5, rng);
  Matrix y = x.values;
  for (int i = 0; i < y.rows(); ++i)
    for (int j = 0; j < y.cols(); ++j) y(i, j) = 3.25 * y(i, j) - 17.0;
  const Matrix r1 = correlation_matrix(x.values);
  const Matrix r2 = correlation_matrix(y);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(r1(i, j), r2(i, j), 1e-12);
}

TEST(ComputeCriteria, BundledSevenBytwelve) {
  const CorrelationSummary s = compute_criteria(fixtures::example1_b());
  EXPECT_DOUBLE_EQ(round_to(s.rho_ave, 4), 0.3038);
  EXPECT_DOUBLE_EQ(round_to(s.rho_max, 4), 0.9643);
  ASSERT_EQ(s.delta.size(), 4u);
  EXPECT_DOUBLE_EQ(round_to(s.delta[0], 3), 0.500);
  EXPECT_DOUBLE_EQ(round_to(s.delta[1], 3), 0.364);
  EXPECT_DOUBLE_EQ(round_to(s.delta[2], 3), 0.136);
  EXPECT_DOUBLE_EQ(round_to(s.delta[3], 3), 0.136);
}

TEST(ComputeCriteria, OrthogonalDesignSaturates) {
  const CorrelationSummary s = compute_criteria(fixtures::example2_b());
  EXPECT_NEAR(s.rho_max, 0.0, 1e-15);
  for (double d : s.delta) EXPECT_DOUBLE_EQ(d, 1.0);
}

TEST(ComputeCriteria, MatchesBruteForceDoubleLoop) {
  Rng rng(42);
  AnnealConfig cfg;
  cfg.moves_per_temp = 5;  // barely annealed: just a seeded 6x4 hypercube
  const DesignMatrix x = anneal_nolhd(6, 4, cfg, rng);
  const std::vector<double> t = {0.9, 0.5, 0.3, 0.1, 0.05};
  const CorrelationSummary s = compute_criteria(x, t);
  const int p = 4;
  for (std::size_t k = 0; k < t.size(); ++k) {
    int count = 0;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        if (i != j && std::abs(corr_oracle(x.values, i, j)) <= t[k]) ++count;
    EXPECT_DOUBLE_EQ(s.delta[k], static_cast<double>(count) / (p * (p - 1))) << "k=" << k;
  }
}

TEST(ComputeCriteria, BoundaryCountsAsWithinThreshold) {
  // a threshold exactly equal to |rho| must count the pair (weak inequality)
  Matrix m = Matrix::from_rows({{1, 1}, {-1, 0}, {0, -1}});
  const double r = std::abs(correlation_matrix(m)(0, 1));
  ASSERT_GT(r, 0.0);
  ASSERT_LT(r, 1.0);
  const CorrelationSummary s = compute_criteria(m, {r});
  EXPECT_DOUBLE_EQ(s.delta[0], 1.0);
  // and one ulp below the value must not count it
  const CorrelationSummary s2 = compute_criteria(m, {std::nextafter(r, 0.0)});
  EXPECT_DOUBLE_EQ(s2.delta[0], 0.0);
}

TEST(ComputeCriteria, ValidatesThresholds) {
  const Matrix m = fixtures::example1_b().values;
  EXPECT_THROW(compute_criteria(m, {}), std::domain_error);
  EXPECT_THROW(compute_criteria(m, {0.05, 0.1}), std::domain_error);
  EXPECT_THROW(compute_criteria(m, {1.5}), std::domain_error);
}

TEST(PredictDeltaLemma1, PaperValues) {
  const CorrelationSummary s = compute_criteria(fixtures::example1_b());
  const std::vector<double> pred = predict_delta_lemma1(s.delta, 12, 4);
  EXPECT_DOUBLE_EQ(round_to(pred[0], 3), 0.942);
  EXPECT_DOUBLE_EQ(round_to(pred[1], 3), 0.926);
  EXPECT_DOUBLE_EQ(round_to(pred[2], 3), 0.900);
  EXPECT_DOUBLE_EQ(round_to(pred[3], 3), 0.900);
}

TEST(PredictDeltaLemma1, FixedPoints) {
  EXPECT_DOUBLE_EQ(predict_delta_lemma1({1.0}, 5, 3)[0], 1.0);
  EXPECT_DOUBLE_EQ(predict_delta_lemma1({0.0}, 2, 1)[0], 2.0 / 3.0);
  EXPECT_THROW(predict_delta_lemma1({0.5}, 0, 1), std::domain_error);
}

TEST(PredictKronecker, WeightFormula) {
  // n1=25, n2=2: w1 = n2^2 (n1^2-1) / (n1^2 n2^2 - 1) = 2496/2499
  Rng rng(7);
  AnnealConfig cfg;
  cfg.moves_per_temp = 5;
  std::vector<Matrix> cs = {anneal_nolhd(25, 3, cfg, rng).values};
  const PredictedCriteria pc = predict_kronecker_criteria(cs, 25, 2, 3, 1);
  EXPECT_DOUBLE_EQ(pc.w1, 2496.0 / 2499.0);
}

TEST(PredictKronecker, OrthogonalIngredientsPredictZero) {
  std::vector<Matrix> cs(4, fixtures::example2_b().values);  // orthogonal LH(8,4)
  const PredictedCriteria pc = predict_kronecker_criteria(cs, 8, 8, 4, 4);
  EXPECT_NEAR(pc.rho_max, 0.0, 1e-15);
  EXPECT_NEAR(pc.rho_ave, 0.0, 1e-15);
}

TEST(PredictKronecker, SingleIngredientCollapsesToW1) {
  Rng rng(9);
  AnnealConfig cfg;
  cfg.moves_per_temp = 5;
  const Matrix c = anneal_nolhd(8, 4, cfg, rng).values;
  const CorrelationSummary s = compute_criteria(c);
  const PredictedCriteria pc = predict_kronecker_criteria({c}, 8, 8, 4, 1);
  EXPECT_NEAR(pc.rho_ave, pc.w1 * s.rho_ave, 1e-12);
  EXPECT_NEAR(pc.rho_max, pc.w1 * s.rho_max, 1e-12);
}

TEST(PredictKronecker, DimensionMismatch) {
  std::vector<Matrix> cs = {Matrix(8, 4), Matrix(8, 3)};
  EXPECT_THROW(predict_kronecker_criteria(cs, 8, 2, 4, 2), std::domain_error);
}

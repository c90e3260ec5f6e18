#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "nolhd/construct.hpp"
#include "nolhd/design.hpp"
#include "nolhd/fixtures.hpp"
#include "nolhd/rng.hpp"

using namespace nolhd;

TEST(CenteredLevels, OddAndEven) {
  EXPECT_EQ(centered_levels(7), (std::vector<double>{-3, -2, -1, 0, 1, 2, 3}));
  EXPECT_EQ(centered_levels(2), (std::vector<double>{-0.5, 0.5}));
  const std::vector<double> lv8 = centered_levels(8);
  EXPECT_DOUBLE_EQ(lv8.front(), -3.5);
  EXPECT_DOUBLE_EQ(lv8.back(), 3.5);
  EXPECT_DOUBLE_EQ(lv8[3], -0.5);
  EXPECT_DOUBLE_EQ(lv8[4], 0.5);
  EXPECT_THROW(centered_levels(0), std::domain_error);
}

TEST(CenteredLevels, SumZeroAndNegationSymmetric) {
  for (int n = 1; n <= 40; ++n) {
    std::vector<double> lv = centered_levels(n);
    EXPECT_EQ(static_cast<int>(lv.size()), n);
    EXPECT_DOUBLE_EQ(std::accumulate(lv.begin(), lv.end(), 0.0), 0.0);
    std::vector<double> neg(lv.rbegin(), lv.rend());
    for (double& v : neg) v = -v;
    EXPECT_EQ(lv, neg) << "n=" << n;
  }
}

TEST(LatinCheck, AcceptsBundledDesign) {
  EXPECT_TRUE(is_latin_hypercube(fixtures::example1_b()).ok);
  EXPECT_TRUE(is_latin_hypercube(fixtures::example2_b()).ok);
  EXPECT_TRUE(is_latin_hypercube(fixtures::example2_c1()).ok);
}

TEST(LatinCheck, RejectsWrongLevels) {
  const Matrix m = Matrix::from_rows({{0.0}, {1.0}});
  const LatinCheckReport rep = is_latin_hypercube(m);
  EXPECT_FALSE(rep.ok);
  EXPECT_EQ(rep.column, 0);
}

TEST(LatinCheck, AcceptsLemma1Output) {
  Rng rng(11);
  AnnealConfig cfg;
  const DesignMatrix b = anneal_nolhd(3, 1, cfg, rng);
  const DesignMatrix m = lemma1_construct({rao_hamming_oa(3), b});
  // verify by sorting column multisets against the level set
  const std::vector<double> levels = centered_levels(9);
  for (int j = 0; j < m.p(); ++j) {
    std::vector<double> col = m.values.column(j);
    std::sort(col.begin(), col.end());
    for (int i = 0; i < 9; ++i) EXPECT_NEAR(col[i], levels[i], 1e-12);
  }
  EXPECT_TRUE(is_latin_hypercube(m).ok);
}

TEST(LatinCheck, InvariantUnderRowAndColumnPermutationAndNegation) {
  Rng rng(5);
  const DesignMatrix x = random_latin_hypercube(9, 4, -4, 5, rng);
  // random LH on a generic interval is not on the centered levels
  EXPECT_FALSE(is_latin_hypercube(x).ok);

  AnnealConfig cfg;
  cfg.moves_per_temp = 10;
  DesignMatrix lh = anneal_nolhd(8, 5, cfg, rng);
  EXPECT_TRUE(is_latin_hypercube(lh).ok);
  // permute rows, permute columns, negate a column: all preserve the check
  const std::vector<int> rp = rng.permutation(8);
  const std::vector<int> cp = rng.permutation(5);
  Matrix m(8, 5);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = lh.values(rp[i], cp[j]);
  for (int i = 0; i < 8; ++i) m(i, 2) = -m(i, 2);
  EXPECT_TRUE(is_latin_hypercube(m).ok);
}

TEST(OaCheck, FullFactorialIsStrengthTwo) {
  OrthogonalArray a;
  a.runs = 4;
  a.cols = 2;
  a.symbols = 2;
  a.values = IntMatrix::from_rows({{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  EXPECT_TRUE(check_oa_strength2(a).ok);
  a.values(3, 1) = 1;  // break one cell
  EXPECT_FALSE(check_oa_strength2(a).ok);
}

TEST(OaCheck, RunCountNotMultipleOfS2) {
  OrthogonalArray a;
  a.runs = 6;
  a.cols = 2;
  a.symbols = 2;
  a.values = IntMatrix(6, 2, 1);
  const OaCheckReport rep = check_oa_strength2(a);
  EXPECT_FALSE(rep.ok);
  EXPECT_NE(rep.reason.find("multiple"), std::string::npos);
}

TEST(RaoHamming, SmallestPrime) {
  const OrthogonalArray a = rao_hamming_oa(2);
  EXPECT_EQ(a.runs, 4);
  EXPECT_EQ(a.cols, 3);
  EXPECT_EQ(a.symbols, 2);
  EXPECT_TRUE(check_oa_strength2(a).ok);
}

TEST(RaoHamming, StrengthTwoForAllSupportedOrders) {
  for (int s : {2, 3, 4, 5, 7, 8, 9, 11, 13}) {
    const OrthogonalArray a = rao_hamming_oa(s);
    EXPECT_EQ(a.runs, s * s);
    EXPECT_EQ(a.cols, s + 1);
    EXPECT_TRUE(check_oa_strength2(a).ok) << "s=" << s;
  }
}

TEST(RaoHamming, PaperSizes) {
  EXPECT_TRUE(check_oa_strength2(rao_hamming_oa(7)).ok);   // OA(49,8,7)
  EXPECT_TRUE(check_oa_strength2(rao_hamming_oa(5)).ok);   // OA(25,6,5)
  EXPECT_THROW(rao_hamming_oa(6), std::invalid_argument);
  EXPECT_THROW(rao_hamming_oa(10), std::invalid_argument);
  EXPECT_THROW(rao_hamming_oa(1), std::invalid_argument);
}

TEST(RaoHamming, TakeColumnsPreservesStrength) {
  const OrthogonalArray a = take_columns(rao_hamming_oa(8), 8);
  EXPECT_EQ(a.cols, 8);
  EXPECT_TRUE(check_oa_strength2(a).ok);
}

TEST(Sylvester, BaseStep) {
  const SignMatrix h = sylvester_sign_matrix(2);
  EXPECT_EQ(h.values, Matrix::from_rows({{1, 1}, {1, -1}}));
}

TEST(Sylvester, GramIsScaledIdentity) {
  for (int k : {1, 4, 8}) {
    const SignMatrix h = sylvester_sign_matrix(k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        double dot = 0.0;
        for (int r = 0; r < k; ++r) dot += h.values(r, i) * h.values(r, j);
        EXPECT_DOUBLE_EQ(dot, i == j ? k : 0.0);
      }
  }
  EXPECT_THROW(sylvester_sign_matrix(3), std::invalid_argument);
  EXPECT_THROW(sylvester_sign_matrix(0), std::invalid_argument);
}

TEST(SignMatrixType, RejectsNonSignEntries) {
  EXPECT_THROW(SignMatrix(Matrix::from_rows({{1, 0.5}})), std::invalid_argument);
}

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nolhd/design.hpp"
#include "nolhd/matrix.hpp"

namespace nolhd {

// The threshold vector used throughout unless the caller overrides it.
inline std::vector<double> default_thresholds() { return {0.1, 0.05, 0.01, 0.005}; }

// Pairwise column correlation matrix with exact unit diagonal. Requires
// n >= 2 and every column non-constant.
inline Matrix correlation_matrix(const Matrix& x) {
  const int n = x.rows(), p = x.cols();
  if (n < 2) throw std::domain_error("correlation_matrix: need at least two rows");
  if (p < 1) throw std::domain_error("correlation_matrix: empty matrix");
  std::vector<double> mean(p, 0.0), norm(p, 0.0);
  for (int j = 0; j < p; ++j) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += x(i, j);
    mean[j] = s / n;
  }
  Matrix xc(n, p);
  for (int j = 0; j < p; ++j) {
    double ss = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = x(i, j) - mean[j];
      xc(i, j) = v;
      ss += v * v;
    }
    if (ss <= 0.0)
      throw std::domain_error("correlation_matrix: column " + std::to_string(j) +
                              " is constant");
    norm[j] = std::sqrt(ss);
  }
  Matrix rho(p, p);
  for (int i = 0; i < p; ++i) {
    rho(i, i) = 1.0;
    for (int j = i + 1; j < p; ++j) {
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += xc(k, i) * xc(k, j);
      const double r = dot / (norm[i] * norm[j]);
      rho(i, j) = r;
      rho(j, i) = r;
    }
  }
  return rho;
}

inline Matrix correlation_matrix(const DesignMatrix& x) { return correlation_matrix(x.values); }

struct CorrelationSummary {
  Matrix rho;
  double rho_max = 0.0;
  double rho_ave = 0.0;
  std::vector<double> thresholds;
  std::vector<double> delta;
};

inline void validate_thresholds(const std::vector<double>& t) {
  if (t.empty()) throw std::domain_error("thresholds: empty vector");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k] < 0.0 || t[k] > 1.0) throw std::domain_error("thresholds: entries must lie in [0,1]");
    if (k > 0 && t[k] > t[k - 1]) throw std::domain_error("thresholds: must be non-increasing");
  }
}

// Criteria of a precomputed correlation matrix. delta_{t_k} counts weak
// inequalities |rho_ij| <= t_k over all ordered off-diagonal pairs.
inline CorrelationSummary criteria_of(const Matrix& rho, const std::vector<double>& t) {
  validate_thresholds(t);
  const int p = rho.rows();
  if (p < 2) throw std::domain_error("criteria: need at least two columns");
  CorrelationSummary s;
  s.rho = rho;
  s.thresholds = t;
  s.delta.assign(t.size(), 0.0);
  double sumsq = 0.0;
  double maxabs = 0.0;
  std::vector<long long> counts(t.size(), 0);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      const double a = std::abs(rho(i, j));
      if (a > maxabs) maxabs = a;
      if (j > i) sumsq += a * a;
      for (std::size_t k = 0; k < t.size(); ++k)
        if (a <= t[k]) ++counts[k];
    }
  }
  const double pairs_ordered = static_cast<double>(p) * (p - 1);
  s.rho_max = maxabs;
  s.rho_ave = std::sqrt(sumsq / (pairs_ordered / 2.0));
  for (std::size_t k = 0; k < t.size(); ++k)
    s.delta[k] = static_cast<double>(counts[k]) / pairs_ordered;
  return s;
}

inline CorrelationSummary compute_criteria(const Matrix& x,
                                           const std::vector<double>& t = default_thresholds()) {
  return criteria_of(correlation_matrix(x), t);
}

inline CorrelationSummary compute_criteria(const DesignMatrix& x,
                                           const std::vector<double>& t = default_thresholds()) {
  return compute_criteria(x.values, t);
}

// Proportion correlation vector of the OA-based construction, predicted from
// the small design's vector: delta(M) = [p(2f-1) + (p-1) delta(B)] / (2pf-1).
inline std::vector<double> predict_delta_lemma1(const std::vector<double>& delta_b, int p, int f) {
  if (p < 1 || f < 1) throw std::domain_error("predict_delta_lemma1: need p >= 1, f >= 1");
  std::vector<double> out(delta_b.size());
  for (std::size_t k = 0; k < delta_b.size(); ++k) {
    const double d = delta_b[k];
    if (d < 0.0 || d > 1.0) throw std::domain_error("predict_delta_lemma1: delta entries in [0,1]");
    out[k] = (p * (2.0 * f - 1.0) + (p - 1.0) * d) / (2.0 * p * f - 1.0);
  }
  return out;
}

// Predicted criteria of the Kronecker-type construction built from m2
// ingredient hypercubes of shape n1 x m1 (block design n2 x m2). rho_max and
// rho_ave are exact under the orthogonality hypotheses; the delta entries are
// lower bounds only, hence `delta_is_lower_bound`.
struct PredictedCriteria {
  double w1 = 0.0;
  double w2 = 0.0;
  double rho_max = 0.0;
  double rho_ave = 0.0;
  std::vector<double> delta_lower_bound;
  bool delta_is_lower_bound = true;
};

inline PredictedCriteria predict_kronecker_criteria(const std::vector<Matrix>& c_list, int n1,
                                                    int n2, int m1, int m2,
                                                    const std::vector<double>& t = default_thresholds()) {
  if (static_cast<int>(c_list.size()) != m2)
    throw std::domain_error("predict_kronecker_criteria: need m2 ingredient matrices");
  if (m1 * m2 < 2)
    throw std::domain_error("predict_kronecker_criteria: output needs at least two columns");
  for (const Matrix& c : c_list)
    if (c.rows() != n1 || c.cols() != m1)
      throw std::domain_error("predict_kronecker_criteria: ingredient dimension mismatch");
  PredictedCriteria out;
  const double dn1 = n1, dn2 = n2;
  out.w1 = dn2 * dn2 * (dn1 * dn1 - 1.0) / (dn1 * dn1 * dn2 * dn2 - 1.0);
  out.w2 = (m1 - 1.0) * out.w1 * out.w1 / (m1 * static_cast<double>(m2) - 1.0);
  out.delta_lower_bound.assign(t.size(), 0.0);
  double sum_ave_sq = 0.0;
  double max_pred = 0.0;
  for (const Matrix& c : c_list) {
    if (m1 >= 2) {
      const CorrelationSummary s = compute_criteria(c, t);
      max_pred = std::max(max_pred, out.w1 * s.rho_max);
      sum_ave_sq += s.rho_ave * s.rho_ave;
      for (std::size_t k = 0; k < t.size(); ++k) out.delta_lower_bound[k] += s.delta[k];
    } else {
      // single-column ingredients contribute no pairs
      for (std::size_t k = 0; k < t.size(); ++k) out.delta_lower_bound[k] += 1.0;
    }
  }
  out.rho_max = max_pred;
  out.rho_ave = std::sqrt(out.w2 * sum_ave_sq / m2);
  for (double& d : out.delta_lower_bound) d /= m2;
  return out;
}

}  // namespace nolhd

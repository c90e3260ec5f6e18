#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "nolhd/matrix.hpp"
#include "nolhd/rng.hpp"

namespace nolhd {

// Objective: (y - X b)'(y - X b) + lambda * |b|_1  (no 1/2n factor), so the
// subgradient conditions read 2 x_j'(y - X b) = lambda sign(b_j) on the
// active set and |2 x_j'(y - X b)| <= lambda off it.
struct LassoProblem {
  Matrix x;
  std::vector<double> y;
  double lambda = 0.0;
};

struct LassoFit {
  std::vector<double> beta;
  std::vector<int> active_set;  // exact nonzero support
  double lambda = 0.0;
  int iterations = 0;           // full coordinate sweeps
  double max_kkt_violation = 0.0;
  bool converged = false;
};

struct LassoOptions {
  double tol = 1e-7;      // max coefficient change per sweep
  int max_iter = 100000;  // sweeps
  bool standardize = false;
};

namespace detail {

// Column-major copy of X for cache-friendly coordinate sweeps.
struct Columns {
  int n = 0, p = 0;
  std::vector<std::vector<double>> col;
  std::vector<double> sq;  // squared column norms

  explicit Columns(const Matrix& x) : n(x.rows()), p(x.cols()), col(x.cols()), sq(x.cols()) {
    for (int j = 0; j < p; ++j) {
      col[j] = x.column(j);
      double s = 0.0;
      for (double v : col[j]) s += v * v;
      sq[j] = s;
      if (s <= 0.0)
        throw std::domain_error("solve_lasso: column " + std::to_string(j) + " is all zero");
    }
  }
};

inline double soft_threshold(double z, double g) {
  if (z > g) return z - g;
  if (z < -g) return z + g;
  return 0.0;
}

// Cyclic coordinate descent from a warm start; beta and the residual
// r = y - X beta are updated in place.
inline int cd_solve(const Columns& cx, const std::vector<double>& y, double lambda,
                    std::vector<double>& beta, std::vector<double>& resid, double tol,
                    int max_iter, bool& converged) {
  const int n = cx.n, p = cx.p;
  (void)y;
  int sweep = 0;
  converged = false;
  for (; sweep < max_iter; ++sweep) {
    double max_change = 0.0;
    for (int j = 0; j < p; ++j) {
      const std::vector<double>& xj = cx.col[j];
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += xj[i] * resid[i];
      const double z = dot + cx.sq[j] * beta[j];
      const double bnew = soft_threshold(z, lambda / 2.0) / cx.sq[j];
      const double diff = bnew - beta[j];
      if (diff != 0.0) {
        for (int i = 0; i < n; ++i) resid[i] -= diff * xj[i];
        beta[j] = bnew;
        max_change = std::max(max_change, std::abs(diff));
      }
    }
    if (max_change < tol) {
      converged = true;
      ++sweep;
      break;
    }
  }
  return sweep;
}

inline double kkt_violation(const Columns& cx, const std::vector<double>& resid,
                            const std::vector<double>& beta, double lambda) {
  double worst = 0.0;
  for (int j = 0; j < cx.p; ++j) {
    double dot = 0.0;
    for (int i = 0; i < cx.n; ++i) dot += cx.col[j][i] * resid[i];
    const double g = 2.0 * dot;
    double v;
    if (beta[j] > 0.0) v = std::abs(g - lambda);
    else if (beta[j] < 0.0) v = std::abs(g + lambda);
    else v = std::max(0.0, std::abs(g) - lambda);
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace detail

// Smallest lambda that forces the all-zero solution.
inline double lambda_max(const Matrix& x, const std::vector<double>& y) {
  if (static_cast<std::size_t>(x.rows()) != y.size())
    throw std::domain_error("lambda_max: dimension mismatch");
  double m = 0.0;
  for (int j = 0; j < x.cols(); ++j) {
    double dot = 0.0;
    for (int i = 0; i < x.rows(); ++i) dot += x(i, j) * y[i];
    m = std::max(m, std::abs(dot));
  }
  return 2.0 * m;
}

inline LassoFit solve_lasso(const LassoProblem& prob, const LassoOptions& opts = {}) {
  if (prob.lambda < 0.0) throw std::domain_error("solve_lasso: lambda must be >= 0");
  if (static_cast<std::size_t>(prob.x.rows()) != prob.y.size())
    throw std::domain_error("solve_lasso: dimension mismatch");
  if (opts.tol <= 0.0) throw std::domain_error("solve_lasso: tol must be positive");

  Matrix xs = prob.x;
  std::vector<double> scale(prob.x.cols(), 1.0);
  if (opts.standardize) {
    for (int j = 0; j < xs.cols(); ++j) {
      double s = 0.0;
      for (int i = 0; i < xs.rows(); ++i) s += xs(i, j) * xs(i, j);
      s = std::sqrt(s);
      if (s <= 0.0) throw std::domain_error("solve_lasso: column " + std::to_string(j) + " is all zero");
      scale[j] = s;
      for (int i = 0; i < xs.rows(); ++i) xs(i, j) /= s;
    }
  }
  const detail::Columns cx(xs);
  std::vector<double> beta(cx.p, 0.0);
  std::vector<double> resid = prob.y;
  LassoFit fit;
  fit.lambda = prob.lambda;
  fit.iterations =
      detail::cd_solve(cx, prob.y, prob.lambda, beta, resid, opts.tol, opts.max_iter, fit.converged);
  fit.max_kkt_violation = detail::kkt_violation(cx, resid, beta, prob.lambda);
  if (opts.standardize)
    for (int j = 0; j < cx.p; ++j) beta[j] /= scale[j];
  fit.beta = std::move(beta);
  for (int j = 0; j < cx.p; ++j)
    if (fit.beta[j] != 0.0) fit.active_set.push_back(j);
  return fit;
}

// Log-spaced descending grid from lambda_max down to ratio * lambda_max.
inline std::vector<double> lambda_grid(double lmax, int count = 100, double ratio = 1e-4) {
  if (count < 1) throw std::domain_error("lambda_grid: need at least one point");
  if (lmax <= 0.0) return std::vector<double>(count, 0.0);
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lmax;
    return g;
  }
  for (int k = 0; k < count; ++k)
    g[k] = lmax * std::pow(ratio, static_cast<double>(k) / (count - 1));
  return g;
}

enum class CvRule { min, one_se };

struct CvOptions {
  CvRule rule = CvRule::min;
  LassoOptions solver;
};

struct CvResult {
  double lambda = 0.0;
  int index = -1;                    // position in the grid
  std::vector<double> grid;
  std::vector<double> mean_error;    // per grid point
  std::vector<double> se_error;      // standard error over folds
  std::vector<int> fold_of;          // fold id per observation
};

// Shuffled assignment into k near-equal folds.
inline std::vector<int> make_folds(int n, int k, Rng& rng) {
  if (k < 2 || n < k) throw std::domain_error("make_folds: need 2 <= k <= n");
  std::vector<int> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = i % k;
  rng.shuffle(ids);
  return ids;
}

// Five-fold style cross-validation over a descending lambda grid with warm
// starts along the path. Selection: minimum mean held-out MSE, ties to the
// larger lambda; the one-SE rule picks the largest lambda within one
// standard error of the minimum.
inline CvResult cross_validate_folds(const Matrix& x, const std::vector<double>& y,
                                     const std::vector<int>& fold_of,
                                     const std::vector<double>& grid,
                                     const CvOptions& opts = {}) {
  if (grid.empty()) throw std::domain_error("cross_validate: empty grid");
  const int n = x.rows(), p = x.cols();
  const int k = 1 + *std::max_element(fold_of.begin(), fold_of.end());
  CvResult out;
  out.grid = grid;
  out.fold_of = fold_of;
  const std::size_t g = grid.size();
  std::vector<std::vector<double>> fold_mse(k, std::vector<double>(g, 0.0));

  Matrix xs = x;
  std::vector<double> scale(p, 1.0);
  if (opts.solver.standardize) {
    for (int j = 0; j < p; ++j) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += xs(i, j) * xs(i, j);
      s = std::sqrt(s);
      scale[j] = s;
      for (int i = 0; i < n; ++i) xs(i, j) /= s;
    }
  }

  for (int f = 0; f < k; ++f) {
    std::vector<int> tr, te;
    for (int i = 0; i < n; ++i) (fold_of[i] == f ? te : tr).push_back(i);
    Matrix xtr(static_cast<int>(tr.size()), p);
    std::vector<double> ytr(tr.size());
    for (std::size_t i = 0; i < tr.size(); ++i) {
      ytr[i] = y[tr[i]];
      for (int j = 0; j < p; ++j) xtr(static_cast<int>(i), j) = xs(tr[i], j);
    }
    const detail::Columns cx(xtr);
    std::vector<double> beta(p, 0.0), resid = ytr;
    for (std::size_t gi = 0; gi < g; ++gi) {
      bool conv = false;
      detail::cd_solve(cx, ytr, grid[gi], beta, resid, opts.solver.tol, opts.solver.max_iter, conv);
      double sse = 0.0;
      for (int i : te) {
        double pred = 0.0;
        for (int j = 0; j < p; ++j) pred += xs(i, j) * beta[j];
        const double e = y[i] - pred;
        sse += e * e;
      }
      fold_mse[f][gi] = sse / te.size();
    }
  }

  out.mean_error.assign(g, 0.0);
  out.se_error.assign(g, 0.0);
  for (std::size_t gi = 0; gi < g; ++gi) {
    double m = 0.0;
    for (int f = 0; f < k; ++f) m += fold_mse[f][gi];
    m /= k;
    double var = 0.0;
    for (int f = 0; f < k; ++f) var += (fold_mse[f][gi] - m) * (fold_mse[f][gi] - m);
    var /= (k - 1);
    out.mean_error[gi] = m;
    out.se_error[gi] = std::sqrt(var / k);
  }

  std::size_t best = 0;
  for (std::size_t gi = 1; gi < g; ++gi)
    if (out.mean_error[gi] < out.mean_error[best]) best = gi;  // strict: ties keep larger lambda
  if (opts.rule == CvRule::one_se) {
    const double bar = out.mean_error[best] + out.se_error[best];
    for (std::size_t gi = 0; gi < g; ++gi) {
      if (out.mean_error[gi] <= bar) {
        best = gi;
        break;
      }
    }
  }
  out.index = static_cast<int>(best);
  out.lambda = grid[best];
  return out;
}

inline CvResult cross_validate(const Matrix& x, const std::vector<double>& y, int k,
                               const std::vector<double>& grid, Rng& rng,
                               const CvOptions& opts = {}) {
  return cross_validate_folds(x, y, make_folds(x.rows(), k, rng), grid, opts);
}

// Ground truth of a sparse linear model.
struct TrueModel {
  std::vector<double> beta;
  double sigma = 1.0;

  std::vector<int> active_set() const {
    std::vector<int> a;
    for (std::size_t j = 0; j < beta.size(); ++j)
      if (beta[j] != 0.0) a.push_back(static_cast<int>(j));
    return a;
  }
  int p0() const { return static_cast<int>(active_set().size()); }
};

// False positives plus false negatives of the fitted support.
inline int false_selections(const LassoFit& fit, const TrueModel& truth) {
  if (fit.beta.size() != truth.beta.size())
    throw std::domain_error("false_selections: dimension mismatch");
  int gamma = 0;
  for (std::size_t j = 0; j < truth.beta.size(); ++j) {
    const bool sel = fit.beta[j] != 0.0;
    const bool act = truth.beta[j] != 0.0;
    if (sel != act) ++gamma;
  }
  return gamma;
}

}  // namespace nolhd

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nolhd/criteria.hpp"
#include "nolhd/design.hpp"
#include "nolhd/matrix.hpp"
#include "nolhd/rng.hpp"

namespace nolhd {

// ---------------------------------------------------------------------------
// Random designs
// ---------------------------------------------------------------------------

// Random Latin hypercube on [a,b]^p: per column, a random permutation d of
// 1..n jittered by independent uniforms, z = (d - u) / n, then affinely
// rescaled. Exactly one point lands in each of the n strata of every column.
// Per column the generator consumes one permutation, then n uniforms.
inline DesignMatrix random_latin_hypercube(int n, int p, double a, double b, Rng& rng) {
  if (n < 1 || p < 1) throw std::domain_error("random_latin_hypercube: need n >= 1, p >= 1");
  if (!(a < b)) throw std::domain_error("random_latin_hypercube: need a < b");
  Matrix x(n, p);
  for (int j = 0; j < p; ++j) {
    const std::vector<int> perm = rng.permutation(n);
    for (int i = 0; i < n; ++i) {
      const double d = perm[i] + 1;
      const double z = (d - rng.uniform01()) / n;
      x(i, j) = (b - a) * z + a;
    }
  }
  return {std::move(x), DesignKind::generic};
}

// n*p independent Uniform[a,b) draws, row-major order.
inline DesignMatrix iid_uniform_sample(int n, int p, double a, double b, Rng& rng) {
  if (n < 1 || p < 1) throw std::domain_error("iid_uniform_sample: need n >= 1, p >= 1");
  if (!(a < b)) throw std::domain_error("iid_uniform_sample: need a < b");
  Matrix x(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) x(i, j) = rng.uniform(a, b);
  return {std::move(x), DesignKind::iid_sample};
}

// ---------------------------------------------------------------------------
// OA-based construction
// ---------------------------------------------------------------------------

struct Lemma1Inputs {
  OrthogonalArray oa;   // OA(s^2, 2f, s), strength two
  DesignMatrix small;   // s x p Latin hypercube on centered_levels(s)
};

// Expands an s x p hypercube into an s^2 x 2pf one: substitute the levels of
// each small column into the OA symbols, then rotate consecutive column
// pairs by [[1, -s], [s, 1]]. The correlation matrix of the result equals
// rho(small) (x) I_{2f}.
inline DesignMatrix lemma1_construct(const Lemma1Inputs& in) {
  const int s = in.small.n();
  const int p = in.small.p();
  const OrthogonalArray& a = in.oa;
  if (a.symbols != s)
    throw std::invalid_argument("lemma1_construct: OA symbol count must equal hypercube rows");
  if (a.runs != s * s)
    throw std::invalid_argument("lemma1_construct: OA must have s^2 runs");
  if (a.cols < 2 || a.cols % 2 != 0)
    throw std::invalid_argument("lemma1_construct: OA needs an even column count");
  const OaCheckReport oc = check_oa_strength2(a);
  if (!oc.ok) throw std::invalid_argument("lemma1_construct: OA rejected: " + oc.reason);
  const LatinCheckReport lc = is_latin_hypercube(in.small);
  if (!lc.ok) throw std::invalid_argument("lemma1_construct: hypercube rejected: " + lc.reason);

  const int f = a.cols / 2;
  const int n = s * s;
  Matrix m(n, 2 * p * f);
  for (int j = 0; j < p; ++j) {
    const std::vector<double> levels = in.small.values.column(j);
    for (int k = 0; k < f; ++k) {
      const int cu = 2 * k, cv = 2 * k + 1;
      const int out_u = j * 2 * f + 2 * k, out_v = out_u + 1;
      for (int r = 0; r < n; ++r) {
        const double u = levels[a.values(r, cu) - 1];
        const double v = levels[a.values(r, cv) - 1];
        m(r, out_u) = u + s * v;
        m(r, out_v) = -s * u + v;
      }
    }
  }
  DesignMatrix out{std::move(m), DesignKind::latin_hypercube};
  const LatinCheckReport post = is_latin_hypercube(out);
  if (!post.ok) throw std::logic_error("lemma1_construct: output failed the hypercube check: " + post.reason);
  return out;
}

// ---------------------------------------------------------------------------
// Kronecker-type construction
// ---------------------------------------------------------------------------

struct KroneckerInputs {
  std::vector<SignMatrix> a_list;   // m2 sign matrices, n1 x m1
  std::vector<DesignMatrix> c_list; // m2 hypercubes, n1 x m1
  DesignMatrix b;                   // n2 x m2 hypercube
  SignMatrix d;                     // n2 x m2 signs
  double r = 0.0;                   // = n2 whenever a Latin hypercube is wanted
};

struct Prop1Report {
  bool cond_a = false;
  bool cond_b = false;
  std::string details;
};

namespace detail {

// Does every row of (primary, secondary) pair, per column, with a row where
// `primary` is negated and `secondary` preserved?
inline bool negation_pairing(const Matrix& primary, const Matrix& secondary, int col,
                             double tol = 1e-12) {
  const int n = primary.rows();
  for (int q = 0; q < n; ++q) {
    bool found = false;
    for (int q2 = 0; q2 < n; ++q2) {
      if (std::abs(primary(q2, col) + primary(q, col)) <= tol &&
          std::abs(secondary(q2, col) - secondary(q, col)) <= tol) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace detail

// Condition (a): within each block j, every column of C_j negation-pairs with
// A_j preserved. Condition (b): every column of B negation-pairs with D
// preserved. Pairings are searched per column independently.
inline Prop1Report check_prop1_conditions(const KroneckerInputs& in) {
  Prop1Report rep;
  rep.cond_a = true;
  rep.cond_b = true;
  std::string notes;
  const int m2 = static_cast<int>(in.c_list.size());
  for (int j = 0; j < m2 && rep.cond_a; ++j) {
    const Matrix& c = in.c_list[j].values;
    const Matrix& a = in.a_list[j].values;
    for (int i = 0; i < c.cols(); ++i) {
      if (!detail::negation_pairing(c, a, i)) {
        rep.cond_a = false;
        notes += "condition (a) fails at block " + std::to_string(j) + ", column " +
                 std::to_string(i) + "; ";
        break;
      }
    }
  }
  for (int k = 0; k < in.b.p(); ++k) {
    if (!detail::negation_pairing(in.b.values, in.d.values, k)) {
      rep.cond_b = false;
      notes += "condition (b) fails at column " + std::to_string(k) + "; ";
      break;
    }
  }
  if (in.r != static_cast<double>(in.b.n()))
    notes += "r != n2 (" + std::to_string(in.r) + " vs " + std::to_string(in.b.n()) + "); ";
  rep.details = notes;
  return rep;
}

struct KroneckerResult {
  DesignMatrix design;
  Prop1Report conditions;
  LatinCheckReport latin;
};

// Block construction: block row q (of n2), block column j (of m2) holds
// b_{qj} A_j + r d_{qj} C_j. The result is tagged latin-hypercube only when
// the direct check passes.
inline KroneckerResult kronecker_construct(const KroneckerInputs& in) {
  const int m2 = static_cast<int>(in.c_list.size());
  if (m2 == 0 || static_cast<int>(in.a_list.size()) != m2)
    throw std::domain_error("kronecker_construct: need matching non-empty A and C lists");
  const int n1 = in.c_list[0].n(), m1 = in.c_list[0].p();
  for (int j = 0; j < m2; ++j) {
    if (in.c_list[j].n() != n1 || in.c_list[j].p() != m1)
      throw std::domain_error("kronecker_construct: C_" + std::to_string(j + 1) + " dimension mismatch");
    if (in.a_list[j].rows() != n1 || in.a_list[j].cols() != m1)
      throw std::domain_error("kronecker_construct: A_" + std::to_string(j + 1) + " dimension mismatch");
  }
  const int n2 = in.b.n();
  if (in.b.p() != m2) throw std::domain_error("kronecker_construct: B must have m2 columns");
  if (in.d.rows() != n2 || in.d.cols() != m2)
    throw std::domain_error("kronecker_construct: D must match B");

  Matrix m(n1 * n2, m1 * m2);
  for (int q = 0; q < n2; ++q) {
    for (int j = 0; j < m2; ++j) {
      const double bqj = in.b.values(q, j);
      const double rdqj = in.r * in.d.values(q, j);
      const Matrix& a = in.a_list[j].values;
      const Matrix& c = in.c_list[j].values;
      for (int i = 0; i < n1; ++i)
        for (int k = 0; k < m1; ++k)
          m(q * n1 + i, j * m1 + k) = bqj * a(i, k) + rdqj * c(i, k);
    }
  }
  KroneckerResult out;
  out.conditions = check_prop1_conditions(in);
  out.latin = is_latin_hypercube(m);
  out.design = DesignMatrix{std::move(m),
                            out.latin.ok ? DesignKind::latin_hypercube : DesignKind::generic};
  return out;
}

// The non-blocked baseline L = A (x) B + r C (x) D.
inline DesignMatrix kronecker_base(const SignMatrix& a, const DesignMatrix& b,
                                   const DesignMatrix& c, const SignMatrix& d, double r) {
  const int n1 = a.rows(), m1 = a.cols();
  if (c.n() != n1 || c.p() != m1) throw std::domain_error("kronecker_base: A and C must match");
  const int n2 = b.n(), m2 = b.p();
  if (d.rows() != n2 || d.cols() != m2) throw std::domain_error("kronecker_base: B and D must match");
  Matrix l(n1 * n2, m1 * m2);
  for (int i = 0; i < n1; ++i)
    for (int k = 0; k < n2; ++k)
      for (int j = 0; j < m1; ++j)
        for (int t = 0; t < m2; ++t)
          l(i * n2 + k, j * m2 + t) =
              a.values(i, j) * b.values(k, t) + r * c.values(i, j) * d.values(k, t);
  const LatinCheckReport lc = is_latin_hypercube(l);
  return {std::move(l), lc.ok ? DesignKind::latin_hypercube : DesignKind::generic};
}

// One shared random row permutation applied to both matrices; preserves any
// A^T C identity exactly.
inline std::pair<SignMatrix, DesignMatrix> joint_row_permute(const SignMatrix& a,
                                                             const DesignMatrix& c, Rng& rng) {
  const int n = a.rows();
  if (c.n() != n) throw std::domain_error("joint_row_permute: row counts differ");
  const std::vector<int> perm = rng.permutation(n);
  Matrix pa(n, a.cols()), pc(n, c.p());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < a.cols(); ++j) pa(i, j) = a.values(perm[i], j);
    for (int j = 0; j < c.p(); ++j) pc(i, j) = c.values(perm[i], j);
  }
  return {SignMatrix(std::move(pa)), DesignMatrix{std::move(pc), c.kind}};
}

// ---------------------------------------------------------------------------
// Simulated annealing over Latin hypercubes
// ---------------------------------------------------------------------------

enum class AnnealObjective { rho_ave, rho_max, weighted_delta };

struct AnnealConfig {
  AnnealObjective objective = AnnealObjective::rho_ave;
  std::vector<double> thresholds = {0.1};  // weighted_delta only
  std::vector<double> weights = {};        // defaults to all-ones
  double initial_temp = 0.0;               // 0 = calibrate so ~50% of uphill moves accept
  double cooling = 0.95;                   // per epoch
  int moves_per_temp = 0;                  // 0 = 100 * p
  double stop_temp = 0.0;                  // 0 = 1e-4 * initial
  double rho_max_cap = 0.0;                // >0 adds a quadratic penalty above the cap
};

namespace detail {

// Swap-move annealing state. The objective is evaluated from pair-additive
// aggregates (sum of squared correlations, per-threshold exceedance counts,
// cap penalty) updated in O(p) per move; only the max-correlation term needs
// an occasional full rescan.
class LhAnnealer {
 public:
  LhAnnealer(int n, int p, const AnnealConfig& cfg, Rng& rng)
      : n_(n), p_(p), cfg_(cfg), rng_(rng), x_(n, p), gram_(p, p) {
    const std::vector<double> levels = centered_levels(n);
    csq_ = 0.0;
    for (double v : levels) csq_ += v * v;
    for (int j = 0; j < p; ++j) {
      std::vector<double> col = levels;
      rng_.shuffle(col);
      x_.set_column(j, col);
    }
    for (int i = 0; i < p; ++i)
      for (int j = i; j < p; ++j) {
        double dot = 0.0;
        for (int r = 0; r < n; ++r) dot += x_(r, i) * x_(r, j);
        gram_(i, j) = dot;
        gram_(j, i) = dot;
      }
    if (cfg_.weights.empty()) weights_.assign(cfg_.thresholds.size(), 1.0);
    else weights_ = cfg_.weights;
    need_max_ = cfg_.objective == AnnealObjective::rho_max;
    over_.assign(cfg_.thresholds.size(), 0);
    init_aggregates();
  }

  double objective() const {
    const double npairs = p_ * (p_ - 1) / 2.0;
    const double rho_ave = std::sqrt(std::max(0.0, sumsq_) / npairs);
    double obj = 0.0;
    switch (cfg_.objective) {
      case AnnealObjective::rho_ave: obj = rho_ave; break;
      case AnnealObjective::rho_max: obj = maxabs_ + 0.01 * rho_ave; break;
      case AnnealObjective::weighted_delta: {
        for (std::size_t k = 0; k < over_.size(); ++k)
          obj += weights_[k] * over_[k] / npairs;
        obj += 0.01 * rho_ave;  // breaks plateaus between count changes
        break;
      }
    }
    if (cfg_.rho_max_cap > 0.0) obj += 50.0 * capsum_;
    return obj;
  }

  // Swap two entries in one random column; returns the objective change and
  // leaves the move applied. revert() undoes the last move.
  double propose() {
    col_ = rng_.index(p_);
    row_a_ = rng_.index(n_);
    row_b_ = rng_.index(n_ - 1);
    if (row_b_ >= row_a_) ++row_b_;
    snap_ = {sumsq_, capsum_, maxabs_, over_};
    const double before = objective();
    apply_forward();
    return objective() - before;
  }

  void revert() {
    swap_cells();
    update_gram_row();
    sumsq_ = snap_.sumsq;
    capsum_ = snap_.capsum;
    maxabs_ = snap_.maxabs;
    over_ = snap_.over;
  }

  Matrix matrix() const { return x_; }

 private:
  struct Snapshot {
    double sumsq = 0.0, capsum = 0.0, maxabs = 0.0;
    std::vector<long long> over;
  };

  void init_aggregates() {
    sumsq_ = capsum_ = maxabs_ = 0.0;
    std::fill(over_.begin(), over_.end(), 0LL);
    for (int i = 0; i < p_; ++i)
      for (int j = i + 1; j < p_; ++j) add_pair(std::abs(gram_(i, j)) / csq_, +1);
    if (need_max_) rescan_max();
  }

  void add_pair(double a, int sign) {
    sumsq_ += sign * a * a;
    if (cfg_.rho_max_cap > 0.0 && a > cfg_.rho_max_cap) {
      const double e = a - cfg_.rho_max_cap;
      capsum_ += sign * e * e;
    }
    for (std::size_t k = 0; k < over_.size(); ++k)
      if (a > cfg_.thresholds[k]) over_[k] += sign;
  }

  void rescan_max() {
    maxabs_ = 0.0;
    for (int i = 0; i < p_; ++i)
      for (int j = i + 1; j < p_; ++j) maxabs_ = std::max(maxabs_, std::abs(gram_(i, j)) / csq_);
  }

  void swap_cells() {
    std::swap(x_(row_a_, col_), x_(row_b_, col_));
  }

  // Recompute gram row `col_` from the freshly swapped column.
  void update_gram_row() {
    const double va_new = x_(row_a_, col_), vb_new = x_(row_b_, col_);
    const double dv = va_new - vb_new;  // = old(b) - old(a)
    for (int k = 0; k < p_; ++k) {
      if (k == col_) continue;
      gram_(col_, k) += dv * (x_(row_a_, k) - x_(row_b_, k));
      gram_(k, col_) = gram_(col_, k);
    }
  }

  void apply_forward() {
    double row_max_before = 0.0;
    for (int k = 0; k < p_; ++k) {
      if (k == col_) continue;
      const double a = std::abs(gram_(col_, k)) / csq_;
      add_pair(a, -1);
      row_max_before = std::max(row_max_before, a);
    }
    swap_cells();
    update_gram_row();
    double row_max_after = 0.0;
    for (int k = 0; k < p_; ++k) {
      if (k == col_) continue;
      const double a = std::abs(gram_(col_, k)) / csq_;
      add_pair(a, +1);
      row_max_after = std::max(row_max_after, a);
    }
    if (need_max_) {
      if (row_max_after >= maxabs_) maxabs_ = row_max_after;
      else if (row_max_before >= maxabs_) rescan_max();
    }
  }

  int n_, p_;
  AnnealConfig cfg_;
  Rng& rng_;
  Matrix x_, gram_;
  double csq_ = 0.0;
  std::vector<double> weights_;
  bool need_max_ = false;
  double sumsq_ = 0.0, capsum_ = 0.0, maxabs_ = 0.0;
  std::vector<long long> over_;
  Snapshot snap_;
  int col_ = 0, row_a_ = 0, row_b_ = 1;
};

}  // namespace detail

// Metropolis annealing over level swaps within columns. Always returns the
// best design seen; the result is a valid Latin hypercube by construction.
inline DesignMatrix anneal_nolhd(int n, int p, const AnnealConfig& cfg, Rng& rng) {
  if (n < 2 || p < 1) throw std::domain_error("anneal_nolhd: need n >= 2, p >= 1");
  detail::LhAnnealer an(n, p, cfg, rng);
  if (p == 1) return {an.matrix(), DesignKind::latin_hypercube};  // single column is optimal

  double t0 = cfg.initial_temp;
  if (t0 <= 0.0) {
    // calibrate: average uphill step from a short probe, 50% acceptance
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < 64; ++i) {
      const double d = an.propose();
      an.revert();
      if (d > 0.0) {
        sum += d;
        ++count;
      }
    }
    t0 = count ? (sum / count) / std::log(2.0) : 1e-6;
  }
  const double stop = cfg.stop_temp > 0.0 ? cfg.stop_temp : 1e-4 * t0;
  const int moves = cfg.moves_per_temp > 0 ? cfg.moves_per_temp : 100 * p;

  double cur = an.objective();
  double best = cur;
  Matrix best_x = an.matrix();
  for (double t = t0; t > stop; t *= cfg.cooling) {
    for (int m = 0; m < moves; ++m) {
      const double d = an.propose();
      if (d <= 0.0 || rng.uniform01() < std::exp(-d / t)) {
        cur = an.objective();
        if (cur < best) {
          best = cur;
          best_x = an.matrix();
        }
      } else {
        an.revert();
      }
    }
  }
  return {std::move(best_x), DesignKind::latin_hypercube};
}

// Independent chains (child-seeded from `rng`), best result kept.
inline DesignMatrix anneal_nolhd_best_of(int n, int p, const AnnealConfig& cfg, int restarts,
                                         Rng& rng) {
  DesignMatrix best;
  double best_obj = 0.0;
  for (int r = 0; r < std::max(1, restarts); ++r) {
    Rng chain(rng.next_u64());
    DesignMatrix cand = anneal_nolhd(n, p, cfg, chain);
    double obj;
    if (p == 1) {
      obj = 0.0;
    } else {
      const CorrelationSummary s = compute_criteria(cand, cfg.thresholds.empty()
                                                              ? default_thresholds()
                                                              : cfg.thresholds);
      switch (cfg.objective) {
        case AnnealObjective::rho_ave: obj = s.rho_ave; break;
        case AnnealObjective::rho_max: obj = s.rho_max + 0.01 * s.rho_ave; break;
        default: {
          obj = 0.01 * s.rho_ave;
          for (std::size_t k = 0; k < s.delta.size(); ++k) {
            const double w = k < cfg.weights.size() ? cfg.weights[k] : 1.0;
            obj += w * (1.0 - s.delta[k]);
          }
          if (cfg.rho_max_cap > 0.0 && s.rho_max > cfg.rho_max_cap) {
            const double e = s.rho_max - cfg.rho_max_cap;
            obj += 50.0 * e * e;
          }
          break;
        }
      }
    }
    if (best.values.empty() || obj < best_obj) {
      best = std::move(cand);
      best_obj = obj;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Two-level designs by sign-exchange descent on E(s^2)
// ---------------------------------------------------------------------------

// Mean squared off-diagonal inner product over column pairs.
inline double es2_value(const Matrix& x) {
  const int p = x.cols();
  if (p < 2) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      double dot = 0.0;
      for (int r = 0; r < x.rows(); ++r) dot += x(r, i) * x(r, j);
      sum += dot * dot;
    }
  return sum / (p * (p - 1) / 2.0);
}

namespace detail {

// Random descent over sign exchanges within columns. Columns keep whatever
// sign balance they start with (swaps exchange a +1 cell and a -1 cell).
inline Matrix sign_exchange_descent(int n, int p, bool balanced, Rng& rng, int restarts,
                                    long long moves_per_start) {
  Matrix best;
  double best_val = 0.0;
  for (int rs = 0; rs < std::max(1, restarts); ++rs) {
    Matrix x(n, p);
    for (int j = 0; j < p; ++j) {
      std::vector<double> col(n, 1.0);
      const int minus = balanced ? n / 2 : n / 2 + (rng.uniform01() < 0.5 ? 0 : 1);
      for (int i = 0; i < minus; ++i) col[i] = -1.0;
      rng.shuffle(col);
      x.set_column(j, col);
    }
    Matrix gram(p, p);
    for (int i = 0; i < p; ++i)
      for (int j = i; j < p; ++j) {
        double dot = 0.0;
        for (int r = 0; r < n; ++r) dot += x(r, i) * x(r, j);
        gram(i, j) = dot;
        gram(j, i) = dot;
      }
    auto row_sumsq = [&](int j) {
      double s = 0.0;
      for (int k = 0; k < p; ++k)
        if (k != j) s += gram(j, k) * gram(j, k);
      return s;
    };
    for (long long m = 0; m < moves_per_start; ++m) {
      const int j = rng.index(p);
      const int a = rng.index(n);
      const int b = rng.index(n);
      if (x(a, j) == x(b, j)) continue;
      const double before = row_sumsq(j);
      for (int k = 0; k < p; ++k) {
        if (k == j) continue;
        gram(j, k) += -2.0 * x(a, j) * x(a, k) - 2.0 * x(b, j) * x(b, k);
        gram(k, j) = gram(j, k);
      }
      if (row_sumsq(j) < before) {
        x(a, j) = -x(a, j);
        x(b, j) = -x(b, j);
      } else {
        for (int k = 0; k < p; ++k) {
          if (k == j) continue;
          gram(j, k) += 2.0 * x(a, j) * x(a, k) + 2.0 * x(b, j) * x(b, k);
          gram(k, j) = gram(j, k);
        }
      }
    }
    const double val = es2_value(x);
    if (best.empty() || val < best_val) {
      best = std::move(x);
      best_val = val;
    }
  }
  return best;
}

}  // namespace detail

// Balanced two-level design at levels +-(n-1)/2, optimized by repeated
// columnwise sign-exchange descent on E(s^2). Even n only: odd run counts
// cannot balance a +-1 column.
inline DesignMatrix es2_supersaturated(int n, int p, Rng& rng, int restarts = 8) {
  if (n < 2 || p < 2) throw std::domain_error("es2_supersaturated: need n >= 2, p >= 2");
  if (n % 2 != 0)
    throw std::invalid_argument("es2_supersaturated: odd run count, column balance impossible");
  Matrix coded = detail::sign_exchange_descent(n, p, true, rng, restarts, 60LL * n * p);
  const double level = (n - 1) / 2.0;
  Matrix x(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) x(i, j) = level * coded(i, j);
  return {std::move(x), DesignKind::two_level};
}

// Odd-n variant: columns carry a one-cell imbalance (sums +-1 in the +-1
// coding), everything else as in es2_supersaturated.
inline DesignMatrix es2_supersaturated_odd(int n, int p, Rng& rng, int restarts = 8) {
  if (n < 3 || p < 2) throw std::domain_error("es2_supersaturated_odd: need n >= 3, p >= 2");
  if (n % 2 == 0) throw std::invalid_argument("es2_supersaturated_odd: use es2_supersaturated for even n");
  Matrix coded = detail::sign_exchange_descent(n, p, false, rng, restarts, 60LL * n * p);
  const double level = (n - 1) / 2.0;
  Matrix x(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) x(i, j) = level * coded(i, j);
  return {std::move(x), DesignKind::two_level};
}

// Nearly orthogonal +-1 matrix (no balance constraint): single-cell flips,
// descent on the sum of squared column inner products.
inline SignMatrix nearly_orthogonal_sign_matrix(int rows, int cols, Rng& rng, int restarts = 6) {
  if (rows < 1 || cols < 1) throw std::domain_error("nearly_orthogonal_sign_matrix: bad shape");
  Matrix best;
  double best_val = 0.0;
  for (int rs = 0; rs < std::max(1, restarts); ++rs) {
    Matrix x(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) x(i, j) = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    Matrix gram(cols, cols);
    for (int i = 0; i < cols; ++i)
      for (int j = i; j < cols; ++j) {
        double dot = 0.0;
        for (int r = 0; r < rows; ++r) dot += x(r, i) * x(r, j);
        gram(i, j) = dot;
        gram(j, i) = dot;
      }
    auto row_sumsq = [&](int j) {
      double s = 0.0;
      for (int k = 0; k < cols; ++k)
        if (k != j) s += gram(j, k) * gram(j, k);
      return s;
    };
    const long long moves = 80LL * rows * cols;
    for (long long m = 0; m < moves; ++m) {
      const int j = rng.index(cols);
      const int a = rng.index(rows);
      const double before = row_sumsq(j);
      for (int k = 0; k < cols; ++k) {
        if (k == j) continue;
        gram(j, k) += -2.0 * x(a, j) * x(a, k);
        gram(k, j) = gram(j, k);
      }
      if (row_sumsq(j) < before) {
        x(a, j) = -x(a, j);
      } else {
        for (int k = 0; k < cols; ++k) {
          if (k == j) continue;
          gram(j, k) += 2.0 * x(a, j) * x(a, k);
          gram(k, j) = gram(j, k);
        }
      }
    }
    const double val = es2_value(x);
    if (best.empty() || val < best_val) {
      best = std::move(x);
      best_val = val;
    }
  }
  return SignMatrix(std::move(best));
}

// ---------------------------------------------------------------------------
// Doubling recipe: NOLHD(n1, m1) -> NOLHD(2 n1, 2 m1)
// ---------------------------------------------------------------------------

// How the second block's ingredients are derived from the first.
//   negate  - C2 = -C1, A2 = A1. Concentrates the unavoidable correlation
//             mass into m1 matched column pairs; best proportion-correlation
//             profile.
//   permute - (A2, C2) = joint row permutation of (A1, C1). Spreads the mass
//             thinly over all cross-block pairs; no near-collinear columns.
enum class DoublingMode { negate, permute };

inline KroneckerResult double_nolhd(const DesignMatrix& c1, DoublingMode mode, Rng& rng) {
  const int n1 = c1.n(), m1 = c1.p();
  const SignMatrix a1 = nearly_orthogonal_sign_matrix(n1, m1, rng);
  SignMatrix a2 = a1;
  DesignMatrix c2 = c1;
  if (mode == DoublingMode::negate) {
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < m1; ++j) c2.values(i, j) = -c1.values(i, j);
  } else {
    auto pr = joint_row_permute(a1, c1, rng);
    a2 = std::move(pr.first);
    c2 = std::move(pr.second);
  }
  KroneckerInputs in;
  in.a_list = {a1, a2};
  in.c_list = {c1, c2};
  in.b = DesignMatrix{Matrix::from_rows({{0.5, -0.5}, {-0.5, 0.5}}), DesignKind::latin_hypercube};
  in.d = SignMatrix(Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}));
  in.r = 2.0;
  return kronecker_construct(in);
}

}  // namespace nolhd

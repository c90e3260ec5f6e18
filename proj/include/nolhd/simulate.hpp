#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nolhd/construct.hpp"
#include "nolhd/criteria.hpp"
#include "nolhd/design.hpp"
#include "nolhd/fixtures.hpp"
#include "nolhd/io.hpp"
#include "nolhd/lasso.hpp"
#include "nolhd/rng.hpp"

namespace nolhd {

enum class MethodKind { nolhd_lemma1, nolhd_kron, fd_ssd, rlhd, iid, file };

inline const char* to_string(MethodKind k) {
  switch (k) {
    case MethodKind::nolhd_lemma1: return "nolhd-lemma1";
    case MethodKind::nolhd_kron: return "nolhd-kron";
    case MethodKind::fd_ssd: return "fd-ssd";
    case MethodKind::rlhd: return "rlhd";
    case MethodKind::iid: return "iid";
    default: return "file";
  }
}

struct DesignMethodSpec {
  MethodKind kind = MethodKind::rlhd;
  std::string name;
  bool refresh_per_rep = false;  // rebuild from the replication seed each rep

  // nolhd-lemma1: OA order s; the small hypercube comes from `b_source`:
  // "anneal" (default), "bundled-7x12", or a CSV path.
  int s = 0;
  std::string b_source = "anneal";

  // nolhd-kron: doubling of a lemma1 seed of OA order kron_s.
  int kron_s = 0;
  DoublingMode c2_mode = DoublingMode::permute;

  std::string file;  // kind == file
};

struct SolverSettings {
  int cv_folds = 5;
  int grid_points = 100;
  double grid_ratio = 1e-4;
  CvRule cv_rule = CvRule::min;
  bool standardize = false;
  double tol = 1e-7;
  int max_iter = 100000;
};

struct SimScenario {
  std::string name;
  int n = 0;
  int p = 0;
  TrueModel truth;
  double range_lo = 0.0, range_hi = 0.0;
  int reps = 50;
  std::vector<DesignMethodSpec> methods;
  std::uint64_t master_seed = 0;
  SolverSettings solver;
  std::string notes;
};

// Built-in scenarios. Each pairs an NOLHD construction against a two-level
// exchange-optimized design, a random Latin hypercube and an i.i.d. sample,
// at the same run size, factor count and noise level.
inline SimScenario builtin_scenario(const std::string& id, std::uint64_t master_seed = 20240817) {
  SimScenario s;
  s.master_seed = master_seed;
  auto method = [](MethodKind k, std::string name, bool refresh) {
    DesignMethodSpec m;
    m.kind = k;
    m.name = std::move(name);
    m.refresh_per_rep = refresh;
    return m;
  };
  if (id == "ex4") {
    s.name = "ex4";
    s.n = 50;
    s.p = 48;
    s.truth.sigma = 8.0;
    s.truth.beta.assign(48, 0.0);
    for (int j = 0; j < 12; ++j) s.truth.beta[j] = 0.8 + 0.2 * j;
    DesignMethodSpec nolhd = method(MethodKind::nolhd_kron, "nolhd", false);
    nolhd.kron_s = 5;
    nolhd.c2_mode = DoublingMode::permute;
    s.methods = {nolhd, method(MethodKind::fd_ssd, "fd", false), method(MethodKind::rlhd, "rlhd", true),
                 method(MethodKind::iid, "iid", true)};
  } else if (id == "ex5") {
    s.name = "ex5";
    s.n = 49;
    s.p = 96;
    s.truth.sigma = 8.0;
    s.truth.beta.assign(96, 0.0);
    for (int j = 0; j < 15; ++j) s.truth.beta[j] = 0.2 + 0.2 * j;
    DesignMethodSpec nolhd = method(MethodKind::nolhd_lemma1, "nolhd", false);
    nolhd.s = 7;
    nolhd.b_source = "bundled-7x12";
    s.methods = {nolhd, method(MethodKind::fd_ssd, "fd", false), method(MethodKind::rlhd, "rlhd", true),
                 method(MethodKind::iid, "iid", true)};
  } else if (id == "ex6") {
    s.name = "ex6";
    s.n = 64;
    s.p = 192;
    s.truth.sigma = 8.0;
    s.truth.beta.assign(192, 0.0);
    for (int j = 0; j < 20; ++j) s.truth.beta[j] = 0.05 + j * (3.0 - 0.05) / 19.0;
    s.notes = "beta nonzeros: 20 values linearly spaced on [0.05, 3.0]";
    DesignMethodSpec nolhd = method(MethodKind::nolhd_lemma1, "nolhd", false);
    nolhd.s = 8;
    s.methods = {nolhd, method(MethodKind::fd_ssd, "fd", false), method(MethodKind::rlhd, "rlhd", true),
                 method(MethodKind::iid, "iid", true)};
  } else {
    throw std::domain_error("builtin_scenario: unknown id '" + id + "'");
  }
  s.range_lo = -(s.n - 1) / 2.0;
  s.range_hi = (s.n - 1) / 2.0;
  s.reps = 50;
  return s;
}

// Builds one method's design. Deterministic in (spec, scenario shape, seed).
inline DesignMatrix build_method_design(const DesignMethodSpec& spec, const SimScenario& scn,
                                        std::uint64_t seed) {
  Rng rng(seed);
  switch (spec.kind) {
    case MethodKind::rlhd:
      return random_latin_hypercube(scn.n, scn.p, scn.range_lo, scn.range_hi, rng);
    case MethodKind::iid:
      return iid_uniform_sample(scn.n, scn.p, scn.range_lo, scn.range_hi, rng);
    case MethodKind::fd_ssd:
      return scn.n % 2 == 0 ? es2_supersaturated(scn.n, scn.p, rng)
                            : es2_supersaturated_odd(scn.n, scn.p, rng);
    case MethodKind::file: {
      Matrix m = read_csv_matrix_file(spec.file);
      if (m.rows() != scn.n || m.cols() != scn.p)
        throw std::domain_error("design file " + spec.file + " does not match scenario shape");
      const LatinCheckReport lc = is_latin_hypercube(m);
      return {std::move(m), lc.ok ? DesignKind::latin_hypercube : DesignKind::generic};
    }
    case MethodKind::nolhd_lemma1: {
      const int s = spec.s;
      if (s * s != scn.n)
        throw std::domain_error("nolhd-lemma1: scenario needs n = s^2");
      OrthogonalArray oa = rao_hamming_oa(s);
      if (oa.cols % 2 != 0) oa = take_columns(oa, oa.cols - 1);
      const int f = oa.cols / 2;
      if (scn.p % (2 * f) != 0)
        throw std::domain_error("nolhd-lemma1: p must be a multiple of 2f");
      const int bcols = scn.p / (2 * f);
      DesignMatrix b;
      if (spec.b_source == "bundled-7x12") {
        b = fixtures::example1_b();
        if (b.n() != s || b.p() != bcols)
          throw std::domain_error("nolhd-lemma1: bundled hypercube does not fit");
      } else if (spec.b_source == "anneal" || spec.b_source.empty()) {
        AnnealConfig cfg;
        cfg.objective = AnnealObjective::rho_ave;
        b = anneal_nolhd_best_of(s, bcols, cfg, 8, rng);
      } else {
        b = DesignMatrix{read_csv_matrix_file(spec.b_source), DesignKind::latin_hypercube};
      }
      return lemma1_construct({oa, b});
    }
    case MethodKind::nolhd_kron: {
      const int s = spec.kron_s;
      if (2 * s * s != scn.n || scn.p % 2 != 0)
        throw std::domain_error("nolhd-kron: scenario needs n = 2 s^2 and even p");
      OrthogonalArray oa = rao_hamming_oa(s);
      if (oa.cols % 2 != 0) oa = take_columns(oa, oa.cols - 1);
      const int f = oa.cols / 2;
      const int m1 = scn.p / 2;
      if (m1 % (2 * f) != 0)
        throw std::domain_error("nolhd-kron: p/2 must be a multiple of 2f");
      AnnealConfig cfg;
      cfg.objective = AnnealObjective::rho_ave;
      const DesignMatrix seed_lh = anneal_nolhd_best_of(s, m1 / (2 * f), cfg, 20, rng);
      const DesignMatrix c1 = lemma1_construct({oa, seed_lh});
      KroneckerResult kr = double_nolhd(c1, spec.c2_mode, rng);
      if (!kr.latin.ok)
        throw std::domain_error("nolhd-kron: output failed the hypercube check: " + kr.latin.reason);
      return std::move(kr.design);
    }
  }
  throw std::logic_error("build_method_design: unhandled kind");
}

// Seed streams inside one replication (offsets under the replication seed).
inline constexpr std::uint64_t kStreamNoise = 0;
inline constexpr std::uint64_t kStreamFolds = 1;
inline constexpr std::uint64_t kStreamDesignBase = 0x100;

// One replication: a single noise vector and a single fold partition shared
// by every method; returns gamma per method name.
inline std::map<std::string, int> run_replication(const SimScenario& scn,
                                                  const std::map<std::string, DesignMatrix>& designs,
                                                  std::uint64_t rep_seed) {
  const int n = scn.n;
  for (const auto& [name, d] : designs)
    if (d.n() != n || d.p() != scn.p)
      throw std::domain_error("run_replication: design '" + name + "' has the wrong shape");

  std::vector<double> eps(n);
  {
    Rng noise(child_seed(rep_seed, kStreamNoise));
    for (double& e : eps) e = scn.truth.sigma * noise.normal();
  }
  std::vector<int> folds;
  {
    Rng frng(child_seed(rep_seed, kStreamFolds));
    folds = make_folds(n, scn.solver.cv_folds, frng);
  }

  CvOptions cvo;
  cvo.rule = scn.solver.cv_rule;
  cvo.solver.tol = scn.solver.tol;
  cvo.solver.max_iter = scn.solver.max_iter;
  cvo.solver.standardize = scn.solver.standardize;

  std::map<std::string, int> gamma;
  for (const auto& [name, design] : designs) {
    const Matrix& x = design.values;
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
      double dot = 0.0;
      for (int j = 0; j < scn.p; ++j) dot += x(i, j) * scn.truth.beta[j];
      y[i] = dot + eps[i];
    }
    const double lmax = lambda_max(x, y);
    const std::vector<double> grid = lambda_grid(lmax, scn.solver.grid_points, scn.solver.grid_ratio);
    const CvResult cv = cross_validate_folds(x, y, folds, grid, cvo);
    LassoProblem prob{x, y, cv.lambda};
    const LassoFit fit = solve_lasso(prob, cvo.solver);
    gamma[name] = false_selections(fit, scn.truth);
  }
  return gamma;
}

struct Quartiles {
  double q1 = 0.0, median = 0.0, q3 = 0.0;
};

// Linear-interpolation quantiles on sorted data (the common "type 7" rule);
// the median of an even count is the mean of the middle two values.
inline double quantile_linear(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::domain_error("quantile: empty sample");
  const double h = (sorted.size() - 1) * q;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double w = h - lo;
  return sorted[lo] * (1.0 - w) + sorted[lo + 1] * w;
}

inline Quartiles quartiles_of(const std::vector<int>& samples) {
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  return {quantile_linear(s, 0.25), quantile_linear(s, 0.5), quantile_linear(s, 0.75)};
}

struct MethodResult {
  DesignMethodSpec spec;
  std::uint64_t design_seed = 0;  // fixed-design seed (refresh methods derive per rep)
  std::vector<int> gammas;
  Quartiles quartiles;
};

struct SimReport {
  SimScenario scenario;
  std::vector<MethodResult> methods;
  std::vector<std::uint64_t> rep_seeds;
};

struct RunOptions {
  int threads = 0;  // 0 = hardware concurrency
};

// Runs every replication of the scenario. Fixed designs are constructed once
// up front; per-rep designs are rebuilt from replication-derived seeds, so the
// report depends only on (scenario, master_seed), not on thread count.
inline SimReport run_experiment(const SimScenario& scn, const RunOptions& opts = {}) {
  if (scn.reps < 1) throw std::domain_error("run_experiment: need at least one replication");
  if (static_cast<int>(scn.truth.beta.size()) != scn.p)
    throw std::domain_error("run_experiment: beta length must equal p");
  SimReport report;
  report.scenario = scn;

  const int nm = static_cast<int>(scn.methods.size());
  std::vector<DesignMatrix> fixed(nm);
  for (int m = 0; m < nm; ++m) {
    report.methods.push_back({scn.methods[m], child_seed(scn.master_seed, 0x9000 + m), {}, {}});
    if (!scn.methods[m].refresh_per_rep) {
      try {
        fixed[m] = build_method_design(scn.methods[m], scn, report.methods[m].design_seed);
      } catch (const std::exception& e) {
        throw std::runtime_error("construction failed for method '" + scn.methods[m].name +
                                 "': " + e.what());
      }
    }
    report.methods[m].gammas.assign(scn.reps, 0);
  }
  report.rep_seeds.resize(scn.reps);
  for (int r = 0; r < scn.reps; ++r) report.rep_seeds[r] = child_seed(scn.master_seed, r);

  auto run_rep = [&](int r) {
    std::map<std::string, DesignMatrix> designs;
    for (int m = 0; m < nm; ++m) {
      if (scn.methods[m].refresh_per_rep) {
        designs[scn.methods[m].name] = build_method_design(
            scn.methods[m], scn, child_seed(report.rep_seeds[r], kStreamDesignBase + m));
      } else {
        designs[scn.methods[m].name] = fixed[m];
      }
    }
    const std::map<std::string, int> gamma = run_replication(scn, designs, report.rep_seeds[r]);
    for (int m = 0; m < nm; ++m) report.methods[m].gammas[r] = gamma.at(scn.methods[m].name);
  };

  int threads = opts.threads > 0 ? opts.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, scn.reps));
  if (threads == 1) {
    for (int r = 0; r < scn.reps; ++r) run_rep(r);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int r = t; r < scn.reps; r += threads) run_rep(r);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (int m = 0; m < nm; ++m) report.methods[m].quartiles = quartiles_of(report.methods[m].gammas);
  return report;
}

struct CorrelationProfile {
  double share_above = 0.0;           // fraction of off-diagonal |rho| > 0.1
  double share_above_positive = 0.0;  // one-sided: rho > +0.1
  std::vector<double> thresholds;
  std::vector<double> delta;
};

inline CorrelationProfile correlation_profile(const Matrix& x) {
  if (x.cols() < 2) throw std::domain_error("correlation_profile: need p >= 2");
  const Matrix rho = correlation_matrix(x);
  const std::vector<double> t = default_thresholds();
  const CorrelationSummary s = criteria_of(rho, t);
  CorrelationProfile out;
  out.thresholds = t;
  out.delta = s.delta;
  long long above = 0, above_pos = 0, total = 0;
  for (int i = 0; i < rho.rows(); ++i)
    for (int j = 0; j < rho.cols(); ++j) {
      if (i == j) continue;
      ++total;
      if (std::abs(rho(i, j)) > 0.1) ++above;
      if (rho(i, j) > 0.1) ++above_pos;
    }
  out.share_above = static_cast<double>(above) / total;
  out.share_above_positive = static_cast<double>(above_pos) / total;
  return out;
}

inline CorrelationProfile correlation_profile(const DesignMatrix& x) {
  return correlation_profile(x.values);
}

}  // namespace nolhd

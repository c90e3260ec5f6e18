#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nolhd/matrix.hpp"

namespace nolhd {

enum class DesignKind { latin_hypercube, two_level, iid_sample, generic };

inline const char* to_string(DesignKind k) {
  switch (k) {
    case DesignKind::latin_hypercube: return "latin-hypercube";
    case DesignKind::two_level: return "two-level";
    case DesignKind::iid_sample: return "iid-sample";
    default: return "generic";
  }
}

// n x p real design with a structural tag. Producers are responsible for
// tagging only what they have verified.
struct DesignMatrix {
  Matrix values;
  DesignKind kind = DesignKind::generic;

  DesignMatrix() = default;
  DesignMatrix(Matrix v, DesignKind k) : values(std::move(v)), kind(k) {}

  int n() const { return values.rows(); }
  int p() const { return values.cols(); }
};

// The n symmetric levels used by every Latin hypercube in this library:
// {-(n-1)/2, ..., (n-1)/2}, skipping 0 for even n. Sorted ascending.
inline std::vector<double> centered_levels(int n) {
  if (n < 1) throw std::domain_error("centered_levels: n must be >= 1");
  std::vector<double> lv(n);
  for (int i = 0; i < n; ++i) lv[i] = i - (n - 1) / 2.0;
  return lv;
}

struct LatinCheckReport {
  bool ok = true;
  int column = -1;       // first offending column, or -1
  double value = 0.0;    // offending sorted value in that column
  std::string reason;
};

inline constexpr double kLevelTolerance = 1e-9;

// True iff every column of X is a permutation of centered_levels(n) within
// absolute tolerance. Reports, never throws.
inline LatinCheckReport is_latin_hypercube(const Matrix& x) {
  LatinCheckReport rep;
  if (x.rows() == 0 || x.cols() == 0) {
    rep.ok = false;
    rep.reason = "empty matrix";
    return rep;
  }
  const std::vector<double> levels = centered_levels(x.rows());
  for (int j = 0; j < x.cols(); ++j) {
    std::vector<double> col = x.column(j);
    std::sort(col.begin(), col.end());
    for (int i = 0; i < x.rows(); ++i) {
      if (std::abs(col[i] - levels[i]) > kLevelTolerance) {
        rep.ok = false;
        rep.column = j;
        rep.value = col[i];
        rep.reason = "column " + std::to_string(j) + " is not a permutation of the centered levels (sorted entry " +
                     std::to_string(i) + " is " + std::to_string(col[i]) + ", expected " +
                     std::to_string(levels[i]) + ")";
        return rep;
      }
    }
  }
  return rep;
}

inline LatinCheckReport is_latin_hypercube(const DesignMatrix& x) {
  return is_latin_hypercube(x.values);
}

// Strength-two orthogonal array, symbols coded 1..s.
struct OrthogonalArray {
  int runs = 0;
  int cols = 0;
  int symbols = 0;
  IntMatrix values;
};

struct OaCheckReport {
  bool ok = true;
  std::string reason;
};

// Every ordered symbol pair must appear exactly n/s^2 times in every column
// pair.
inline OaCheckReport check_oa_strength2(const OrthogonalArray& a) {
  OaCheckReport rep;
  const int n = a.runs, k = a.cols, s = a.symbols;
  if (n <= 0 || k < 2 || s < 2) {
    rep.ok = false;
    rep.reason = "need n > 0, k >= 2, s >= 2";
    return rep;
  }
  if (n % (s * s) != 0) {
    rep.ok = false;
    rep.reason = "run count " + std::to_string(n) + " is not a multiple of s^2";
    return rep;
  }
  const int lambda = n / (s * s);
  std::vector<int> counts(static_cast<std::size_t>(s) * s);
  for (int c1 = 0; c1 < k; ++c1) {
    for (int c2 = c1 + 1; c2 < k; ++c2) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int r = 0; r < n; ++r) {
        const int u = a.values(r, c1), v = a.values(r, c2);
        if (u < 1 || u > s || v < 1 || v > s) {
          rep.ok = false;
          rep.reason = "symbol out of range 1..s at row " + std::to_string(r);
          return rep;
        }
        ++counts[static_cast<std::size_t>(u - 1) * s + (v - 1)];
      }
      for (int c : counts) {
        if (c != lambda) {
          rep.ok = false;
          rep.reason = "columns " + std::to_string(c1) + "," + std::to_string(c2) +
                       " have an unbalanced symbol pair";
          return rep;
        }
      }
    }
  }
  return rep;
}

namespace detail {

// Arithmetic tables for GF(s), s prime or one of the prime powers 4, 8, 9.
// Prime-power elements are polynomial coefficient vectors over GF(p) packed
// base p; multiplication reduces modulo a fixed irreducible polynomial.
class GaloisField {
 public:
  explicit GaloisField(int s) : s_(s) {
    int p = 0, k = 0;
    if (is_prime(s)) {
      p = s;
      k = 1;
    } else if (s == 4) {
      p = 2; k = 2;
    } else if (s == 8) {
      p = 2; k = 3;
    } else if (s == 9) {
      p = 3; k = 2;
    } else {
      throw std::invalid_argument("GaloisField: order " + std::to_string(s) +
                                  " is not a supported prime or prime power");
    }
    p_ = p;
    k_ = k;
    mul_.assign(static_cast<std::size_t>(s) * s, 0);
    add_.assign(static_cast<std::size_t>(s) * s, 0);
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) {
        add_[idx(a, b)] = add_elems(a, b);
        mul_[idx(a, b)] = mul_elems(a, b);
      }
  }

  static bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  static bool supported(int s) { return is_prime(s) || s == 4 || s == 8 || s == 9; }

  int order() const { return s_; }
  int add(int a, int b) const { return add_[idx(a, b)]; }
  int mul(int a, int b) const { return mul_[idx(a, b)]; }

 private:
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * s_ + b; }

  std::array<int, 4> digits(int a) const {
    std::array<int, 4> d{};
    for (int i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  int pack(const std::array<int, 4>& d) const {
    int a = 0;
    for (int i = k_ - 1; i >= 0; --i) a = a * p_ + d[i];
    return a;
  }

  int add_elems(int a, int b) const {
    if (k_ == 1) return (a + b) % p_;
    auto da = digits(a), db = digits(b);
    for (int i = 0; i < k_; ++i) da[i] = (da[i] + db[i]) % p_;
    return pack(da);
  }

  // Irreducible polynomials: x^2+x+1 over GF(2), x^3+x+1 over GF(2),
  // x^2+1 over GF(3).
  int mul_elems(int a, int b) const {
    if (k_ == 1) return (a * b) % p_;
    auto da = digits(a), db = digits(b);
    std::array<int, 7> prod{};
    for (int i = 0; i < k_; ++i)
      for (int j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    // reduce: x^k = -(lower terms)
    std::array<int, 4> red{};  // coefficients of x^k in terms of 1..x^{k-1}
    if (s_ == 4) {
      red = {1, 1, 0, 0};  // x^2 = x + 1
    } else if (s_ == 8) {
      red = {1, 1, 0, 0};  // x^3 = x + 1
    } else {              // s_ == 9
      red = {2, 0, 0, 0};  // x^2 = -1 = 2
    }
    for (int d = 2 * (k_ - 1); d >= k_; --d) {
      const int c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (int i = 0; i < k_; ++i) prod[d - k_ + i] = (prod[d - k_ + i] + c * red[i]) % p_;
    }
    std::array<int, 4> out{};
    for (int i = 0; i < k_; ++i) out[i] = prod[i];
    return pack(out);
  }

  int s_, p_ = 0, k_ = 0;
  std::vector<int> mul_, add_;
};

}  // namespace detail

// Rao-Hamming OA(s^2, s+1, s) of strength two with index one. Rows are the
// pairs (u, v) over GF(s); columns are u, v, and u + g*v for each nonzero g.
// Supported s: primes and the prime powers 4, 8, 9 (enough for every run
// size this library constructs).
inline OrthogonalArray rao_hamming_oa(int s) {
  if (!detail::GaloisField::supported(s))
    throw std::invalid_argument("rao_hamming_oa: order " + std::to_string(s) +
                                " is not a supported prime or prime power");
  const detail::GaloisField gf(s);
  OrthogonalArray oa;
  oa.runs = s * s;
  oa.cols = s + 1;
  oa.symbols = s;
  oa.values = IntMatrix(oa.runs, oa.cols);
  int r = 0;
  for (int u = 0; u < s; ++u) {
    for (int v = 0; v < s; ++v, ++r) {
      oa.values(r, 0) = u + 1;
      oa.values(r, 1) = v + 1;
      for (int g = 1; g < s; ++g) oa.values(r, 1 + g) = gf.add(u, gf.mul(g, v)) + 1;
    }
  }
  return oa;
}

// Keep the first k columns (strength two is preserved by column deletion).
inline OrthogonalArray take_columns(const OrthogonalArray& a, int k) {
  if (k < 1 || k > a.cols) throw std::invalid_argument("take_columns: bad column count");
  OrthogonalArray out;
  out.runs = a.runs;
  out.cols = k;
  out.symbols = a.symbols;
  out.values = IntMatrix(a.runs, k);
  for (int i = 0; i < a.runs; ++i)
    for (int j = 0; j < k; ++j) out.values(i, j) = a.values(i, j);
  return out;
}

// Matrix with entries +-1.
struct SignMatrix {
  Matrix values;

  SignMatrix() = default;
  explicit SignMatrix(Matrix v) : values(std::move(v)) {
    for (int i = 0; i < values.rows(); ++i)
      for (int j = 0; j < values.cols(); ++j) {
        const double e = values(i, j);
        if (e != 1.0 && e != -1.0)
          throw std::invalid_argument("SignMatrix: entry not +-1 at row " + std::to_string(i));
      }
  }

  int rows() const { return values.rows(); }
  int cols() const { return values.cols(); }
};

// Sylvester construction: k x k +-1 matrix with mutually orthogonal columns,
// k a power of two (k = 1 allowed).
inline SignMatrix sylvester_sign_matrix(int k) {
  if (k < 1 || (k & (k - 1)) != 0)
    throw std::invalid_argument("sylvester_sign_matrix: order must be a power of two");
  Matrix h(k, k, 1.0);
  for (int size = 1; size < k; size *= 2) {
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        h(i + size, j) = h(i, j);
        h(i, j + size) = h(i, j);
        h(i + size, j + size) = -h(i, j);
      }
  }
  return SignMatrix(std::move(h));
}

}  // namespace nolhd

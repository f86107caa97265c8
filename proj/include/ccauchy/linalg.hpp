// Copyright 2026 The ccauchy Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Dense complex matrix kernels for small dimensions (the design envelope is
// n <= 17): Hermitian Cholesky, RQ factorization with a canonical phase,
// pivoted-LU determinants and solves, and seeded random matrix generation.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ccauchy/errors.hpp"
#include "ccauchy/rng.hpp"

namespace ccauchy {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline bool is_finite(cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// z/|z|, with the convention phase(0) = 1.
inline cplx phase(cplx z) {
  const double m = std::abs(z);
  return m == 0.0 ? cplx(1.0, 0.0) : z / m;
}

/// Dense complex matrix, row-major.
class CMat {
 public:
  CMat() = default;

  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
      throw InvalidArgument("CMat: dimensions must be at least 1x1");
    }
  }

  CMat(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
      throw InvalidArgument("CMat: dimensions must be at least 1x1");
    }
    if (data_.size() != rows * cols) {
      throw InvalidArgument("CMat: entry count does not match dimensions");
    }
    for (const cplx& z : data_) {
      if (!is_finite(z)) throw InvalidArgument("CMat: non-finite entry");
    }
  }

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<cplx>& entries() const { return data_; }

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline CMat operator*(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  CMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline CMat operator*(cplx s, const CMat& a) {
  CMat c = a;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) *= s;
  return c;
}

inline CMat operator+(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum: shape differs");
  CMat c = a;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

inline CMat operator-(const CMat& a, const CMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference: shape differs");
  CMat c = a;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

inline CVec mat_vec(const CMat& a, const CVec& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("mat_vec: size mismatch");
  CVec y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline CMat adjoint(const CMat& a) {
  CMat c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

/// Largest entry magnitude.
inline double max_abs(const CMat& a) {
  double m = 0.0;
  for (const cplx& z : a.entries()) m = std::max(m, std::abs(z));
  return m;
}

inline double vec_norm(const CVec& x) {
  double s = 0.0;
  for (const cplx& z : x) s += std::norm(z);
  return std::sqrt(s);
}

/// sum conj(x_i) y_i.
inline cplx vdot(const CVec& x, const CVec& y) {
  if (x.size() != y.size()) throw DimensionMismatch("vdot: size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline bool is_finite(const CVec& x) {
  for (const cplx& z : x)
    if (!is_finite(z)) return false;
  return true;
}

// Pivot guard for the Cholesky factorization, relative to the largest
// diagonal entry.
inline constexpr double kCholeskyPivotTol = 1e-13;
inline constexpr double kHermitianTol = 1e-12;

namespace detail {

// Lower-triangular L with L L^* = s. Throws NotPositiveDefinite when a pivot
// falls at or below rel_tol times the largest diagonal entry.
inline CMat cholesky_lower(const CMat& s, double rel_tol) {
  const std::size_t n = s.rows();
  double max_diag = 0.0;
  for (std::size_t k = 0; k < n; ++k) max_diag = std::max(max_diag, s(k, k).real());
  const double threshold = rel_tol * max_diag;

  CMat l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = s(j, j).real();
    for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
    if (!(pivot > threshold)) {
      throw NotPositiveDefinite("cholesky: pivot " + std::to_string(j) +
                                " at or below guard " + std::to_string(threshold));
    }
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx acc = s(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * std::conj(l(j, k));
      l(i, j) = acc / ljj;
    }
  }
  return l;
}

}  // namespace detail

/// Hermitian positive-definite matrix. Construction validates Hermitian
/// symmetry entrywise and runs the Cholesky pivot guard.
class HermitianPD {
 public:
  explicit HermitianPD(CMat m) : m_(std::move(m)) {
    if (!m_.square()) throw DimensionMismatch("HermitianPD: matrix must be square");
    const std::size_t n = m_.rows();
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j; k < n; ++k) {
        const double dev = std::abs(m_(j, k) - std::conj(m_(k, j)));
        if (dev > kHermitianTol) {
          throw InvalidArgument("HermitianPD: entries (" + std::to_string(j) + "," +
                                std::to_string(k) + ") and (" + std::to_string(k) + "," +
                                std::to_string(j) + ") are not conjugate (deviation " +
                                std::to_string(dev) + ")");
        }
      }
    }
    detail::cholesky_lower(m_, kCholeskyPivotTol);  // pivot guard
  }

  static HermitianPD identity(std::size_t n) { return HermitianPD(CMat::identity(n)); }

  std::size_t dim() const { return m_.rows(); }
  const CMat& matrix() const { return m_; }

  friend bool operator==(const HermitianPD&, const HermitianPD&) = default;

 private:
  CMat m_;
};

/// Lower-triangular L with L L^* = sigma; diagonal real and positive.
inline CMat cholesky(const HermitianPD& sigma) {
  return detail::cholesky_lower(sigma.matrix(), kCholeskyPivotTol);
}

// Forward substitution, L lower triangular.
inline CVec solve_lower(const CMat& l, const CVec& b) {
  if (!l.square() || l.rows() != b.size()) throw DimensionMismatch("solve_lower: size mismatch");
  CVec x(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    cplx acc = b[i];
    for (std::size_t j = 0; j < i; ++j) acc -= l(i, j) * x[j];
    x[i] = acc / l(i, i);
  }
  return x;
}

// Back substitution, U upper triangular.
inline CVec solve_upper(const CMat& u, const CVec& b) {
  if (!u.square() || u.rows() != b.size()) throw DimensionMismatch("solve_upper: size mismatch");
  const std::size_t n = b.size();
  CVec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    cplx acc = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) acc -= u(ii, j) * x[j];
    x[ii] = acc / u(ii, ii);
  }
  return x;
}

/// Solves sigma w = v through the Cholesky factor; never forms an inverse.
inline CVec solve_hpd(const HermitianPD& sigma, const CVec& v) {
  if (sigma.dim() != v.size()) throw DimensionMismatch("solve_hpd: size mismatch");
  const CMat l = cholesky(sigma);
  return solve_upper(adjoint(l), solve_lower(l, v));
}

namespace detail {

struct LU {
  CMat lu;                  // combined factors, row-major
  std::vector<std::size_t> perm;
  int parity = 1;           // sign of the row permutation
  bool singular = false;
};

inline LU lu_decompose(const CMat& m) {
  const std::size_t n = m.rows();
  LU f{m, {}, 1, false};
  f.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double mag = std::abs(f.lu(i, k));
      if (mag > best) {
        best = mag;
        piv = i;
      }
    }
    if (best == 0.0) {
      f.singular = true;
      return f;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.parity = -f.parity;
    }
    const cplx pivot = f.lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx factor = f.lu(i, k) / pivot;
      f.lu(i, k) = factor;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= factor * f.lu(k, j);
    }
  }
  return f;
}

inline bool is_upper_triangular_exact(const CMat& m) {
  for (std::size_t i = 1; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j) != cplx{}) return false;
  return true;
}

inline bool is_lower_triangular_exact(const CMat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != cplx{}) return false;
  return true;
}

}  // namespace detail

/// Determinant via the triangular factor of a pivoted LU; exact for
/// triangular inputs, 0 for (numerically) singular input.
inline cplx det(const CMat& m) {
  if (!m.square()) throw DimensionMismatch("det: matrix must be square");
  const std::size_t n = m.rows();
  if (detail::is_upper_triangular_exact(m) || detail::is_lower_triangular_exact(m)) {
    cplx d = 1.0;
    for (std::size_t k = 0; k < n; ++k) d *= m(k, k);
    return d;
  }
  const detail::LU f = detail::lu_decompose(m);
  if (f.singular) return 0.0;
  cplx d = static_cast<double>(f.parity);
  for (std::size_t k = 0; k < n; ++k) d *= f.lu(k, k);
  return d;
}

/// Matrix inverse through pivoted LU. Throws SingularInput.
inline CMat inverse(const CMat& m) {
  if (!m.square()) throw DimensionMismatch("inverse: matrix must be square");
  const std::size_t n = m.rows();
  const detail::LU f = detail::lu_decompose(m);
  if (f.singular) throw SingularInput("inverse: matrix is numerically singular");
  CMat inv(n, n);
  CVec col(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::fill(col.begin(), col.end(), cplx{});
    // permuted unit vector, then the two triangular sweeps
    for (std::size_t i = 0; i < n; ++i) col[i] = (f.perm[i] == c) ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) col[i] -= f.lu(i, j) * col[j];
    for (std::size_t ii = n; ii-- > 0;) {
      for (std::size_t j = ii + 1; j < n; ++j) col[ii] -= f.lu(ii, j) * col[j];
      col[ii] /= f.lu(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, c) = col[i];
  }
  return inv;
}

namespace detail {

struct QR {
  CMat q;  // unitary
  CMat r;  // upper triangular, exact zeros below the diagonal
};

// Householder QR of a square matrix, full Q.
inline QR qr_decompose(const CMat& a) {
  const std::size_t n = a.rows();
  QR f{CMat::identity(n), a};
  CVec v(n);
  for (std::size_t k = 0; k < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) xnorm2 += std::norm(f.r(i, k));
    const double xnorm = std::sqrt(xnorm2);
    if (xnorm == 0.0) continue;
    const cplx alpha = -phase(f.r(k, k)) * xnorm;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) {
      v[i] = f.r(i, k);
      if (i == k) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    // r <- H r on the trailing block
    for (std::size_t j = k; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += std::conj(v[i]) * f.r(i, j);
      s *= beta;
      for (std::size_t i = k; i < n; ++i) f.r(i, j) -= s * v[i];
    }
    // q <- q H, accumulating the product of reflectors
    for (std::size_t i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (std::size_t j = k; j < n; ++j) s += f.q(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k; j < n; ++j) f.q(i, j) -= s * std::conj(v[j]);
    }
  }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) f.r(i, j) = 0.0;
  return f;
}

inline CMat ginibre(std::size_t n, SplitMix64& rng) {
  CMat a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.next_complex_gaussian();
  return a;
}

}  // namespace detail

/// Result of the RQ factorization m = r q.
struct RQFactors {
  CMat r;  // upper triangular, diagonal real and positive
  CMat q;  // unitary
};

/// RQ factorization of a square invertible matrix, computed by reduction to
/// an ordinary QR of the flip-conjugated matrix. The diagonal of r is made
/// real and positive, which pins the otherwise free phases and makes the
/// factorization (and everything derived from it) deterministic.
inline RQFactors rq_decompose(const CMat& m) {
  if (!m.square()) throw DimensionMismatch("rq_decompose: matrix must be square");
  const std::size_t n = m.rows();
  const double scale = max_abs(m);

  // b = J m^H J, where J is the index-reversal permutation.
  CMat b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = std::conj(m(n - 1 - j, n - 1 - i));

  const detail::QR f = detail::qr_decompose(b);

  // m = r q with r = (J r_b J)^H and q = J q_b^H J.
  CMat r(n, n);
  CMat q(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j >= i) r(i, j) = std::conj(f.r(n - 1 - j, n - 1 - i));
      q(i, j) = std::conj(f.q(n - 1 - j, n - 1 - i));
    }
  }

  // Canonical phase: rotate each column of r (and the matching row of q) so
  // the diagonal of r lands on the positive real axis.
  for (std::size_t k = 0; k < n; ++k) {
    const cplx dk = r(k, k);
    const double mag = std::abs(dk);
    if (!(mag > kCholeskyPivotTol * scale)) {
      throw SingularInput("rq_decompose: triangular pivot " + std::to_string(k) +
                          " underflows; input is numerically rank deficient");
    }
    const cplx ph = std::conj(phase(dk));
    for (std::size_t i = 0; i < k; ++i) r(i, k) *= ph;
    r(k, k) = mag;
    const cplx row_ph = std::conj(ph);
    for (std::size_t j = 0; j < n; ++j) q(k, j) *= row_ph;
  }
  return {std::move(r), std::move(q)};
}

/// Singular values (descending) via one-sided Jacobi; accurate for the tiny
/// dimensions this library targets.
inline std::vector<double> singular_values(const CMat& m) {
  if (!m.square()) throw DimensionMismatch("singular_values: matrix must be square");
  const std::size_t n = m.rows();
  CMat w = m;
  constexpr double tol = 1e-14;
  constexpr int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0;
        double aqq = 0.0;
        cplx apq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          app += std::norm(w(i, p));
          aqq += std::norm(w(i, q));
          apq += std::conj(w(i, p)) * w(i, q);
        }
        const double off = std::abs(apq);
        if (app == 0.0 || aqq == 0.0 || off <= tol * std::sqrt(app * aqq)) continue;
        converged = false;
        const cplx ph = apq / off;
        const double tau = (aqq - app) / (2.0 * off);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const cplx wp = w(i, p);
          const cplx wq = w(i, q) * std::conj(ph);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
      }
    }
    if (converged) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::norm(w(i, j));
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

/// Haar-distributed unitary: QR of a Ginibre draw with the column phases
/// corrected so the implicit triangular factor has a positive real diagonal.
inline CMat random_unitary(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("random_unitary: n must be at least 1");
  SplitMix64 rng(stream_seed(seed, 0, salt::kUnitary));
  const CMat a = detail::ginibre(n, rng);
  detail::QR f = detail::qr_decompose(a);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx ph = phase(f.r(k, k));
    for (std::size_t i = 0; i < n; ++i) f.q(i, k) *= ph;
  }
  return std::move(f.q);
}

inline constexpr double kConditionGuard = 1e-4;

/// Complex Ginibre draw, resampled (up to 100 attempts) until the smallest
/// over largest singular-value ratio clears min_condition. Deterministic for
/// a given seed.
inline CMat random_invertible(std::size_t n, std::uint64_t seed,
                              double min_condition = kConditionGuard) {
  if (n == 0) throw InvalidArgument("random_invertible: n must be at least 1");
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    SplitMix64 rng(stream_seed(seed, attempt, salt::kGinibre));
    CMat a = detail::ginibre(n, rng);
    const std::vector<double> sv = singular_values(a);
    if (sv.back() > 0.0 && sv.back() >= min_condition * sv.front()) return a;
  }
  throw ResampleExhausted("random_invertible: no draw met the condition guard in 100 attempts");
}

}  // namespace ccauchy

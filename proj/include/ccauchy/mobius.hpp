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
// Fractional-linear transformations of complex p-space: an invertible
// (p+1)x(p+1) matrix g = [[a, b], [c, d]] acts by z -> (a z + b)/(c z + d)
// with a scalar denominator. Maps are projective (g and s*g act identically
// for s != 0) and are stored scaled to |det g| = 1.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

#include "ccauchy/errors.hpp"
#include "ccauchy/linalg.hpp"

namespace ccauchy {

class MobiusMap {
 public:
  /// Adopts a square matrix of size (p+1) x (p+1), p >= 1, and rescales it to
  /// the |det| = 1 projective representative. Throws SingularInput when the
  /// matrix is not invertible.
  explicit MobiusMap(CMat g) : g_(std::move(g)) {
    if (!g_.square() || g_.rows() < 2) {
      throw DimensionMismatch("MobiusMap: matrix must be square of size at least 2");
    }
    p_ = g_.rows() - 1;
    const double mag = std::abs(det(g_));
    if (!(mag > 0.0) || !std::isfinite(mag)) {
      throw SingularInput("MobiusMap: matrix is numerically singular");
    }
    const double s = std::pow(mag, -1.0 / static_cast<double>(p_ + 1));
    // Idempotent: an already canonical matrix (serialized and reparsed, say)
    // is kept bit for bit.
    if (std::abs(s - 1.0) > 1e-12) {
      for (std::size_t i = 0; i <= p_; ++i)
        for (std::size_t j = 0; j <= p_; ++j) g_(i, j) *= s;
    }
  }

  static MobiusMap identity(std::size_t p) { return MobiusMap(CMat::identity(p + 1)); }

  std::size_t p() const { return p_; }
  const CMat& matrix() const { return g_; }

  // Block views of g = [[a, b], [c, d]].
  CMat a() const {
    CMat out(p_, p_);
    for (std::size_t i = 0; i < p_; ++i)
      for (std::size_t j = 0; j < p_; ++j) out(i, j) = g_(i, j);
    return out;
  }
  CVec b() const {
    CVec out(p_);
    for (std::size_t i = 0; i < p_; ++i) out[i] = g_(i, p_);
    return out;
  }
  CVec c() const {
    CVec out(p_);
    for (std::size_t j = 0; j < p_; ++j) out[j] = g_(p_, j);
    return out;
  }
  cplx d() const { return g_(p_, p_); }

  friend bool operator==(const MobiusMap&, const MobiusMap&) = default;

 private:
  std::size_t p_ = 0;
  CMat g_;
};

/// Evaluates the map at z. Throws PoleHit when z lies on the polar set
/// {z : c z + d = 0}; the distributions in scope put zero mass there, so a
/// hit signals misuse rather than a condition to recover from.
inline CVec apply(const MobiusMap& m, const CVec& z) {
  const std::size_t p = m.p();
  if (z.size() != p) throw DimensionMismatch("apply: point dimension does not match map");
  if (!is_finite(z)) throw InvalidArgument("apply: non-finite point");
  const CMat& g = m.matrix();
  CVec num(p);
  for (std::size_t i = 0; i < p; ++i) {
    cplx s = g(i, p);
    for (std::size_t j = 0; j < p; ++j) s += g(i, j) * z[j];
    num[i] = s;
  }
  cplx den = g(p, p);
  for (std::size_t j = 0; j < p; ++j) den += g(p, j) * z[j];
  if (std::abs(den) <= 1e-300 * (vec_norm(num) + 1.0)) {
    throw PoleHit("apply: point lies on the polar set of the map");
  }
  for (std::size_t i = 0; i < p; ++i) num[i] /= den;
  return num;
}

inline MobiusMap compose(const MobiusMap& m1, const MobiusMap& m2) {
  if (m1.p() != m2.p()) throw DimensionMismatch("compose: maps act on different dimensions");
  return MobiusMap(m1.matrix() * m2.matrix());
}

inline MobiusMap invert(const MobiusMap& m) { return MobiusMap(inverse(m.matrix())); }

/// Projective distance: min over unit-modulus phases of the max-norm gap
/// between the |det| = 1 representatives. Zero exactly when the two matrices
/// define the same transformation.
inline double proj_distance(const MobiusMap& m1, const MobiusMap& m2) {
  if (m1.p() != m2.p()) throw DimensionMismatch("proj_distance: maps act on different dimensions");
  const CMat& g1 = m1.matrix();
  const CMat& g2 = m2.matrix();
  const std::size_t n = g1.rows();
  const auto gap = [&](double theta) {
    const cplx ph = std::polar(1.0, theta);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(g1(i, j) - ph * g2(i, j)));
    return worst;
  };
  // Coarse scan, then ternary refinement inside the best bracket.
  constexpr int kGrid = 1024;
  double best_theta = 0.0;
  double best = gap(0.0);
  for (int k = 1; k < kGrid; ++k) {
    const double theta = 2.0 * kPi * k / kGrid;
    const double val = gap(theta);
    if (val < best) {
      best = val;
      best_theta = theta;
    }
  }
  double lo = best_theta - 2.0 * kPi / kGrid;
  double hi = best_theta + 2.0 * kPi / kGrid;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double t1 = lo + (hi - lo) / 3.0;
    const double t2 = hi - (hi - lo) / 3.0;
    if (gap(t1) < gap(t2)) {
      hi = t2;
    } else {
      lo = t1;
    }
  }
  return std::min(best, gap(0.5 * (lo + hi)));
}

/// A Mobius map with zero c row: z -> (a z + b)/d, the affine subgroup.
class AffineMap {
 public:
  const MobiusMap& as_mobius() const { return m_; }
  std::size_t p() const { return m_.p(); }

  /// a/d, the linear part of z -> linear_part() z + offset().
  CMat linear_part() const {
    CMat out = m_.a();
    const cplx d = m_.d();
    for (std::size_t i = 0; i < out.rows(); ++i)
      for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) /= d;
    return out;
  }

  /// b/d.
  CVec offset() const {
    CVec out = m_.b();
    for (cplx& z : out) z /= m_.d();
    return out;
  }

 private:
  friend std::optional<AffineMap> as_affine(const MobiusMap&, double);
  friend AffineMap affine_from_parts(const CMat&, const CVec&);
  explicit AffineMap(MobiusMap m) : m_(std::move(m)) {}
  MobiusMap m_;
};

/// Returns the affine view of m when its c row vanishes (within tol times the
/// matrix max-norm) and |d| > tol; the stored c row is forced to exact zero.
/// Empty result means the full Mobius path must be used.
inline std::optional<AffineMap> as_affine(const MobiusMap& m, double tol = 1e-12) {
  const std::size_t p = m.p();
  const CMat& g = m.matrix();
  double cmax = 0.0;
  for (std::size_t j = 0; j < p; ++j) cmax = std::max(cmax, std::abs(g(p, j)));
  if (cmax > tol * max_abs(g) || std::abs(g(p, p)) <= tol) return std::nullopt;
  CMat cleaned = g;
  for (std::size_t j = 0; j < p; ++j) cleaned(p, j) = 0.0;
  return AffineMap(MobiusMap(std::move(cleaned)));
}

/// Builds the affine map z -> linear z + offset as the block matrix
/// [[linear, offset], [0, 1]]. Throws SingularInput when linear is not
/// invertible.
inline AffineMap affine_from_parts(const CMat& linear, const CVec& offset) {
  if (!linear.square()) throw DimensionMismatch("affine_from_parts: linear part must be square");
  const std::size_t p = linear.rows();
  if (offset.size() != p) throw DimensionMismatch("affine_from_parts: offset size mismatch");
  CMat g(p + 1, p + 1);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) g(i, j) = linear(i, j);
    g(i, p) = offset[i];
  }
  g(p, p) = 1.0;
  return AffineMap(MobiusMap(std::move(g)));
}

}  // namespace ccauchy

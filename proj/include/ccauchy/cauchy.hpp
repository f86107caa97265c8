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
// The Cauchy family on complex p-space: location tau, Hermitian
// positive-definite scatter Sigma, density proportional to
// (1 + (z-tau)^* Sigma^{-1} (z-tau))^{-(p+1)}. Supports exact sampling,
// log-density evaluation, pushforward under fractional-linear maps, and the
// equivalent 2p-dimensional real t-distribution with two degrees of freedom.

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ccauchy/errors.hpp"
#include "ccauchy/linalg.hpp"
#include "ccauchy/mobius.hpp"
#include "ccauchy/rng.hpp"

namespace ccauchy {

class ComplexCauchy {
 public:
  ComplexCauchy(CVec tau, HermitianPD sigma)
      : p_(sigma.dim()), tau_(std::move(tau)), sigma_(std::move(sigma)),
        chol_(cholesky(sigma_)) {
    if (tau_.size() != p_) throw DimensionMismatch("ComplexCauchy: tau size does not match sigma");
    if (!is_finite(tau_)) throw InvalidArgument("ComplexCauchy: non-finite location");
    log_det_sigma_ = 0.0;
    for (std::size_t k = 0; k < p_; ++k) log_det_sigma_ += 2.0 * std::log(chol_(k, k).real());
  }

  /// The standard member: tau = 0, sigma = identity.
  static ComplexCauchy standard(std::size_t p) {
    if (p == 0) throw InvalidArgument("ComplexCauchy: p must be at least 1");
    return ComplexCauchy(CVec(p, cplx{}), HermitianPD::identity(p));
  }

  std::size_t p() const { return p_; }
  const CVec& tau() const { return tau_; }
  const HermitianPD& sigma() const { return sigma_; }

  /// Cached lower-triangular factor with chol() chol()^* = sigma.
  const CMat& chol() const { return chol_; }
  double log_det_sigma() const { return log_det_sigma_; }

 private:
  std::size_t p_;
  CVec tau_;
  HermitianPD sigma_;
  CMat chol_;
  double log_det_sigma_ = 0.0;
};

/// Log of the density at z:
///   -p log(pi) + log(p!) - log det Sigma - (p+1) log(1 + q),
/// q = (z-tau)^* Sigma^{-1} (z-tau), evaluated through a triangular solve.
inline double log_density(const ComplexCauchy& d, const CVec& z) {
  const std::size_t p = d.p();
  if (z.size() != p) throw DimensionMismatch("log_density: point dimension mismatch");
  if (!is_finite(z)) throw InvalidArgument("log_density: non-finite point");
  CVec u(p);
  for (std::size_t i = 0; i < p; ++i) u[i] = z[i] - d.tau()[i];
  const CVec y = solve_lower(d.chol(), u);
  double q = 0.0;
  for (const cplx& c : y) q += std::norm(c);
  if (q < 0.0) q = 0.0;
  const double dp = static_cast<double>(p);
  return -dp * std::log(kPi) + std::lgamma(dp + 1.0) - d.log_det_sigma() -
         (dp + 1.0) * std::log1p(q);
}

namespace detail {

// One standard draw in ratio coordinates: p+1 iid standard complex Gaussians,
// first p entries divided by the last. The uniform-sphere normalization
// cancels in the ratio, so it is never computed.
inline std::optional<CVec> standard_ratio_draw(std::size_t p, SplitMix64& rng) {
  CVec w(p + 1);
  for (auto& c : w) c = rng.next_complex_gaussian();
  const cplx denom = w[p];
  if (std::abs(denom) < 1e-300) return std::nullopt;
  CVec z(p);
  for (std::size_t j = 0; j < p; ++j) z[j] = w[j] / denom;
  return z;
}

inline CVec shift_scale(const ComplexCauchy& d, const CVec& ztilde) {
  const std::size_t p = d.p();
  CVec z(p);
  for (std::size_t i = 0; i < p; ++i) {
    cplx s = d.tau()[i];
    for (std::size_t j = 0; j <= i; ++j) s += d.chol()(i, j) * ztilde[j];
    z[i] = s;
  }
  return z;
}

}  // namespace detail

/// Draws with indices [first, first + count) of the run identified by seed.
/// Draw i uses the stream SplitMix64(stream_seed(seed, i, salt::kSample)), so
/// concatenating disjoint ranges reproduces sample(d, n, seed) exactly.
inline std::vector<CVec> sample_range(const ComplexCauchy& d, std::size_t first,
                                      std::size_t count, std::uint64_t seed) {
  std::vector<CVec> out;
  out.reserve(count);
  for (std::size_t i = first; i < first + count; ++i) {
    SplitMix64 rng(stream_seed(seed, i, salt::kSample));
    std::optional<CVec> zt = detail::standard_ratio_draw(d.p(), rng);
    if (!zt) {
      SplitMix64 retry(stream_seed(seed, i, salt::kSampleRetry));
      zt = detail::standard_ratio_draw(d.p(), retry);
      if (!zt) throw DegenerateDraw("sample: denominator underflowed twice at draw " +
                                    std::to_string(i));
    }
    out.push_back(detail::shift_scale(d, *zt));
  }
  return out;
}

/// n exact draws; deterministic per (seed, n) and chunkable via sample_range.
inline std::vector<CVec> sample(const ComplexCauchy& d, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample: n must be at least 1");
  return sample_range(d, 0, n, seed);
}

/// Unit vector in complex (p+1)-space.
struct SpherePoint {
  CVec y;
};

/// n points uniform on the unit sphere of complex (p+1)-space (normalized
/// iid complex Gaussian vectors).
inline std::vector<SpherePoint> sample_sphere(std::size_t p, std::size_t n, std::uint64_t seed) {
  if (p == 0) throw InvalidArgument("sample_sphere: p must be at least 1");
  if (n == 0) throw InvalidArgument("sample_sphere: n must be at least 1");
  std::vector<SpherePoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng(stream_seed(seed, i, salt::kSphere));
    CVec w(p + 1);
    for (auto& c : w) c = rng.next_complex_gaussian();
    double norm = vec_norm(w);
    if (norm < 1e-300) {
      SplitMix64 retry(stream_seed(seed, i, salt::kSphereRetry));
      for (auto& c : w) c = retry.next_complex_gaussian();
      norm = vec_norm(w);
      if (norm < 1e-300) throw DegenerateDraw("sample_sphere: zero vector drawn twice");
    }
    for (auto& c : w) c /= norm;
    out.push_back(SpherePoint{std::move(w)});
  }
  return out;
}

/// Projects a sphere point to ratio coordinates: z_j = y_j / y_{p+1}.
inline CVec sphere_to_ratio(const SpherePoint& s) {
  const std::size_t p = s.y.size() - 1;
  const cplx denom = s.y[p];
  if (std::abs(denom) < 1e-300) throw DegenerateDraw("sphere_to_ratio: last coordinate underflows");
  CVec z(p);
  for (std::size_t j = 0; j < p; ++j) z[j] = s.y[j] / denom;
  return z;
}

/// Law of apply(m, Z) for Z ~ d, again a member of the family. The affine
/// representative is extracted constructively: factor g * [[L, tau], [0, 1]]
/// as r q with r upper triangular (canonical phase) and q unitary; q leaves
/// the standard member invariant, and the triangular factor
/// r = [[A, b], [0, delta]] is the affine map with parameters
/// tau' = b / delta, Sigma' = (A / delta)(A / delta)^*.
inline ComplexCauchy pushforward(const ComplexCauchy& d, const MobiusMap& m) {
  const std::size_t p = d.p();
  if (m.p() != p) throw DimensionMismatch("pushforward: map dimension does not match distribution");

  CMat alpha(p + 1, p + 1);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j <= i; ++j) alpha(i, j) = d.chol()(i, j);
    alpha(i, p) = d.tau()[i];
  }
  alpha(p, p) = 1.0;

  const RQFactors f = rq_decompose(m.matrix() * alpha);
  const double delta = f.r(p, p).real();  // positive real by the phase canon

  CVec tau_out(p);
  CMat growth(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    tau_out[i] = f.r(i, p) / delta;
    for (std::size_t j = i; j < p; ++j) growth(i, j) = f.r(i, j) / delta;
  }
  CMat sigma_out(p, p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < p; ++k) s += growth(i, k) * std::conj(growth(j, k));
      sigma_out(i, j) = s;
    }
  ComplexCauchy out(std::move(tau_out), HermitianPD(std::move(sigma_out)));

  // For affine maps the parameters also follow in closed form
  // (G tau + h, G Sigma G^*); the two routes must agree.
  if (const auto aff = as_affine(m)) {
    const CMat g_lin = aff->linear_part();
    const CVec h = aff->offset();
    CVec tau_cf = mat_vec(g_lin, d.tau());
    for (std::size_t i = 0; i < p; ++i) tau_cf[i] += h[i];
    const CMat sigma_cf = g_lin * d.sigma().matrix() * adjoint(g_lin);
    const double scale_tau = 1.0 + vec_norm(tau_cf);
    const double scale_sigma = 1.0 + max_abs(sigma_cf);
    double err = 0.0;
    for (std::size_t i = 0; i < p; ++i) err = std::max(err, std::abs(out.tau()[i] - tau_cf[i]) / scale_tau);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j)
        err = std::max(err, std::abs(out.sigma().matrix()(i, j) - sigma_cf(i, j)) / scale_sigma);
    if (err > 1e-10) {
      throw Error("pushforward: triangular-factor path disagrees with the affine law (" +
                  std::to_string(err) + ")");
    }
  }
  return out;
}

/// The equivalent real t-distribution with two degrees of freedom on 2p
/// dimensions: location eta, scale matrix W (symmetric positive definite).
class RealT2 {
 public:
  static constexpr int kDof = 2;

  RealT2(std::vector<double> eta, std::vector<double> w)
      : dim_(eta.size()), eta_(std::move(eta)), w_(std::move(w)) {
    if (dim_ == 0 || dim_ % 2 != 0) throw InvalidArgument("RealT2: dimension must be even and positive");
    if (w_.size() != dim_ * dim_) throw DimensionMismatch("RealT2: W size does not match dimension");
    for (double v : eta_)
      if (!std::isfinite(v)) throw InvalidArgument("RealT2: non-finite location");
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        const double a = w_[i * dim_ + j];
        const double b = w_[j * dim_ + i];
        if (!std::isfinite(a) || std::abs(a - b) > kHermitianTol) {
          throw InvalidArgument("RealT2: W is not symmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        }
      }
    factorize();
  }

  std::size_t dim() const { return dim_; }
  const std::vector<double>& eta() const { return eta_; }
  const std::vector<double>& w() const { return w_; }
  double log_det_w() const { return log_det_w_; }

  /// Solves W y = v through the cached real Cholesky factor and returns
  /// v' W^{-1} v.
  double quadratic_form(const std::vector<double>& v) const {
    std::vector<double> y(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      double acc = v[i];
      for (std::size_t j = 0; j < i; ++j) acc -= chol_[i * dim_ + j] * y[j];
      y[i] = acc / chol_[i * dim_ + i];
    }
    double q = 0.0;
    for (double c : y) q += c * c;
    return q;
  }

 private:
  void factorize() {
    chol_.assign(dim_ * dim_, 0.0);
    double max_diag = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) max_diag = std::max(max_diag, w_[k * dim_ + k]);
    log_det_w_ = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      double pivot = w_[j * dim_ + j];
      for (std::size_t k = 0; k < j; ++k) pivot -= chol_[j * dim_ + k] * chol_[j * dim_ + k];
      if (!(pivot > kCholeskyPivotTol * max_diag)) {
        throw NotPositiveDefinite("RealT2: W pivot " + std::to_string(j) + " below guard");
      }
      const double ljj = std::sqrt(pivot);
      chol_[j * dim_ + j] = ljj;
      log_det_w_ += 2.0 * std::log(ljj);
      for (std::size_t i = j + 1; i < dim_; ++i) {
        double acc = w_[i * dim_ + j];
        for (std::size_t k = 0; k < j; ++k) acc -= chol_[i * dim_ + k] * chol_[j * dim_ + k];
        chol_[i * dim_ + j] = acc / ljj;
      }
    }
  }

  std::size_t dim_;
  std::vector<double> eta_;
  std::vector<double> w_;
  std::vector<double> chol_;
  double log_det_w_ = 0.0;
};

/// Real coordinates of a complex point, ordered (Re z_1..Re z_p, Im z_1..Im z_p).
inline std::vector<double> realify(const CVec& z) {
  const std::size_t p = z.size();
  std::vector<double> x(2 * p);
  for (std::size_t j = 0; j < p; ++j) {
    x[j] = z[j].real();
    x[p + j] = z[j].imag();
  }
  return x;
}

/// The 2p-dimensional real t_2 equivalent of d: eta stacks the real and
/// imaginary parts of tau, and W is the realification
/// [[Re Sigma, -Im Sigma], [Im Sigma, Re Sigma]].
inline RealT2 real_embedding(const ComplexCauchy& d) {
  const std::size_t p = d.p();
  const std::size_t n = 2 * p;
  std::vector<double> eta = realify(d.tau());
  std::vector<double> w(n * n);
  const CMat& s = d.sigma().matrix();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double re = s(i, j).real();
      const double im = s(i, j).imag();
      w[i * n + j] = re;
      w[i * n + (p + j)] = -im;
      w[(p + i) * n + j] = im;
      w[(p + i) * n + (p + j)] = re;
    }
  }
  return RealT2(std::move(eta), std::move(w));
}

/// Log-density of the t_2 law at x:
///   -p log(pi) - (1/2) log det W + log(p!) - (p+1) log(1 + (x-eta)' W^{-1} (x-eta)).
inline double real_t2_log_density(const RealT2& rt, const std::vector<double>& x) {
  if (x.size() != rt.dim()) throw DimensionMismatch("real_t2_log_density: point dimension mismatch");
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidArgument("real_t2_log_density: non-finite point");
  std::vector<double> u(rt.dim());
  for (std::size_t i = 0; i < rt.dim(); ++i) u[i] = x[i] - rt.eta()[i];
  const double q = std::max(rt.quadratic_form(u), 0.0);
  const double p = static_cast<double>(rt.dim()) / 2.0;
  return -p * std::log(kPi) - 0.5 * rt.log_det_w() + std::lgamma(p + 1.0) -
         (p + 1.0) * std::log1p(q);
}

/// CDF of the standardized 1-D projection law: F(t) = 1/2 + t / (2 sqrt(1+t^2)).
inline double projection_cdf(double t) {
  return 0.5 + t / (2.0 * std::sqrt(1.0 + t * t));
}

struct ProjectionParams {
  double loc;
  double scale;
};

/// Location and scale of Re(u^* Z) for a unit vector u: the projection is
/// distributed as loc + scale * T with T ~ projection_cdf.
inline ProjectionParams projection_params(const ComplexCauchy& d, const CVec& u) {
  if (u.size() != d.p()) throw DimensionMismatch("projection_params: direction dimension mismatch");
  if (std::abs(vec_norm(u) - 1.0) > 1e-12) {
    throw InvalidArgument("projection_params: direction must have unit norm");
  }
  const double loc = vdot(u, d.tau()).real();
  const CVec v = mat_vec(adjoint(d.chol()), u);
  return {loc, vec_norm(v)};
}

}  // namespace ccauchy

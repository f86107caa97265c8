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
// Statistical verification machinery: one-sample Kolmogorov-Smirnov,
// two-sample energy-distance permutation testing, and integration checks
// that certify the distribution code empirically.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ccauchy/cauchy.hpp"
#include "ccauchy/errors.hpp"
#include "ccauchy/linalg.hpp"
#include "ccauchy/mobius.hpp"
#include "ccauchy/rng.hpp"
#include "ccauchy/threading.hpp"

namespace ccauchy {

/// Outcome of one goodness-of-fit or two-sample run.
struct GofReport {
  std::string test_name;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double statistic = 0.0;
  double p_value = 0.0;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  bool passed = false;  // p_value > alpha
};

inline GofReport make_report(std::string name, std::size_t n1, std::size_t n2, double statistic,
                             double p_value, std::uint64_t seed, double alpha) {
  if (!(p_value >= 0.0 && p_value <= 1.0)) {
    throw InvalidArgument("make_report: p-value outside [0, 1]");
  }
  return GofReport{std::move(name), n1, n2, statistic, p_value, seed, alpha, p_value > alpha};
}

/// Survival function of the asymptotic Kolmogorov distribution,
/// 2 sum_k (-1)^{k-1} exp(-2 k^2 lambda^2), truncated once terms drop below
/// 1e-10 and clamped to [0, 1].
inline double kolmogorov_sf(double lambda) {
  if (lambda <= 0.15) return 1.0;  // sum is 1 to well below double noise
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 1000; ++k) {
    const double term = std::exp(-2.0 * static_cast<double>(k) * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-10) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// One-sample Kolmogorov-Smirnov test of `samples` against `cdf`, with the
/// p-value from the asymptotic distribution of sqrt(n) D_n.
inline GofReport ks_test(std::vector<double> samples, const std::function<double(double)>& cdf,
                         double alpha = 0.01, std::uint64_t seed = 0,
                         std::string name = "ks") {
  const std::size_t n = samples.size();
  if (n < 10) throw InvalidArgument("ks_test: need at least 10 samples");
  std::sort(samples.begin(), samples.end());
  const double dn = static_cast<double>(n);
  double d_stat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(samples[i]);
    if (!(f >= 0.0 && f <= 1.0)) {
      throw InvalidCDF("ks_test: cdf returned " + std::to_string(f));
    }
    const double hi = (static_cast<double>(i) + 1.0) / dn - f;
    const double lo = f - static_cast<double>(i) / dn;
    d_stat = std::max(d_stat, std::max(hi, lo));
  }
  const double p = kolmogorov_sf(std::sqrt(dn) * d_stat);
  return make_report(std::move(name), n, 0, d_stat, p, seed, alpha);
}

namespace detail {

// Pooled pairwise distances in float (64 MB at the largest supported pooled
// size); all sums are accumulated in double.
class DistanceTable {
 public:
  DistanceTable(const std::vector<std::vector<double>>& a,
                const std::vector<std::vector<double>>& b, unsigned threads)
      : n_(a.size() + b.size()), dist_(n_ * n_) {
    const std::size_t dim = a[0].size();
    std::vector<double> flat(n_ * dim);
    for (std::size_t i = 0; i < a.size(); ++i)
      std::copy(a[i].begin(), a[i].end(), flat.begin() + static_cast<std::ptrdiff_t>(i * dim));
    for (std::size_t i = 0; i < b.size(); ++i)
      std::copy(b[i].begin(), b[i].end(),
                flat.begin() + static_cast<std::ptrdiff_t>((a.size() + i) * dim));
    parallel_for(n_, threads, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < n_; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
          const double diff = flat[i * dim + k] - flat[j * dim + k];
          s += diff * diff;
        }
        const float dv = static_cast<float>(std::sqrt(s));
        dist_[i * n_ + j] = dv;
        dist_[j * n_ + i] = dv;
      }
    });
  }

  // Sum of distances over unordered pairs within the (ascending) index set.
  double within_sum(const std::vector<std::uint32_t>& idx) const {
    double s = 0.0;
    for (std::size_t u = 0; u < idx.size(); ++u) {
      const float* row = dist_.data() + static_cast<std::size_t>(idx[u]) * n_;
      for (std::size_t v = u + 1; v < idx.size(); ++v) s += row[idx[v]];
    }
    return s;
  }

  double total_sum() const {
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) s += dist_[i * n_ + j];
    return s;
  }

  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<float> dist_;
};

inline double energy_statistic(double sa, double sb, double scross, std::size_t n1,
                               std::size_t n2) {
  const double d1 = static_cast<double>(n1);
  const double d2 = static_cast<double>(n2);
  // means over ordered pairs (the diagonal contributes zero)
  return 2.0 * scross / (d1 * d2) - 2.0 * sa / (d1 * d1) - 2.0 * sb / (d2 * d2);
}

}  // namespace detail

/// Two-sample energy-distance test with a permutation p-value
/// ((k + 1)/(R + 1) correction). Valid here because the family has finite
/// first moments. Deterministic per seed; permutations may be evaluated in
/// parallel without changing the result.
inline GofReport energy_test(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b,
                             std::size_t n_permutations = 499, std::uint64_t seed = 0,
                             double alpha = 0.01, std::string name = "energy",
                             unsigned threads = 0) {
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  if (n1 < 50 || n2 < 50) throw InvalidArgument("energy_test: need at least 50 points per sample");
  const std::size_t dim = a[0].size();
  if (dim < 1) throw InvalidArgument("energy_test: dimension must be at least 1");
  for (const auto& row : a)
    if (row.size() != dim) throw DimensionMismatch("energy_test: ragged sample a");
  for (const auto& row : b)
    if (row.size() != dim) throw DimensionMismatch("energy_test: ragged sample b");
  if (n_permutations < 199) throw InvalidArgument("energy_test: need at least 199 permutations");
  if (threads == 0) threads = thread_budget();

  const detail::DistanceTable table(a, b, threads);
  const std::size_t n = table.size();
  const double total = table.total_sum();

  std::vector<std::uint32_t> ia(n1);
  std::vector<std::uint32_t> ib(n2);
  std::iota(ia.begin(), ia.end(), 0u);
  std::iota(ib.begin(), ib.end(), static_cast<std::uint32_t>(n1));
  const double sa_obs = table.within_sum(ia);
  const double sb_obs = table.within_sum(ib);
  const double stat_obs = detail::energy_statistic(sa_obs, sb_obs, total - sa_obs - sb_obs, n1, n2);

  std::vector<std::uint8_t> exceeds(n_permutations, 0);
  detail::parallel_for(n_permutations, threads, [&](std::size_t r) {
    SplitMix64 rng(stream_seed(seed, r, salt::kPermutation));
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    for (std::size_t i = n - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng.next_u64() % (i + 1));
      std::swap(idx[i], idx[j]);
    }
    std::vector<std::uint32_t> ga(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n1));
    std::vector<std::uint32_t> gb(idx.begin() + static_cast<std::ptrdiff_t>(n1), idx.end());
    std::sort(ga.begin(), ga.end());
    std::sort(gb.begin(), gb.end());
    const double sa = table.within_sum(ga);
    const double sb = table.within_sum(gb);
    const double stat = detail::energy_statistic(sa, sb, total - sa - sb, n1, n2);
    exceeds[r] = stat >= stat_obs ? 1 : 0;
  });
  std::size_t k = 0;
  for (std::uint8_t e : exceeds) k += e;
  const double p = static_cast<double>(k + 1) / static_cast<double>(n_permutations + 1);
  return make_report(std::move(name), n1, n2, stat_obs, p, seed, alpha);
}

/// Total mass of a density over the complex plane (p = 1 only): polar tensor
/// quadrature in standardized coordinates over |w| <= r_max, plus the
/// analytic remainder 1/(1 + r_max^2) of the standard form.
inline double quad_mass_p1_fn(const std::function<double(cplx)>& density, cplx tau,
                              cplx chol_scalar, double r_max = 200.0, std::size_t n_r = 2000,
                              std::size_t n_theta = 64) {
  if (n_r < 2 || n_theta < 4) throw InvalidArgument("quad_mass_p1_fn: grid too small");
  if (n_r % 2 != 0) ++n_r;  // composite Simpson needs an even interval count
  const double jac = std::norm(chol_scalar);
  const double hr = r_max / static_cast<double>(n_r);
  const double ht = 2.0 * kPi / static_cast<double>(n_theta);
  double disk = 0.0;
  for (std::size_t t = 0; t < n_theta; ++t) {
    const double theta = ht * static_cast<double>(t);
    const cplx dir = std::polar(1.0, theta);
    double radial = 0.0;
    for (std::size_t k = 0; k <= n_r; ++k) {
      const double r = hr * static_cast<double>(k);
      const double f = density(tau + chol_scalar * (r * dir)) * jac * r;
      const double w = (k == 0 || k == n_r) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
      radial += w * f;
    }
    disk += radial * hr / 3.0;
  }
  disk *= ht;
  return disk + 1.0 / (1.0 + r_max * r_max);
}

/// quad_mass_p1_fn applied to the distribution's own density. The result is
/// 1 up to quadrature error when the density is correctly normalized.
inline double quad_mass_p1(const ComplexCauchy& d, double r_max = 200.0, std::size_t n_r = 2000,
                           std::size_t n_theta = 64) {
  if (d.p() != 1) throw DimensionMismatch("quad_mass_p1: distribution must have p = 1");
  const auto density = [&d](cplx z) { return std::exp(log_density(d, CVec{z})); };
  return quad_mass_p1_fn(density, d.tau()[0], d.chol()(0, 0), r_max, n_r, n_theta);
}

struct MassEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Importance-sampling mass of exp(target_log_density) under a proposal from
/// this family: mean of density ratios with the leave-one-out (jackknife)
/// standard error, which for a plain mean reduces to sd/sqrt(n).
inline MassEstimate mc_mass_fn(const std::function<double(const CVec&)>& target_log_density,
                               const ComplexCauchy& proposal, std::size_t n, std::uint64_t seed) {
  if (n < 10000) throw InvalidArgument("mc_mass_fn: need at least 10^4 draws");
  const std::vector<CVec> draws = sample(proposal, n, seed);
  double mean = 0.0;
  double m2 = 0.0;
  std::size_t count = 0;
  for (const CVec& z : draws) {
    const double w = std::exp(target_log_density(z) - log_density(proposal, z));
    ++count;
    const double delta = w - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (w - mean);
  }
  const double dn = static_cast<double>(n);
  const double se = std::sqrt(m2 / (dn * (dn - 1.0)));
  return {mean, se};
}

/// Monte Carlo normalization check for any p: the proposal is the standard
/// member shifted to the target's location, whose tails match the target's.
inline MassEstimate mc_mass(const ComplexCauchy& d, std::size_t n, std::uint64_t seed) {
  const ComplexCauchy proposal(d.tau(), HermitianPD::identity(d.p()));
  return mc_mass_fn([&d](const CVec& z) { return log_density(d, z); }, proposal, n, seed);
}

/// Empirical certificate that the pushforward law matches the mapped
/// distribution: n draws of d mapped through m against n draws of
/// pushforward(d, m), compared by the energy test on their real coordinates.
/// A PoleHit during mapping propagates; under valid inputs the polar set has
/// probability zero, so a hit indicates a bug.
inline GofReport closure_experiment(const ComplexCauchy& d, const MobiusMap& m, std::size_t n,
                                    std::uint64_t seed, double alpha = 0.01,
                                    std::size_t n_permutations = 499, unsigned threads = 0) {
  if (n < 500) throw InvalidArgument("closure_experiment: need at least 500 draws per side");
  const std::uint64_t seed_a = stream_seed(seed, 1, salt::kClosure);
  const std::uint64_t seed_b = stream_seed(seed, 2, salt::kClosure);
  const std::uint64_t seed_perm = stream_seed(seed, 3, salt::kClosure);

  std::vector<std::vector<double>> xa;
  xa.reserve(n);
  for (const CVec& z : sample(d, n, seed_a)) xa.push_back(realify(ccauchy::apply(m, z)));

  const ComplexCauchy mapped = pushforward(d, m);
  std::vector<std::vector<double>> xb;
  xb.reserve(n);
  for (const CVec& z : sample(mapped, n, seed_b)) xb.push_back(realify(z));

  GofReport report = energy_test(xa, xb, n_permutations, seed_perm, alpha, "closure", threads);
  report.seed = seed;
  return report;
}

/// Exact binomial pmf of k successes out of n at success probability prob.
inline double binomial_pmf(std::size_t k, std::size_t n, double prob) {
  const double nk = std::lgamma(static_cast<double>(n) + 1.0) -
                    std::lgamma(static_cast<double>(k) + 1.0) -
                    std::lgamma(static_cast<double>(n - k) + 1.0);
  return std::exp(nk + static_cast<double>(k) * std::log(prob) +
                  static_cast<double>(n - k) * std::log1p(-prob));
}

/// Central interval [lo, hi] holding at least `coverage` of the Binomial(n,
/// prob) mass, with at most (1-coverage)/2 in each tail.
inline std::pair<std::size_t, std::size_t> binomial_band(std::size_t n, double prob,
                                                         double coverage = 0.99) {
  const double tail = (1.0 - coverage) / 2.0;
  double cum = 0.0;
  std::size_t lo = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double next = cum + binomial_pmf(k, n, prob);
    if (next > tail) {
      lo = k;
      break;
    }
    cum = next;
  }
  double cum_hi = 0.0;
  std::size_t hi = n;
  for (std::size_t k = 0; k <= n; ++k) {
    cum_hi += binomial_pmf(k, n, prob);
    if (cum_hi >= 1.0 - tail) {
      hi = k;
      break;
    }
  }
  return {lo, hi};
}

}  // namespace ccauchy

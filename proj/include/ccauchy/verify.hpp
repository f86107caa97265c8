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
// The verification suite: every distributional claim the library makes,
// runnable as a batch. Each check produces one row; a row passes or fails
// at a tolerance fixed here. The CLI `verify` command and the acceptance
// binary both run this suite.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ccauchy/cauchy.hpp"
#include "ccauchy/io.hpp"
#include "ccauchy/linalg.hpp"
#include "ccauchy/mobius.hpp"
#include "ccauchy/rng.hpp"
#include "ccauchy/stats.hpp"
#include "ccauchy/threading.hpp"

namespace ccauchy {

struct CheckRow {
  std::string test;         // dotted id; the first segment names the group
  int p = 0;                // dimension, 0 when not applicable
  std::uint64_t seed = 0;
  double statistic = 0.0;   // the measured quantity the verdict is based on
  double p_value = std::numeric_limits<double>::quiet_NaN();  // when applicable
  bool passed = false;
};

struct VerifyOptions {
  std::string only;          // substring filter on group names; empty = all
  std::uint64_t seed = 17;   // master seed for every derived stream
  double alpha = 0.01;
  unsigned threads = 0;      // 0 = use thread_budget()
};

namespace detail {

inline bool group_selected(const VerifyOptions& opt, const std::string& group) {
  return opt.only.empty() || group.find(opt.only) != std::string::npos;
}

inline ComplexCauchy verify_random_cauchy(std::size_t p, std::uint64_t seed) {
  SplitMix64 rng(stream_seed(seed, 0, 0x7A55));
  CVec tau(p);
  for (auto& t : tau) t = 2.0 * rng.next_complex_gaussian();
  const CMat a = random_invertible(p, seed);
  return ComplexCauchy(std::move(tau), HermitianPD(a * adjoint(a)));
}

inline double verify_param_distance(const ComplexCauchy& a, const ComplexCauchy& b) {
  double err = 0.0;
  const double tau_scale = 1.0 + vec_norm(a.tau());
  for (std::size_t i = 0; i < a.p(); ++i)
    err = std::max(err, std::abs(a.tau()[i] - b.tau()[i]) / tau_scale);
  const double sig_scale = 1.0 + max_abs(a.sigma().matrix());
  for (std::size_t i = 0; i < a.p(); ++i)
    for (std::size_t j = 0; j < a.p(); ++j)
      err = std::max(err,
                     std::abs(a.sigma().matrix()(i, j) - b.sigma().matrix()(i, j)) / sig_scale);
  return err;
}

// --- criterion groups -------------------------------------------------

inline void check_normalization(const VerifyOptions& opt, std::vector<CheckRow>& rows) {
  if (!group_selected(opt, "normalization")) return;
  {
    const double mass = quad_mass_p1(ComplexCauchy::standard(1));
    rows.push_back({"normalization.quad.standard", 1, opt.seed, mass, std::nan(""),
                    std::abs(mass - 1.0) <= 1e-3});
  }
  {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 10; ++k) {
      const ComplexCauchy d = verify_random_cauchy(1, stream_seed(opt.seed, k, 0x4E01));
      worst = std::max(worst, std::abs(quad_mass_p1(d) - 1.0));
    }
    rows.push_back({"normalization.quad.random", 1, opt.seed, worst, std::nan(""), worst <= 1e-3});
  }
  for (std::size_t p = 2; p <= 3; ++p) {
    const ComplexCauchy d = verify_random_cauchy(p, stream_seed(opt.seed, p, 0x4E02));
    const MassEstimate est = mc_mass(d, 100000, stream_seed(opt.seed, p, 0x4E03));
    const bool ok = std::abs(est.estimate - 1.0) <= 3.0 * est.standard_error;
    rows.push_back({"normalization.mc.p" + std::to_string(p), static_cast<int>(p), opt.seed,
                    est.estimate, std::nan(""), ok});
  }
}

inline void check_sampler_ks(const VerifyOptions& opt, std::vector<CheckRow>& rows,
                             unsigned threads) {
  if (!group_selected(opt, "sampler-ks")) return;
  const std::size_t runs = 100;
  const auto band = binomial_band(runs, opt.alpha);
  for (std::size_t p = 1; p <= 3; ++p) {
    std::vector<std::uint8_t> rejected(runs, 0);
    parallel_for(runs, threads, [&](std::size_t run) {
      const std::uint64_t run_seed = stream_seed(opt.seed, 100 * p + run, 0x4B53);
      const ComplexCauchy d = verify_random_cauchy(p, run_seed);
      SplitMix64 rng(stream_seed(run_seed, 1, 0x4B54));
      CVec u(p);
      for (auto& c : u) c = rng.next_complex_gaussian();
      const double norm = vec_norm(u);
      for (auto& c : u) c /= norm;
      const ProjectionParams params = projection_params(d, u);
      std::vector<double> proj;
      proj.reserve(100000);
      for (const CVec& z : sample(d, 100000, stream_seed(run_seed, 2, 0x4B55))) {
        proj.push_back((vdot(u, z).real() - params.loc) / params.scale);
      }
      const GofReport r = ks_test(std::move(proj), projection_cdf, opt.alpha, run_seed);
      rejected[run] = r.passed ? 0 : 1;
    });
    std::size_t rejections = 0;
    for (const auto r : rejected) rejections += r;
    const bool ok = rejections >= band.first && rejections <= band.second;
    rows.push_back({"sampler-ks.p" + std::to_string(p), static_cast<int>(p), opt.seed,
                    static_cast<double>(rejections), std::nan(""), ok});
  }
}

inline void check_sphere_path(const VerifyOptions& opt, std::vector<CheckRow>& rows,
                              unsigned threads) {
  if (!group_selected(opt, "sphere-path")) return;
  const std::size_t runs = 100;
  const std::size_t n = 2000;
  const std::size_t p = 2;
  std::vector<std::uint8_t> passed_run(runs, 0);
  parallel_for(runs, threads, [&](std::size_t run) {
    const std::uint64_t run_seed = stream_seed(opt.seed, run, 0x5350);
    std::vector<std::vector<double>> a;
    a.reserve(n);
    for (const SpherePoint& s : sample_sphere(p, n, stream_seed(run_seed, 1, 0x5351))) {
      a.push_back(realify(sphere_to_ratio(s)));
    }
    std::vector<std::vector<double>> b;
    b.reserve(n);
    for (const CVec& z : sample(ComplexCauchy::standard(p), n, stream_seed(run_seed, 2, 0x5352))) {
      b.push_back(realify(z));
    }
    const GofReport r =
        energy_test(a, b, 199, stream_seed(run_seed, 3, 0x5353), opt.alpha, "sphere-path", 1);
    passed_run[run] = r.passed ? 1 : 0;
  });
  std::size_t passes = 0;
  for (const auto v : passed_run) passes += v;
  rows.push_back({"sphere-path.energy", static_cast<int>(p), opt.seed,
                  static_cast<double>(passes), std::nan(""), passes >= 95});
}

inline void check_closure(const VerifyOptions& opt, std::vector<CheckRow>& rows,
                          unsigned threads) {
  if (!group_selected(opt, "closure")) return;
  {
    const std::size_t trials = 50;
    std::vector<std::uint8_t> passed_trial(trials, 0);
    parallel_for(trials, threads, [&](std::size_t t) {
      const std::size_t p = 1 + t % 3;
      const std::uint64_t trial_seed = stream_seed(opt.seed, t, 0x434C);
      const ComplexCauchy d = verify_random_cauchy(p, trial_seed);
      const MobiusMap g(random_invertible(p + 1, stream_seed(trial_seed, 1, 0x434D)));
      const GofReport r = closure_experiment(d, g, 500, trial_seed, opt.alpha, 499, 1);
      passed_trial[t] = r.passed ? 1 : 0;
    });
    std::size_t passes = 0;
    for (const auto v : passed_trial) passes += v;
    rows.push_back({"closure.random-maps", 0, opt.seed, static_cast<double>(passes), std::nan(""),
                    passes >= 45});
  }
  {
    double worst = 0.0;
    for (std::uint64_t k = 0; k < 100; ++k) {
      const std::size_t p = 1 + k % 3;
      const std::uint64_t s = stream_seed(opt.seed, k, 0x4146);
      const ComplexCauchy d = verify_random_cauchy(p, s);
      const CMat g_lin = random_invertible(p, stream_seed(s, 1, 0x4147));
      SplitMix64 rng(stream_seed(s, 2, 0x4148));
      CVec h(p);
      for (auto& c : h) c = rng.next_complex_gaussian();
      const MobiusMap m = affine_from_parts(g_lin, h).as_mobius();

      const ComplexCauchy via_rq = pushforward(d, m);
      CVec tau_cf = mat_vec(g_lin, d.tau());
      for (std::size_t i = 0; i < p; ++i) tau_cf[i] += h[i];
      const CMat sigma_cf = g_lin * d.sigma().matrix() * adjoint(g_lin);
      const ComplexCauchy closed_form(std::move(tau_cf), HermitianPD(sigma_cf));
      worst = std::max(worst, verify_param_distance(closed_form, via_rq));
    }
    rows.push_back({"closure.affine-law", 0, opt.seed, worst, std::nan(""), worst <= 1e-10});
  }
}

inline void check_rq(const VerifyOptions& opt, std::vector<CheckRow>& rows) {
  if (!group_selected(opt, "rq")) return;
  double worst_resid = 0.0;
  double worst_unit = 0.0;
  double worst_tri = 0.0;
  bool canonical = true;
  bool repeatable = true;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const std::size_t n = 1 + k % 6;
    const CMat m = random_invertible(n, stream_seed(opt.seed, k, 0x5251));
    const RQFactors f = rq_decompose(m);
    const RQFactors f2 = rq_decompose(m);
    repeatable = repeatable && f.r == f2.r && f.q == f2.q;

    const CMat recon = f.r * f.q;
    worst_resid = std::max(worst_resid, max_abs(recon - m) / max_abs(m));
    worst_unit = std::max(worst_unit, max_abs(f.q * adjoint(f.q) - CMat::identity(n)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) worst_tri = std::max(worst_tri, std::abs(f.r(i, j)));
      canonical = canonical && f.r(i, i).real() > 0.0 && f.r(i, i).imag() == 0.0;
    }
  }
  rows.push_back({"rq.residual", 0, opt.seed, worst_resid, std::nan(""), worst_resid <= 1e-10});
  rows.push_back({"rq.unitarity", 0, opt.seed, worst_unit, std::nan(""), worst_unit <= 1e-12});
  rows.push_back({"rq.triangularity", 0, opt.seed, worst_tri, std::nan(""), worst_tri <= 1e-12});
  rows.push_back({"rq.canonical-diagonal", 0, opt.seed, canonical ? 1.0 : 0.0, std::nan(""),
                  canonical});
  rows.push_back({"rq.bitwise-repeat", 0, opt.seed, repeatable ? 1.0 : 0.0, std::nan(""),
                  repeatable});
}

inline void check_embedding(const VerifyOptions& opt, std::vector<CheckRow>& rows) {
  if (!group_selected(opt, "embedding")) return;
  double worst_det = 0.0;
  for (std::size_t p = 1; p <= 3; ++p) {
    double worst = 0.0;
    for (std::uint64_t inst = 0; inst < 10; ++inst) {
      const std::uint64_t s = stream_seed(opt.seed, 10 * p + inst, 0x4532);
      const ComplexCauchy d = verify_random_cauchy(p, s);
      const RealT2 rt = real_embedding(d);

      const double det_w = std::exp(rt.log_det_w());
      const double det_sigma = det(d.sigma().matrix()).real();
      worst_det = std::max(worst_det, std::abs(det_w - det_sigma * det_sigma) / det_w);

      SplitMix64 rng(stream_seed(s, 1, 0x4533));
      for (int k = 0; k < 1000; ++k) {
        CVec z(p);
        for (auto& c : z) c = 4.0 * rng.next_complex_gaussian();
        const double diff = std::abs(log_density(d, z) - real_t2_log_density(rt, realify(z)));
        worst = std::max(worst, diff);
      }
    }
    rows.push_back({"embedding.pointwise.p" + std::to_string(p), static_cast<int>(p), opt.seed,
                    worst, std::nan(""), worst <= 1e-10});
  }
  rows.push_back({"embedding.det-identity", 0, opt.seed, worst_det, std::nan(""),
                  worst_det <= 1e-10});
}

inline void check_group_laws(const VerifyOptions& opt, std::vector<CheckRow>& rows,
                             unsigned threads) {
  if (!group_selected(opt, "group-laws")) return;
  for (std::size_t p = 1; p <= 3; ++p) {
    const std::size_t count = 1000;
    std::vector<double> roundtrip(count, 0.0);
    std::vector<double> compat(count, 0.0);
    parallel_for(count, threads, [&](std::size_t k) {
      const std::uint64_t s = stream_seed(opt.seed, 1000 * p + k, 0x474C);
      const MobiusMap m(random_invertible(p + 1, s));
      roundtrip[k] = proj_distance(compose(m, invert(m)), MobiusMap::identity(p));

      const MobiusMap m2(random_invertible(p + 1, stream_seed(s, 1, 0x474D)));
      SplitMix64 rng(stream_seed(s, 2, 0x474E));
      CVec z(p);
      for (auto& c : z) c = rng.next_complex_gaussian();
      const MobiusMap comp = compose(m, m2);
      const auto den = [&](const MobiusMap& mm, const CVec& zz) {
        cplx acc = mm.matrix()(p, p);
        for (std::size_t j = 0; j < p; ++j) acc += mm.matrix()(p, j) * zz[j];
        return std::abs(acc);
      };
      if (den(m2, z) < 1e-6 || den(comp, z) < 1e-6) return;
      const CVec inner = ccauchy::apply(m2, z);
      if (den(m, inner) < 1e-6) return;
      const CVec lhs = ccauchy::apply(comp, z);
      const CVec rhs = ccauchy::apply(m, inner);
      double diff = 0.0;
      for (std::size_t i = 0; i < p; ++i) diff += std::norm(lhs[i] - rhs[i]);
      compat[k] = std::sqrt(diff) / (1.0 + vec_norm(rhs));
    });
    double worst_rt = 0.0;
    double worst_cp = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      worst_rt = std::max(worst_rt, roundtrip[k]);
      worst_cp = std::max(worst_cp, compat[k]);
    }
    rows.push_back({"group-laws.roundtrip.p" + std::to_string(p), static_cast<int>(p), opt.seed,
                    worst_rt, std::nan(""), worst_rt <= 1e-10});
    rows.push_back({"group-laws.compat.p" + std::to_string(p), static_cast<int>(p), opt.seed,
                    worst_cp, std::nan(""), worst_cp <= 1e-9});
  }
}

inline void check_functoriality(const VerifyOptions& opt, std::vector<CheckRow>& rows) {
  if (!group_selected(opt, "functoriality")) return;
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const std::size_t p = 1 + k % 3;
    const std::uint64_t s = stream_seed(opt.seed, k, 0x4655);
    const ComplexCauchy d = verify_random_cauchy(p, s);
    const MobiusMap g(random_invertible(p + 1, stream_seed(s, 1, 0x4656)));
    const MobiusMap h(random_invertible(p + 1, stream_seed(s, 2, 0x4657)));
    const ComplexCauchy lhs = pushforward(pushforward(d, g), h);
    const ComplexCauchy rhs = pushforward(d, compose(h, g));
    worst = std::max(worst, verify_param_distance(lhs, rhs));
  }
  rows.push_back({"functoriality.parameters", 0, opt.seed, worst, std::nan(""), worst <= 1e-8});
}

inline void check_fixed_points(const VerifyOptions& opt, std::vector<CheckRow>& rows) {
  if (!group_selected(opt, "fixed-points")) return;
  {
    const MobiusMap inv(CMat(2, 2, {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)}));
    const ComplexCauchy out = pushforward(ComplexCauchy::standard(1), inv);
    const double err = std::max(std::abs(out.tau()[0]),
                                std::abs(out.sigma().matrix()(0, 0) - cplx(1, 0)));
    rows.push_back({"fixed-points.inversion", 1, opt.seed, err, std::nan(""), err <= 1e-12});
  }
  {
    const ComplexCauchy d = verify_random_cauchy(2, stream_seed(opt.seed, 1, 0x4650));
    const double err = verify_param_distance(d, pushforward(d, MobiusMap::identity(2)));
    rows.push_back({"fixed-points.identity", 2, opt.seed, err, std::nan(""), err <= 1e-12});
  }
  {
    const double v1 = log_density(ComplexCauchy::standard(1), {cplx(0, 0)});
    const double v2 = log_density(ComplexCauchy::standard(2), {cplx(0, 0), cplx(0, 0)});
    const double err = std::max(std::abs(v1 + std::log(kPi)),
                                std::abs(v2 - (std::log(2.0) - 2.0 * std::log(kPi))));
    rows.push_back({"fixed-points.density-values", 0, opt.seed, err, std::nan(""), err <= 1e-12});
  }
}

inline void check_roundtrip(const VerifyOptions& opt, std::vector<CheckRow>& rows) {
  if (!group_selected(opt, "roundtrip")) return;
  {
    const ComplexCauchy d = verify_random_cauchy(2, stream_seed(opt.seed, 1, 0x5254));
    std::ostringstream csv1;
    std::ostringstream csv2;
    write_samples_csv(csv1, sample(d, 200, opt.seed), 2);
    write_samples_csv(csv2, sample(d, 200, opt.seed), 2);
    const bool identical = csv1.str() == csv2.str();
    rows.push_back({"roundtrip.csv-determinism", 2, opt.seed, identical ? 1.0 : 0.0, std::nan(""),
                    identical});
  }
  {
    bool exact = true;
    for (std::uint64_t k = 0; k < 20; ++k) {
      const std::size_t p = 1 + k % 3;
      const std::uint64_t s = stream_seed(opt.seed, k, 0x5255);
      const ComplexCauchy d = verify_random_cauchy(p, s);
      const MobiusMap g(random_invertible(p + 1, stream_seed(s, 1, 0x5256)));
      const ComplexCauchy out = pushforward(d, g);
      const ComplexCauchy back = dist_from_json_text(dist_to_json(out));
      for (std::size_t i = 0; i < p; ++i) exact = exact && back.tau()[i] == out.tau()[i];
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
          exact = exact && back.sigma().matrix()(i, j) == out.sigma().matrix()(i, j);
    }
    rows.push_back({"roundtrip.pushforward-json", 0, opt.seed, exact ? 1.0 : 0.0, std::nan(""),
                    exact});
  }
}

}  // namespace detail

/// Runs the verification suite (optionally restricted to groups whose name
/// contains opt.only) and returns one row per check.
inline std::vector<CheckRow> run_verification(const VerifyOptions& opt) {
  const unsigned threads = opt.threads == 0 ? thread_budget() : opt.threads;
  std::vector<CheckRow> rows;
  detail::check_normalization(opt, rows);
  detail::check_sampler_ks(opt, rows, threads);
  detail::check_sphere_path(opt, rows, threads);
  detail::check_closure(opt, rows, threads);
  detail::check_rq(opt, rows);
  detail::check_embedding(opt, rows);
  detail::check_group_laws(opt, rows, threads);
  detail::check_functoriality(opt, rows);
  detail::check_fixed_points(opt, rows);
  detail::check_roundtrip(opt, rows);
  return rows;
}

/// Summary CSV: test,p,seed,statistic,p_value,passed. NaN fields print empty.
inline std::string verification_csv(const std::vector<CheckRow>& rows) {
  std::string out = "test,p,seed,statistic,p_value,passed\n";
  for (const CheckRow& r : rows) {
    out += r.test + "," + std::to_string(r.p) + "," + std::to_string(r.seed) + ",";
    out += std::isnan(r.statistic) ? "" : format_double(r.statistic);
    out += ",";
    out += std::isnan(r.p_value) ? "" : format_double(r.p_value);
    out += ",";
    out += r.passed ? "true" : "false";
    out += "\n";
  }
  return out;
}

}  // namespace ccauchy

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

#include "ccauchy/mobius.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <vector>

namespace {

using ccauchy::AffineMap;
using ccauchy::CMat;
using ccauchy::cplx;
using ccauchy::CVec;
using ccauchy::MobiusMap;

MobiusMap inversion_p1() {
  return MobiusMap(CMat(2, 2, {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)}));
}

MobiusMap random_map(std::size_t p, std::uint64_t seed) {
  return MobiusMap(ccauchy::random_invertible(p + 1, seed));
}

CVec random_point(std::size_t p, std::uint64_t seed) {
  ccauchy::SplitMix64 rng(ccauchy::stream_seed(seed, 0, 0xD07));
  CVec z(p);
  for (auto& c : z) c = rng.next_complex_gaussian();
  return z;
}

double denominator_mag(const MobiusMap& m, const CVec& z) {
  const CMat& g = m.matrix();
  const std::size_t p = m.p();
  cplx den = g(p, p);
  for (std::size_t j = 0; j < p; ++j) den += g(p, j) * z[j];
  return std::abs(den);
}

double vec_diff(const CVec& a, const CVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

TEST(Apply, IdentityFixesEveryPoint) {
  const MobiusMap id = MobiusMap::identity(3);
  const CVec z = random_point(3, 1);
  const CVec w = ccauchy::apply(id, z);
  EXPECT_LE(vec_diff(w, z), 1e-14);
}

TEST(Apply, ScalarInversion) {
  const CVec w = ccauchy::apply(inversion_p1(), {cplx(2, 0)});
  EXPECT_LE(std::abs(w[0] - cplx(0.5, 0)), 1e-15);
}

TEST(Apply, AffineCaseMatchesHandEvaluation) {
  const CMat g(3, 3,
               {cplx(1, 0), cplx(0, 0), cplx(1, 0),    //
                cplx(0, 0), cplx(1, 0), cplx(2, 0),    //
                cplx(0, 0), cplx(0, 0), cplx(1, 0)});
  const CVec w = ccauchy::apply(MobiusMap(g), {cplx(3, 0), cplx(0, 4)});
  EXPECT_LE(std::abs(w[0] - cplx(4, 0)), 1e-14);
  EXPECT_LE(std::abs(w[1] - cplx(2, 4)), 1e-14);
}

TEST(Apply, PoleRaises) {
  EXPECT_THROW(ccauchy::apply(inversion_p1(), {cplx(0, 0)}), ccauchy::PoleHit);
}

TEST(Apply, ScalarCaseMatchesClassicalFormulaExactly) {
  const MobiusMap m = random_map(1, 31);
  const CMat& g = m.matrix();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const cplx z = random_point(1, 100 + s)[0];
    const cplx expected = (g(0, 0) * z + g(0, 1)) / (g(1, 0) * z + g(1, 1));
    const CVec w = ccauchy::apply(m, {z});
    EXPECT_EQ(w[0], expected);
  }
}

TEST(Compose, IdentityIsNeutral) {
  const MobiusMap m = random_map(2, 5);
  EXPECT_LE(ccauchy::proj_distance(ccauchy::compose(m, MobiusMap::identity(2)), m), 1e-12);
  EXPECT_LE(ccauchy::proj_distance(ccauchy::compose(MobiusMap::identity(2), m), m), 1e-12);
}

TEST(Compose, InverseGivesIdentity) {
  const MobiusMap m = random_map(2, 8);
  EXPECT_LE(ccauchy::proj_distance(ccauchy::compose(m, ccauchy::invert(m)), MobiusMap::identity(2)),
            1e-10);
}

TEST(Compose, MatchesPointwiseComposition) {
  const MobiusMap inv = inversion_p1();
  const MobiusMap shift = MobiusMap(CMat(2, 2, {cplx(1, 0), cplx(1, 0), cplx(0, 0), cplx(1, 0)}));
  const CVec w = ccauchy::apply(ccauchy::compose(inv, shift), {cplx(1, 0)});
  EXPECT_LE(std::abs(w[0] - cplx(0.5, 0)), 1e-14);
}

TEST(Invert, IdentityAndScaling) {
  EXPECT_LE(ccauchy::proj_distance(ccauchy::invert(MobiusMap::identity(2)), MobiusMap::identity(2)),
            1e-14);
  const MobiusMap doubling(CMat(2, 2, {cplx(2, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0)}));
  const CVec w = ccauchy::apply(ccauchy::invert(doubling), {cplx(4, 0)});
  EXPECT_LE(std::abs(w[0] - cplx(2, 0)), 1e-14);
}

TEST(Invert, RoundTripsRandomPoints) {
  const MobiusMap m = random_map(2, 3);
  const MobiusMap mi = ccauchy::invert(m);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const CVec z = random_point(2, 200 + s);
    const CVec back = ccauchy::apply(mi, ccauchy::apply(m, z));
    EXPECT_LE(vec_diff(back, z), 1e-10 * (1.0 + ccauchy::vec_norm(z))) << "point " << s;
  }
}

TEST(AsAffine, RecognizesTranslation) {
  const MobiusMap m(CMat(2, 2, {cplx(1, 0), cplx(5, 0), cplx(0, 0), cplx(1, 0)}));
  const auto aff = ccauchy::as_affine(m);
  ASSERT_TRUE(aff.has_value());
  EXPECT_LE(std::abs(aff->linear_part()(0, 0) - cplx(1, 0)), 1e-14);
  EXPECT_LE(std::abs(aff->offset()[0] - cplx(5, 0)), 1e-14);
}

TEST(AsAffine, RejectsInversion) {
  EXPECT_FALSE(ccauchy::as_affine(inversion_p1()).has_value());
}

TEST(AsAffine, RoundTripsConstructorParts) {
  const CMat linear = ccauchy::random_invertible(3, 21);
  const CVec offset = random_point(3, 22);
  const AffineMap built = ccauchy::affine_from_parts(linear, offset);
  const auto view = ccauchy::as_affine(built.as_mobius());
  ASSERT_TRUE(view.has_value());
  double lin_err = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      lin_err = std::max(lin_err, std::abs(view->linear_part()(i, j) - linear(i, j)));
  EXPECT_LE(lin_err, 1e-12 * ccauchy::max_abs(linear));
  EXPECT_LE(vec_diff(view->offset(), offset), 1e-12 * (1.0 + ccauchy::vec_norm(offset)));
}

TEST(AffineFromParts, IdentityParts) {
  const AffineMap a = ccauchy::affine_from_parts(CMat::identity(2), CVec(2, cplx(0, 0)));
  EXPECT_LE(ccauchy::proj_distance(a.as_mobius(), MobiusMap::identity(2)), 1e-14);
}

TEST(AffineFromParts, ScalarEvaluation) {
  const AffineMap a =
      ccauchy::affine_from_parts(CMat(1, 1, {cplx(2, 0)}), {cplx(3, 0)});
  const CVec w = ccauchy::apply(a.as_mobius(), {cplx(1, 0)});
  EXPECT_LE(std::abs(w[0] - cplx(5, 0)), 1e-14);
}

TEST(AffineFromParts, ApplyThenInvertRoundTrips) {
  const CMat linear = ccauchy::random_invertible(2, 5);
  const CVec offset = random_point(2, 6);
  const MobiusMap m = ccauchy::affine_from_parts(linear, offset).as_mobius();
  const MobiusMap mi = ccauchy::invert(m);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const CVec z = random_point(2, 300 + s);
    EXPECT_LE(vec_diff(ccauchy::apply(mi, ccauchy::apply(m, z)), z),
              1e-10 * (1.0 + ccauchy::vec_norm(z)));
  }
}

TEST(ProjDistance, ZeroOnSelfAndScaledCopies) {
  const MobiusMap m = random_map(2, 13);
  EXPECT_EQ(ccauchy::proj_distance(m, m), 0.0);
  const MobiusMap scaled(cplx(2, 0) * m.matrix());
  EXPECT_LE(ccauchy::proj_distance(m, scaled), 1e-12);
}

TEST(ProjDistance, SeparatesIdentityFromInversion) {
  const double dist = ccauchy::proj_distance(MobiusMap::identity(1), inversion_p1());
  EXPECT_GT(dist, 0.5);
  // Independent dense-grid minimization as the oracle.
  const MobiusMap m1 = MobiusMap::identity(1);
  const MobiusMap m2 = inversion_p1();
  const CMat& g1 = m1.matrix();
  const CMat& g2 = m2.matrix();
  double oracle = 1e300;
  for (int k = 0; k < 200000; ++k) {
    const cplx ph = std::polar(1.0, 2.0 * ccauchy::kPi * k / 200000.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) worst = std::max(worst, std::abs(g1(i, j) - ph * g2(i, j)));
    oracle = std::min(oracle, worst);
  }
  EXPECT_NEAR(dist, oracle, 1e-6);
}

TEST(GroupLaws, InverseComposesToIdentityProjectively) {
  for (std::size_t p = 1; p <= 3; ++p) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const MobiusMap m = random_map(p, 1000 * p + seed);
      EXPECT_LE(ccauchy::proj_distance(ccauchy::compose(m, ccauchy::invert(m)),
                                       MobiusMap::identity(p)),
                1e-10)
          << "p " << p << " seed " << seed;
    }
  }
}

TEST(GroupLaws, ActionCompatibleWithComposition) {
  for (std::size_t p = 1; p <= 3; ++p) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const MobiusMap m1 = random_map(p, 5000 + 100 * p + seed);
      const MobiusMap m2 = random_map(p, 6000 + 100 * p + seed);
      const CVec z = random_point(p, 7000 + 100 * p + seed);
      const MobiusMap comp = ccauchy::compose(m1, m2);
      if (denominator_mag(m2, z) < 1e-6 || denominator_mag(comp, z) < 1e-6) continue;
      const CVec via_m2 = ccauchy::apply(m2, z);
      if (denominator_mag(m1, via_m2) < 1e-6) continue;
      const CVec lhs = ccauchy::apply(comp, z);
      const CVec rhs = ccauchy::apply(m1, via_m2);
      EXPECT_LE(vec_diff(lhs, rhs), 1e-9 * (1.0 + ccauchy::vec_norm(rhs)))
          << "p " << p << " seed " << seed;
    }
  }
}

TEST(GroupLaws, AffineSubgroupClosedUnderComposition) {
  const AffineMap a1 = ccauchy::affine_from_parts(ccauchy::random_invertible(2, 41),
                                                  random_point(2, 42));
  const AffineMap a2 = ccauchy::affine_from_parts(ccauchy::random_invertible(2, 43),
                                                  random_point(2, 44));
  const MobiusMap prod = ccauchy::compose(a1.as_mobius(), a2.as_mobius());
  EXPECT_TRUE(ccauchy::as_affine(prod).has_value());
}

}  // namespace

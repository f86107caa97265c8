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

#include "ccauchy/linalg.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace {

using ccauchy::CMat;
using ccauchy::cplx;
using ccauchy::CVec;
using ccauchy::HermitianPD;

// Test-local matrix helpers, kept independent of the library's own product
// so multiply-back checks are a genuine oracle.
CMat t_matmul(const CMat& a, const CMat& b) {
  CMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

CMat t_adjoint(const CMat& a) {
  CMat c(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
  return c;
}

double t_max_diff(const CMat& a, const CMat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

Eigen::MatrixXcd to_eigen(const CMat& a) {
  Eigen::MatrixXcd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  return m;
}

CMat random_hpd(std::size_t n, std::uint64_t seed) {
  const CMat a = ccauchy::random_invertible(n, seed);
  return t_matmul(a, t_adjoint(a));
}

TEST(Cholesky, IdentityIsItsOwnFactor) {
  const CMat l = ccauchy::cholesky(HermitianPD::identity(2));
  EXPECT_EQ(l, CMat::identity(2));
}

TEST(Cholesky, MultiplyBackReproducesInput) {
  const CMat sigma(2, 2, {cplx(2, 0), cplx(0, 1), cplx(0, -1), cplx(2, 0)});
  const CMat l = ccauchy::cholesky(HermitianPD(sigma));
  EXPECT_LE(t_max_diff(t_matmul(l, t_adjoint(l)), sigma), 1e-12);
  // lower triangular with real positive diagonal
  EXPECT_EQ(l(0, 1), cplx(0, 0));
  EXPECT_GT(l(0, 0).real(), 0.0);
  EXPECT_EQ(l(0, 0).imag(), 0.0);
  EXPECT_GT(l(1, 1).real(), 0.0);
  EXPECT_EQ(l(1, 1).imag(), 0.0);
}

TEST(Cholesky, NearSingularTripsPivotGuard) {
  // Rank one up to a perturbation far below the pivot guard.
  const double off = 1.0 - 1e-16;
  const CMat sigma(2, 2, {cplx(1, 0), cplx(off, 0), cplx(off, 0), cplx(1, 0)});
  EXPECT_THROW(ccauchy::cholesky(HermitianPD(sigma)), ccauchy::NotPositiveDefinite);
}

TEST(Cholesky, RandomInstancesMultiplyBack) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const CMat sigma = random_hpd(n, seed);
    const CMat l = ccauchy::cholesky(HermitianPD(sigma));
    EXPECT_LE(t_max_diff(t_matmul(l, t_adjoint(l)), sigma), 1e-12 * ccauchy::max_abs(sigma))
        << "seed " << seed;
  }
}

TEST(HermitianPD, RejectsNonHermitianNamingEntryPair) {
  const CMat m(2, 2, {cplx(1, 0), cplx(0.5, 0), cplx(0.4, 0), cplx(1, 0)});
  try {
    HermitianPD h(m);
    FAIL() << "expected InvalidArgument";
  } catch (const ccauchy::InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("(0,1)"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("(1,0)"), std::string::npos);
  }
}

TEST(Rq, UpperTriangularInputIsAlreadyFactored) {
  const CMat m(2, 2, {cplx(2, 0), cplx(1, 1), cplx(0, 0), cplx(3, 0)});
  const ccauchy::RQFactors f = ccauchy::rq_decompose(m);
  EXPECT_LE(t_max_diff(f.r, m), 1e-12);
  EXPECT_LE(t_max_diff(f.q, CMat::identity(2)), 1e-12);
}

TEST(Rq, AntiDiagonalPermutation) {
  const CMat m(2, 2, {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)});
  const ccauchy::RQFactors f = ccauchy::rq_decompose(m);
  EXPECT_LE(t_max_diff(t_matmul(f.r, f.q), m), 1e-12);
  EXPECT_LE(t_max_diff(t_matmul(f.q, t_adjoint(f.q)), CMat::identity(2)), 1e-12);
}

TEST(Rq, RandomGinibreResidual) {
  const CMat m = ccauchy::random_invertible(4, 7);
  const ccauchy::RQFactors f = ccauchy::rq_decompose(m);
  EXPECT_LE(t_max_diff(t_matmul(f.r, f.q), m), 1e-10 * ccauchy::max_abs(m));
}

TEST(Rq, FactorInvariantsOnRandomInputs) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const CMat m = ccauchy::random_invertible(n, seed);
    const ccauchy::RQFactors f = ccauchy::rq_decompose(m);
    const double scale = ccauchy::max_abs(m);
    EXPECT_LE(t_max_diff(t_matmul(f.r, f.q), m), 1e-10 * scale) << "seed " << seed;
    EXPECT_LE(t_max_diff(t_matmul(f.q, t_adjoint(f.q)), CMat::identity(n)), 1e-12)
        << "seed " << seed;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(f.r(i, j), cplx(0, 0));
      EXPECT_GT(f.r(i, i).real(), 0.0);
      EXPECT_EQ(f.r(i, i).imag(), 0.0);
    }
  }
}

TEST(Rq, UniqueAcrossIndependentImplementations) {
  // With the triangularity, unitarity and positive-real-diagonal constraints
  // the factorization is unique, so an independent route through Eigen's
  // Householder QR must land on the same factors.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const CMat m = ccauchy::random_invertible(n, 2000 + seed);

    Eigen::MatrixXcd b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = std::conj(m(n - 1 - j, n - 1 - i));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(b);
    const Eigen::MatrixXcd qb = qr.householderQ();
    const Eigen::MatrixXcd rb = qr.matrixQR().triangularView<Eigen::Upper>();
    Eigen::MatrixXcd r(n, n);
    r.setZero();
    Eigen::MatrixXcd q(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (j >= i) r(i, j) = std::conj(rb(n - 1 - j, n - 1 - i));
        q(i, j) = std::conj(qb(n - 1 - j, n - 1 - i));
      }
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> dk = r(k, k);
      const std::complex<double> ph = std::conj(dk / std::abs(dk));
      for (std::size_t i = 0; i <= k; ++i) r(i, k) *= ph;
      for (std::size_t j = 0; j < n; ++j) q(k, j) *= std::conj(ph);
    }

    const ccauchy::RQFactors f = ccauchy::rq_decompose(m);
    const double scale = ccauchy::max_abs(m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(std::abs(f.r(i, j) - r(i, j)), 0.0, 1e-10 * scale) << "seed " << seed;
        EXPECT_NEAR(std::abs(f.q(i, j) - q(i, j)), 0.0, 1e-10) << "seed " << seed;
      }
  }
}

TEST(Cholesky, MatchesEigenLlt) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 2 + seed % 6;
    const CMat sigma = random_hpd(n, 3000 + seed);
    const CMat l = ccauchy::cholesky(HermitianPD(sigma));
    const Eigen::MatrixXcd expected = to_eigen(sigma).llt().matrixL();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        EXPECT_NEAR(std::abs(l(i, j) - expected(i, j)), 0.0, 1e-11 * ccauchy::max_abs(sigma))
            << "seed " << seed;
  }
}

TEST(Rq, BitwiseRepeatable) {
  const CMat m = ccauchy::random_invertible(5, 123);
  const ccauchy::RQFactors f1 = ccauchy::rq_decompose(m);
  const ccauchy::RQFactors f2 = ccauchy::rq_decompose(m);
  EXPECT_EQ(f1.r, f2.r);
  EXPECT_EQ(f1.q, f2.q);
}

TEST(Det, TriangularAndPermutationCases) {
  const CMat d(2, 2, {cplx(2, 0), cplx(0, 0), cplx(0, 0), cplx(3, 0)});
  EXPECT_EQ(ccauchy::det(d), cplx(6, 0));
  EXPECT_EQ(ccauchy::det(CMat::identity(5)), cplx(1, 0));
  const CMat x(2, 2, {cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)});
  EXPECT_EQ(ccauchy::det(x), cplx(-1, 0));
}

TEST(Det, MultiplicativeOnRandomPairs) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const std::size_t n = 2 + seed % 4;
    const CMat a = ccauchy::random_invertible(n, seed);
    const CMat b = ccauchy::random_invertible(n, seed + 1000);
    const cplx lhs = ccauchy::det(t_matmul(a, b));
    const cplx rhs = ccauchy::det(a) * ccauchy::det(b);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::abs(rhs)) << "seed " << seed;
  }
}

TEST(Det, MatchesEigenOracle) {
  for (std::uint64_t seed = 3; seed <= 12; ++seed) {
    const CMat a = ccauchy::random_invertible(5, seed);
    const cplx expected = to_eigen(a).determinant();
    EXPECT_LE(std::abs(ccauchy::det(a) - expected), 1e-10 * std::abs(expected));
  }
}

TEST(SolveHpd, IdentityAndDiagonal) {
  const CVec v{cplx(1, 0), cplx(0, 2)};
  const CVec w = ccauchy::solve_hpd(HermitianPD::identity(2), v);
  EXPECT_LE(std::abs(w[0] - v[0]) + std::abs(w[1] - v[1]), 1e-14);

  const CMat d(2, 2, {cplx(2, 0), cplx(0, 0), cplx(0, 0), cplx(4, 0)});
  const CVec w2 = ccauchy::solve_hpd(HermitianPD(d), {cplx(2, 0), cplx(4, 0)});
  EXPECT_LE(std::abs(w2[0] - cplx(1, 0)) + std::abs(w2[1] - cplx(1, 0)), 1e-14);
}

TEST(SolveHpd, RandomResidual) {
  const CMat sigma = random_hpd(4, 11);
  ccauchy::SplitMix64 rng(ccauchy::stream_seed(11, 1, 0));
  CVec v(4);
  for (auto& z : v) z = rng.next_complex_gaussian();
  const CVec w = ccauchy::solve_hpd(HermitianPD(sigma), v);
  const CVec back = ccauchy::mat_vec(sigma, w);
  double resid = 0.0;
  for (std::size_t i = 0; i < 4; ++i) resid += std::norm(back[i] - v[i]);
  EXPECT_LE(std::sqrt(resid), 1e-10 * ccauchy::vec_norm(v));
}

TEST(RandomUnitary, ScalarCaseHasUnitModulus) {
  const CMat u = ccauchy::random_unitary(1, 42);
  EXPECT_LE(std::abs(std::abs(u(0, 0)) - 1.0), 1e-14);
}

TEST(RandomUnitary, UnitarityResidual) {
  const CMat u = ccauchy::random_unitary(3, 5);
  EXPECT_LE(t_max_diff(t_matmul(u, t_adjoint(u)), CMat::identity(3)), 1e-12);
}

TEST(RandomUnitary, DistinctSeedsDistinctMatrices) {
  const CMat u1 = ccauchy::random_unitary(3, 1);
  const CMat u2 = ccauchy::random_unitary(3, 2);
  EXPECT_GT(t_max_diff(u1, u2), 1e-6);
}

TEST(RandomInvertible, ConditionGuardAgainstEigenSvd) {
  const CMat a = ccauchy::random_invertible(2, 9);
  EXPECT_GT(std::abs(ccauchy::det(a)), 0.0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
  const auto& sv = svd.singularValues();
  EXPECT_GE(sv(sv.size() - 1), 1e-4 * sv(0));
}

TEST(RandomInvertible, ScalarCaseNonzero) {
  const CMat a = ccauchy::random_invertible(1, 4);
  EXPECT_GT(std::abs(a(0, 0)), 0.0);
}

TEST(RandomInvertible, DeterministicPerSeed) {
  EXPECT_EQ(ccauchy::random_invertible(3, 77), ccauchy::random_invertible(3, 77));
}

TEST(SingularValues, MatchesEigenJacobiSvd) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const CMat a = ccauchy::random_invertible(n, seed + 500);
    const std::vector<double> sv = ccauchy::singular_values(a);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(a));
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(sv[k], svd.singularValues()(static_cast<Eigen::Index>(k)), 1e-10 * sv[0])
          << "seed " << seed << " k " << k;
    }
  }
}

}  // namespace

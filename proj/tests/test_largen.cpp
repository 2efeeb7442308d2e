/*
 *            Copyright 2026 The sphere-casimir Authors
 *
 *      Licensed under the Apache License, Version 2.0 (the "License")
 *
 * You may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *              http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include <cmath>

#include <gtest/gtest.h>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/largen.hpp"

namespace {

using namespace casimir;

TEST(LargeN, DefaultAbarIsDipolePropagator) {
  double residual = 1.0;
  const AbarPolynomial a = default_abar(&residual);
  EXPECT_LT(residual, 1e-12);
  EXPECT_NEAR(a.c0, 0.0, 1e-12);
  EXPECT_NEAR(a.c1, 1.5 * pi, 1e-12);
  EXPECT_NEAR(a.c2, 1.5 * pi, 1e-12);
}

TEST(LargeN, ConstantAbarClosedForm) {
  // With A = a the weights sum to one: V = (N-1)! (alpha a)^N / (N s).
  for (int n : {2, 3, 7}) {
    const LargeNParams p{n, 0.3, 1.0, 5.0};
    const double alpha = 0.3 / 125.0;
    const double expect = std::tgamma(n) * std::pow(alpha * 2.0, n) / (n * 5.0);
    EXPECT_NEAR(largen_potential_integral(p, AbarPolynomial::constant(2.0)).magnitude / expect, 1.0, 1e-13);
  }
}

TEST(LargeN, LogDomainMatchesNaiveSum) {
  const AbarPolynomial a = default_abar();
  for (int n : {2, 3, 5, 9}) {
    const LargeNParams p{n, 0.8, 1.0, 3.0};
    const double naive = largen_potential_integral_naive(p, a);
    const LargeNResult r = largen_potential_integral(p, a);
    EXPECT_NEAR(r.magnitude / naive, 1.0, 1e-12) << n;
    EXPECT_EQ(r.parity, n % 2 ? -1 : 1);
  }
}

TEST(LargeN, LogDomainSurvivesLargeN) {
  const LargeNResult r = largen_potential_integral({300, 0.5, 1.0, 4.0});
  EXPECT_TRUE(std::isfinite(r.log_magnitude));
  const LargeNResult a = largen_asymptotic({300, 0.5, 1.0, 4.0});
  EXPECT_TRUE(std::isfinite(a.log_magnitude));
}

TEST(LargeN, AsymptoticPowerLawsAreExact) {
  for (int n : {3, 6, 20}) {
    const double l1 = largen_asymptotic({n, 0.1, 1.0, 4.0}).log_magnitude;
    const double l2 = largen_asymptotic({n, 0.1, 1.0, 8.0}).log_magnitude;
    EXPECT_NEAR((l2 - l1) / std::log(2.0), -(1.0 + 3.0 * n), 1e-12);
    const double a2 = largen_asymptotic({n, 0.2, 1.0, 4.0}).log_magnitude;
    EXPECT_NEAR((a2 - l1) / std::log(2.0), n, 1e-12);
  }
}

TEST(LargeN, IntegralPowerLawsAreExact) {
  for (int n : {3, 6}) {
    const double l1 = largen_potential_integral({n, 0.1, 1.0, 4.0}).log_magnitude;
    const double l2 = largen_potential_integral({n, 0.1, 1.0, 8.0}).log_magnitude;
    EXPECT_NEAR((l2 - l1) / std::log(2.0), -(1.0 + 3.0 * n), 1e-11);
    const double a2 = largen_potential_integral({n, 0.2, 1.0, 4.0}).log_magnitude;
    EXPECT_NEAR((a2 - l1) / std::log(2.0), n, 1e-11);
  }
}

TEST(LargeN, AsymptoticSuccessiveRatio) {
  // Fixed lambda: V(N+1)/V(N) = e^{-1} (N/(N+1))^3 lambda R^3 / s^3.
  const double lambda = 0.1, s = 4.0;
  for (int n : {3, 10, 20}) {
    const double vn = largen_asymptotic({n, lambda / n, 1.0, s}).log_magnitude;
    const double vm = largen_asymptotic({n + 1, lambda / (n + 1), 1.0, s}).log_magnitude;
    const double expect = -1.0 + 3.0 * std::log(n / (n + 1.0)) + std::log(lambda / (s * s * s));
    EXPECT_NEAR(vm - vn, expect, 1e-12);
  }
}

TEST(LargeN, SignConvention) {
  const LargeNResult odd = largen_asymptotic({3, 0.1, 1.0, 4.0});
  EXPECT_EQ(odd.parity, -1);
  EXPECT_EQ(odd.sign_note, "+-");
  EXPECT_EQ(largen_asymptotic({4, 0.1, 1.0, 4.0}).parity, 1);
  EXPECT_LT(odd.signed_value(), 0.0);
}

TEST(LargeN, ParameterValidation) {
  EXPECT_THROW(largen_potential_integral({1, 0.1, 1.0, 4.0}), DomainError);
  EXPECT_THROW(largen_potential_integral({3, 0.1, 1.0, 1.5}), DomainError);
  EXPECT_THROW(largen_asymptotic({2, 0.1, 1.0, 4.0}), DomainError);
  EXPECT_THROW(largen_crosscheck(5, 0.01, {10.0, 20.0}), DomainError);
}

TEST(LargeN, CrosscheckRingExponent) {
  const CrosscheckReport r = largen_crosscheck(3, 1e-2, {20.0, 40.0});
  EXPECT_EQ(r.expected_exponent, -10.0);
  EXPECT_NEAR(r.fitted_exponent, -10.0, 0.1);
  EXPECT_NEAR(r.alpha_s, 4.0 / (3.0 * pi) * 0.01 / 3.01, 1e-15);
}

}  // namespace

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

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "casimir/error.hpp"
#include "casimir/mie.hpp"

namespace {

using namespace casimir;
using mp = boost::multiprecision::cpp_bin_float_50;

// 1 + x f'/f for f = i_l or k_l, from half-integer Bessel functions.
mp rho(bool second, int l, const mp& x) {
  const mp nu = mp(l) + mp(0.5);
  const mp f = second ? boost::math::cyl_bessel_k(nu, x) : boost::math::cyl_bessel_i(nu, x);
  const mp fp = second ? boost::math::cyl_bessel_k_prime(nu, x) : boost::math::cyl_bessel_i_prime(nu, x);
  // f_l = sqrt(pi/2x) F_nu, so x f_l'/f_l = x F'/F - 1/2.
  return mp(0.5) + x * fp / f;
}

double mie_ref(Polarization pol, int l, double x, double eps) {
  const mp x0 = x;
  const mp x1 = sqrt(mp(eps)) * x0;
  const mp nu = mp(l) + mp(0.5);
  const mp ratio = boost::math::cyl_bessel_i(nu, x0) / boost::math::cyl_bessel_k(nu, x0);
  const mp ri0 = rho(false, l, x0), ri1 = rho(false, l, x1), rk0 = rho(true, l, x0);
  mp t;
  if (pol == Polarization::TE) {
    t = ratio * (ri1 - ri0) / (rk0 - ri1);
  } else {
    const mp e = eps;
    t = ratio * (ri1 - e * ri0) / (e * rk0 - ri1);
  }
  return static_cast<double>(t);
}

TEST(Mie, MatchesMultiprecisionOracle) {
  for (auto pol : {Polarization::TE, Polarization::TM}) {
    for (int l : {1, 2, 5, 9}) {
      for (double x : {0.01, 0.4, 2.0, 15.0}) {
        for (double eps : {1.01, 2.6, 11.7}) {
          const double ref = mie_ref(pol, l, x, eps);
          const MieValue v = mie_coefficient_scaled(pol, l, x, eps);
          EXPECT_NEAR(v.value() / ref, 1.0, 1e-11) << static_cast<int>(pol) << ' ' << l << ' ' << x << ' ' << eps;
        }
      }
    }
  }
}

TEST(Mie, DipoleSmallArgumentLimits) {
  const double eps = 2.6;
  for (double x : {1e-3, 1e-4}) {
    const double tm = mie_coefficient(Polarization::TM, 1, x, eps);
    EXPECT_NEAR(tm / (4.0 * x * x * x / (3.0 * pi) * (eps - 1) / (eps + 2)), 1.0, 10 * x * x);
    const double te = mie_coefficient(Polarization::TE, 1, x, eps);
    EXPECT_NEAR(te / (-2.0 * std::pow(x, 5) * (eps - 1) / (45.0 * pi)), 1.0, 10 * x * x);
  }
}

TEST(Mie, ScaledFormSurvivesWhereUnscaledOverflows) {
  const MieValue v = mie_coefficient_scaled(Polarization::TM, 3, 800.0, 2.6);
  EXPECT_TRUE(std::isfinite(v.mantissa));
  EXPECT_DOUBLE_EQ(v.log_scale, 1600.0);
  EXPECT_THROW(mie_coefficient(Polarization::TM, 3, 800.0, 2.6), OverflowError);
  const MieValue tiny = mie_coefficient_scaled(Polarization::TM, 40, 1e-3, 2.6);
  EXPECT_TRUE(std::isfinite(tiny.mantissa));
}

TEST(Mie, MatchedMediumScattersNothing) {
  EXPECT_EQ(mie_coefficient(Polarization::TE, 2, 1.3, 1.0), 0.0);
  EXPECT_EQ(mie_coefficient(Polarization::TM, 2, 0.0, 4.0), 0.0);
}

TEST(Mie, RejectsBadArguments) {
  EXPECT_THROW(mie_coefficient(Polarization::TE, 0, 1.0, 2.0), DomainError);
  EXPECT_THROW(mie_coefficient(Polarization::TE, 1, -1.0, 2.0), DomainError);
  EXPECT_THROW(mie_coefficient(Polarization::TE, 1, 1.0, 0.0), DomainError);
  EXPECT_THROW(mie_coefficient(Polarization::TE, 1, std::nan(""), 2.0), DomainError);
}

TEST(Mie, BlockUsesRelativePermittivityAndRadius) {
  SphereSpec s;
  s.label = "a";
  s.radius = 1.5;
  s.permittivity = PermittivityModel::constant(4.4);
  const auto bg = PermittivityModel::constant(2.2);
  const BasisSpec basis(3);
  const double xi = 0.7;
  const auto block = mie_block(s, bg, xi, basis, 1e-6);
  const double x = std::sqrt(2.2) * xi * 1.5;
  EXPECT_DOUBLE_EQ(block.log_scale, 2.0 * x);
  for (int idx = 0; idx < basis.dim(); ++idx) {
    const Mode m = basis.mode(idx);
    const MieValue v = mie_coefficient_scaled(m.pol, m.l, x, 2.0);
    EXPECT_NEAR(block.mantissa(idx), v.mantissa, 1e-14 * std::abs(v.mantissa)) << idx;
  }
}

}  // namespace

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
#include <complex>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "casimir/error.hpp"
#include "casimir/specfun.hpp"

namespace {

using namespace casimir;
using namespace casimir::specfun;
using mp = boost::multiprecision::cpp_bin_float_50;

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// i_l(x) e^{-x} and k_l(x) e^{x} in 50 digits.
double i_scaled_ref(int l, double x) {
  const mp xx = x;
  const mp v = boost::math::cyl_bessel_i(mp(l) + mp(0.5), xx) * sqrt(boost::math::constants::pi<mp>() / (2 * xx));
  return static_cast<double>(v * exp(-xx));
}

double k_scaled_ref(int l, double x) {
  const mp xx = x;
  const mp v = boost::math::cyl_bessel_k(mp(l) + mp(0.5), xx) * sqrt(boost::math::constants::pi<mp>() / (2 * xx));
  return static_cast<double>(v * exp(xx));
}

TEST(SphericalBessel, MatchesBoost) {
  for (int l : {0, 1, 2, 5, 10, 25}) {
    for (double x : {0.05, 0.9, 3.0, 12.5, 60.0}) {
      const double j = boost::math::sph_bessel(l, x);
      const double y = boost::math::sph_neumann(l, x);
      EXPECT_LT(std::abs(sph_bessel_j(l, x) - j), 1e-13 * std::max(std::abs(j), 1e-3)) << l << ' ' << x;
      EXPECT_LT(rel(sph_bessel_y(l, x), y), 1e-12) << l << ' ' << x;
      const auto h = sph_hankel_plus(l, x);
      EXPECT_DOUBLE_EQ(h.imag(), sph_bessel_y(l, x));
    }
  }
}

TEST(SphericalBessel, DerivativesMatchBoost) {
  for (int l : {0, 1, 4, 9}) {
    for (double x : {0.3, 2.0, 17.0}) {
      EXPECT_NEAR(sph_bessel_j_derivative(l, x), boost::math::sph_bessel_prime(l, x), 1e-12);
      EXPECT_LT(rel(sph_bessel_y_derivative(l, x), boost::math::sph_neumann_prime(l, x)), 1e-11);
    }
  }
}

TEST(SphericalBessel, WronskianJY) {
  for (int l : {0, 3, 12, 30}) {
    for (double x : {0.7, 5.0, 44.0}) {
      const double w = sph_bessel_j(l, x) * sph_bessel_y_derivative(l, x) -
                       sph_bessel_j_derivative(l, x) * sph_bessel_y(l, x);
      EXPECT_NEAR(w * x * x, 1.0, 1e-10) << l << ' ' << x;
    }
  }
}

TEST(ModifiedBessel, ScaledArraysMatchMultiprecision) {
  for (double x : {1e-4, 0.02, 0.5, 1.0, 8.0, 40.0, 300.0}) {
    const auto is = mod_sph_bessel_i_scaled_array(20, x);
    const auto ks = mod_sph_bessel_k_scaled_array(x < 1e-3 ? 6 : 20, x);
    for (int l = 0; l <= 20; ++l) {
      const double ir = i_scaled_ref(l, x);
      if (ir > 1e-290) {
        EXPECT_LT(rel(is[static_cast<size_t>(l)], ir), 1e-12) << "i " << l << ' ' << x;
      }
      if (static_cast<size_t>(l) < ks.size()) {
        EXPECT_LT(rel(ks[static_cast<size_t>(l)], k_scaled_ref(l, x)), 1e-12) << "k " << l << ' ' << x;
      }
    }
  }
}

TEST(ModifiedBessel, KZeroConvention) {
  for (double x : {0.1, 1.0, 9.0}) EXPECT_NEAR(mod_sph_bessel(ModifiedKind::K, 0, x), 0.5 * pi * std::exp(-x) / x, 1e-14);
  EXPECT_NEAR(mod_sph_bessel(ModifiedKind::I, 0, 0.8), std::sinh(0.8) / 0.8, 1e-15);
}

TEST(ModifiedBessel, RatioStaysFiniteWhereValuesUnderflow) {
  const auto r = mod_sph_bessel_i_ratio_array(40, 1e-3);
  for (int l = 0; l <= 40; ++l) {
    ASSERT_TRUE(std::isfinite(r[static_cast<size_t>(l)]));
    // Small-x limit i_{l+1}/i_l -> x / (2l+3).
    EXPECT_NEAR(r[static_cast<size_t>(l)] * (2 * l + 3) / 1e-3, 1.0, 1e-6);
  }
}

TEST(ModifiedBessel, OverflowIsReported) {
  EXPECT_THROW(mod_sph_bessel(ModifiedKind::K, 60, 1e-5), OverflowError);
  EXPECT_THROW(mod_sph_bessel_k_scaled_array(60, 1e-8), OverflowError);
}

TEST(ModifiedBessel, WronskianIK) {
  for (int l : {0, 2, 7}) {
    for (double x : {0.2, 3.0, 25.0}) {
      const double w = mod_sph_bessel(ModifiedKind::I, l, x) * mod_sph_bessel_derivative(ModifiedKind::K, l, x) -
                       mod_sph_bessel_derivative(ModifiedKind::I, l, x) * mod_sph_bessel(ModifiedKind::K, l, x);
      EXPECT_NEAR(w * x * x, -pi / 2.0, 1e-11);
    }
  }
}

TEST(Angular, SphericalHarmonicsMatchBoost) {
  const Eigen::Vector3d dir(0.3, -1.1, 0.45);
  const double theta = std::acos(dir.z() / dir.norm());
  const double phi = std::atan2(dir.y(), dir.x());
  const auto y = spherical_harmonics(8, dir);
  for (int l = 0; l <= 8; ++l) {
    for (int m = -l; m <= l; ++m) {
      const std::complex<double> ref = boost::math::spherical_harmonic(l, m, theta, phi);
      EXPECT_LT(std::abs(y[static_cast<size_t>(sh_index(l, m))] - ref), 1e-13) << l << ' ' << m;
    }
  }
}

TEST(Angular, LegendreIsAzimuthZeroHarmonic) {
  for (double u : {-0.9, 0.1, 0.7}) {
    const Eigen::Vector3d dir(std::sqrt(1 - u * u), 0.0, u);
    const auto y = spherical_harmonics(6, dir);
    for (int l = 0; l <= 6; ++l) {
      for (int m = -l; m <= l; ++m) {
        EXPECT_NEAR(assoc_legendre(l, m, u), y[static_cast<size_t>(sh_index(l, m))].real(), 1e-13);
      }
    }
  }
}

TEST(Angular, WignerThreeJClosedForms) {
  for (int j = 0; j <= 6; ++j) {
    for (int m = -j; m <= j; ++m) {
      const double expect = ((j - m) % 2 ? -1.0 : 1.0) / std::sqrt(2.0 * j + 1.0);
      EXPECT_NEAR(wigner_3j(j, j, 0, m, -m, 0), expect, 1e-14);
    }
  }
}

TEST(Angular, WignerThreeJOrthogonality) {
  const int j1 = 3, j2 = 4;
  for (int j3 = 1; j3 <= 7; ++j3) {
    for (int m3 = -j3; m3 <= j3; ++m3) {
      double sum = 0.0;
      for (int m1 = -j1; m1 <= j1; ++m1) {
        const int m2 = -m1 - m3;
        if (std::abs(m2) <= j2) sum += std::pow(wigner_3j(j1, j2, j3, m1, m2, m3), 2);
      }
      EXPECT_NEAR(sum * (2 * j3 + 1), 1.0, 1e-13);
    }
  }
}

// Integral of Y1 Y2 Y3 by product quadrature with Boost harmonics.
double gaunt_by_quadrature(int l1, int m1, int l2, int m2, int l3) {
  const int m3 = -m1 - m2;
  const int nphi = 32;
  double sum = 0.0;
  auto in_theta = [&](double u) {
    const double theta = std::acos(u);
    std::complex<double> acc = 0.0;
    for (int k = 0; k < nphi; ++k) {
      const double phi = 2.0 * pi * k / nphi;
      acc += boost::math::spherical_harmonic(l1, m1, theta, phi) * boost::math::spherical_harmonic(l2, m2, theta, phi) *
             boost::math::spherical_harmonic(l3, m3, theta, phi);
    }
    return acc.real() * 2.0 * pi / nphi;
  };
  sum = boost::math::quadrature::gauss<double, 20>::integrate(in_theta, -1.0, 1.0);
  return sum;
}

TEST(Angular, GauntMatchesQuadrature) {
  for (int l1 = 0; l1 <= 4; ++l1) {
    for (int l2 = 0; l2 <= 4; ++l2) {
      for (int l3 = 0; l3 <= 8; ++l3) {
        for (int m1 = -l1; m1 <= l1; ++m1) {
          for (int m2 = -l2; m2 <= l2; ++m2) {
            if (std::abs(m1 + m2) > l3) continue;
            EXPECT_NEAR(gaunt_coefficient(l1, m1, l2, m2, l3), gaunt_by_quadrature(l1, m1, l2, m2, l3), 1e-13)
                << l1 << m1 << l2 << m2 << l3;
          }
        }
      }
    }
  }
}

TEST(Angular, GauntSelectionRulesGiveExactZero) {
  EXPECT_EQ(gaunt_coefficient(1, 0, 1, 0, 1), 0.0);  // odd parity
  EXPECT_EQ(gaunt_coefficient(1, 1, 1, 0, 4), 0.0);  // triangle
}

}  // namespace

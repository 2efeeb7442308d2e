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

#ifndef CASIMIR_SPECFUN_HPP
#define CASIMIR_SPECFUN_HPP

// Spherical Bessel, modified spherical Bessel, normalized associated Legendre
// functions and angular-momentum coupling coefficients. Conventions are the
// ones documented in constants.hpp.

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "casimir/constants.hpp"

namespace casimir::specfun {

enum class RadialKind { RegularJ, OutgoingHPlus, ModifiedFirstI, ModifiedSecondK };

enum class ModifiedKind { I, K };

// Real axis -----------------------------------------------------------------

/// j_0 .. j_lmax at x > 0 (Miller downward recurrence).
std::vector<double> sph_bessel_j_array(int lmax, double x,
                                       int cap = default_l_hard_cap);
/// y_0 .. y_lmax at x > 0 (upward recurrence).
std::vector<double> sph_bessel_y_array(int lmax, double x,
                                       int cap = default_l_hard_cap);

double sph_bessel_j(int l, double x, int cap = default_l_hard_cap);
double sph_bessel_y(int l, double x, int cap = default_l_hard_cap);
/// h+_l = j_l + i y_l.
std::complex<double> sph_hankel_plus(int l, double x,
                                     int cap = default_l_hard_cap);

/// d/dx of j_l and y_l, from the neighbouring-order recurrence.
double sph_bessel_j_derivative(int l, double x);
double sph_bessel_y_derivative(int l, double x);

// Imaginary axis ------------------------------------------------------------

/// i_l(x) exp(-x) for l = 0 .. lmax.
std::vector<double> mod_sph_bessel_i_scaled_array(int lmax, double x,
                                                  int cap = default_l_hard_cap);
/// k_l(x) exp(x) for l = 0 .. lmax. Throws OverflowError if the top order
/// is not representable.
std::vector<double> mod_sph_bessel_k_scaled_array(int lmax, double x,
                                                  int cap = default_l_hard_cap);
/// r_l = i_{l+1}(x) / i_l(x) for l = 0 .. lmax (continued fraction, then
/// downward recurrence). Finite for every x > 0.
std::vector<double> mod_sph_bessel_i_ratio_array(int lmax, double x,
                                                 int cap = default_l_hard_cap);

/// Scaled value: i_l e^{-x} for kind I, k_l e^{x} for kind K.
double mod_sph_bessel_scaled(ModifiedKind kind, int l, double x,
                             int cap = default_l_hard_cap);
/// Unscaled value. Throws OverflowError when not representable.
double mod_sph_bessel(ModifiedKind kind, int l, double x,
                      int cap = default_l_hard_cap);
/// d/dx of the unscaled function.
double mod_sph_bessel_derivative(ModifiedKind kind, int l, double x);

// Angular functions ---------------------------------------------------------

/// Orthonormal associated Legendre function Pbar_l^m(u), any |m| <= l.
double assoc_legendre(int l, int m, double u);

/// Y_lm(dir) for 0 <= l <= lmax, all m, stored at index l*l + l + m.
/// `dir` need not be normalized but must be non-zero.
std::vector<std::complex<double>> spherical_harmonics(int lmax,
                                                      const Eigen::Vector3d& dir);

inline constexpr int sh_index(int l, int m) { return l * l + l + m; }

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3) for integer arguments.
double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3);

/// Integral over the unit sphere of Y_{l1 m1} Y_{l2 m2} Y_{l3 m3} with
/// m3 = -m1 - m2. Exactly zero when a selection rule fails.
double gaunt_coefficient(int l1, int m1, int l2, int m2, int l3);

}  // namespace casimir::specfun

#endif  // CASIMIR_SPECFUN_HPP

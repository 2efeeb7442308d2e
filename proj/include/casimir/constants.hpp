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

#ifndef CASIMIR_CONSTANTS_HPP
#define CASIMIR_CONSTANTS_HPP

// Physical constants and the conventions shared by every module.
//
// Units. Internally hbar = c = 1 and lengths are measured in a scene length
// unit L (by default the radius of the first sphere). Imaginary frequencies
// xi are then in units of c/L, energies in hbar*c/L and forces in
// hbar*c/L^2. SI conversion happens only at the I/O boundary.
//
// Angular functions. Y_lm(theta, phi) = Pbar_l^m(cos theta) exp(i m phi) with
// Pbar orthonormal on the sphere and the Condon-Shortley phase included, so
// Y_{l,-m} = (-1)^m conj(Y_lm).
//
// Radial functions on the imaginary axis (x = kappa r):
//   i_l(x) = sqrt(pi/2x) I_{l+1/2}(x)      i_0(x) = sinh(x)/x
//   k_l(x) = sqrt(pi/2x) K_{l+1/2}(x)      k_0(x) = (pi/2) exp(-x)/x
// with scaled variants i_l(x) exp(-x) and k_l(x) exp(x).
//
// Vector waves. M_lm = L(z_l Y_lm)/sqrt(l(l+1)) with L = -i r x grad, and
// N_lm = curl(M_lm)/k where k = i*kappa. TE modes are M waves, TM modes N
// waves. Regular waves use i_l, outgoing waves use k_l.
//
// Rotations. D^l_{m'm}(a,b,g) = exp(-i m' a) d^l_{m'm}(b) exp(-i m g), active
// rotations, z-y-z Euler angles.

#include <numbers>

namespace casimir {

inline constexpr double pi = std::numbers::pi;

namespace codata {
// CODATA 2018 exact / recommended values.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double c = 299792458.0;                // m / s
inline constexpr double k_B = 1.380649e-23;             // J / K
inline constexpr double eV = 1.602176634e-19;           // J
inline constexpr double hbar_c = hbar * c;              // J m
inline constexpr double hbar_c_eV_m = hbar_c / eV;      // eV m
}  // namespace codata

/// Largest angular momentum accepted by the special-function layer.
inline constexpr int default_l_hard_cap = 60;

/// Default extra angular momenta used when composing translations.
inline constexpr int default_l_buffer = 4;

/// Dimensionless temperature k_B T L / (hbar c) for a length unit L in metres.
constexpr double reduced_temperature(double kelvin, double length_unit_m) {
  return codata::k_B * kelvin * length_unit_m / codata::hbar_c;
}

/// Converts an imaginary frequency in units of c/L to electron volts.
constexpr double xi_to_ev(double xi, double length_unit_m) {
  return xi * codata::hbar_c_eV_m / length_unit_m;
}

}  // namespace casimir

#endif  // CASIMIR_CONSTANTS_HPP

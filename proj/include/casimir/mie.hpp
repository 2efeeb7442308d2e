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

#ifndef CASIMIR_MIE_HPP
#define CASIMIR_MIE_HPP

// Mie coefficients of a homogeneous sphere at imaginary frequency. The
// scattered field outside the sphere is T * (outgoing wave) for a unit
// regular incident wave, T = T_TE or T_TM per multipole order l.

#include "casimir/basis.hpp"
#include "casimir/permittivity.hpp"
#include "casimir/scaled.hpp"
#include "casimir/scene.hpp"

namespace casimir {

/// T = mantissa * exp(log_scale), log_scale = 2 x.
struct MieValue {
  double mantissa = 0.0;
  double log_scale = 0.0;
  double value() const { return mantissa * std::exp(log_scale); }
};

/// Scaled coefficient. `x` is the size parameter in the background medium,
/// sqrt(eps_B) xi R; `eps_rel` = eps_sphere / eps_background.
MieValue mie_coefficient_scaled(Polarization pol, int l, double x, double eps_rel);

/// Unscaled coefficient; OverflowError when exp(2x) overflows.
double mie_coefficient(Polarization pol, int l, double x, double eps_rel);

/// Diagonal Mie operator over the basis for `sphere` at imaginary frequency
/// xi (units c/L), m-degenerate.
ScaledDiagonal<double> mie_block(const SphereSpec& sphere, const PermittivityModel& background, double xi,
                                 const BasisSpec& basis, double length_unit_m);

}  // namespace casimir

#endif  // CASIMIR_MIE_HPP

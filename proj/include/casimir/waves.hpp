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

#ifndef CASIMIR_WAVES_HPP
#define CASIMIR_WAVES_HPP

// Translation algebra of vector spherical waves at imaginary frequency.
//
// A translation block T(b) re-expands waves centred at a source point s as
// regular waves centred at s + b:
//
//   W_src(r - s) = sum_k T(b)_{k,src} Reg_k(r - s - b),
//
// for every polarization/multipole index. `kappa` is the wavenumber in the
// surrounding medium (sqrt(eps_B) * xi for imaginary frequency xi).

#include <array>

#include <Eigen/Core>

#include "casimir/basis.hpp"
#include "casimir/scaled.hpp"

namespace casimir {

enum class WaveKind { RegularToRegular, OutgoingToRegular };

struct TranslationBlock {
  /// Mantissa and exponent; value = mantissa * exp(log_scale). The exponent
  /// is -kappa |b| for outgoing-to-regular blocks, +kappa |b| for regular ones.
  ScaledMatrixXcd matrix;
  Eigen::Vector3d displacement = Eigen::Vector3d::Zero();
  double kappa = 0.0;
  WaveKind kind = WaveKind::OutgoingToRegular;

  Eigen::MatrixXcd value() const { return matrix.value(); }
};

struct TranslationWithGradient {
  TranslationBlock block;
  /// d/db_x, d/db_y, d/db_z, same exponent as `block`.
  std::array<TranslationBlock, 3> gradient;
};

struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Angles (phi, theta, 0) of the rotation that carries +z onto `dir`.
EulerAngles euler_angles_to(const Eigen::Vector3d& dir);

/// Wigner small-d matrix d^l_{m'm}(beta), entry (m'+l, m+l).
Eigen::MatrixXd wigner_d(int l, double beta);

/// Block-diagonal Wigner D rotation over the basis (same for TE and TM).
Eigen::MatrixXcd rotate_block(const BasisSpec& basis, const EulerAngles& angles);

/// Translation along +z by a distance d > 0. m-block-diagonal and real.
TranslationBlock axial_translation(const BasisSpec& basis, double kappa, double d,
                                   WaveKind kind = WaveKind::OutgoingToRegular);

/// Translation by an arbitrary displacement (direct addition-theorem sum).
TranslationBlock translation_matrix(const BasisSpec& basis, double kappa,
                                    const Eigen::Vector3d& displacement,
                                    WaveKind kind = WaveKind::OutgoingToRegular);

/// Same operator assembled as D(R) * Axial(|b|) * D(R)^dagger.
TranslationBlock translation_matrix_via_rotation(const BasisSpec& basis, double kappa,
                                                 const Eigen::Vector3d& displacement,
                                                 WaveKind kind = WaveKind::OutgoingToRegular);

/// Translation block together with its analytic Cartesian gradient with
/// respect to the displacement.
TranslationWithGradient translation_with_gradient(const BasisSpec& basis, double kappa,
                                                  const Eigen::Vector3d& displacement,
                                                  WaveKind kind = WaveKind::OutgoingToRegular);

std::array<TranslationBlock, 3> translation_gradient(const BasisSpec& basis, double kappa,
                                                     const Eigen::Vector3d& displacement,
                                                     WaveKind kind = WaveKind::OutgoingToRegular);

/// Central-difference (Richardson-extrapolated) gradient of the mantissa,
/// rescaled to the exponent of the block at `displacement`. Audit use only.
std::array<Eigen::MatrixXcd, 3> translation_gradient_fd(const BasisSpec& basis, double kappa,
                                                        const Eigen::Vector3d& displacement,
                                                        double step,
                                                        WaveKind kind = WaveKind::OutgoingToRegular);

/// max |analytic - fd| / max |analytic| over the three components.
double gradient_audit(const BasisSpec& basis, double kappa, const Eigen::Vector3d& displacement,
                      WaveKind kind = WaveKind::OutgoingToRegular);

}  // namespace casimir

#endif  // CASIMIR_WAVES_HPP

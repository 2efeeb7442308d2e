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

#ifndef CASIMIR_SCATTERING_HPP
#define CASIMIR_SCATTERING_HPP

// Multiple-scattering force and energy of a sphere configuration at
// imaginary frequency. With T_i the Mie operator of sphere i and U_ij the
// translation from sphere j to sphere i, the round-trip operator has blocks
//
//   M_ij = T_i U_ij (i != j),  M_ii = 0,
//
// the interaction energy is (1/2 pi) int dxi ln det(1 - M) and the force on
// sphere t is (1/2 pi) int dxi Re tr[(1 - M)^{-1} dM/dc_t]. Blocks are stored
// in the balanced form sgn(T_i) |T_i|^{1/2} U_ij |T_j|^{1/2}, which has the
// same traces of powers and the same determinant as M, carries the exponent
// exp(-kappa (d_ij - R_i - R_j)) and stays well scaled as xi -> 0.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "casimir/basis.hpp"
#include "casimir/scaled.hpp"
#include "casimir/scene.hpp"
#include "casimir/spectral.hpp"

namespace casimir {

/// Resummed geometric series, or paths of exactly k scattering events.
struct Order {
  bool resummed = true;
  int k = 0;

  static Order all() { return {true, 0}; }
  static Order fixed(int k);
  /// "resummed" or the decimal k.
  static Order parse(const std::string& text);
  std::string str() const { return resummed ? "resummed" : std::to_string(k); }
};

struct ForceOptions {
  Order order = Order::all();
  /// Compare every analytic translation gradient with finite differences.
  bool verify_gradient = false;
  double gradient_tol = 1e-6;
  /// Also evaluate at a neighbouring truncation for the error estimate.
  bool truncation_estimate = true;
  /// Decay length for the frequency substitution; <= 0 means the smallest
  /// surface gap of the scene.
  double decay_length = 0.0;
};

struct ForceResult {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();  // hbar c / L^2
  double error = 0.0;             // quadrature + truncation
  double quadrature_error = 0.0;
  double truncation_error = 0.0;
  double newton_per_unit = 0.0;   // SI factor
  int lmax = 0;
  int n_freq = 0;
  Order order;
  double exponent_scale = 0.0;    // decay rate 2 d of the frequency substitution
  bool flagged = false;
  std::string diagnostics;
};

struct EnergyResult {
  double energy = 0.0;            // hbar c / L
  double error = 0.0;
  double quadrature_error = 0.0;
  double truncation_error = 0.0;
  double joule_per_unit = 0.0;
  int lmax = 0;
  int n_freq = 0;
  Order order;
  double exponent_scale = 0.0;
  bool flagged = false;
  std::string diagnostics;
};

struct PotentialResult {
  std::vector<double> offsets;
  std::vector<double> value;      // hbar c / L
  std::vector<double> error;
  int lmax = 0;
  int n_freq = 0;                 // frequency points per force evaluation
  int n_force = 0;                // force evaluations along the path
  double exponent_scale = 0.0;
  double tail_exponent = 0.0;     // fitted power of the force tail
  bool flagged = false;
  std::string diagnostics;
};

/// Similarity-scaled round-trip operator M(i xi) over all spheres.
Eigen::MatrixXcd round_trip_operator(const SceneConfig& scene, double xi, const BasisSpec& basis);

/// Per-frequency force integrand on sphere `target`, (1/2 pi) Re tr[...].
Eigen::Vector3d force_integrand(const SceneConfig& scene, int target, double xi, const BasisSpec& basis,
                                const ForceOptions& options = {});

/// ln det(1 - M(i xi)) at the scene's lmax.
double logdet_energy_oracle(const SceneConfig& scene, double xi);
double logdet_energy_oracle(const SceneConfig& scene, double xi, const BasisSpec& basis);

/// -sum_{k'<=k} tr(M^k')/k' style truncation of ln det(1 - M) for a fixed
/// order, or the full log-determinant when `order` is resummed.
double energy_integrand(const SceneConfig& scene, double xi, const BasisSpec& basis, Order order);

/// Interaction energy (1/2 pi) int ln det(1 - M), or the Matsubara sum.
EnergyResult interaction_energy(const SceneConfig& scene, const ForceOptions& options = {});

ForceResult casimir_force(const SceneConfig& scene, int target, const ForceOptions& options = {});

/// F(t | all) - F(t | t, a) - F(t | t, b) for a three-sphere scene, all
/// three with the decay length of the full scene.
ForceResult three_body_force(const SceneConfig& scene, int target, const ForceOptions& options = {});

/// E_123 - E_12 - E_13 - E_23 for a three-sphere scene.
EnergyResult three_body_energy(const SceneConfig& scene, const ForceOptions& options = {});

/// Potential V(s) = int_s^inf F . dir ds' of sphere `target` moved to
/// c_target + s dir, for each offset s. The far tail uses a power law fitted
/// to the last two force samples. The error adds the change under the
/// truncation partner when `truncation_estimate` is set.
PotentialResult potential_along_path(const SceneConfig& scene, int target, const Eigen::Vector3d& direction,
                                     const std::vector<double>& offsets, const ForceOptions& options = {});

/// Product M_{p0 p1} M_{p1 p2} ... M_{p(k-1) p0} around a closed path, with
/// the Mie and translation exponents tracked in log_scale (unscaled blocks).
ScaledMatrixXcd closed_path_product(const SceneConfig& scene, const std::vector<int>& path, double xi,
                                    const BasisSpec& basis);

/// Sum of Re tr(M_{0 p1} ... M_{p(N-1) 0}) over the (N-1)! orderings that
/// visit every sphere once.
double hamiltonian_cycle_trace(const SceneConfig& scene, double xi, const BasisSpec& basis);

}  // namespace casimir

#endif  // CASIMIR_SCATTERING_HPP

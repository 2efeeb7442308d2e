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

#ifndef CASIMIR_SCENE_HPP
#define CASIMIR_SCENE_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "casimir/constants.hpp"
#include "casimir/permittivity.hpp"
#include "casimir/spectral.hpp"

namespace casimir {

struct SphereSpec {
  std::string label;
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double radius = 1.0;
  PermittivityModel permittivity = PermittivityModel::constant(1.0);
};

/// A static configuration of spheres. Lengths are in the scene unit, whose
/// size in metres is `length_unit_m`; it matters only for T > 0 and for
/// frequency-dependent permittivities.
struct SceneConfig {
  std::vector<SphereSpec> spheres;
  PermittivityModel background = PermittivityModel::constant(1.0);
  double temperature = 0.0;  // kelvin
  double length_unit_m = 1e-6;
  int lmax = 3;
  int l_buffer = default_l_buffer;
  SpectralSettings spectral;
  std::string target;

  /// Throws ValidationError on overlapping spheres, duplicate labels,
  /// non-positive radii or invalid numerical settings.
  void validate() const;

  /// Index of the sphere with this label; ValidationError if absent.
  int index_of(const std::string& label) const;

  double reduced_temperature() const { return casimir::reduced_temperature(temperature, length_unit_m); }

  /// Smallest surface-to-surface gap over all pairs.
  double min_gap() const;
  /// Smallest gap between sphere `i` and any other sphere.
  double min_gap_from(int i) const;

  /// Copy with only the listed spheres, in the given order.
  SceneConfig subscene(const std::vector<int>& members) const;

  /// Same scene with every sphere shifted, or one sphere moved.
  SceneConfig with_center(int index, const Eigen::Vector3d& center) const;
};

}  // namespace casimir

#endif  // CASIMIR_SCENE_HPP

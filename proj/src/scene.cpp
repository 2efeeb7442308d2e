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

#include "casimir/scene.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

void SceneConfig::validate() const {
  if (spheres.empty()) throw ValidationError("scene: no spheres");
  std::set<std::string> labels;
  for (const auto& s : spheres) {
    if (s.label.empty()) throw ValidationError("scene: sphere without label");
    if (!labels.insert(s.label).second) throw ValidationError("scene: duplicate label '" + s.label + "'");
    if (!(s.radius > 0.0) || !std::isfinite(s.radius)) {
      throw ValidationError("scene: sphere '" + s.label + "' needs a finite radius > 0");
    }
    if (!s.center.allFinite()) throw ValidationError("scene: sphere '" + s.label + "' has a non-finite center");
  }
  for (size_t i = 0; i < spheres.size(); ++i) {
    for (size_t j = i + 1; j < spheres.size(); ++j) {
      const double d = (spheres[i].center - spheres[j].center).norm();
      if (!(d > spheres[i].radius + spheres[j].radius)) {
        std::ostringstream os;
        os << "scene: spheres '" << spheres[i].label << "' and '" << spheres[j].label
           << "' overlap (center distance " << d << ", radii " << spheres[i].radius << " + "
           << spheres[j].radius << ")";
        throw ValidationError(os.str());
      }
    }
  }
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw ValidationError("scene: temperature must be >= 0");
  if (!(length_unit_m > 0.0)) throw ValidationError("scene: length_unit_m must be > 0");
  if (lmax < 1 || lmax > 15) throw ValidationError("scene: lmax must lie in [1, 15]");
  if (l_buffer < 0) throw ValidationError("scene: l_buffer must be >= 0");
  spectral.validate();
  if (!target.empty()) index_of(target);
}

int SceneConfig::index_of(const std::string& label) const {
  for (size_t i = 0; i < spheres.size(); ++i) {
    if (spheres[i].label == label) return static_cast<int>(i);
  }
  throw ValidationError("scene: no sphere labelled '" + label + "'");
}

double SceneConfig::min_gap() const {
  double g = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < spheres.size(); ++i) g = std::min(g, min_gap_from(static_cast<int>(i)));
  return g;
}

double SceneConfig::min_gap_from(int i) const {
  double g = std::numeric_limits<double>::infinity();
  const auto& a = spheres[static_cast<size_t>(i)];
  for (size_t j = 0; j < spheres.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    const auto& b = spheres[j];
    g = std::min(g, (a.center - b.center).norm() - a.radius - b.radius);
  }
  return g;
}

SceneConfig SceneConfig::subscene(const std::vector<int>& members) const {
  SceneConfig out = *this;
  out.spheres.clear();
  bool has_target = false;
  for (int m : members) {
    out.spheres.push_back(spheres.at(static_cast<size_t>(m)));
    has_target = has_target || out.spheres.back().label == target;
  }
  if (!has_target) out.target.clear();
  return out;
}

SceneConfig SceneConfig::with_center(int index, const Eigen::Vector3d& center) const {
  SceneConfig out = *this;
  out.spheres.at(static_cast<size_t>(index)).center = center;
  return out;
}

}  // namespace casimir

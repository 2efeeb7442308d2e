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

#ifndef CASIMIR_PERMITTIVITY_HPP
#define CASIMIR_PERMITTIVITY_HPP

#include <string>
#include <vector>

namespace casimir {

/// One Lorentz (resonance > 0) or Drude (resonance = 0) term,
/// strength / (resonance^2 + xi^2 + damping * xi), all in eV or eV^2.
struct Oscillator {
  double strength = 0.0;   // eV^2
  double resonance = 0.0;  // eV
  double damping = 0.0;    // eV
};

struct PermittivitySample {
  double xi_ev = 0.0;
  double eps = 1.0;
};

/// Relative permittivity on the imaginary frequency axis, eps(i xi).
class PermittivityModel {
 public:
  enum class Kind { Constant, DrudeLorentz, Table };

  PermittivityModel() = default;

  static PermittivityModel constant(double eps);
  static PermittivityModel drude_lorentz(double eps_inf, std::vector<Oscillator> oscillators);
  /// Samples sorted by xi; eps is interpolated linearly in log(xi) and held
  /// constant outside the tabulated range.
  static PermittivityModel table(std::vector<PermittivitySample> samples);

  Kind kind() const { return kind_; }
  /// eps(i xi) with xi in eV.
  double operator()(double xi_ev) const;
  /// True when eps does not depend on frequency.
  bool is_constant() const { return kind_ == Kind::Constant; }

  double eps_inf() const { return eps_inf_; }
  const std::vector<Oscillator>& oscillators() const { return oscillators_; }
  const std::vector<PermittivitySample>& samples() const { return samples_; }

  std::string describe() const;

 private:
  Kind kind_ = Kind::Constant;
  double eps_inf_ = 1.0;
  std::vector<Oscillator> oscillators_;
  std::vector<PermittivitySample> samples_;
};

}  // namespace casimir

#endif  // CASIMIR_PERMITTIVITY_HPP

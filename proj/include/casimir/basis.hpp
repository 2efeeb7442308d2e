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

#ifndef CASIMIR_BASIS_HPP
#define CASIMIR_BASIS_HPP

#include <cmath>
#include <string>

#include "casimir/error.hpp"

namespace casimir {

enum class Polarization { TE = 0, TM = 1 };

struct Mode {
  Polarization pol;
  int l;
  int m;
  friend bool operator==(const Mode&, const Mode&) = default;
};

/// Truncated vector-wave basis. Modes are ordered TE block first, then TM;
/// within a block by l = 1..lmax and m = -l..l, so
///   index(pol, l, m) = pol * lmax(lmax+2) + l^2 + l + m - 1.
class BasisSpec {
 public:
  explicit BasisSpec(int lmax) : lmax_(lmax) {
    if (lmax < 1) throw DomainError("BasisSpec: lmax must be >= 1, got " + std::to_string(lmax));
  }

  int lmax() const { return lmax_; }
  /// Modes per polarization, lmax(lmax+2).
  int half() const { return lmax_ * (lmax_ + 2); }
  /// 2 lmax (lmax+2).
  int dim() const { return 2 * half(); }

  /// Index of (l, m) inside one polarization block.
  static constexpr int lm_index(int l, int m) { return l * l + l + m - 1; }

  int index(Polarization pol, int l, int m) const {
    return static_cast<int>(pol) * half() + lm_index(l, m);
  }

  Mode mode(int index) const {
    const auto pol = index < half() ? Polarization::TE : Polarization::TM;
    const int k = index % half() + 1;  // l^2 + l + m
    const int l = static_cast<int>(std::sqrt(static_cast<double>(k)));
    return {pol, l, k - l * l - l};
  }

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;

 private:
  int lmax_;
};

inline BasisSpec basis_enumerate(int lmax) { return BasisSpec(lmax); }

}  // namespace casimir

#endif  // CASIMIR_BASIS_HPP

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

#include "casimir/mie.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

namespace {

// log(i_l(x) / k_l(x)) + 2x for l = 0..lmax, from ratio recurrences so that
// nothing overflows at small x.
std::vector<double> log_scaled_ik_ratio(int lmax, double x, const std::vector<double>& ri) {
  std::vector<double> out(static_cast<size_t>(lmax) + 1);
  out[0] = std::log(-std::expm1(-2.0 * x) / pi);
  double qk = 1.0 + 1.0 / x;  // k_1 / k_0
  for (int l = 1; l <= lmax; ++l) {
    out[static_cast<size_t>(l)] = out[static_cast<size_t>(l) - 1] + std::log(ri[static_cast<size_t>(l) - 1]) - std::log(qk);
    qk = 1.0 / qk + (2.0 * l + 1.0) / x;  // k_{l+1} / k_l
  }
  return out;
}

// k_{l+1} / k_l at order l.
double k_ratio(int l, double x) {
  double qk = 1.0 + 1.0 / x;
  for (int j = 1; j <= l; ++j) qk = 1.0 / qk + (2.0 * j + 1.0) / x;
  return qk;
}

double mantissa_from(Polarization pol, int l, double x0, double eps_rel, double log_ik,
                     double ri0, double ri1) {
  const double x1 = std::sqrt(eps_rel) * x0;
  const double rho_i0 = (l + 1.0) + x0 * ri0;
  const double rho_i1 = (l + 1.0) + x1 * ri1;
  const double rho_k0 = (l + 1.0) - x0 * k_ratio(l, x0);
  double num, den;
  if (pol == Polarization::TE) {
    // x1 r(x1) - x0 r(x0) without the common (l+1).
    num = x1 * ri1 - x0 * ri0;
    den = rho_k0 - rho_i1;
  } else {
    num = rho_i1 - eps_rel * rho_i0;
    den = eps_rel * rho_k0 - rho_i1;
  }
  return std::exp(log_ik) * num / den;
}

}  // namespace

MieValue mie_coefficient_scaled(Polarization pol, int l, double x, double eps_rel) {
  if (l < 1 || l > default_l_hard_cap) throw DomainError("mie: l out of range: " + std::to_string(l));
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("mie: size parameter must be finite and >= 0");
  if (!(eps_rel > 0.0) || !std::isfinite(eps_rel)) throw DomainError("mie: eps_rel must be finite and > 0");
  if (x == 0.0 || eps_rel == 1.0) return {0.0, 2.0 * x};
  const double x1 = std::sqrt(eps_rel) * x;
  const auto r0 = specfun::mod_sph_bessel_i_ratio_array(l, x);
  const auto r1 = specfun::mod_sph_bessel_i_ratio_array(l, x1);
  const auto lik = log_scaled_ik_ratio(l, x, r0);
  return {mantissa_from(pol, l, x, eps_rel, lik[static_cast<size_t>(l)], r0[static_cast<size_t>(l)],
                        r1[static_cast<size_t>(l)]),
          2.0 * x};
}

double mie_coefficient(Polarization pol, int l, double x, double eps_rel) {
  const MieValue v = mie_coefficient_scaled(pol, l, x, eps_rel);
  const double out = v.value();
  if (!std::isfinite(out)) throw OverflowError("mie: unscaled coefficient overflows at x=" + std::to_string(x));
  return out;
}

ScaledDiagonal<double> mie_block(const SphereSpec& sphere, const PermittivityModel& background, double xi,
                                 const BasisSpec& basis, double length_unit_m) {
  if (!(xi >= 0.0)) throw DomainError("mie_block: xi must be >= 0");
  const double xi_ev = xi_to_ev(xi, length_unit_m);
  const double eps_b = background(xi_ev);
  const double eps_s = sphere.permittivity(xi_ev);
  const double eps_rel = eps_s / eps_b;
  const double x = std::sqrt(eps_b) * xi * sphere.radius;
  const int lmax = basis.lmax();

  ScaledDiagonal<double> out;
  out.mantissa = Eigen::VectorXd::Zero(basis.dim());
  out.log_scale = 2.0 * x;
  if (x == 0.0 || eps_rel == 1.0) return out;
  const double x1 = std::sqrt(eps_rel) * x;
  const auto r0 = specfun::mod_sph_bessel_i_ratio_array(lmax, x);
  const auto r1 = specfun::mod_sph_bessel_i_ratio_array(lmax, x1);
  const auto lik = log_scaled_ik_ratio(lmax, x, r0);
  for (int l = 1; l <= lmax; ++l) {
    const auto li = static_cast<size_t>(l);
    for (auto pol : {Polarization::TE, Polarization::TM}) {
      const double t = mantissa_from(pol, l, x, eps_rel, lik[li], r0[li], r1[li]);
      for (int m = -l; m <= l; ++m) out.mantissa(basis.index(pol, l, m)) = t;
    }
  }
  return out;
}

}  // namespace casimir

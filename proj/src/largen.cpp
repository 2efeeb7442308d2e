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

#include "casimir/largen.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/scattering.hpp"
#include "casimir/spectral.hpp"
#include "casimir/waves.hpp"

namespace casimir {

void LargeNParams::validate() const {
  if (n < 2) throw DomainError("large-n: N must be >= 2");
  if (!(radius > 0.0)) throw DomainError("large-n: R must be > 0");
  if (!(separation > 2.0 * radius)) throw DomainError("large-n: s must exceed 2R");
  if (!std::isfinite(alpha_s)) throw DomainError("large-n: alpha_S must be finite");
}

AbarPolynomial default_abar(double* residual) {
  const BasisSpec basis(1);
  const int idx = basis.index(Polarization::TM, 1, 0);
  auto sample = [&](double x) {
    const auto t = axial_translation(basis, 1.0, x);
    return x * t.matrix.mantissa(idx, idx).real();
  };
  // Least squares in 1/x over a spread of arguments.
  const std::vector<double> xs = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  Eigen::MatrixXd a(xs.size(), 3);
  Eigen::VectorXd y(xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    const double u = 1.0 / xs[k];
    a(static_cast<Eigen::Index>(k), 0) = 1.0;
    a(static_cast<Eigen::Index>(k), 1) = u;
    a(static_cast<Eigen::Index>(k), 2) = u * u;
    y(static_cast<Eigen::Index>(k)) = sample(xs[k]);
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(y);
  if (residual) {
    double worst = 0.0;
    for (double x : {0.3, 0.7, 1.5, 3.0, 6.0, 12.0, 24.0}) {
      const double fit = c(0) + c(1) / x + c(2) / (x * x);
      worst = std::max(worst, std::abs(fit - sample(x)) / std::abs(sample(x)));
    }
    *residual = worst;
  }
  return {c(0), c(1), c(2)};
}

namespace {

double log_prefactor(const LargeNParams& p) {
  // ln[(N-1)! / (N s)]
  return std::lgamma(static_cast<double>(p.n)) - std::log(p.n * p.separation);
}

int parity(int n) { return n % 2 ? -1 : 1; }

}  // namespace

LargeNResult largen_potential_integral(const LargeNParams& p, const AbarPolynomial& abar) {
  p.validate();
  LargeNResult r;
  r.parity = parity(p.n);
  if (p.alpha_s == 0.0) {
    r.log_magnitude = -std::numeric_limits<double>::infinity();
    return r;
  }
  const double alpha = p.alpha_s * std::pow(p.radius / p.separation, 3);
  const auto [u, w] = gauss_laguerre(std::max(p.n + 1, 8));
  // Signed log-sum-exp over nodes.
  std::vector<double> logs;
  std::vector<int> signs;
  double top = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < u.size(); ++k) {
    const double v = alpha * abar(u(k), p.n);
    if (v == 0.0) continue;
    const double l = std::log(w(k)) + p.n * std::log(std::abs(v));
    logs.push_back(l);
    signs.push_back((v < 0.0 && p.n % 2) ? -1 : 1);
    top = std::max(top, l);
  }
  double acc = 0.0;
  for (size_t k = 0; k < logs.size(); ++k) acc += signs[k] * std::exp(logs[k] - top);
  if (acc == 0.0) {
    r.log_magnitude = -std::numeric_limits<double>::infinity();
    return r;
  }
  if (acc < 0.0) r.parity = -r.parity;
  r.log_magnitude = top + std::log(std::abs(acc)) + log_prefactor(p);
  r.magnitude = std::exp(r.log_magnitude);
  return r;
}

LargeNResult largen_potential_integral(const LargeNParams& p) { return largen_potential_integral(p, default_abar()); }

double largen_potential_integral_naive(const LargeNParams& p, const AbarPolynomial& abar) {
  p.validate();
  const double alpha = p.alpha_s * std::pow(p.radius / p.separation, 3);
  const auto [u, w] = gauss_laguerre(std::max(p.n + 1, 8));
  double sum = 0.0;
  for (int k = 0; k < u.size(); ++k) sum += w(k) * std::pow(alpha * abar(u(k), p.n), p.n);
  double fact = 1.0;
  for (int k = 2; k < p.n; ++k) fact *= k;
  return fact * sum / (p.n * p.separation);
}

LargeNResult largen_asymptotic(const LargeNParams& p) {
  p.validate();
  if (p.n < 3) throw DomainError("large-n: asymptotic form needs N >= 3");
  LargeNResult r;
  r.parity = parity(p.n);
  if (p.alpha_s == 0.0) {
    r.log_magnitude = -std::numeric_limits<double>::infinity();
    return r;
  }
  if (p.lambda() < 0.0 && p.n % 2) r.parity = -r.parity;
  const double n = p.n;
  r.log_magnitude = -n - 3.0 * std::log(n) + n * std::log(std::abs(p.lambda())) + 3.0 * n * std::log(p.radius) -
                    (1.0 + 3.0 * n) * std::log(p.separation);
  r.magnitude = std::exp(r.log_magnitude);
  return r;
}

CrosscheckReport largen_crosscheck(int n, double eps_minus_one, const std::vector<double>& separations, int lmax,
                                   unsigned workers) {
  if (n < 3 || n > 4) throw DomainError("large-n crosscheck: N must be 3 or 4");
  if (!(eps_minus_one > -1.0)) throw DomainError("large-n crosscheck: eps - 1 must exceed -1");
  if (separations.size() < 2) throw DomainError("large-n crosscheck: need at least two separations");
  CrosscheckReport rep;
  rep.n = n;
  rep.eps_minus_one = eps_minus_one;
  rep.lmax = lmax;
  rep.expected_exponent = -(1.0 + 3.0 * n);
  // Small-argument TM dipole coefficient, T ~ alpha_S (xi R)^3.
  rep.alpha_s = 4.0 / (3.0 * pi) * eps_minus_one / (eps_minus_one + 3.0);
  const AbarPolynomial abar = default_abar();
  const BasisSpec basis(lmax);

  Eigen::MatrixXd a(separations.size(), 2);
  Eigen::VectorXd y(separations.size());
  for (size_t k = 0; k < separations.size(); ++k) {
    const double s = separations[k];
    if (!(s > 2.0)) throw DomainError("large-n crosscheck: separations must exceed 2R");
    SceneConfig scene;
    scene.lmax = lmax;
    scene.spectral.workers = workers;
    const double ring = s / (2.0 * std::sin(pi / n));
    for (int j = 0; j < n; ++j) {
      SphereSpec sp;
      sp.label = "s" + std::to_string(j + 1);
      sp.radius = 1.0;
      sp.center = ring * Eigen::Vector3d(std::cos(2.0 * pi * j / n), std::sin(2.0 * pi * j / n), 0.0);
      sp.permittivity = PermittivityModel::constant(1.0 + eps_minus_one);
      scene.spheres.push_back(sp);
    }
    scene.validate();
    const Integrand f = [&](double xi) {
      Eigen::VectorXd v(1);
      v(0) = -hamiltonian_cycle_trace(scene, xi, basis) / (2.0 * pi);
      return v;
    };
    const SpectralResult r = integrate_zero_t(f, 0.5 * n * (s - 2.0), scene.spectral);
    CrosscheckRow row;
    row.separation = s;
    row.energy = r.value(0);
    row.energy_error = r.error;
    row.estimate = largen_potential_integral({n, rep.alpha_s, 1.0, s}, abar).signed_value();
    row.ratio = row.energy / row.estimate;
    rep.rows.push_back(row);
    a(static_cast<Eigen::Index>(k), 0) = 1.0;
    a(static_cast<Eigen::Index>(k), 1) = std::log(s);
    y(static_cast<Eigen::Index>(k)) = std::log(std::abs(row.energy));
  }
  const Eigen::Vector2d fit = a.colPivHouseholderQr().solve(y);
  rep.fitted_exponent = fit(1);
  return rep;
}

}  // namespace casimir

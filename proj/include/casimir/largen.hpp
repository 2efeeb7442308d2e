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

#ifndef CASIMIR_LARGEN_HPP
#define CASIMIR_LARGEN_HPP

// Weak-coupling estimate of the N-sphere irreducible interaction: (N-1)!
// equally weighted closed paths of N hops at typical separation s,
//
//   V = +-(-1)^N hbar c / (N s) (N-1)! int_0^inf dX e^{-X} [alpha Abar(X)]^N,
//
// with alpha = alpha_S (R/s)^3, and its Stirling form
//
//   V ~ +-(-1)^N hbar c e^{-N} / N^3 lambda^N R^{3N} / s^{1+3N},  lambda = N alpha_S.
//
// The overall sign is not fixed by the estimate; results carry the magnitude
// and the (-1)^N factor separately.

#include <string>
#include <vector>

namespace casimir {

struct LargeNParams {
  int n = 3;
  double alpha_s = 0.0;
  double radius = 1.0;
  double separation = 4.0;  // centre-to-centre

  double lambda() const { return n * alpha_s; }
  void validate() const;
};

/// Abar as a polynomial in the per-hop argument x = X / N:
/// x^2 (c0 + c1 / x + c2 / x^2) = c0 x^2 + c1 x + c2.
struct AbarPolynomial {
  double c0 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;

  /// Value at total path variable X for N hops.
  double operator()(double big_x, int n) const {
    const double x = big_x / n;
    return (c0 * x + c1) * x + c2;
  }
  /// Constant polynomial.
  static AbarPolynomial constant(double value) { return {0.0, 0.0, value}; }
};

/// Coefficients of x e^{x} A(x) for the axial TM(1,0) -> TM(1,0) entry of the
/// outgoing-to-regular translation at x = kappa s, fitted once from the
/// waves module. The fit is exact up to rounding; `residual` receives the
/// largest relative misfit over the check points.
AbarPolynomial default_abar(double* residual = nullptr);

struct LargeNResult {
  double magnitude = 0.0;       // |V| in hbar c / L
  double log_magnitude = 0.0;   // ln |V| (-inf when V = 0)
  int parity = 1;               // (-1)^N
  std::string sign_note = "+-"; // overall sign left open by the estimate
  double signed_value() const { return parity * magnitude; }
};

/// Gauss-Laguerre evaluation in the log domain with at least N + 1 nodes.
LargeNResult largen_potential_integral(const LargeNParams& p, const AbarPolynomial& abar);
LargeNResult largen_potential_integral(const LargeNParams& p);

/// Same sum without the log domain; overflows for large N. Audit use.
double largen_potential_integral_naive(const LargeNParams& p, const AbarPolynomial& abar);

LargeNResult largen_asymptotic(const LargeNParams& p);

struct CrosscheckRow {
  double separation = 0.0;
  double energy = 0.0;        // irreducible N-cycle energy from the scattering module
  double energy_error = 0.0;
  double estimate = 0.0;      // signed largen_potential_integral value
  double ratio = 0.0;         // energy / estimate
};

struct CrosscheckReport {
  int n = 0;
  double eps_minus_one = 0.0;
  double alpha_s = 0.0;
  int lmax = 1;
  std::vector<CrosscheckRow> rows;
  double fitted_exponent = 0.0;    // d ln|energy| / d ln s, least squares
  double expected_exponent = 0.0;  // -(1 + 3N)
};

/// Regular N-gon of unit spheres with nearest-neighbour centre distance s in
/// the xy plane; the (N-1)! Hamiltonian cycles of the scattering expansion
/// are integrated over frequency at T = 0 and compared with the estimate.
CrosscheckReport largen_crosscheck(int n, double eps_minus_one, const std::vector<double>& separations,
                                   int lmax = 1, unsigned workers = 1);

}  // namespace casimir

#endif  // CASIMIR_LARGEN_HPP

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

#ifndef CASIMIR_SPECTRAL_HPP
#define CASIMIR_SPECTRAL_HPP

// Frequency integration of per-frequency integrands on the imaginary axis:
// Gauss-Laguerre / adaptive quadrature at T = 0 and Matsubara sums at T > 0.
// Integrands are vector-valued so a force (3 components) or an energy
// (1 component) go through the same code path.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace casimir {

enum class QuadratureRule { GaussLaguerre, Adaptive };

struct SpectralSettings {
  QuadratureRule rule = QuadratureRule::GaussLaguerre;
  int gl_points = 40;
  double rel_tol = 1e-6;    // in (0, 0.1]
  int adaptive_max_intervals = 400;
  int n_max = 20000;        // Matsubara terms
  double tail_tol = 1e-10;  // relative
  int chunk = 16;           // Matsubara terms evaluated per batch
  unsigned workers = 1;

  void validate() const;
};

using Integrand = std::function<Eigen::VectorXd(double xi)>;

struct SpectralResult {
  Eigen::VectorXd value;
  double error = 0.0;
  int n_points = 0;
  bool flagged = false;
  std::string diagnostics;
};

/// Nodes and weights of the n-point Gauss-Laguerre rule (weight e^{-u}).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_laguerre(int n);
/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n);

/// Evaluates f at every abscissa, in parallel over `workers` threads. The
/// output order follows `xs`, independent of the worker count.
std::vector<Eigen::VectorXd> evaluate_batch(const Integrand& f, const std::vector<double>& xs,
                                            unsigned workers);

/// Sum of the vectors in index order, by recursive halving.
Eigen::VectorXd pairwise_sum(const std::vector<Eigen::VectorXd>& terms, size_t begin, size_t end);

/// Integral over xi in (0, inf). `decay_length` is the length d in the
/// expected decay exp(-2 xi d); the Gauss-Laguerre variable is u = 2 xi d.
SpectralResult integrate_zero_t(const Integrand& f, double decay_length,
                                const SpectralSettings& settings);

/// Fixed-order Gauss-Laguerre value without error estimate.
Eigen::VectorXd gauss_laguerre_integral(const Integrand& f, double decay_length, int n,
                                        unsigned workers);

/// Adaptive Gauss-Kronrod (7/15) integral over (0, inf) after the map
/// xi = t / (2 d (1 - t)).
SpectralResult integrate_adaptive(const Integrand& f, double decay_length,
                                  const SpectralSettings& settings);

/// Limit of f as xi -> 0+ by Richardson extrapolation from xi_eps and xi_eps/2,
/// xi_eps = 1e-6 / decay_length. `flagged` is set when the two-point estimates
/// disagree with the extrapolated value by more than 1e-6 relative.
Eigen::VectorXd zero_frequency_limit(const Integrand& f, double decay_length, bool* flagged = nullptr,
                                     double xi_eps = 0.0);

/// 2 pi T [f(0)/2 + sum_{n>=1} f(2 pi n T)] with T the reduced temperature
/// k_B T L / (hbar c).
SpectralResult matsubara_sum(const Integrand& f, double reduced_temperature, double decay_length,
                             const SpectralSettings& settings);

/// Dispatches on the temperature: integrate_zero_t for T = 0, otherwise
/// matsubara_sum.
SpectralResult integrate_spectrum(const Integrand& f, double reduced_temperature,
                                  double decay_length, const SpectralSettings& settings);

}  // namespace casimir

#endif  // CASIMIR_SPECTRAL_HPP

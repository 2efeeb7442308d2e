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

#ifndef CASIMIR_SCALED_HPP
#define CASIMIR_SCALED_HPP

#include <cmath>
#include <complex>

#include <Eigen/Core>

namespace casimir {

/// Dense matrix with an exponential prefactor tracked outside the mantissa:
/// the represented value is mantissa * exp(log_scale). Products add the
/// exponents, so a closed scattering path carries exp(-xi * path length) in
/// `log_scale` rather than in (possibly underflowing) matrix entries.
template <typename Scalar>
struct ScaledMatrix {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix mantissa;
  double log_scale = 0.0;

  Eigen::Index rows() const { return mantissa.rows(); }
  Eigen::Index cols() const { return mantissa.cols(); }

  Matrix value() const { return mantissa * Scalar(std::exp(log_scale)); }

  static ScaledMatrix identity(Eigen::Index n) { return {Matrix::Identity(n, n), 0.0}; }
};

template <typename Scalar>
ScaledMatrix<Scalar> operator*(const ScaledMatrix<Scalar>& a, const ScaledMatrix<Scalar>& b) {
  return {a.mantissa * b.mantissa, a.log_scale + b.log_scale};
}

template <typename Scalar>
Scalar trace_value(const ScaledMatrix<Scalar>& a) {
  return a.mantissa.trace() * Scalar(std::exp(a.log_scale));
}

using ScaledMatrixXd = ScaledMatrix<double>;
using ScaledMatrixXcd = ScaledMatrix<std::complex<double>>;

/// A diagonal operator (e.g. Mie coefficients) with tracked exponent.
template <typename Scalar>
struct ScaledDiagonal {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mantissa;
  double log_scale = 0.0;

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> value() const {
    return mantissa * Scalar(std::exp(log_scale));
  }
};

template <typename Scalar, typename Other>
ScaledMatrix<Other> operator*(const ScaledDiagonal<Scalar>& d, const ScaledMatrix<Other>& b) {
  return {d.mantissa.template cast<Other>().asDiagonal() * b.mantissa, d.log_scale + b.log_scale};
}

}  // namespace casimir

#endif  // CASIMIR_SCALED_HPP

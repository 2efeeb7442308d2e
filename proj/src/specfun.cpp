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

#include "casimir/specfun.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "casimir/error.hpp"

namespace casimir::specfun {

namespace {

void check_order(int lmax, int cap, const char* who) {
  if (lmax < 0 || lmax > cap) {
    throw DomainError(std::string(who) + ": order " + std::to_string(lmax) +
                      " outside [0, " + std::to_string(cap) + "]");
  }
}

void check_argument(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": argument must be finite and > 0, got " +
                      std::to_string(x));
  }
}

}  // namespace

std::vector<double> sph_bessel_j_array(int lmax, double x, int cap) {
  check_order(lmax, cap, "sph_bessel_j");
  check_argument(x, "sph_bessel_j");

  // Miller's algorithm: start well above both lmax and x, recur downward and
  // normalize against the closed form of j_0 (or j_1 near a zero of j_0).
  const int n = std::max(lmax, static_cast<int>(x));
  const int start = n + 30 + static_cast<int>(std::sqrt(40.0 * (n + 1)));
  constexpr double big = 1e250;

  std::vector<double> out(static_cast<size_t>(lmax) + 1, 0.0);
  double f_next = 0.0;   // f_{l+1}
  double f = 1e-300;     // f_l
  for (int l = start; l >= 1; --l) {
    if (l <= lmax) out[static_cast<size_t>(l)] = f;
    const double f_prev = (2.0 * l + 1.0) / x * f - f_next;  // f_{l-1}
    f_next = f;
    f = f_prev;
    if (std::abs(f) > big) {
      f /= big;
      f_next /= big;
      for (int k = l - 1; k <= lmax; ++k) {
        if (k >= 0) out[static_cast<size_t>(k)] /= big;
      }
    }
  }
  out[0] = f;
  const double f1 = f_next;  // unnormalized j_1

  double j0, j1;
  if (x < 1e-3) {
    const double x2 = x * x;
    j0 = 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    j1 = x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0));
  } else {
    j0 = std::sin(x) / x;
    j1 = (std::sin(x) / x - std::cos(x)) / x;
  }
  const double scale = (std::abs(j0) >= std::abs(j1)) ? j0 / f : j1 / f1;
  for (auto& v : out) v *= scale;
  return out;
}

std::vector<double> sph_bessel_y_array(int lmax, double x, int cap) {
  check_order(lmax, cap, "sph_bessel_y");
  check_argument(x, "sph_bessel_y");
  std::vector<double> out(static_cast<size_t>(lmax) + 1);
  out[0] = -std::cos(x) / x;
  if (lmax >= 1) out[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int l = 1; l < lmax; ++l) {
    out[static_cast<size_t>(l) + 1] =
        (2.0 * l + 1.0) / x * out[static_cast<size_t>(l)] - out[static_cast<size_t>(l) - 1];
  }
  if (!std::isfinite(out.back())) {
    throw OverflowError("sph_bessel_y: y_" + std::to_string(lmax) + "(" +
                        std::to_string(x) + ") not representable");
  }
  return out;
}

double sph_bessel_j(int l, double x, int cap) {
  return sph_bessel_j_array(l, x, cap)[static_cast<size_t>(l)];
}

double sph_bessel_y(int l, double x, int cap) {
  return sph_bessel_y_array(l, x, cap)[static_cast<size_t>(l)];
}

std::complex<double> sph_hankel_plus(int l, double x, int cap) {
  return {sph_bessel_j(l, x, cap), sph_bessel_y(l, x, cap)};
}

double sph_bessel_j_derivative(int l, double x) {
  const auto j = sph_bessel_j_array(l + 1, x, default_l_hard_cap + 1);
  if (l == 0) return -j[1];
  return j[static_cast<size_t>(l) - 1] - (l + 1.0) / x * j[static_cast<size_t>(l)];
}

double sph_bessel_y_derivative(int l, double x) {
  const auto y = sph_bessel_y_array(l + 1, x, default_l_hard_cap + 1);
  if (l == 0) return -y[1];
  return y[static_cast<size_t>(l) - 1] - (l + 1.0) / x * y[static_cast<size_t>(l)];
}

std::vector<double> mod_sph_bessel_i_ratio_array(int lmax, double x, int cap) {
  check_order(lmax, cap, "mod_sph_bessel_i");
  check_argument(x, "mod_sph_bessel_i");

  // Modified Lentz evaluation of r_lmax = 1/(b_1 + 1/(b_2 + ...)),
  // b_k = (2(lmax + k) + 1)/x.
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double f = tiny, c = tiny, d = 0.0;
  bool converged = false;
  for (int k = 1; k < 100000; ++k) {
    const double b = (2.0 * (lmax + k) + 1.0) / x;
    d = b + d;
    if (d == 0.0) d = tiny;
    c = b + 1.0 / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < eps) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NumericalError("mod_sph_bessel_i: continued fraction did not converge at l=" +
                         std::to_string(lmax) + ", x=" + std::to_string(x));
  }
  std::vector<double> r(static_cast<size_t>(lmax) + 1);
  r[static_cast<size_t>(lmax)] = f;
  for (int l = lmax; l >= 1; --l) {
    r[static_cast<size_t>(l) - 1] = 1.0 / ((2.0 * l + 1.0) / x + r[static_cast<size_t>(l)]);
  }
  return r;
}

std::vector<double> mod_sph_bessel_i_scaled_array(int lmax, double x, int cap) {
  const auto r = mod_sph_bessel_i_ratio_array(lmax, x, cap);
  std::vector<double> out(static_cast<size_t>(lmax) + 1);
  out[0] = -std::expm1(-2.0 * x) / (2.0 * x);
  for (int l = 0; l < lmax; ++l) {
    out[static_cast<size_t>(l) + 1] = out[static_cast<size_t>(l)] * r[static_cast<size_t>(l)];
  }
  return out;
}

std::vector<double> mod_sph_bessel_k_scaled_array(int lmax, double x, int cap) {
  check_order(lmax, cap, "mod_sph_bessel_k");
  check_argument(x, "mod_sph_bessel_k");
  std::vector<double> out(static_cast<size_t>(lmax) + 1);
  out[0] = 0.5 * pi / x;
  if (lmax >= 1) out[1] = 0.5 * pi / x * (1.0 + 1.0 / x);
  for (int l = 1; l < lmax; ++l) {
    out[static_cast<size_t>(l) + 1] =
        out[static_cast<size_t>(l) - 1] + (2.0 * l + 1.0) / x * out[static_cast<size_t>(l)];
  }
  if (!std::isfinite(out.back())) {
    throw OverflowError("mod_sph_bessel_k: k_" + std::to_string(lmax) + "(" +
                        std::to_string(x) + ") not representable");
  }
  return out;
}

double mod_sph_bessel_scaled(ModifiedKind kind, int l, double x, int cap) {
  if (kind == ModifiedKind::I) {
    return mod_sph_bessel_i_scaled_array(l, x, cap)[static_cast<size_t>(l)];
  }
  return mod_sph_bessel_k_scaled_array(l, x, cap)[static_cast<size_t>(l)];
}

double mod_sph_bessel(ModifiedKind kind, int l, double x, int cap) {
  const double s = mod_sph_bessel_scaled(kind, l, x, cap);
  const double v = (kind == ModifiedKind::I) ? s * std::exp(x) : s * std::exp(-x);
  if (!std::isfinite(v)) {
    throw OverflowError(std::string("mod_sph_bessel: unscaled ") +
                        (kind == ModifiedKind::I ? "i_" : "k_") + std::to_string(l) +
                        "(" + std::to_string(x) + ") not representable; use the scaled form");
  }
  return v;
}

double mod_sph_bessel_derivative(ModifiedKind kind, int l, double x) {
  const double f = mod_sph_bessel(kind, l, x);
  const double up = mod_sph_bessel(kind, l + 1, x, default_l_hard_cap + 1);
  return kind == ModifiedKind::I ? up + l / x * f : -up + l / x * f;
}

// ---------------------------------------------------------------------------

namespace {

// Pbar_l^m for m >= 0 and l = m .. lmax, given u = cos(theta), s = sin(theta).
void legendre_column(int lmax, int m, double u, double s, double* out) {
  double pmm = std::sqrt((2.0 * m + 1.0) / (4.0 * pi));
  for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k - 1.0) / (2.0 * k)) * s;
  out[0] = pmm;
  if (lmax == m) return;
  out[1] = std::sqrt(2.0 * m + 3.0) * u * pmm;
  for (int l = m + 2; l <= lmax; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
    const double b = std::sqrt(((l - 1.0) * (l - 1.0) - m * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
    out[l - m] = a * (u * out[l - m - 1] - b * out[l - m - 2]);
  }
}

}  // namespace

double assoc_legendre(int l, int m, double u) {
  if (l < 0 || std::abs(m) > l) {
    throw DomainError("assoc_legendre: need |m| <= l, got l=" + std::to_string(l) +
                      ", m=" + std::to_string(m));
  }
  if (!(u >= -1.0 && u <= 1.0)) {
    throw DomainError("assoc_legendre: u outside [-1, 1]");
  }
  const int am = std::abs(m);
  std::vector<double> col(static_cast<size_t>(l - am) + 1);
  legendre_column(l, am, u, std::sqrt((1.0 - u) * (1.0 + u)), col.data());
  const double v = col.back();
  return (m < 0 && (am % 2)) ? -v : v;
}

std::vector<std::complex<double>> spherical_harmonics(int lmax, const Eigen::Vector3d& dir) {
  const double r = dir.norm();
  if (!(r > 0.0)) throw DomainError("spherical_harmonics: zero direction");
  const double u = dir.z() / r;
  const double rho = std::hypot(dir.x(), dir.y());
  const double s = rho / r;
  const std::complex<double> phase =
      rho > 0.0 ? std::complex<double>(dir.x() / rho, dir.y() / rho) : std::complex<double>(1.0, 0.0);

  std::vector<std::complex<double>> y(static_cast<size_t>((lmax + 1) * (lmax + 1)));
  std::vector<double> col(static_cast<size_t>(lmax) + 1);
  std::complex<double> eim(1.0, 0.0);
  for (int m = 0; m <= lmax; ++m) {
    legendre_column(lmax, m, u, s, col.data());
    for (int l = m; l <= lmax; ++l) {
      const std::complex<double> v = col[static_cast<size_t>(l - m)] * eim;
      y[static_cast<size_t>(sh_index(l, m))] = v;
      if (m > 0) y[static_cast<size_t>(sh_index(l, -m))] = (m % 2 ? -1.0 : 1.0) * std::conj(v);
    }
    eim *= phase;
  }
  return y;
}

// ---------------------------------------------------------------------------

namespace {

const std::array<long double, 301>& factorials() {
  static const auto table = [] {
    std::array<long double, 301> f{};
    f[0] = 1.0L;
    for (size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<long double>(i);
    return f;
  }();
  return table;
}

bool triangle(int a, int b, int c) {
  return c >= std::abs(a - b) && c <= a + b;
}

}  // namespace

double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (j1 < 0 || j2 < 0 || j3 < 0) return 0.0;
  if (m1 + m2 + m3 != 0) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(m3) > j3) return 0.0;
  if (!triangle(j1, j2, j3)) return 0.0;
  if (j1 + j2 + j3 + 1 > 300) {
    throw DomainError("wigner_3j: angular momenta too large");
  }
  const auto& f = factorials();
  auto F = [&f](int n) { return f[static_cast<size_t>(n)]; };

  const long double delta = F(j1 + j2 - j3) * F(j1 - j2 + j3) * F(-j1 + j2 + j3) / F(j1 + j2 + j3 + 1);
  const long double pre = std::sqrt(delta * F(j1 + m1) * F(j1 - m1) * F(j2 + m2) * F(j2 - m2) *
                                    F(j3 + m3) * F(j3 - m3));
  const int kmin = std::max({0, j2 - j3 - m1, j1 - j3 + m2});
  const int kmax = std::min({j1 + j2 - j3, j1 - m1, j2 + m2});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double den = F(k) * F(j3 - j2 + k + m1) * F(j3 - j1 + k - m2) *
                            F(j1 + j2 - j3 - k) * F(j1 - k - m1) * F(j2 - k + m2);
    sum += ((k % 2) ? -1.0L : 1.0L) / den;
  }
  const int phase = j1 - j2 - m3;
  const long double sign = (std::abs(phase) % 2) ? -1.0L : 1.0L;
  return static_cast<double>(sign * pre * sum);
}

double gaunt_coefficient(int l1, int m1, int l2, int m2, int l3) {
  const int m3 = -m1 - m2;
  if (l1 < 0 || l2 < 0 || l3 < 0) return 0.0;
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return 0.0;
  if (!triangle(l1, l2, l3) || ((l1 + l2 + l3) % 2)) return 0.0;
  const double norm = std::sqrt((2.0 * l1 + 1.0) * (2.0 * l2 + 1.0) * (2.0 * l3 + 1.0) / (4.0 * pi));
  return norm * wigner_3j(l1, l2, l3, 0, 0, 0) * wigner_3j(l1, l2, l3, m1, m2, m3);
}

}  // namespace casimir::specfun

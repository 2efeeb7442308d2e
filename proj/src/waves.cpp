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

#include "casimir/waves.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/specfun.hpp"

namespace casimir {

using cd = std::complex<double>;

namespace {

struct CouplingTerm {
  int q;
  double gaunt;   // integral of Y_nm conj(Y_nu,mu) Y_q,mu-m
  double weight;  // vector (A) weight for this q
};

// Scalar addition-theorem coupling for all (row = (nu,mu), col = (n,m)).
struct CouplingTable {
  int lmax;
  int half;
  std::vector<std::vector<CouplingTerm>> terms;

  const std::vector<CouplingTerm>& at(int row, int col) const {
    return terms[static_cast<size_t>(row) * static_cast<size_t>(half) + static_cast<size_t>(col)];
  }
};

std::unique_ptr<CouplingTable> build_coupling_table(int lmax) {
  auto t = std::make_unique<CouplingTable>();
  t->lmax = lmax;
  t->half = lmax * (lmax + 2);
  t->terms.resize(static_cast<size_t>(t->half) * static_cast<size_t>(t->half));
  for (int nu = 1; nu <= lmax; ++nu) {
    for (int mu = -nu; mu <= nu; ++mu) {
      const int row = BasisSpec::lm_index(nu, mu);
      for (int n = 1; n <= lmax; ++n) {
        for (int m = -n; m <= n; ++m) {
          const int col = BasisSpec::lm_index(n, m);
          auto& list = t->terms[static_cast<size_t>(row) * static_cast<size_t>(t->half) +
                                static_cast<size_t>(col)];
          const double nn = n * (n + 1.0);
          const double vv = nu * (nu + 1.0);
          for (int q = std::abs(n - nu); q <= n + nu; q += 2) {
            if (std::abs(mu - m) > q) continue;
            const double g = ((std::abs(mu) % 2) ? -1.0 : 1.0) *
                             specfun::gaunt_coefficient(n, m, nu, -mu, q);
            if (g == 0.0) continue;
            const double w = (nn + vv - q * (q + 1.0)) / (2.0 * std::sqrt(nn * vv));
            list.push_back({q, g, w});
          }
        }
      }
    }
  }
  return t;
}

const CouplingTable& coupling_table(int lmax) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CouplingTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[lmax];
  if (!slot) slot = build_coupling_table(lmax);
  return *slot;
}

// Angular-momentum component matrices over one polarization block, L . v for
// a Cartesian vector v; block diagonal in l.
Eigen::MatrixXcd angular_momentum_dot(int lmax, const Eigen::Vector3d& v) {
  const int half = lmax * (lmax + 2);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(half, half);
  const cd vplus_coef = 0.5 * cd(v.x(), -v.y());   // multiplies L+
  const cd vminus_coef = 0.5 * cd(v.x(), v.y());   // multiplies L-
  for (int l = 1; l <= lmax; ++l) {
    const double ll = l * (l + 1.0);
    for (int m = -l; m <= l; ++m) {
      const int col = BasisSpec::lm_index(l, m);
      out(col, col) += v.z() * m;
      if (m < l) out(BasisSpec::lm_index(l, m + 1), col) += vplus_coef * std::sqrt(ll - m * (m + 1.0));
      if (m > -l) out(BasisSpec::lm_index(l, m - 1), col) += vminus_coef * std::sqrt(ll - m * (m - 1.0));
    }
  }
  return out;
}

Eigen::VectorXd inverse_sqrt_ll(int lmax) {
  Eigen::VectorXd s(lmax * (lmax + 2));
  for (int l = 1; l <= lmax; ++l) {
    for (int m = -l; m <= l; ++m) s(BasisSpec::lm_index(l, m)) = 1.0 / std::sqrt(l * (l + 1.0));
  }
  return s;
}

Eigen::MatrixXcd assemble(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::Index h = a.rows();
  Eigen::MatrixXcd u(2 * h, 2 * h);
  u.topLeftCorner(h, h) = a;
  u.topRightCorner(h, h) = b;
  u.bottomLeftCorner(h, h) = b;
  u.bottomRightCorner(h, h) = a;
  return u;
}

double coef_a(int l, int m) {
  if (std::abs(m) >= l) return 0.0;
  return std::sqrt((static_cast<double>(l) * l - static_cast<double>(m) * m) /
                   ((2.0 * l + 1.0) * (2.0 * l - 1.0)));
}

TranslationWithGradient build(const BasisSpec& basis, double kappa, const Eigen::Vector3d& b,
                              WaveKind kind, bool with_gradient) {
  const int lmax = basis.lmax();
  const int half = basis.half();
  const double dist = b.norm();
  const double x = kappa * dist;
  if (!(kappa > 0.0) || !(dist > 0.0) || !std::isfinite(x)) {
    throw DomainError("translation: need kappa > 0 and a non-zero finite displacement (kappa=" +
                      std::to_string(kappa) + ", |b|=" + std::to_string(dist) + ")");
  }
  const bool outgoing = kind == WaveKind::OutgoingToRegular;
  const int qmax = 2 * lmax + (with_gradient ? 1 : 0);

  const std::vector<double> rad = outgoing ? specfun::mod_sph_bessel_k_scaled_array(qmax, x, qmax)
                                           : specfun::mod_sph_bessel_i_scaled_array(qmax, x, qmax);
  const double log_scale = outgoing ? -x : x;
  const auto ylm = specfun::spherical_harmonics(qmax, b);
  auto Y = [&ylm](int l, int m) { return ylm[static_cast<size_t>(specfun::sh_index(l, m))]; };

  // W_{q,t} = f_q(kappa |b|) Y_qt(b), f = scaled k or i.
  const int qw = 2 * lmax;
  std::vector<cd> w(static_cast<size_t>((qw + 1) * (qw + 1)));
  for (int q = 0; q <= qw; ++q) {
    for (int t = -q; t <= q; ++t) w[static_cast<size_t>(specfun::sh_index(q, t))] = rad[static_cast<size_t>(q)] * Y(q, t);
  }

  // Gradients of W from the ladder identities; sigma * kappa * f_{q+-1} plays
  // the role of (d/dr - q/r) f_q and (d/dr + (q+1)/r) f_q.
  std::array<std::vector<cd>, 3> dw;
  if (with_gradient) {
    const double sigma = outgoing ? -1.0 : 1.0;
    for (auto& v : dw) v.assign(w.size(), cd(0.0));
    for (int q = 0; q <= qw; ++q) {
      const cd up = sigma * kappa * rad[static_cast<size_t>(q) + 1];
      const cd down = q >= 1 ? sigma * kappa * rad[static_cast<size_t>(q) - 1] : cd(0.0);
      const double d2q1 = 2.0 * q + 1.0;
      for (int t = -q; t <= q; ++t) {
        cd dz = coef_a(q + 1, t) * up * Y(q + 1, t);
        cd dplus = -std::sqrt((q + t + 1.0) * (q + t + 2.0) / (d2q1 * (2.0 * q + 3.0))) * up * Y(q + 1, t + 1);
        cd dminus = std::sqrt((q - t + 1.0) * (q - t + 2.0) / (d2q1 * (2.0 * q + 3.0))) * up * Y(q + 1, t - 1);
        if (q >= 1) {
          if (std::abs(t) <= q - 1) dz += coef_a(q, t) * down * Y(q - 1, t);
          if (std::abs(t + 1) <= q - 1) {
            dplus += std::sqrt((q - t) * (q - t - 1.0) / (d2q1 * (2.0 * q - 1.0))) * down * Y(q - 1, t + 1);
          }
          if (std::abs(t - 1) <= q - 1) {
            dminus -= std::sqrt((q + t) * (q + t - 1.0) / (d2q1 * (2.0 * q - 1.0))) * down * Y(q - 1, t - 1);
          }
        }
        const auto k = static_cast<size_t>(specfun::sh_index(q, t));
        dw[0][k] = 0.5 * (dplus + dminus);
        dw[1][k] = (dplus - dminus) / cd(0.0, 2.0);
        dw[2][k] = dz;
      }
    }
  }

  const CouplingTable& table = coupling_table(lmax);
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(half, half);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(half, half);
  std::array<Eigen::MatrixXcd, 3> ds, da;
  if (with_gradient) {
    for (int j = 0; j < 3; ++j) {
      ds[static_cast<size_t>(j)] = Eigen::MatrixXcd::Zero(half, half);
      da[static_cast<size_t>(j)] = Eigen::MatrixXcd::Zero(half, half);
    }
  }

  for (int nu = 1; nu <= lmax; ++nu) {
    const double sign = (outgoing && (nu % 2)) ? -1.0 : 1.0;
    for (int mu = -nu; mu <= nu; ++mu) {
      const int row = BasisSpec::lm_index(nu, mu);
      for (int col = 0; col < half; ++col) {
        const int m = basis.mode(col).m;
        for (const auto& term : table.at(row, col)) {
          const auto k = static_cast<size_t>(specfun::sh_index(term.q, mu - m));
          const double g = 4.0 * pi * sign * term.gaunt;
          const cd v = g * std::conj(w[k]);
          s(row, col) += v;
          a(row, col) += term.weight * v;
          if (with_gradient) {
            for (size_t j = 0; j < 3; ++j) {
              const cd dv = g * std::conj(dw[j][k]);
              ds[j](row, col) += dv;
              da[j](row, col) += term.weight * dv;
            }
          }
        }
      }
    }
  }

  // Cross-polarization part from the angular momentum about the new origin:
  // B = -kappa / sqrt(nu(nu+1) n(n+1)) (b . L) S.
  const Eigen::VectorXd inv = inverse_sqrt_ll(lmax);
  const Eigen::MatrixXcd bl = angular_momentum_dot(lmax, b);
  const Eigen::MatrixXcd bmat = -kappa * (inv.asDiagonal() * (bl * s) * inv.asDiagonal());

  TranslationWithGradient out;
  out.block = {{assemble(a, bmat), log_scale}, b, kappa, kind};
  if (with_gradient) {
    for (int j = 0; j < 3; ++j) {
      const auto jj = static_cast<size_t>(j);
      const Eigen::MatrixXcd lj = angular_momentum_dot(lmax, Eigen::Vector3d::Unit(j));
      const Eigen::MatrixXcd db = -kappa * (inv.asDiagonal() * (lj * s + bl * ds[jj]) * inv.asDiagonal());
      out.gradient[jj] = {{assemble(da[jj], db), log_scale}, b, kappa, kind};
    }
  }
  return out;
}

}  // namespace

EulerAngles euler_angles_to(const Eigen::Vector3d& dir) {
  const double rho = std::hypot(dir.x(), dir.y());
  return {rho > 0.0 ? std::atan2(dir.y(), dir.x()) : 0.0, std::atan2(rho, dir.z()), 0.0};
}

Eigen::MatrixXd wigner_d(int l, double beta) {
  const int n = 2 * l + 1;
  // J_y in the |l m> basis, Hermitian; d(beta) = exp(-i beta J_y).
  Eigen::MatrixXcd jy = Eigen::MatrixXcd::Zero(n, n);
  for (int m = -l; m < l; ++m) {
    const double c = std::sqrt(l * (l + 1.0) - m * (m + 1.0));
    jy(m + 1 + l, m + l) = c / cd(0.0, 2.0);   // J+ / 2i
    jy(m + l, m + 1 + l) = -c / cd(0.0, 2.0);  // -J- / 2i
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jy);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<cd>() * cd(0.0, -beta)).array().exp().matrix();
  const Eigen::MatrixXcd d = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return d.real();
}

Eigen::MatrixXcd rotate_block(const BasisSpec& basis, const EulerAngles& angles) {
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (int l = 1; l <= basis.lmax(); ++l) {
    const Eigen::MatrixXd d = wigner_d(l, angles.beta);
    for (int mp = -l; mp <= l; ++mp) {
      for (int m = -l; m <= l; ++m) {
        const cd v = std::exp(cd(0.0, -mp * angles.alpha)) * d(mp + l, m + l) *
                     std::exp(cd(0.0, -m * angles.gamma));
        for (auto pol : {Polarization::TE, Polarization::TM}) {
          r(basis.index(pol, l, mp), basis.index(pol, l, m)) = v;
        }
      }
    }
  }
  return r;
}

TranslationBlock axial_translation(const BasisSpec& basis, double kappa, double d, WaveKind kind) {
  if (!(d >= 0.0)) throw DomainError("axial_translation: need d >= 0");
  return translation_matrix(basis, kappa, Eigen::Vector3d(0.0, 0.0, d), kind);
}

TranslationBlock translation_matrix(const BasisSpec& basis, double kappa,
                                    const Eigen::Vector3d& displacement, WaveKind kind) {
  if (kind == WaveKind::RegularToRegular && displacement.isZero(0.0)) {
    return {ScaledMatrixXcd::identity(basis.dim()), displacement, kappa, kind};
  }
  return build(basis, kappa, displacement, kind, false).block;
}

TranslationBlock translation_matrix_via_rotation(const BasisSpec& basis, double kappa,
                                                 const Eigen::Vector3d& displacement, WaveKind kind) {
  const double d = displacement.norm();
  TranslationBlock axial = axial_translation(basis, kappa, d, kind);
  const Eigen::MatrixXcd rot = rotate_block(basis, euler_angles_to(displacement));
  axial.matrix.mantissa = rot * axial.matrix.mantissa * rot.adjoint();
  axial.displacement = displacement;
  return axial;
}

TranslationWithGradient translation_with_gradient(const BasisSpec& basis, double kappa,
                                                  const Eigen::Vector3d& displacement, WaveKind kind) {
  return build(basis, kappa, displacement, kind, true);
}

std::array<TranslationBlock, 3> translation_gradient(const BasisSpec& basis, double kappa,
                                                     const Eigen::Vector3d& displacement, WaveKind kind) {
  return build(basis, kappa, displacement, kind, true).gradient;
}

std::array<Eigen::MatrixXcd, 3> translation_gradient_fd(const BasisSpec& basis, double kappa,
                                                        const Eigen::Vector3d& displacement,
                                                        double step, WaveKind kind) {
  const double ref = translation_matrix(basis, kappa, displacement, kind).matrix.log_scale;
  auto shifted = [&](const Eigen::Vector3d& b) {
    const auto t = translation_matrix(basis, kappa, b, kind);
    return Eigen::MatrixXcd(t.matrix.mantissa * std::exp(t.matrix.log_scale - ref));
  };
  std::array<Eigen::MatrixXcd, 3> out;
  for (int j = 0; j < 3; ++j) {
    auto central = [&](double h) {
      const Eigen::Vector3d e = h * Eigen::Vector3d::Unit(j);
      return Eigen::MatrixXcd((shifted(displacement + e) - shifted(displacement - e)) / (2.0 * h));
    };
    out[static_cast<size_t>(j)] = (4.0 * central(0.5 * step) - central(step)) / 3.0;
  }
  return out;
}

double gradient_audit(const BasisSpec& basis, double kappa, const Eigen::Vector3d& displacement,
                      WaveKind kind) {
  const auto analytic = translation_gradient(basis, kappa, displacement, kind);
  const auto fd = translation_gradient_fd(basis, kappa, displacement, 1e-5 * displacement.norm(), kind);
  double num = 0.0, den = 0.0;
  for (size_t j = 0; j < 3; ++j) {
    num = std::max(num, (analytic[j].matrix.mantissa - fd[j]).cwiseAbs().maxCoeff());
    den = std::max(den, analytic[j].matrix.mantissa.cwiseAbs().maxCoeff());
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace casimir

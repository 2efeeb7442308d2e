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

#include "casimir/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/LU>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/mie.hpp"
#include "casimir/waves.hpp"

namespace casimir {

Order Order::fixed(int k) {
  if (k < 1 || k > 4) throw DomainError("order: fixed order must lie in [1, 4], got " + std::to_string(k));
  return {false, k};
}

Order Order::parse(const std::string& text) {
  if (text == "resummed") return all();
  try {
    size_t pos = 0;
    const int k = std::stoi(text, &pos);
    if (pos == text.size()) return fixed(k);
  } catch (const std::logic_error&) {
  }
  throw ValidationError("order: expected 'resummed' or an integer in [1, 4], got '" + text + "'");
}

namespace {

using cd = std::complex<double>;

struct Medium {
  double kappa;
  std::vector<ScaledDiagonal<double>> mie;
};

Medium medium_at(const SceneConfig& scene, double xi, const BasisSpec& basis) {
  if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("scattering: xi must be finite and > 0");
  Medium m;
  const double eps_b = scene.background(xi_to_ev(xi, scene.length_unit_m));
  m.kappa = std::sqrt(eps_b) * xi;
  for (const auto& s : scene.spheres) m.mie.push_back(mie_block(s, scene.background, xi, basis, scene.length_unit_m));
  return m;
}

// Balanced block sgn(T_i) |T_i|^{1/2} U_ij |T_j|^{1/2}, a similarity transform
// of T_i U_ij that keeps small-xi blocks between different l of order one.
Eigen::MatrixXcd scaled_block(const Medium& med, const SceneConfig& scene, int i, int j, const Eigen::MatrixXcd& u,
                              double u_log) {
  const auto& ti = med.mie[static_cast<size_t>(i)];
  const auto& tj = med.mie[static_cast<size_t>(j)];
  const double e = 0.5 * ti.log_scale + 0.5 * tj.log_scale + u_log;
  const Eigen::ArrayXd left = ti.mantissa.array().sign() * ti.mantissa.array().abs().sqrt();
  const Eigen::ArrayXd right = tj.mantissa.array().abs().sqrt();
  (void)scene;
  return std::exp(e) * (left.matrix().cast<cd>().asDiagonal() * u * right.matrix().cast<cd>().asDiagonal());
}

struct Assembly {
  Eigen::MatrixXcd m;
  std::array<Eigen::MatrixXcd, 3> dm;
};

Assembly assemble(const SceneConfig& scene, double xi, const BasisSpec& basis, int target,
                  const ForceOptions* options) {
  const Medium med = medium_at(scene, xi, basis);
  const int n = static_cast<int>(scene.spheres.size());
  const int d = basis.dim();
  Assembly a;
  a.m = Eigen::MatrixXcd::Zero(n * d, n * d);
  if (target >= 0) {
    for (auto& g : a.dm) g = Eigen::MatrixXcd::Zero(n * d, n * d);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Eigen::Vector3d b = scene.spheres[static_cast<size_t>(i)].center - scene.spheres[static_cast<size_t>(j)].center;
      const bool grad = target >= 0 && (i == target || j == target);
      if (!grad) {
        const auto u = translation_matrix(basis, med.kappa, b);
        a.m.block(i * d, j * d, d, d) = scaled_block(med, scene, i, j, u.matrix.mantissa, u.matrix.log_scale);
        continue;
      }
      const auto u = translation_with_gradient(basis, med.kappa, b);
      a.m.block(i * d, j * d, d, d) = scaled_block(med, scene, i, j, u.block.matrix.mantissa, u.block.matrix.log_scale);
      if (options && options->verify_gradient) {
        const double audit = gradient_audit(basis, med.kappa, b);
        if (!(audit <= options->gradient_tol)) {
          std::ostringstream os;
          os << "gradient audit failed for pair (" << scene.spheres[static_cast<size_t>(i)].label << ", "
             << scene.spheres[static_cast<size_t>(j)].label << ") at xi=" << xi << ": relative deviation " << audit;
          throw NumericalError(os.str());
        }
      }
      // b = c_i - c_j, so d/dc_t is +grad U when i = t and -grad U when j = t.
      const double sign = i == target ? 1.0 : -1.0;
      for (size_t c = 0; c < 3; ++c) {
        a.dm[c].block(i * d, j * d, d, d) =
            sign * scaled_block(med, scene, i, j, u.gradient[c].matrix.mantissa, u.gradient[c].matrix.log_scale);
      }
    }
  }
  return a;
}

double trace_product(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

Eigen::MatrixXcd identity_minus(const Eigen::MatrixXcd& m) {
  return Eigen::MatrixXcd::Identity(m.rows(), m.cols()) - m;
}

double logdet_one_minus(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  const double norm = m.norm();
  if (norm < 0.25) {
    // -sum tr(M^k)/k keeps full relative accuracy when det(1 - M) is close to 1.
    // |tr M^j| <= |M|_F^j, so the remainder after k terms is below
    // |M|_F^(k+1) / (1 - |M|_F). Single terms are no guide: for two bodies
    // every odd trace vanishes.
    double sum = 0.0;
    Eigen::MatrixXcd p = m;
    double power = norm;
    for (int k = 1; k <= 400; ++k) {
      sum -= p.trace().real() / k;
      power *= norm;
      if (power / (1.0 - norm) <= 1e-17 * std::abs(sum) || power == 0.0) break;
      p = p * m;
    }
    return sum;
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(identity_minus(m));
  const Eigen::MatrixXcd& lum = lu.matrixLU();
  cd sum = 0.0;
  for (Eigen::Index k = 0; k < lum.rows(); ++k) {
    if (lum(k, k) == cd(0.0)) throw SingularError("scattering: 1 - M is singular");
    sum += std::log(lum(k, k));
  }
  return sum.real();
}

double decay_length_for(const SceneConfig& scene, const ForceOptions& options) {
  return options.decay_length > 0.0 ? options.decay_length : scene.min_gap();
}

int truncation_partner(int lmax) { return lmax > 1 ? lmax - 1 : 2; }

void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

void merge_flags(bool& flagged, std::string& diag, bool f, const std::string& d) {
  if (!f) return;
  flagged = true;
  if (!diag.empty()) diag += "; ";
  diag += d;
}

}  // namespace

Eigen::MatrixXcd round_trip_operator(const SceneConfig& scene, double xi, const BasisSpec& basis) {
  return assemble(scene, xi, basis, -1, nullptr).m;
}

Eigen::Vector3d force_integrand(const SceneConfig& scene, int target, double xi, const BasisSpec& basis,
                                const ForceOptions& options) {
  require(target >= 0 && target < static_cast<int>(scene.spheres.size()), "force: target index out of range");
  const Assembly a = assemble(scene, xi, basis, target, &options);
  Eigen::Vector3d out;
  if (options.order.resummed) {
    // (1 - M)^{-1} = 1 + Y with Y = (1 - M)^{-1} M; tr(dM) vanishes because
    // the diagonal blocks are zero.
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(identity_minus(a.m));
    if (!(lu.rcond() > 1e-14)) {
      std::ostringstream os;
      os << "scattering: 1 - M is numerically singular at xi=" << xi << " (rcond " << lu.rcond() << ")";
      throw SingularError(os.str());
    }
    const Eigen::MatrixXcd y = lu.solve(a.m);
    for (int c = 0; c < 3; ++c) out(c) = trace_product(y, a.dm[static_cast<size_t>(c)]);
  } else {
    if (options.order.k == 1) return Eigen::Vector3d::Zero();
    Eigen::MatrixXcd p = a.m;
    for (int k = 2; k < options.order.k; ++k) p = p * a.m;
    for (int c = 0; c < 3; ++c) out(c) = trace_product(p, a.dm[static_cast<size_t>(c)]);
  }
  return out / (2.0 * pi);
}

double logdet_energy_oracle(const SceneConfig& scene, double xi) {
  return logdet_energy_oracle(scene, xi, BasisSpec(scene.lmax));
}

double logdet_energy_oracle(const SceneConfig& scene, double xi, const BasisSpec& basis) {
  return logdet_one_minus(round_trip_operator(scene, xi, basis));
}

double energy_integrand(const SceneConfig& scene, double xi, const BasisSpec& basis, Order order) {
  const Eigen::MatrixXcd m = round_trip_operator(scene, xi, basis);
  if (order.resummed) return logdet_one_minus(m) / (2.0 * pi);
  if (order.k == 1) return 0.0;
  Eigen::MatrixXcd p = m;
  for (int k = 2; k <= order.k; ++k) p = p * m;
  return -p.trace().real() / order.k / (2.0 * pi);
}

namespace {

SpectralResult energy_spectrum(const SceneConfig& scene, int lmax, double decay, Order order) {
  const BasisSpec basis(lmax);
  const Integrand f = [&](double xi) {
    Eigen::VectorXd v(1);
    v(0) = energy_integrand(scene, xi, basis, order);
    return v;
  };
  return integrate_spectrum(f, scene.reduced_temperature(), decay, scene.spectral);
}

SpectralResult force_spectrum(const SceneConfig& scene, int target, int lmax, double decay,
                              const ForceOptions& options) {
  const BasisSpec basis(lmax);
  const Integrand f = [&](double xi) -> Eigen::VectorXd {
    return force_integrand(scene, target, xi, basis, options);
  };
  return integrate_spectrum(f, scene.reduced_temperature(), decay, scene.spectral);
}

}  // namespace

EnergyResult interaction_energy(const SceneConfig& scene, const ForceOptions& options) {
  scene.validate();
  require(scene.spheres.size() >= 2, "energy: need at least two spheres");
  const double decay = decay_length_for(scene, options);
  const SpectralResult r = energy_spectrum(scene, scene.lmax, decay, options.order);
  EnergyResult e;
  e.energy = r.value(0);
  e.quadrature_error = r.error;
  if (options.truncation_estimate) {
    const SpectralResult alt = energy_spectrum(scene, truncation_partner(scene.lmax), decay, options.order);
    e.truncation_error = std::abs(alt.value(0) - e.energy);
    merge_flags(e.flagged, e.diagnostics, alt.flagged, alt.diagnostics);
  }
  e.error = e.quadrature_error + e.truncation_error;
  e.joule_per_unit = codata::hbar_c / scene.length_unit_m;
  e.lmax = scene.lmax;
  e.n_freq = r.n_points;
  e.order = options.order;
  e.exponent_scale = 2.0 * decay;
  merge_flags(e.flagged, e.diagnostics, r.flagged, r.diagnostics);
  return e;
}

ForceResult casimir_force(const SceneConfig& scene, int target, const ForceOptions& options) {
  scene.validate();
  require(scene.spheres.size() >= 2, "force: need at least two spheres");
  require(target >= 0 && target < static_cast<int>(scene.spheres.size()), "force: target index out of range");
  const double decay = decay_length_for(scene, options);
  const SpectralResult r = force_spectrum(scene, target, scene.lmax, decay, options);
  ForceResult f;
  f.force = r.value.head<3>();
  f.quadrature_error = r.error;
  if (options.truncation_estimate) {
    ForceOptions alt_opts = options;
    alt_opts.verify_gradient = false;
    const SpectralResult alt = force_spectrum(scene, target, truncation_partner(scene.lmax), decay, alt_opts);
    f.truncation_error = (alt.value.head<3>() - f.force).norm();
    merge_flags(f.flagged, f.diagnostics, alt.flagged, alt.diagnostics);
  }
  f.error = f.quadrature_error + f.truncation_error;
  f.newton_per_unit = codata::hbar_c / (scene.length_unit_m * scene.length_unit_m);
  f.lmax = scene.lmax;
  f.n_freq = r.n_points;
  f.order = options.order;
  f.exponent_scale = 2.0 * decay;
  merge_flags(f.flagged, f.diagnostics, r.flagged, r.diagnostics);
  if (!f.force.allFinite()) throw NumericalError("force: non-finite result");
  return f;
}

namespace {

// Three-body integrands f_123 - sum of pair terms on shared nodes, so the
// quadrature and truncation deltas are those of the combination itself.
SpectralResult three_body_force_spectrum(const SceneConfig& scene, int target, int lmax, double decay,
                                         const ForceOptions& options) {
  const BasisSpec basis(lmax);
  std::vector<SceneConfig> pairs;
  for (int other = 0; other < 3; ++other) {
    if (other != target) pairs.push_back(scene.subscene({target, other}));
  }
  const Integrand f = [&](double xi) -> Eigen::VectorXd {
    const Eigen::Vector3d full = force_integrand(scene, target, xi, basis, options);
    Eigen::VectorXd v = full;
    for (const auto& p : pairs) v -= force_integrand(p, 0, xi, basis, options);
    return v;
  };
  return integrate_spectrum(f, scene.reduced_temperature(), decay, scene.spectral);
}

SpectralResult three_body_energy_spectrum(const SceneConfig& scene, int lmax, double decay, Order order) {
  const BasisSpec basis(lmax);
  std::vector<SceneConfig> pairs;
  for (const auto& members : std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}}) {
    pairs.push_back(scene.subscene(members));
  }
  const Integrand f = [&](double xi) -> Eigen::VectorXd {
    Eigen::VectorXd v(1);
    v(0) = energy_integrand(scene, xi, basis, order);
    for (const auto& p : pairs) v(0) -= energy_integrand(p, xi, basis, order);
    return v;
  };
  return integrate_spectrum(f, scene.reduced_temperature(), decay, scene.spectral);
}

}  // namespace

ForceResult three_body_force(const SceneConfig& scene, int target, const ForceOptions& options) {
  scene.validate();
  require(scene.spheres.size() == 3, "three-body: scene must contain exactly three spheres");
  require(target >= 0 && target < 3, "three-body: target index out of range");
  const double decay = decay_length_for(scene, options);
  const SpectralResult r = three_body_force_spectrum(scene, target, scene.lmax, decay, options);
  ForceResult f;
  f.force = r.value.head<3>();
  f.quadrature_error = r.error;
  if (options.truncation_estimate) {
    ForceOptions alt_opts = options;
    alt_opts.verify_gradient = false;
    const SpectralResult alt = three_body_force_spectrum(scene, target, truncation_partner(scene.lmax), decay, alt_opts);
    f.truncation_error = (alt.value.head<3>() - f.force).norm();
    merge_flags(f.flagged, f.diagnostics, alt.flagged, alt.diagnostics);
  }
  f.error = f.quadrature_error + f.truncation_error;
  f.newton_per_unit = codata::hbar_c / (scene.length_unit_m * scene.length_unit_m);
  f.lmax = scene.lmax;
  f.n_freq = r.n_points;
  f.order = options.order;
  f.exponent_scale = 2.0 * decay;
  merge_flags(f.flagged, f.diagnostics, r.flagged, r.diagnostics);
  if (!f.force.allFinite()) throw NumericalError("three-body: non-finite force");
  return f;
}

EnergyResult three_body_energy(const SceneConfig& scene, const ForceOptions& options) {
  scene.validate();
  require(scene.spheres.size() == 3, "three-body: scene must contain exactly three spheres");
  const double decay = decay_length_for(scene, options);
  const SpectralResult r = three_body_energy_spectrum(scene, scene.lmax, decay, options.order);
  EnergyResult e;
  e.energy = r.value(0);
  e.quadrature_error = r.error;
  if (options.truncation_estimate) {
    const SpectralResult alt = three_body_energy_spectrum(scene, truncation_partner(scene.lmax), decay, options.order);
    e.truncation_error = std::abs(alt.value(0) - e.energy);
    merge_flags(e.flagged, e.diagnostics, alt.flagged, alt.diagnostics);
  }
  e.error = e.quadrature_error + e.truncation_error;
  e.joule_per_unit = codata::hbar_c / scene.length_unit_m;
  e.lmax = scene.lmax;
  e.n_freq = r.n_points;
  e.order = options.order;
  e.exponent_scale = 2.0 * decay;
  merge_flags(e.flagged, e.diagnostics, r.flagged, r.diagnostics);
  if (!std::isfinite(e.energy)) throw NumericalError("three-body: non-finite energy");
  return e;
}

PotentialResult potential_along_path(const SceneConfig& scene, int target, const Eigen::Vector3d& direction,
                                     const std::vector<double>& offsets, const ForceOptions& options) {
  scene.validate();
  require(scene.spheres.size() >= 2, "potential: need at least two spheres");
  require(direction.norm() > 0.0, "potential: direction must be non-zero");
  require(!offsets.empty(), "potential: no offsets");
  const Eigen::Vector3d dir = direction.normalized();
  const Eigen::Vector3d base = scene.spheres[static_cast<size_t>(target)].center;

  auto moved = [&](double s) {
    SceneConfig sc = scene.with_center(target, base + s * dir);
    sc.validate();
    return sc;
  };
  // Distance from the target to the nearest other centre, the tail variable.
  auto nearest = [&](double s) {
    double r = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < scene.spheres.size(); ++j) {
      if (static_cast<int>(j) == target) continue;
      r = std::min(r, (base + s * dir - scene.spheres[j].center).norm());
    }
    return r;
  };

  std::vector<double> sorted = offsets;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  // Panel boundaries: all requested offsets, refined so that no panel is
  // longer than a quarter of the local gap, continued until the nearest
  // distance has grown fourfold.
  const double r_last = nearest(sorted.back());
  std::vector<double> bounds;
  const double min_panel = 1e-9 * (1.0 + std::abs(sorted.back()));
  for (size_t k = 0; k < sorted.size(); ++k) {
    double s = sorted[k];
    bounds.push_back(s);
    const double stop = k + 1 < sorted.size() ? sorted[k + 1] : std::numeric_limits<double>::infinity();
    for (;;) {
      const double gap = moved(s).min_gap_from(target);
      const double next = s + std::max(0.25 * gap, min_panel);
      if (k + 1 < sorted.size()) {
        if (next >= stop) break;
      } else if (nearest(next) >= 4.0 * r_last && next - sorted.back() >= 4.0) {
        bounds.push_back(next);
        break;
      }
      bounds.push_back(next);
      s = next;
    }
  }

  const auto [gx, gw] = gauss_legendre(6);
  PotentialResult out;
  out.lmax = scene.lmax;
  ForceOptions fopts = options;
  fopts.truncation_estimate = false;

  auto force_along = [&](double s, double* err) {
    const ForceResult f = casimir_force(moved(s), target, fopts);
    out.n_freq = f.n_freq;
    out.exponent_scale = f.exponent_scale;
    ++out.n_force;
    merge_flags(out.flagged, out.diagnostics, f.flagged, f.diagnostics);
    if (err) *err = f.error;
    return f.force.dot(dir);
  };

  // Panel integrals of F . dir.
  const size_t npan = bounds.size() - 1;
  std::vector<double> panel(npan), panel_err(npan);
  for (size_t p = 0; p < npan; ++p) {
    const double a = bounds[p], b = bounds[p + 1];
    const double h = 0.5 * (b - a), c = 0.5 * (a + b);
    double sum = 0.0, err = 0.0;
    for (int k = 0; k < gx.size(); ++k) {
      double e = 0.0;
      sum += gw(k) * force_along(c + h * gx(k), &e);
      err += gw(k) * e;
    }
    panel[p] = h * sum;
    panel_err[p] = h * err;
  }

  // Power-law tail F ~ A r^{-q} beyond the last boundary.
  const double s_end = bounds.back();
  const double s_prev = bounds[bounds.size() - 2];
  const double f_end = force_along(s_end, nullptr);
  const double f_prev = force_along(s_prev, nullptr);
  const double r_end = nearest(s_end), r_prev = nearest(s_prev);
  double tail = 0.0, tail_err = 0.0;
  if (f_end == 0.0) {
    tail = 0.0;
  } else if (f_end * f_prev > 0.0 && std::abs(f_prev) > std::abs(f_end) && r_end > r_prev) {
    const double q = std::log(f_prev / f_end) / std::log(r_end / r_prev);
    out.tail_exponent = q;
    if (q > 1.0) {
      tail = f_end * r_end / (q - 1.0);
      tail_err = 0.1 * std::abs(tail);
    } else {
      tail_err = std::abs(f_end) * r_end;
      merge_flags(out.flagged, out.diagnostics, true, "potential: tail exponent <= 1");
    }
  } else {
    tail_err = std::abs(f_end) * r_end;
    merge_flags(out.flagged, out.diagnostics, true, "potential: non-monotone force tail");
  }

  // Accumulate from the far end inwards.
  std::vector<double> v_at(bounds.size()), e_at(bounds.size());
  v_at.back() = tail;
  e_at.back() = tail_err;
  for (size_t p = npan; p-- > 0;) {
    v_at[p] = v_at[p + 1] + panel[p];
    e_at[p] = e_at[p + 1] + panel_err[p];
  }
  for (double s : offsets) {
    const auto it = std::lower_bound(bounds.begin(), bounds.end(), s);
    const auto idx = static_cast<size_t>(it - bounds.begin());
    out.offsets.push_back(s);
    out.value.push_back(v_at[idx]);
    out.error.push_back(e_at[idx]);
  }
  if (options.truncation_estimate) {
    SceneConfig alt = scene;
    alt.lmax = truncation_partner(scene.lmax);
    ForceOptions alt_opts = options;
    alt_opts.truncation_estimate = false;
    alt_opts.verify_gradient = false;
    const PotentialResult p = potential_along_path(alt, target, direction, offsets, alt_opts);
    for (size_t k = 0; k < out.value.size(); ++k) out.error[k] += std::abs(p.value[k] - out.value[k]);
    merge_flags(out.flagged, out.diagnostics, p.flagged, p.diagnostics);
  }
  return out;
}

ScaledMatrixXcd closed_path_product(const SceneConfig& scene, const std::vector<int>& path, double xi,
                                    const BasisSpec& basis) {
  require(path.size() >= 2, "path: need at least two hops");
  const Medium med = medium_at(scene, xi, basis);
  ScaledMatrixXcd acc = ScaledMatrixXcd::identity(basis.dim());
  for (size_t k = 0; k < path.size(); ++k) {
    const int i = path[k];
    const int j = path[(k + 1) % path.size()];
    require(i != j, "path: consecutive spheres must differ");
    const Eigen::Vector3d b = scene.spheres[static_cast<size_t>(i)].center - scene.spheres[static_cast<size_t>(j)].center;
    const auto u = translation_matrix(basis, med.kappa, b);
    acc = acc * (med.mie[static_cast<size_t>(i)] * u.matrix);
  }
  return acc;
}

double hamiltonian_cycle_trace(const SceneConfig& scene, double xi, const BasisSpec& basis) {
  const int n = static_cast<int>(scene.spheres.size());
  require(n >= 2, "cycles: need at least two spheres");
  const Eigen::MatrixXcd m = round_trip_operator(scene, xi, basis);
  const int d = basis.dim();
  std::vector<int> rest(static_cast<size_t>(n - 1));
  std::iota(rest.begin(), rest.end(), 1);
  double sum = 0.0;
  do {
    Eigen::MatrixXcd p = m.block(0, rest[0] * d, d, d);
    for (size_t k = 0; k + 1 < rest.size(); ++k) p = p * m.block(rest[k] * d, rest[k + 1] * d, d, d);
    p = p * m.block(rest.back() * d, 0, d, d);
    sum += p.trace().real();
  } while (std::next_permutation(rest.begin(), rest.end()));
  return sum;
}

}  // namespace casimir

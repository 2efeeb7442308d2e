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

#include "casimir/runs.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <memory>
#include <random>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/error.hpp"
#include "casimir/largen.hpp"
#include "casimir/specfun.hpp"
#include "casimir/waves.hpp"

namespace casimir {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ValidationError("sweep: cannot read " + what + " from '" + s + "'");
  }
  return v;
}

int parse_axis(const std::string& s) {
  if (s == "x") return 0;
  if (s == "y") return 1;
  if (s == "z") return 2;
  throw ValidationError("sweep: axis must be x, y or z, got '" + s + "'");
}

SweepSpec::Axis parse_axis_spec(const std::vector<std::string>& f, size_t first) {
  if (f.size() - first != 4 && f.size() - first != 5) {
    throw ValidationError("sweep: expected AXIS:START:STOP:N[:log]");
  }
  SweepSpec::Axis a;
  a.axis = parse_axis(f[first]);
  a.start = parse_double(f[first + 1], "start");
  a.stop = parse_double(f[first + 2], "stop");
  const double n = parse_double(f[first + 3], "point count");
  if (n != std::floor(n) || n < 2 || n > 100000) throw ValidationError("sweep: point count must be an integer >= 2");
  a.n_points = static_cast<int>(n);
  if (f.size() - first == 5) {
    if (f[first + 4] == "log") {
      a.log = true;
    } else if (f[first + 4] != "linear") {
      throw ValidationError("sweep: spacing must be 'linear' or 'log'");
    }
  }
  if (!(a.start < a.stop)) throw ValidationError("sweep: start must be below stop");
  if (a.log && !(a.start > 0.0)) throw ValidationError("sweep: log spacing needs start > 0");
  return a;
}

const char* axis_name(int axis) { return axis == 0 ? "x" : axis == 1 ? "y" : "z"; }

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  CsvWriter& operator<<(double v) { return put(format_number(v)); }
  CsvWriter& operator<<(int v) { return put(std::to_string(v)); }
  CsvWriter& operator<<(const std::string& v) { return put(v); }
  CsvWriter& operator<<(const char* v) { return put(v); }
  void end() {
    os_ << '\n';
    first_ = true;
  }

 private:
  CsvWriter& put(const std::string& s) {
    if (!first_) os_ << ',';
    os_ << s;
    first_ = false;
    return *this;
  }
  std::ostream& os_;
  bool first_ = true;
};

struct Point {
  std::vector<double> params;
  Eigen::Vector3d center;
};

std::vector<Point> sweep_points(const SceneConfig& scene, const std::optional<SweepSpec>& sweep, int* moved) {
  if (!sweep) {
    *moved = -1;
    return {{{}, Eigen::Vector3d::Zero()}};
  }
  *moved = scene.index_of(sweep->label);
  const Eigen::Vector3d base = scene.spheres[static_cast<size_t>(*moved)].center;
  std::vector<Point> out;
  const auto v0 = sweep->axes[0].values();
  std::vector<double> v1 = sweep->axes.size() > 1 ? sweep->axes[1].values() : std::vector<double>{0.0};
  for (double a : v0) {
    for (double b : v1) {
      Point p;
      p.center = base;
      p.center(sweep->axes[0].axis) = a;
      p.params.push_back(a);
      if (sweep->axes.size() > 1) {
        p.center(sweep->axes[1].axis) = b;
        p.params.push_back(b);
      }
      out.push_back(p);
    }
  }
  return out;
}

void sweep_header(CsvWriter& w, const std::optional<SweepSpec>& sweep) {
  if (!sweep) {
    w << "sweep";
    return;
  }
  for (const auto& a : sweep->axes) w << std::string("sweep_") + axis_name(a.axis);
}

void echo_header(CsvWriter& w) {
  w << "target" << "moved" << "center_x" << "center_y" << "center_z" << "order" << "temperature_K"
    << "eps_background" << "length_unit_m" << "units" << "flagged";
}

void echo_row(CsvWriter& w, const SceneConfig& sc, const std::string& target, int moved, const Order& order,
              const std::string& units, bool flagged) {
  const Eigen::Vector3d c = moved >= 0 ? sc.spheres[static_cast<size_t>(moved)].center : Eigen::Vector3d::Zero();
  w << target << (moved >= 0 ? sc.spheres[static_cast<size_t>(moved)].label : std::string()) << c.x() << c.y()
    << c.z() << order.str() << sc.temperature << sc.background.describe() << sc.length_unit_m << units
    << (flagged ? 1 : 0);
}

std::string resolve_target(const SceneConfig& sc, const RunOptions& o) {
  if (o.target) return *o.target;
  if (!sc.target.empty()) return sc.target;
  throw ValidationError("no target sphere: pass --target or set \"target\" in the scene");
}

ForceOptions force_options(const RunOptions& o) {
  ForceOptions f;
  f.order = o.order;
  f.verify_gradient = o.verify_gradient;
  return f;
}

void note(RunOutcome& out, bool flagged, const std::string& diag) {
  if (!flagged) return;
  ++out.flagged;
  out.diagnostics.push_back(diag);
}

}  // namespace

std::vector<double> SweepSpec::Axis::values() const {
  std::vector<double> v(static_cast<size_t>(n_points));
  for (int k = 0; k < n_points; ++k) {
    const double t = static_cast<double>(k) / (n_points - 1);
    v[static_cast<size_t>(k)] = log ? start * std::pow(stop / start, t) : start + t * (stop - start);
  }
  v.back() = stop;
  return v;
}

SweepSpec SweepSpec::parse(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.empty() || parts.size() > 2) throw ValidationError("sweep: expected one or two axes");
  SweepSpec s;
  const auto f0 = split(parts[0], ':');
  if (f0.size() < 5) throw ValidationError("sweep: expected LABEL:AXIS:START:STOP:N[:log]");
  s.label = f0[0];
  if (s.label.empty()) throw ValidationError("sweep: empty sphere label");
  s.axes.push_back(parse_axis_spec(f0, 1));
  if (parts.size() == 2) {
    s.axes.push_back(parse_axis_spec(split(parts[1], ':'), 0));
    if (s.axes[1].axis == s.axes[0].axis) throw ValidationError("sweep: grid axes must differ");
  }
  return s;
}

SceneConfig apply_overrides(SceneConfig scene, const RunOptions& options) {
  if (options.lmax) scene.lmax = *options.lmax;
  if (options.temperature) scene.temperature = *options.temperature;
  if (options.target) scene.target = *options.target;
  if (options.workers < 1) throw ValidationError("workers must be >= 1");
  scene.spectral.workers = options.workers;
  scene.validate();
  return scene;
}

RunOutcome run_force(const SceneConfig& scene0, const RunOptions& options, std::ostream& csv) {
  const SceneConfig scene = apply_overrides(scene0, options);
  const std::string target = resolve_target(scene, options);
  const int t = scene.index_of(target);
  int moved = -1;
  const auto points = sweep_points(scene, options.sweep, &moved);
  RunOutcome out;
  CsvWriter w(csv);
  sweep_header(w, options.sweep);
  w << "F_x" << "F_y" << "F_z" << "error_estimate" << "L_max" << "n_freq" << "exponent_scale" << "newton_per_unit";
  echo_header(w);
  w.end();
  for (const auto& p : points) {
    const SceneConfig sc = moved >= 0 ? scene.with_center(moved, p.center) : scene;
    const ForceResult f = casimir_force(sc, t, force_options(options));
    if (p.params.empty()) w << 0.0;
    for (double v : p.params) w << v;
    w << f.force.x() << f.force.y() << f.force.z() << f.error << f.lmax << f.n_freq << f.exponent_scale
      << f.newton_per_unit;
    echo_row(w, sc, target, moved, f.order, "hbar_c/L^2", f.flagged);
    w.end();
    ++out.rows;
    note(out, f.flagged, f.diagnostics);
  }
  return out;
}

RunOutcome run_potential(const SceneConfig& scene0, const RunOptions& options, std::ostream& csv) {
  SceneConfig scene = apply_overrides(scene0, options);
  if (!options.sweep || options.sweep->axes.size() != 1) {
    throw ValidationError("potential: needs a one-axis --sweep of the moving sphere");
  }
  const SweepSpec& sw = *options.sweep;
  const int moved = scene.index_of(sw.label);
  const auto values = sw.axes[0].values();
  Eigen::Vector3d start = scene.spheres[static_cast<size_t>(moved)].center;
  start(sw.axes[0].axis) = values.front();
  scene = scene.with_center(moved, start);
  scene.validate();
  std::vector<double> offsets;
  for (double v : values) offsets.push_back(v - values.front());
  const PotentialResult pr =
      potential_along_path(scene, moved, Eigen::Vector3d::Unit(sw.axes[0].axis), offsets, force_options(options));

  RunOutcome out;
  CsvWriter w(csv);
  sweep_header(w, options.sweep);
  w << "V" << "error_estimate" << "L_max" << "n_freq" << "exponent_scale" << "n_force" << "tail_exponent";
  echo_header(w);
  w.end();
  for (size_t k = 0; k < values.size(); ++k) {
    Eigen::Vector3d c = start;
    c(sw.axes[0].axis) = values[k];
    const SceneConfig sc = scene.with_center(moved, c);
    w << values[k] << pr.value[k] << pr.error[k] << pr.lmax << pr.n_freq << pr.exponent_scale << pr.n_force
      << pr.tail_exponent;
    echo_row(w, sc, sw.label, moved, options.order, "hbar_c/L", pr.flagged);
    w.end();
    ++out.rows;
  }
  note(out, pr.flagged, pr.diagnostics);
  return out;
}

RunOutcome run_three_body(const SceneConfig& scene0, const RunOptions& options, std::ostream& csv) {
  const SceneConfig scene = apply_overrides(scene0, options);
  if (scene.spheres.size() != 3) throw ValidationError("three-body: scene must contain exactly three spheres");
  const bool force = options.quantity == "force";
  if (!force && options.quantity != "potential") {
    throw ValidationError("three-body: quantity must be 'potential' or 'force'");
  }
  int moved = -1;
  const auto points = sweep_points(scene, options.sweep, &moved);
  std::string target;
  int t = -1;
  if (force) {
    target = options.target ? *options.target
             : !scene.target.empty() ? scene.target
             : moved >= 0 ? scene.spheres[static_cast<size_t>(moved)].label
                          : resolve_target(scene, options);
    t = scene.index_of(target);
  }
  RunOutcome out;
  CsvWriter w(csv);
  sweep_header(w, options.sweep);
  if (force) {
    w << "F_x" << "F_y" << "F_z";
  } else {
    w << "V";
  }
  w << "error_estimate" << "L_max" << "n_freq" << "exponent_scale";
  echo_header(w);
  w.end();
  for (const auto& p : points) {
    const SceneConfig sc = moved >= 0 ? scene.with_center(moved, p.center) : scene;
    sc.validate();
    if (p.params.empty()) w << 0.0;
    for (double v : p.params) w << v;
    if (force) {
      const ForceResult f = three_body_force(sc, t, force_options(options));
      w << f.force.x() << f.force.y() << f.force.z() << f.error << f.lmax << f.n_freq << f.exponent_scale;
      echo_row(w, sc, target, moved, f.order, "hbar_c/L^2", f.flagged);
      note(out, f.flagged, f.diagnostics);
    } else {
      const EnergyResult e = three_body_energy(sc, force_options(options));
      // Reported in units of hbar c / (4 pi L).
      w << 4.0 * pi * e.energy << 4.0 * pi * e.error << e.lmax << e.n_freq << e.exponent_scale;
      echo_row(w, sc, "", moved, e.order, "hbar_c/(4pi L)", e.flagged);
      note(out, e.flagged, e.diagnostics);
    }
    w.end();
    ++out.rows;
  }
  return out;
}

RunOutcome run_large_n(const LargeNOptions& o, std::ostream& csv) {
  RunOutcome out;
  CsvWriter w(csv);
  if (o.crosscheck_n) {
    const CrosscheckReport rep =
        largen_crosscheck(*o.crosscheck_n, o.eps_minus_one, o.crosscheck_separations, 1, o.workers);
    w << "N" << "s" << "energy" << "energy_error" << "estimate" << "ratio" << "fitted_exponent"
      << "expected_exponent" << "eps_minus_one" << "alpha_s" << "L_max";
    w.end();
    for (const auto& r : rep.rows) {
      w << rep.n << r.separation << r.energy << r.energy_error << r.estimate << r.ratio << rep.fitted_exponent
        << rep.expected_exponent << rep.eps_minus_one << rep.alpha_s << rep.lmax;
      w.end();
      ++out.rows;
    }
    return out;
  }
  if (o.n_min < 3 || o.n_max < o.n_min) throw ValidationError("large-n: need 3 <= n_min <= n_max");
  const AbarPolynomial abar = default_abar();
  w << "N" << "lambda" << "alpha_s" << "R" << "s" << "V_integral" << "V_asymptotic" << "ln_abs_integral"
    << "ln_abs_asymptotic" << "parity" << "sign";
  w.end();
  for (int n = o.n_min; n <= o.n_max; ++n) {
    const LargeNParams p{n, o.lambda / n, o.radius, o.separation};
    const LargeNResult vi = largen_potential_integral(p, abar);
    const LargeNResult va = largen_asymptotic(p);
    w << n << o.lambda << p.alpha_s << o.radius << o.separation << vi.signed_value() << va.signed_value()
      << vi.log_magnitude << va.log_magnitude << va.parity << va.sign_note;
    w.end();
    ++out.rows;
  }
  return out;
}

std::vector<SelfcheckRow> selfcheck_rows(unsigned workers) {
  std::vector<SelfcheckRow> rows;
  auto add = [&rows](const std::string& name, double value, double tol) {
    rows.push_back({name, value, tol, std::isfinite(value) && value <= tol});
  };

  {
    double worst = 0.0;
    for (int l : {0, 1, 5, 15, 30}) {
      for (double x : {0.01, 0.3, 1.0, 7.5, 40.0, 100.0}) {
        const double w = specfun::sph_bessel_j(l, x) * specfun::sph_bessel_y_derivative(l, x) -
                         specfun::sph_bessel_j_derivative(l, x) * specfun::sph_bessel_y(l, x);
        if (std::isfinite(w)) worst = std::max(worst, std::abs(w * x * x - 1.0));
      }
    }
    add("wronskian_j_y", worst, 1e-10);
  }
  {
    double worst = 0.0;
    for (int l : {0, 1, 5, 15, 30}) {
      for (double x : {0.01, 0.3, 1.0, 7.5, 40.0, 100.0}) {
        const auto ti = specfun::mod_sph_bessel_i_scaled_array(l + 1, x);
        const auto tk = specfun::mod_sph_bessel_k_scaled_array(l + 1, x);
        const auto li = static_cast<size_t>(l);
        // Scaled derivatives: i' = i_{l+1} + l i / x, k' = -k_{l+1} + l k / x.
        const double ip = ti[li + 1] + l * ti[li] / x;
        const double kp = -tk[li + 1] + l * tk[li] / x;
        const double w = ti[li] * kp - ip * tk[li];
        worst = std::max(worst, std::abs(w * x * x / (-pi / 2.0) - 1.0));
      }
    }
    add("wronskian_i_k", worst, 1e-10);
  }
  {
    const double a = specfun::gaunt_coefficient(2, 1, 3, -2, 3);
    const double b = specfun::gaunt_coefficient(3, -2, 2, 1, 3);
    const double c = specfun::gaunt_coefficient(3, 1, 3, -2, 2);
    add("gaunt_symmetry", std::max(std::abs(a - b), std::abs(a - c)), 1e-14);
  }
  {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    const BasisSpec basis(3);
    for (int k = 0; k < 4; ++k) {
      const Eigen::Vector3d b(2.0 * u(rng), 2.0 * u(rng), 2.0 * u(rng) + 3.0);
      worst = std::max(worst, gradient_audit(basis, 0.4 + 0.5 * std::abs(u(rng)), b));
    }
    add("translation_gradient_audit", worst, 1e-8);
  }
  {
    const BasisSpec basis(3);
    const Eigen::Vector3d b(1.3, -0.7, 2.2);
    const auto d = translation_matrix(basis, 0.7, b).matrix.mantissa;
    const auto r = translation_matrix_via_rotation(basis, 0.7, b).matrix.mantissa;
    add("translation_rotation_route", (d - r).cwiseAbs().maxCoeff() / d.cwiseAbs().maxCoeff(), 1e-10);
  }

  auto two_spheres = [workers](double eps, double d, int lmax) {
    SceneConfig s;
    s.lmax = lmax;
    s.spectral.workers = workers;
    for (int k = 0; k < 2; ++k) {
      SphereSpec sp;
      sp.label = k ? "b" : "a";
      sp.center = Eigen::Vector3d(0.0, 0.0, k * d);
      sp.permittivity = PermittivityModel::constant(eps);
      s.spheres.push_back(sp);
    }
    return s;
  };
  {
    SceneConfig s = two_spheres(2.6, 4.0, 2);
    s.spheres[1].center = Eigen::Vector3d(1.1, -2.3, 2.9);
    ForceOptions o;
    o.truncation_estimate = false;
    const auto f1 = casimir_force(s, 0, o).force;
    const auto f2 = casimir_force(s, 1, o).force;
    add("newton_third_law", (f1 + f2).norm() / f1.norm(), 1e-10);
  }
  {
    const SceneConfig s = two_spheres(1.01, 100.0, 1);
    const double alpha = 0.01 / 3.01;
    const double cp = -23.0 * alpha * alpha / (4.0 * pi * std::pow(100.0, 7));
    ForceOptions o;
    o.truncation_estimate = false;
    add("dipole_limit_ratio_deviation", std::abs(interaction_energy(s, o).energy / cp - 1.0), 0.01);
  }
  {
    const SceneConfig s = two_spheres(2.6, 5.0, 2);
    ForceOptions o;
    o.truncation_estimate = false;
    const double fz = casimir_force(s, 1, o).force.z();
    const double h = 5e-3;
    const double ep = interaction_energy(s.with_center(1, Eigen::Vector3d(0, 0, 5.0 + h)), o).energy;
    const double em = interaction_energy(s.with_center(1, Eigen::Vector3d(0, 0, 5.0 - h)), o).energy;
    const double oracle = -(ep - em) / (2.0 * h);
    add("force_vs_logdet_oracle", std::abs(fz - oracle) / std::abs(oracle), 1e-3);
  }
  {
    double res = 0.0;
    default_abar(&res);
    add("abar_polynomial_fit", res, 1e-12);
  }
  return rows;
}

RunOutcome run_selfcheck(std::ostream& table, std::ostream* csv, unsigned workers) {
  const auto rows = selfcheck_rows(workers);
  RunOutcome out;
  table << std::left << std::setw(30) << "check" << std::setw(14) << "value" << std::setw(12) << "tolerance"
        << "status\n";
  std::unique_ptr<CsvWriter> w;
  if (csv) {
    w = std::make_unique<CsvWriter>(*csv);
    *w << "check" << "value" << "tolerance" << "status";
    w->end();
  }
  for (const auto& r : rows) {
    std::ostringstream v, t;
    v << std::setprecision(3) << std::scientific << r.value;
    t << std::setprecision(1) << std::scientific << r.tolerance;
    table << std::left << std::setw(30) << r.name << std::setw(14) << v.str() << std::setw(12) << t.str()
          << (r.pass ? "pass" : "FAIL") << '\n';
    if (w) {
      *w << r.name << r.value << r.tolerance << (r.pass ? "pass" : "fail");
      w->end();
    }
    ++out.rows;
    if (!r.pass) {
      ++out.flagged;
      out.diagnostics.push_back("selfcheck " + r.name + " failed");
    }
  }
  return out;
}

}  // namespace casimir

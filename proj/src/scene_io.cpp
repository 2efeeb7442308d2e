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

#include "casimir/scene_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "casimir/error.hpp"
#include "json.hpp"

namespace casimir {

namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ParseError(source_ + ": field '" + field + "': " + what);
  }

  void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) const {
    if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.count(key)) fail(join(path, key), "unknown field");
    }
  }

  double number(const json& obj, const std::string& path, const std::string& key, double fallback,
                bool required = false) const {
    if (!obj.contains(key)) {
      if (required) fail(join(path, key), "missing");
      return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) fail(join(path, key), "expected a number");
    return v.get<double>();
  }

  int integer(const json& obj, const std::string& path, const std::string& key, int fallback) const {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
    return v.get<int>();
  }

  std::string string(const json& obj, const std::string& path, const std::string& key,
                     const std::string& fallback, bool required = false) const {
    if (!obj.contains(key)) {
      if (required) fail(join(path, key), "missing");
      return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) fail(join(path, key), "expected a string");
    return v.get<std::string>();
  }

  Eigen::Vector3d vec3(const json& obj, const std::string& path, const std::string& key) const {
    if (!obj.contains(key)) fail(join(path, key), "missing");
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 3) fail(join(path, key), "expected an array of three numbers");
    Eigen::Vector3d out;
    for (int k = 0; k < 3; ++k) {
      if (!v[static_cast<size_t>(k)].is_number()) fail(join(path, key), "expected an array of three numbers");
      out(k) = v[static_cast<size_t>(k)].get<double>();
    }
    return out;
  }

  PermittivityModel permittivity(const json& obj, const std::string& path) const {
    if (!obj.is_object()) fail(path, "expected an object");
    const std::string model = string(obj, path, "model", "", true);
    try {
      if (model == "constant") {
        check_keys(obj, path, {"model", "eps"});
        return PermittivityModel::constant(number(obj, path, "eps", 1.0, true));
      }
      if (model == "drude_lorentz") {
        check_keys(obj, path, {"model", "eps_inf", "oscillators"});
        std::vector<Oscillator> osc;
        if (obj.contains("oscillators")) {
          const json& arr = obj.at("oscillators");
          if (!arr.is_array()) fail(join(path, "oscillators"), "expected an array");
          for (size_t k = 0; k < arr.size(); ++k) {
            const std::string p = join(path, "oscillators") + "[" + std::to_string(k) + "]";
            check_keys(arr[k], p, {"strength", "resonance", "damping"});
            osc.push_back({number(arr[k], p, "strength", 0.0, true), number(arr[k], p, "resonance", 0.0),
                           number(arr[k], p, "damping", 0.0)});
          }
        }
        return PermittivityModel::drude_lorentz(number(obj, path, "eps_inf", 1.0), std::move(osc));
      }
      if (model == "table") {
        check_keys(obj, path, {"model", "samples"});
        if (!obj.contains("samples") || !obj.at("samples").is_array()) fail(join(path, "samples"), "expected an array");
        std::vector<PermittivitySample> samples;
        for (const auto& row : obj.at("samples")) {
          if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
            fail(join(path, "samples"), "expected [xi_eV, eps] pairs");
          }
          samples.push_back({row[0].get<double>(), row[1].get<double>()});
        }
        return PermittivityModel::table(std::move(samples));
      }
    } catch (const DomainError& e) {
      fail(path, e.what());
    }
    fail(join(path, "model"), "unknown permittivity model '" + model + "'");
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  std::string source_;
};

}  // namespace

SceneDocument parse_scene(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  const Reader rd(source);
  rd.check_keys(root, "", {"schema_version", "units", "length_unit_m", "background", "temperature", "lmax",
                           "l_buffer", "target", "spectral", "spheres", "sweep", "description"});
  if (!root.contains("schema_version")) rd.fail("schema_version", "missing");
  if (!root.at("schema_version").is_number_integer() || root.at("schema_version").get<int>() != scene_schema_version) {
    rd.fail("schema_version", "unsupported version (expected " + std::to_string(scene_schema_version) + ")");
  }

  SceneDocument doc;
  SceneConfig& sc = doc.scene;
  const std::string units = rd.string(root, "", "units", "R");
  if (units != "R" && units != "SI") rd.fail("units", "expected \"R\" or \"SI\"");
  sc.length_unit_m = rd.number(root, "", "length_unit_m", 1e-6);
  if (root.contains("background")) sc.background = rd.permittivity(root.at("background"), "background");
  sc.temperature = rd.number(root, "", "temperature", 0.0);
  sc.lmax = rd.integer(root, "", "lmax", sc.lmax);
  sc.l_buffer = rd.integer(root, "", "l_buffer", sc.l_buffer);
  sc.target = rd.string(root, "", "target", "");

  if (root.contains("spectral")) {
    const json& sp = root.at("spectral");
    rd.check_keys(sp, "spectral", {"rule", "points", "rel_tol", "n_max", "tail_tol", "chunk", "adaptive_max_intervals"});
    const std::string rule = rd.string(sp, "spectral", "rule", "gauss-laguerre");
    if (rule == "gauss-laguerre") {
      sc.spectral.rule = QuadratureRule::GaussLaguerre;
    } else if (rule == "adaptive") {
      sc.spectral.rule = QuadratureRule::Adaptive;
    } else {
      rd.fail("spectral.rule", "expected \"gauss-laguerre\" or \"adaptive\"");
    }
    sc.spectral.gl_points = rd.integer(sp, "spectral", "points", sc.spectral.gl_points);
    sc.spectral.rel_tol = rd.number(sp, "spectral", "rel_tol", sc.spectral.rel_tol);
    sc.spectral.n_max = rd.integer(sp, "spectral", "n_max", sc.spectral.n_max);
    sc.spectral.tail_tol = rd.number(sp, "spectral", "tail_tol", sc.spectral.tail_tol);
    sc.spectral.chunk = rd.integer(sp, "spectral", "chunk", sc.spectral.chunk);
    sc.spectral.adaptive_max_intervals =
        rd.integer(sp, "spectral", "adaptive_max_intervals", sc.spectral.adaptive_max_intervals);
  }

  if (!root.contains("spheres") || !root.at("spheres").is_array()) rd.fail("spheres", "expected an array");
  const json& arr = root.at("spheres");
  for (size_t k = 0; k < arr.size(); ++k) {
    const std::string p = "spheres[" + std::to_string(k) + "]";
    rd.check_keys(arr[k], p, {"label", "center", "radius", "permittivity"});
    SphereSpec s;
    s.label = rd.string(arr[k], p, "label", "s" + std::to_string(k + 1));
    s.center = rd.vec3(arr[k], p, "center");
    s.radius = rd.number(arr[k], p, "radius", 1.0);
    if (!arr[k].contains("permittivity")) rd.fail(p + ".permittivity", "missing");
    s.permittivity = rd.permittivity(arr[k].at("permittivity"), p + ".permittivity");
    sc.spheres.push_back(std::move(s));
  }
  if (sc.spheres.empty()) rd.fail("spheres", "at least one sphere is required");

  if (units == "SI") {
    const double unit = sc.spheres.front().radius;
    if (!(unit > 0.0)) throw ValidationError(source + ": first sphere radius must be > 0");
    for (auto& s : sc.spheres) {
      s.center /= unit;
      s.radius /= unit;
    }
    sc.length_unit_m = unit;
  } else if (sc.spheres.front().radius != 1.0) {
    throw ValidationError(source + ": with units \"R\" lengths are in units of the first radius, which must be 1");
  }

  if (root.contains("sweep")) doc.sweep = rd.string(root, "", "sweep", "");
  sc.validate();
  return doc;
}

SceneDocument load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read scene file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading scene file '" + path + "'");
  return parse_scene(ss.str(), path);
}

}  // namespace casimir

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

#ifndef CASIMIR_RUNS_HPP
#define CASIMIR_RUNS_HPP

// Orchestration behind the command-line subcommands. Each run writes CSV to
// a stream and reports how many rows carry a numerical flag.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "casimir/scattering.hpp"
#include "casimir/scene.hpp"

namespace casimir {

/// LABEL:AXIS:START:STOP:N[:log] with AXIS in {x, y, z}; a second axis may
/// follow after a comma, AXIS:START:STOP:N[:log], for grid sweeps.
struct SweepSpec {
  struct Axis {
    int axis = 2;
    double start = 0.0;
    double stop = 1.0;
    int n_points = 2;
    bool log = false;
    std::vector<double> values() const;
  };
  std::string label;
  std::vector<Axis> axes;

  static SweepSpec parse(const std::string& text);
};

struct RunOptions {
  std::optional<std::string> target;
  std::optional<int> lmax;
  std::optional<double> temperature;
  Order order = Order::all();
  bool verify_gradient = false;
  unsigned workers = 1;
  std::optional<SweepSpec> sweep;
  /// three-body: "potential" (default) or "force".
  std::string quantity = "potential";
};

struct RunOutcome {
  int rows = 0;
  int flagged = 0;
  std::vector<std::string> diagnostics;
};

/// Scene with command-line overrides applied and re-validated.
SceneConfig apply_overrides(SceneConfig scene, const RunOptions& options);

RunOutcome run_force(const SceneConfig& scene, const RunOptions& options, std::ostream& csv);
RunOutcome run_potential(const SceneConfig& scene, const RunOptions& options, std::ostream& csv);
RunOutcome run_three_body(const SceneConfig& scene, const RunOptions& options, std::ostream& csv);

struct LargeNOptions {
  int n_min = 3;
  int n_max = 20;
  double lambda = 0.1;
  double radius = 1.0;
  double separation = 4.0;
  /// When set, run the scattering crosscheck for this N instead.
  std::optional<int> crosscheck_n;
  double eps_minus_one = 1e-2;
  std::vector<double> crosscheck_separations = {20.0, 40.0, 80.0};
  unsigned workers = 1;
};

RunOutcome run_large_n(const LargeNOptions& options, std::ostream& csv);

struct SelfcheckRow {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<SelfcheckRow> selfcheck_rows(unsigned workers = 1);

/// Prints the pass/fail table; `csv` optionally receives the same rows.
RunOutcome run_selfcheck(std::ostream& table, std::ostream* csv, unsigned workers = 1);

/// Shortest round-trip representation of a double, locale independent.
std::string format_number(double v);

}  // namespace casimir

#endif  // CASIMIR_RUNS_HPP

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

// Command-line front end: force, potential, three-body, large-n, selfcheck.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "casimir/error.hpp"
#include "casimir/runs.hpp"
#include "casimir/scene_io.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_numerical = 3;
constexpr int exit_io = 4;

int exit_code_for(casimir::Reason r) {
  switch (r) {
    case casimir::Reason::domain:
    case casimir::Reason::parse:
    case casimir::Reason::validation:
      return exit_validation;
    case casimir::Reason::overflow:
    case casimir::Reason::numerical:
    case casimir::Reason::singular:
      return exit_numerical;
    case casimir::Reason::io:
      return exit_io;
  }
  return exit_numerical;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    if (!std::cout) throw casimir::IoError("cannot write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw casimir::IoError("cannot open output file '" + path + "'");
  out << text;
  out.close();
  if (!out) throw casimir::IoError("error while writing output file '" + path + "'");
}

int finish(const casimir::RunOutcome& outcome) {
  for (const auto& d : outcome.diagnostics) std::cerr << "flag[numerical]: " << d << '\n';
  return outcome.flagged > 0 ? exit_numerical : exit_ok;
}

struct SceneArgs {
  std::string scene;
  std::string out = "-";
  std::string target;
  int lmax = 0;
  double temperature = -1.0;
  std::string order = "resummed";
  std::string sweep;
  std::string quantity = "potential";
  bool verify_gradient = false;
  unsigned workers = 1;
};

void add_scene_options(CLI::App* cmd, SceneArgs& a) {
  cmd->add_option("--scene", a.scene, "JSON scene file")->required();
  cmd->add_option("--target", a.target, "label of the sphere the force acts on");
  cmd->add_option("--lmax", a.lmax, "multipole truncation override")->check(CLI::Range(1, 15));
  cmd->add_option("--temperature", a.temperature, "temperature override in kelvin")->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", a.out, "CSV output path, '-' for standard output");
  cmd->add_option("--order", a.order, "'resummed' or a fixed scattering order k in [1, 4]");
  cmd->add_option("--sweep", a.sweep, "LABEL:AXIS:START:STOP:N[:log][,AXIS:START:STOP:N[:log]]");
  cmd->add_flag("--verify-gradient", a.verify_gradient, "finite-difference audit of every translation gradient");
  cmd->add_option("--workers", a.workers, "worker threads for frequency points")->check(CLI::Range(1u, 1024u));
}

casimir::RunOptions run_options(const SceneArgs& a, const casimir::SceneDocument& doc) {
  casimir::RunOptions o;
  if (!a.target.empty()) o.target = a.target;
  if (a.lmax > 0) o.lmax = a.lmax;
  if (a.temperature >= 0.0) o.temperature = a.temperature;
  o.order = casimir::Order::parse(a.order);
  o.verify_gradient = a.verify_gradient;
  o.workers = a.workers;
  o.quantity = a.quantity;
  if (!a.sweep.empty()) {
    o.sweep = casimir::SweepSpec::parse(a.sweep);
  } else if (doc.sweep) {
    o.sweep = casimir::SweepSpec::parse(*doc.sweep);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir forces and potentials between dielectric spheres"};
  app.require_subcommand(1);

  SceneArgs force_args, potential_args, three_args;
  auto* force = app.add_subcommand("force", "force on the target sphere, optionally along a sweep");
  add_scene_options(force, force_args);
  auto* potential = app.add_subcommand("potential", "potential of a moving sphere from the integrated force");
  add_scene_options(potential, potential_args);
  auto* three = app.add_subcommand("three-body", "non-additive three-body potential or force");
  add_scene_options(three, three_args);
  three->add_option("--quantity", three_args.quantity, "'potential' or 'force'");

  casimir::LargeNOptions ln;
  std::string ln_out = "-";
  int crosscheck = 0;
  auto* large = app.add_subcommand("large-n", "large-N weak-coupling estimate");
  large->add_option("--n-min", ln.n_min, "smallest N")->check(CLI::Range(3, 100000));
  large->add_option("--n-max", ln.n_max, "largest N")->check(CLI::Range(3, 100000));
  large->add_option("--lambda", ln.lambda, "lambda = N alpha_S");
  large->add_option("--radius", ln.radius, "sphere radius R");
  large->add_option("--separation", ln.separation, "centre separation s");
  large->add_option("--crosscheck", crosscheck, "compare with the scattering expansion on an N-ring (3 or 4)")
      ->check(CLI::Range(3, 4));
  large->add_option("--eps-minus-one", ln.eps_minus_one, "permittivity contrast for --crosscheck");
  large->add_option("--workers", ln.workers, "worker threads")->check(CLI::Range(1u, 1024u));
  large->add_option("--out", ln_out, "CSV output path, '-' for standard output");

  std::string sc_out;
  unsigned sc_workers = 1;
  auto* self = app.add_subcommand("selfcheck", "run the invariant suite and print a pass/fail table");
  self->add_option("--out", sc_out, "optional CSV copy of the table");
  self->add_option("--workers", sc_workers, "worker threads")->check(CLI::Range(1u, 1024u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_validation;
  }

  try {
    if (*large) {
      if (crosscheck) ln.crosscheck_n = crosscheck;
      std::ostringstream csv;
      const auto outcome = casimir::run_large_n(ln, csv);
      write_output(ln_out, csv.str());
      return finish(outcome);
    }
    if (*self) {
      std::ostringstream csv;
      const auto outcome = casimir::run_selfcheck(std::cout, sc_out.empty() ? nullptr : &csv, sc_workers);
      if (!sc_out.empty()) write_output(sc_out, csv.str());
      return finish(outcome);
    }
    SceneArgs* args = *force ? &force_args : *potential ? &potential_args : &three_args;
    const casimir::SceneDocument doc = casimir::load_scene(args->scene);
    const casimir::RunOptions opts = run_options(*args, doc);
    std::ostringstream csv;
    casimir::RunOutcome outcome;
    if (*force) {
      outcome = casimir::run_force(doc.scene, opts, csv);
    } else if (*potential) {
      outcome = casimir::run_potential(doc.scene, opts, csv);
    } else {
      outcome = casimir::run_three_body(doc.scene, opts, csv);
    }
    write_output(args->out, csv.str());
    return finish(outcome);
  } catch (const casimir::Error& e) {
    std::cerr << "error[" << casimir::reason_code(e.reason()) << "]: " << e.what() << '\n';
    return exit_code_for(e.reason());
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return exit_numerical;
  }
}

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

#include <charconv>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "casimir/error.hpp"
#include "casimir/runs.hpp"
#include "casimir/scene_io.hpp"

namespace {

using namespace casimir;

SceneConfig two_spheres() {
  return parse_scene(R"({
    "schema_version": 1, "lmax": 2, "target": "a",
    "spheres": [
      {"label": "a", "center": [0, 0, 0], "permittivity": {"model": "constant", "eps": 2.6}},
      {"label": "b", "center": [0, 0, 4], "permittivity": {"model": "constant", "eps": 2.6}}]})")
      .scene;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

TEST(Sweep, ParsesOneAndTwoAxes) {
  const SweepSpec s = SweepSpec::parse("b:z:2.5:12:50");
  EXPECT_EQ(s.label, "b");
  ASSERT_EQ(s.axes.size(), 1u);
  EXPECT_EQ(s.axes[0].axis, 2);
  const auto v = s.axes[0].values();
  ASSERT_EQ(v.size(), 50u);
  EXPECT_EQ(v.front(), 2.5);
  EXPECT_EQ(v.back(), 12.0);
  const SweepSpec g = SweepSpec::parse("c:x:1:100:3:log,y:-1:1:5");
  ASSERT_EQ(g.axes.size(), 2u);
  EXPECT_TRUE(g.axes[0].log);
  EXPECT_NEAR(g.axes[0].values()[1], 10.0, 1e-13);
  EXPECT_EQ(g.axes[1].axis, 1);
}

TEST(Sweep, RejectsMalformedInput) {
  for (const char* bad : {"b:z:1:2", "b:w:1:2:3", "b:z:2:1:3", "b:z:1:2:1", "b:z:1:2:2.5", "b:z:0:2:3:log",
                          "b:z:1:2:3,z:1:2:3", ":z:1:2:3", "b:z:1:x:3", "b:z:1:2:3:cubic"}) {
    EXPECT_THROW(SweepSpec::parse(bad), ValidationError) << bad;
  }
}

TEST(Format, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    const std::string s = format_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Runs, ForceCsvLayout) {
  RunOptions o;
  o.sweep = SweepSpec::parse("b:z:3:4:2");
  std::ostringstream csv;
  const RunOutcome r = run_force(two_spheres(), o, csv);
  EXPECT_EQ(r.rows, 2);
  EXPECT_EQ(r.flagged, 0);
  const auto ls = lines(csv.str());
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0].rfind("sweep_z,F_x,F_y,F_z,error_estimate,L_max,n_freq,exponent_scale,newton_per_unit,", 0), 0u);
  EXPECT_EQ(ls[1].rfind("3,", 0), 0u);
}

TEST(Runs, CsvIndependentOfWorkers) {
  RunOptions o;
  o.sweep = SweepSpec::parse("b:z:3:5:3");
  std::ostringstream one, four;
  run_force(two_spheres(), o, one);
  o.workers = 4;
  run_force(two_spheres(), o, four);
  EXPECT_EQ(one.str(), four.str());
}

TEST(Runs, OverridesAreApplied) {
  RunOptions o;
  o.lmax = 4;
  o.temperature = 300.0;
  o.target = "b";
  const SceneConfig s = apply_overrides(two_spheres(), o);
  EXPECT_EQ(s.lmax, 4);
  EXPECT_EQ(s.temperature, 300.0);
  EXPECT_EQ(s.target, "b");
  o.target = "zz";
  EXPECT_THROW(apply_overrides(two_spheres(), o), ValidationError);
}

TEST(Runs, PotentialNeedsOneAxisSweep) {
  RunOptions o;
  std::ostringstream csv;
  EXPECT_THROW(run_potential(two_spheres(), o, csv), ValidationError);
}

TEST(Runs, ThreeBodyNeedsThreeSpheres) {
  RunOptions o;
  std::ostringstream csv;
  EXPECT_THROW(run_three_body(two_spheres(), o, csv), ValidationError);
}

TEST(Runs, LargeNTable) {
  LargeNOptions o;
  o.n_min = 3;
  o.n_max = 5;
  std::ostringstream csv;
  EXPECT_EQ(run_large_n(o, csv).rows, 3);
  EXPECT_EQ(lines(csv.str()).size(), 4u);
}

}  // namespace

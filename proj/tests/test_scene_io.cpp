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

#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "casimir/error.hpp"
#include "casimir/scene_io.hpp"

namespace {

using namespace casimir;

const char* base_scene = R"({
  "schema_version": 1,
  "lmax": 2,
  "spheres": [
    {"label": "a", "center": [0, 0, 0], "radius": 1, "permittivity": {"model": "constant", "eps": 2.6}},
    {"label": "b", "center": [0, 0, 4], "radius": 1, "permittivity": {"model": "constant", "eps": 2.6}}
  ]
})";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return text.replace(pos, from.size(), to);
}

template <typename E>
std::string error_of(const std::string& text) {
  try {
    parse_scene(text);
  } catch (const E& e) {
    return e.what();
  }
  ADD_FAILURE() << "no exception";
  return {};
}

TEST(SceneIo, ParsesDefaults) {
  const auto doc = parse_scene(base_scene);
  const SceneConfig& s = doc.scene;
  ASSERT_EQ(s.spheres.size(), 2u);
  EXPECT_EQ(s.lmax, 2);
  EXPECT_EQ(s.temperature, 0.0);
  EXPECT_EQ(s.length_unit_m, 1e-6);
  EXPECT_EQ(s.spheres[1].center.z(), 4.0);
  EXPECT_FALSE(doc.sweep.has_value());
  EXPECT_EQ(s.index_of("b"), 1);
  EXPECT_DOUBLE_EQ(s.min_gap(), 2.0);
}

TEST(SceneIo, UnknownFieldIsNamed) {
  const auto msg = error_of<ParseError>(replace(base_scene, "\"lmax\"", "\"lmx\": 3, \"lmax\""));
  EXPECT_NE(msg.find("lmx"), std::string::npos) << msg;
  const auto nested = error_of<ParseError>(replace(base_scene, "\"radius\": 1,", "\"radius\": 1, \"colour\": 2,"));
  EXPECT_NE(nested.find("spheres[0].colour"), std::string::npos) << nested;
}

TEST(SceneIo, TypeErrorsAreNamed) {
  const auto msg = error_of<ParseError>(replace(base_scene, "\"lmax\": 2", "\"lmax\": \"two\""));
  EXPECT_NE(msg.find("lmax"), std::string::npos);
  const auto c = error_of<ParseError>(replace(base_scene, "[0, 0, 4]", "[0, 4]"));
  EXPECT_NE(c.find("spheres[1].center"), std::string::npos);
  EXPECT_FALSE(error_of<ParseError>("{ not json").empty());
}

TEST(SceneIo, SchemaVersionIsChecked) {
  const auto msg = error_of<ParseError>(replace(base_scene, "\"schema_version\": 1", "\"schema_version\": 2"));
  EXPECT_NE(msg.find("schema_version"), std::string::npos);
}

TEST(SceneIo, OverlapNamesBothSpheres) {
  const auto msg = error_of<ValidationError>(replace(base_scene, "[0, 0, 4]", "[0, 0, 1.5]"));
  EXPECT_NE(msg.find("a"), std::string::npos);
  EXPECT_NE(msg.find("b"), std::string::npos);
}

TEST(SceneIo, RUnitsNeedUnitFirstRadius) {
  EXPECT_THROW(parse_scene(replace(base_scene, "\"radius\": 1,", "\"radius\": 2,")), ValidationError);
}

TEST(SceneIo, SiLengthsAreRescaled) {
  std::string text = replace(base_scene, "\"lmax\": 2", "\"lmax\": 2, \"units\": \"SI\"");
  text = replace(text, "[0, 0, 0], \"radius\": 1", "[0, 0, 0], \"radius\": 2e-6");
  text = replace(text, "[0, 0, 4], \"radius\": 1", "[0, 0, 1e-5], \"radius\": 1e-6");
  const SceneConfig s = parse_scene(text).scene;
  EXPECT_DOUBLE_EQ(s.length_unit_m, 2e-6);
  EXPECT_DOUBLE_EQ(s.spheres[1].center.z(), 5.0);
  EXPECT_DOUBLE_EQ(s.spheres[1].radius, 0.5);
}

TEST(SceneIo, LmaxRangeIsValidated) {
  EXPECT_THROW(parse_scene(replace(base_scene, "\"lmax\": 2", "\"lmax\": 0")), ValidationError);
  EXPECT_THROW(parse_scene(replace(base_scene, "\"lmax\": 2", "\"lmax\": 40")), ValidationError);
}

TEST(SceneIo, PermittivityModels) {
  std::string text = replace(base_scene, R"({"model": "constant", "eps": 2.6}},
    {"label": "b")",
                             R"({"model": "drude_lorentz", "eps_inf": 1.5,
      "oscillators": [{"strength": 4.0, "resonance": 2.0, "damping": 0.5}]}},
    {"label": "b")");
  text = replace(text, R"({"model": "constant", "eps": 2.6}})",
                 R"({"model": "table", "samples": [[0.1, 3.0], [10.0, 1.5]]}})");
  text = replace(text, "\"lmax\": 2", "\"lmax\": 2, \"background\": {\"model\": \"constant\", \"eps\": 1.33}");
  const SceneConfig s = parse_scene(text).scene;
  const auto& dl = s.spheres[0].permittivity;
  // eps(xi) = eps_inf + s / (w0^2 + xi^2 + g xi)
  EXPECT_DOUBLE_EQ(dl(1.0), 1.5 + 4.0 / (4.0 + 1.0 + 0.5));
  const auto& tab = s.spheres[1].permittivity;
  EXPECT_DOUBLE_EQ(tab(0.01), 3.0);
  EXPECT_DOUBLE_EQ(tab(100.0), 1.5);
  EXPECT_NEAR(tab(1.0), 2.25, 1e-14);  // halfway in log xi
  EXPECT_DOUBLE_EQ(s.background(3.0), 1.33);
}

TEST(SceneIo, BadPermittivityIsReported) {
  EXPECT_THROW(parse_scene(replace(base_scene, "\"eps\": 2.6}}", "\"eps\": -1}}")), ParseError);
  EXPECT_THROW(parse_scene(replace(base_scene, "\"constant\", \"eps\": 2.6}}", "\"metal\"}}")), ParseError);
}

TEST(SceneIo, SweepStringIsKept) {
  const auto doc = parse_scene(replace(base_scene, "\"lmax\": 2", "\"lmax\": 2, \"sweep\": \"b:z:3:5:3\""));
  ASSERT_TRUE(doc.sweep.has_value());
  EXPECT_EQ(*doc.sweep, "b:z:3:5:3");
}

TEST(SceneIo, MissingFileIsIoError) { EXPECT_THROW(load_scene("/nonexistent/scene.json"), IoError); }

TEST(Scene, SubsceneKeepsOrderAndTarget) {
  SceneConfig s = parse_scene(base_scene).scene;
  s.target = "b";
  const SceneConfig sub = s.subscene({1});
  ASSERT_EQ(sub.spheres.size(), 1u);
  EXPECT_EQ(sub.spheres[0].label, "b");
  EXPECT_EQ(sub.target, "b");
  EXPECT_EQ(s.subscene({0}).target, "");
}

}  // namespace

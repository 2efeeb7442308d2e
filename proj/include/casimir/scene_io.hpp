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

#ifndef CASIMIR_SCENE_IO_HPP
#define CASIMIR_SCENE_IO_HPP

// JSON scene documents (schema_version 1). See README.md for the schema.

#include <optional>
#include <string>

#include "casimir/scene.hpp"

namespace casimir {

inline constexpr int scene_schema_version = 1;

struct SceneDocument {
  SceneConfig scene;
  /// Sweep in command-line syntax, if the document carries one.
  std::optional<std::string> sweep;
};

/// Parses and validates a scene. ParseError names the offending field;
/// ValidationError names the offending spheres.
SceneDocument parse_scene(const std::string& text, const std::string& source = "<string>");

/// Reads `path`; IoError when it cannot be read.
SceneDocument load_scene(const std::string& path);

}  // namespace casimir

#endif  // CASIMIR_SCENE_IO_HPP

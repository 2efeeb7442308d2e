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

#ifndef CASIMIR_ERROR_HPP
#define CASIMIR_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace casimir {

/// Machine-readable failure categories. The CLI maps these to exit codes.
enum class Reason {
  domain,       // argument outside the supported range
  overflow,     // unscaled value not representable
  parse,        // malformed scene document
  validation,   // well-formed but physically invalid scene
  numerical,    // tolerance or consistency check failed
  singular,     // (1 - M) not invertible
  io,           // file system
};

constexpr std::string_view reason_code(Reason r) {
  switch (r) {
    case Reason::domain: return "domain";
    case Reason::overflow: return "overflow";
    case Reason::parse: return "parse";
    case Reason::validation: return "validation";
    case Reason::numerical: return "numerical";
    case Reason::singular: return "singular";
    case Reason::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Reason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(Reason::domain, what) {}
};

class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what)
      : Error(Reason::overflow, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(Reason::parse, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(Reason::validation, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(Reason::numerical, what) {}
};

class SingularError : public Error {
 public:
  explicit SingularError(const std::string& what)
      : Error(Reason::singular, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(Reason::io, what) {}
};

}  // namespace casimir

#endif  // CASIMIR_ERROR_HPP

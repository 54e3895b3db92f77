// Copyright 2026 The sdxsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SDX_ERRORS_HPP_
#define SDX_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdx {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Policy text failed to lex or parse. `position` is a byte offset into the
/// source string; `expected` names what the parser was looking for.
class PolicySyntaxError : public Error {
 public:
  PolicySyntaxError(size_t position, const std::string& expected)
      : Error("policy syntax error at byte " + std::to_string(position) +
              ": expected " + expected),
        position_(position),
        expected_(expected) {}

  size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  size_t position_;
  std::string expected_;
};

/// A policy forwards to a participant that is not a known peer.
class UnknownPeerError : public Error {
 public:
  explicit UnknownPeerError(const std::string& name)
      : Error("unknown peer '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// A match() names a header field outside the supported set.
class UnsupportedFieldError : public Error {
 public:
  explicit UnsupportedFieldError(const std::string& name)
      : Error("unsupported match field '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// A bgpd.conf fragment has a malformed or unrecognized line.
class ConfSyntaxError : public Error {
 public:
  ConfSyntaxError(int line, const std::string& detail)
      : Error("bgpd.conf line " + std::to_string(line) + ": " + detail),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class MissingRouterIdError : public Error {
 public:
  MissingRouterIdError() : Error("bgpd.conf has no 'bgp router-id' line") {}
};

class EmptyCandidatesError : public Error {
 public:
  EmptyCandidatesError() : Error("best-path selection over empty candidate set") {}
};

class DuplicateRouterIdError : public Error {
 public:
  explicit DuplicateRouterIdError(const std::string& router_id)
      : Error("duplicate router-id " + router_id) {}
};

class DuplicateParticipantError : public Error {
 public:
  explicit DuplicateParticipantError(const std::string& name)
      : Error("duplicate participant '" + name + "'") {}
};

/// The VNH pool is too small for the number of equivalence classes.
class PoolExhaustedError : public Error {
 public:
  PoolExhaustedError(size_t needed, size_t available)
      : Error("VNH pool exhausted: need " + std::to_string(needed) +
              " addresses, pool has " + std::to_string(available)),
        needed_(needed),
        available_(available) {}
  size_t needed() const { return needed_; }
  size_t available() const { return available_; }

 private:
  size_t needed_;
  size_t available_;
};

/// Cross-module state disagrees, e.g. a RIB prefix with no covering VNH.
class InconsistentStateError : public Error {
 public:
  using Error::Error;
};

/// More than one outbound policy term with distinct egress applies to the
/// same packet; the compile-time counterpart is an OverlapAmbiguity
/// violation.
class AmbiguousForwardError : public Error {
 public:
  using Error::Error;
};

/// Compilation was attempted on policies that carry latent violations.
class CompileError : public Error {
 public:
  using Error::Error;
};

/// Scenario file is not well-formed (I/O or JSON level).
class ScenarioParseError : public Error {
 public:
  ScenarioParseError(const std::string& path, const std::string& detail)
      : Error("failed to parse scenario '" + path + "': " + detail) {}
};

/// Scenario is well-formed but semantically invalid; carries every problem
/// found so a user can fix them in one pass.
class ScenarioValidationError : public Error {
 public:
  explicit ScenarioValidationError(std::vector<std::string> problems)
      : Error(Join(problems)), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string Join(const std::vector<std::string>& problems) {
    std::string out = "invalid scenario:";
    for (const auto& p : problems) out += "\n  - " + p;
    return out;
  }
  std::vector<std::string> problems_;
};

}  // namespace sdx

#endif  // SDX_ERRORS_HPP_

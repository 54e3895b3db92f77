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

#ifndef SDX_SCENARIO_HPP_
#define SDX_SCENARIO_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdx/net.hpp"
#include "sdx/route_server.hpp"
#include "sdx/vnh.hpp"

namespace sdx {

/// One reachability expectation: a probe and where it should end up.
struct TrafficTest {
  std::string name;
  std::string src_host;
  Ipv4Addr src_addr;
  Ipv4Addr dst_addr;
  uint16_t dstport = 0;

  enum class Expect { kDeliveredTo, kDropped };
  Expect expect = Expect::kDropped;
  std::string expect_host;  // kDeliveredTo
};

/// Unparsed policy text attached to a participant.
struct PolicyTexts {
  std::optional<std::string> outbound;
  std::optional<std::string> inbound;
};

/// A whole experiment in one document: participants (with inline fields or
/// an embedded bgpd.conf fragment), policies, the VNH pool and the traffic
/// expectations.
struct Scenario {
  std::vector<ParticipantConfig> participants;
  std::map<std::string, PolicyTexts> policies;
  VnhPool vnh_pool;
  std::vector<TrafficTest> traffic_tests;
};

/// Loads and fully validates a scenario file. Raises ScenarioParseError for
/// malformed JSON and ScenarioValidationError (with every problem found)
/// for semantic errors.
Scenario LoadScenario(const std::string& path);

/// Same, from an in-memory JSON document.
Scenario LoadScenarioFromString(const std::string& text,
                                const std::string& origin = "<string>");

/// Validation for scenarios assembled in code (the loader always runs it).
void ValidateScenario(const Scenario& scenario);

}  // namespace sdx

#endif  // SDX_SCENARIO_HPP_

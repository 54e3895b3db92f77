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

#ifndef SDX_FLOW_TABLE_HPP_
#define SDX_FLOW_TABLE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdx/net.hpp"

namespace sdx {

/// Match side of a flow rule. Absent fields are wildcards. `in_ports` is a
/// sorted set of candidate ingress ports (empty = any): one participant's
/// steering rule guards all of its ports with a single rule.
struct FlowMatch {
  std::vector<int> in_ports;
  std::optional<MacAddr> dst_mac;
  std::optional<CidrPrefix> dst_prefix;
  std::optional<uint16_t> dstport;
};

struct FlowAction {
  enum class Kind { kOutput, kDrop };

  Kind kind = Kind::kDrop;
  int port = -1;  // kOutput

  static FlowAction Output(int port) { return {Kind::kOutput, port}; }
  static FlowAction Drop() { return {Kind::kDrop, -1}; }
};

/// One prioritized match-action pair. Higher priority wins; insertion order
/// breaks ties.
struct FlowRule {
  int priority = 0;
  FlowMatch match;
  FlowAction action;
  std::string provenance;  // owning policy term, or "default"
};

/// Text form of one rule, stable across runs:
///   prio=<n> in_port=<p|*> dst_mac=<m|*> dst=<cidr|*> dport=<n|*>
///     -> <output:port|drop> # <provenance>
std::string FormatFlowRule(const FlowRule& rule);

/// Rules ordered by (priority desc, insertion index asc). Exactly one
/// global default (drop-everything at priority 0) closes every table.
class FlowTable {
 public:
  void Add(FlowRule rule);

  const std::vector<FlowRule>& rules() const { return rules_; }
  std::vector<FlowRule>& mutable_rules() { return rules_; }

  std::string Dump() const;

 private:
  std::vector<FlowRule> rules_;
};

}  // namespace sdx

#endif  // SDX_FLOW_TABLE_HPP_

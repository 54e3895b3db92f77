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

#include "sdx/flow_table.hpp"

#include <algorithm>

namespace sdx {

std::string FormatFlowRule(const FlowRule& rule) {
  std::string out = "prio=" + std::to_string(rule.priority);

  out += " in_port=";
  if (rule.match.in_ports.empty()) {
    out += "*";
  } else {
    for (size_t i = 0; i < rule.match.in_ports.size(); ++i) {
      if (i > 0) out += "|";
      out += std::to_string(rule.match.in_ports[i]);
    }
  }

  out += " dst_mac=";
  out += rule.match.dst_mac ? rule.match.dst_mac->ToString() : "*";

  out += " dst=";
  out += rule.match.dst_prefix ? rule.match.dst_prefix->ToString() : "*";

  out += " dport=";
  out += rule.match.dstport ? std::to_string(*rule.match.dstport) : "*";

  out += " -> ";
  if (rule.action.kind == FlowAction::Kind::kOutput) {
    out += "output:" + std::to_string(rule.action.port);
  } else {
    out += "drop";
  }

  out += " # " + rule.provenance;
  return out;
}

void FlowTable::Add(FlowRule rule) {
  std::sort(rule.match.in_ports.begin(), rule.match.in_ports.end());
  // Insert before the first strictly-lower priority so that equal-priority
  // rules keep their insertion order.
  auto pos = std::find_if(rules_.begin(), rules_.end(),
                          [&](const FlowRule& existing) {
                            return existing.priority < rule.priority;
                          });
  rules_.insert(pos, std::move(rule));
}

std::string FlowTable::Dump() const {
  std::string out;
  for (const FlowRule& rule : rules_) {
    out += FormatFlowRule(rule);
    out += "\n";
  }
  return out;
}

}  // namespace sdx

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
//
// Compiles participant policies, best-path routing and the VNH table into
// one flat prioritized flow table. Priority bands, highest first:
//
//   3  outbound steering: (in_port in owner's ports, dst_mac = VNH,
//      dstport = literal) -> the egress participant's delivery port. The
//      egress's inbound policy is folded in at compile time: it either
//      picks the output port or, when it matches nothing at that dstport,
//      suppresses the rule (steering toward the destination's best path) or
//      turns it into an explicit drop (steering away from it).
//   2  inbound selection for participants with inbound policies, attached
//      to the VNHs whose best path is that participant.
//   1  default best-path forwarding per VNH, only when the best-path
//      participant has no inbound policy.
//   0  the global default: drop.

#ifndef SDX_COMPILER_HPP_
#define SDX_COMPILER_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sdx/flow_table.hpp"
#include "sdx/oracle.hpp"
#include "sdx/policy.hpp"
#include "sdx/route_server.hpp"
#include "sdx/vnh.hpp"

namespace sdx {

/// A policy problem that makes compilation unsafe. Violations are data, not
/// exceptions: the caller decides how to surface them.
struct Violation {
  enum class Kind {
    kOverlapAmbiguity,        // two outbound terms can both claim a packet
    kInboundPortOutOfRange,   // phys_ports index beyond the owner's ports
    kOutboundPhysPort,        // outbound action is not a peer forward
    kInboundPeerFwd,          // inbound action is not a phys-port forward
    kUnsupportedMatchField,   // flow rules can only express dstport matches
    kOutboundTermNoDstport,   // steering rules need a dstport literal
  };

  Kind kind;
  std::string participant;
  std::string detail;
};

std::string ToString(const Violation& violation);

/// One outbound term restricted to the destinations its egress announced.
struct AugmentedTerm {
  std::vector<MatchPredicate> predicates;
  std::string egress;
  std::set<CidrPrefix> prefixes;
  SourceSpan span;
};

/// Restricts each term of an outbound policy to the prefixes its egress
/// participant announces; terms whose restriction is empty are dropped.
std::vector<AugmentedTerm> AugmentWithReachability(
    const PolicyAst& policy, const std::string& owner,
    const std::vector<ParticipantConfig>& configs);

/// Checks every policy against the isolation and expressibility rules.
/// Empty result means the scenario is compilable.
std::vector<Violation> ValidatePolicies(
    const std::vector<ParticipantConfig>& configs, const PolicyMap& policies);

/// Globally best announcer of each announced prefix.
std::map<CidrPrefix, std::string> BestOriginByPrefix(
    const std::vector<ParticipantConfig>& configs);

/// Compiles the full scenario into a flow table. Raises CompileError if
/// ValidatePolicies would report anything.
FlowTable Compile(const std::vector<ParticipantConfig>& configs,
                  const PolicyMap& policies,
                  const std::map<std::string, Rib>& ribs,
                  const std::vector<VirtualNextHop>& vnhs);

/// Upper bound on the number of non-default rules Compile may emit for this
/// input: one per (outbound term x VNH), plus one per (inbound term x VNH
/// whose best path is the term's owner), plus one default per VNH.
size_t RuleCountBound(const std::vector<ParticipantConfig>& configs,
                      const PolicyMap& policies,
                      const std::vector<VirtualNextHop>& vnhs);

}  // namespace sdx

#endif  // SDX_COMPILER_HPP_

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
// Interpretive forwarding pipeline: routes and policies are applied directly
// to a probe, with no flow table involved. This is the reference semantics
// the compiled fabric is required to agree with on every probe.

#ifndef SDX_ORACLE_HPP_
#define SDX_ORACLE_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdx/net.hpp"
#include "sdx/policy.hpp"
#include "sdx/probe.hpp"
#include "sdx/route_server.hpp"

namespace sdx {

/// The parsed policies a participant attached to its virtual switch.
struct ParticipantPolicies {
  std::optional<PolicyAst> outbound;
  std::optional<PolicyAst> inbound;
};

using PolicyMap = std::map<std::string, ParticipantPolicies>;

/// The fabric's interconnect subnet: edge interfaces live here and a direct
/// route for it appears in every host routing table.
inline const CidrPrefix kFabricSubnet = CidrPrefix(Ipv4Addr(0xac000000), 16);

/// Provenance string identifying a policy term, e.g. "A:outbound@[17,70)".
std::string TermProvenance(const std::string& owner, const char* direction,
                           SourceSpan span);

/// Forwarding decision together with the egress participant that was
/// selected (set even when the packet is then dropped by that participant's
/// inbound policy; unset for no-route outcomes).
struct OracleTrace {
  DeliveryResult result;
  std::optional<std::string> egress;
};

/// Core of the interpretive pipeline, keyed by ingress participant so that
/// callers without a concrete source host (e.g. behavior-signature
/// computation) can use it.
OracleTrace OracleForwardFrom(const std::vector<ParticipantConfig>& configs,
                              const std::map<std::string, Rib>& ribs,
                              const PolicyMap& policies,
                              const std::string& ingress,
                              const FlowKeys& keys);

/// Interpretive result for a probe. Must agree with the compiled fabric's
/// `Inject` on every probe; raises AmbiguousForwardError when more than one
/// outbound term with distinct egress applies.
DeliveryResult OracleForward(const std::vector<ParticipantConfig>& configs,
                             const std::map<std::string, Rib>& ribs,
                             const PolicyMap& policies,
                             const PacketProbe& probe);

// Shared plumbing between the oracle and the compiled fabric.

/// Host and owning participant for a host name; null pair if unknown.
std::pair<const HostBinding*, const ParticipantConfig*> FindHost(
    const std::vector<ParticipantConfig>& configs, const std::string& host);

const ParticipantConfig* OwnerOfPort(
    const std::vector<ParticipantConfig>& configs, int port);

/// Delivery outcome for a packet that reached `port`: the first host on the
/// port answering on dst_ip, or DeliveredNoListener.
DeliveryResult DeliverToPort(const std::vector<ParticipantConfig>& configs,
                             int port, Ipv4Addr dst_ip);

/// Delivery on the fabric subnet itself (no next hop involved): delivered if
/// some host binds the address, otherwise treated as unroutable.
DeliveryResult DeliverDirect(const std::vector<ParticipantConfig>& configs,
                             Ipv4Addr dst_ip);

}  // namespace sdx

#endif  // SDX_ORACLE_HPP_

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
// Deterministic dataplane: each host resolves destinations through its
// longest-prefix-match routing table to a VNH gateway, then the fabric
// evaluates the compiled flow table on (in_port, dst_mac, dst_ip, dstport).

#ifndef SDX_FABRIC_HPP_
#define SDX_FABRIC_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdx/flow_table.hpp"
#include "sdx/net.hpp"
#include "sdx/oracle.hpp"
#include "sdx/probe.hpp"
#include "sdx/route_server.hpp"
#include "sdx/vnh.hpp"

namespace sdx {

/// One row of a host routing table; `gateway` empty means the destination
/// is directly attached (the fabric subnet).
struct EdgeRow {
  CidrPrefix prefix;
  std::optional<Ipv4Addr> gateway;  // a VNH virtual IP
  std::string iface;
};

struct EdgeRouterTable {
  std::string owner;  // host name
  std::vector<EdgeRow> rows;  // sorted by prefix for stable dumps
};

/// Builds each host's routing table: one row per RIB prefix, gatewayed via
/// the covering VNH, plus the directly-attached fabric subnet. Raises
/// InconsistentStateError if a RIB prefix has no VNH.
std::map<std::string, EdgeRouterTable> BuildEdgeTables(
    const std::vector<ParticipantConfig>& configs,
    const std::map<std::string, Rib>& ribs,
    const std::vector<VirtualNextHop>& vnhs);

/// Longest-prefix match; null when no row covers the address.
const EdgeRow* LpmLookup(const EdgeRouterTable& table, Ipv4Addr dst_ip);

/// Everything the dataplane needs once compilation is done. Immutable after
/// construction; probes may be injected concurrently.
struct FabricState {
  std::vector<ParticipantConfig> configs;
  std::vector<VirtualNextHop> vnhs;
  FlowTable flow_table;
  std::map<std::string, EdgeRouterTable> edge_tables;
};

/// Highest-priority rule whose present match fields all equal the probe's;
/// equal priorities resolve to the earlier-inserted rule. The global default
/// guarantees a result. The probe must have in_port and dst_mac set.
const FlowRule& EvaluateFlowTable(const FlowTable& table,
                                  const PacketProbe& probe);

/// Full dataplane pipeline: edge LPM, VNH resolution, flow-table
/// evaluation, listener check.
DeliveryResult Inject(const FabricState& state, const PacketProbe& probe);

}  // namespace sdx

#endif  // SDX_FABRIC_HPP_

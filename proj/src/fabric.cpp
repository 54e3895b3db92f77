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

#include "sdx/fabric.hpp"

#include <algorithm>

#include "sdx/errors.hpp"

namespace sdx {

std::map<std::string, EdgeRouterTable> BuildEdgeTables(
    const std::vector<ParticipantConfig>& configs,
    const std::map<std::string, Rib>& ribs,
    const std::vector<VirtualNextHop>& vnhs) {
  std::map<std::string, EdgeRouterTable> tables;
  for (const ParticipantConfig& config : configs) {
    auto rib_it = ribs.find(config.name);
    if (rib_it == ribs.end()) {
      throw InconsistentStateError("no RIB for participant '" + config.name +
                                   "'");
    }
    for (const HostBinding& host : config.hosts) {
      EdgeRouterTable table;
      table.owner = host.name;
      std::string iface = host.name + "-eth0";
      for (const auto& [prefix, entry] : rib_it->second.entries) {
        const VirtualNextHop* vnh = VnhForPrefix(vnhs, prefix);
        if (vnh == nullptr) {
          throw InconsistentStateError("RIB prefix " + prefix.ToString() +
                                       " has no covering VNH");
        }
        table.rows.push_back({prefix, vnh->virtual_ip, iface});
      }
      table.rows.push_back({kFabricSubnet, std::nullopt, iface});
      std::sort(table.rows.begin(), table.rows.end(),
                [](const EdgeRow& a, const EdgeRow& b) {
                  return a.prefix < b.prefix;
                });
      tables[host.name] = std::move(table);
    }
  }
  return tables;
}

const EdgeRow* LpmLookup(const EdgeRouterTable& table, Ipv4Addr dst_ip) {
  const EdgeRow* best = nullptr;
  for (const EdgeRow& row : table.rows) {
    if (!row.prefix.Contains(dst_ip)) continue;
    if (best == nullptr || row.prefix.length() > best->prefix.length()) {
      best = &row;
    }
  }
  return best;
}

const FlowRule& EvaluateFlowTable(const FlowTable& table,
                                  const PacketProbe& probe) {
  if (!probe.in_port || !probe.dst_mac) {
    throw InconsistentStateError(
        "flow evaluation on a probe without in_port/dst_mac");
  }
  // Rules are kept in (priority desc, insertion asc) order, so the first
  // match is the winner.
  for (const FlowRule& rule : table.rules()) {
    const FlowMatch& match = rule.match;
    if (!match.in_ports.empty() &&
        !std::binary_search(match.in_ports.begin(), match.in_ports.end(),
                            *probe.in_port)) {
      continue;
    }
    if (match.dst_mac && *match.dst_mac != *probe.dst_mac) continue;
    if (match.dst_prefix && !match.dst_prefix->Contains(probe.dst_ip)) continue;
    if (match.dstport && *match.dstport != probe.dstport) continue;
    return rule;
  }
  throw InconsistentStateError("flow table has no global default rule");
}

DeliveryResult Inject(const FabricState& state, const PacketProbe& probe) {
  auto [host, owner] = FindHost(state.configs, probe.src_host);
  if (host == nullptr) {
    throw InconsistentStateError("unknown source host '" + probe.src_host +
                                 "'");
  }
  if (std::find(host->addrs.begin(), host->addrs.end(), probe.src_ip) ==
      host->addrs.end()) {
    throw InconsistentStateError("source address " + probe.src_ip.ToString() +
                                 " is not bound on host '" + host->name + "'");
  }

  auto table_it = state.edge_tables.find(probe.src_host);
  if (table_it == state.edge_tables.end()) {
    throw InconsistentStateError("no edge table for host '" + probe.src_host +
                                 "'");
  }
  const EdgeRow* row = LpmLookup(table_it->second, probe.dst_ip);
  if (row == nullptr) return DeliveryResult::DroppedNoRoute();
  if (!row->gateway) return DeliverDirect(state.configs, probe.dst_ip);

  const VirtualNextHop* vnh = VnhForIp(state.vnhs, *row->gateway);
  if (vnh == nullptr) {
    throw InconsistentStateError("gateway " + row->gateway->ToString() +
                                 " is not a VNH address");
  }

  PacketProbe in_transit = probe;
  in_transit.in_port = host->port;
  in_transit.dst_mac = vnh->virtual_mac;

  const FlowRule& rule = EvaluateFlowTable(state.flow_table, in_transit);
  if (rule.action.kind == FlowAction::Kind::kDrop) {
    return DeliveryResult::DroppedByPolicy(rule.provenance);
  }
  return DeliverToPort(state.configs, rule.action.port, probe.dst_ip);
}

}  // namespace sdx

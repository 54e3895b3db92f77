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

#include "sdx/oracle.hpp"

#include <set>

#include "sdx/errors.hpp"

namespace sdx {

std::string TermProvenance(const std::string& owner, const char* direction,
                           SourceSpan span) {
  return owner + ":" + direction + "@[" + std::to_string(span.begin) + "," +
         std::to_string(span.end) + ")";
}

std::pair<const HostBinding*, const ParticipantConfig*> FindHost(
    const std::vector<ParticipantConfig>& configs, const std::string& host) {
  for (const ParticipantConfig& config : configs) {
    for (const HostBinding& binding : config.hosts) {
      if (binding.name == host) return {&binding, &config};
    }
  }
  return {nullptr, nullptr};
}

const ParticipantConfig* OwnerOfPort(
    const std::vector<ParticipantConfig>& configs, int port) {
  for (const ParticipantConfig& config : configs) {
    for (int p : config.phys_ports) {
      if (p == port) return &config;
    }
  }
  return nullptr;
}

DeliveryResult DeliverToPort(const std::vector<ParticipantConfig>& configs,
                             int port, Ipv4Addr dst_ip) {
  const ParticipantConfig* owner = OwnerOfPort(configs, port);
  if (owner == nullptr) {
    throw InconsistentStateError("delivery to unowned fabric port " +
                                 std::to_string(port));
  }
  for (const HostBinding& host : owner->hosts) {
    if (host.port != port) continue;
    for (Ipv4Addr addr : host.addrs) {
      if (addr == dst_ip) {
        return DeliveryResult::Delivered(host.name, owner->name, port);
      }
    }
  }
  return DeliveryResult::DeliveredNoListener(owner->name, port);
}

DeliveryResult DeliverDirect(const std::vector<ParticipantConfig>& configs,
                             Ipv4Addr dst_ip) {
  for (const ParticipantConfig& config : configs) {
    for (const HostBinding& host : config.hosts) {
      for (Ipv4Addr addr : host.addrs) {
        if (addr == dst_ip) {
          return DeliveryResult::Delivered(host.name, config.name, host.port);
        }
      }
    }
  }
  return DeliveryResult::DroppedNoRoute();
}

namespace {

const PolicyAst* PolicyFor(const PolicyMap& policies, const std::string& name,
                           bool outbound) {
  auto it = policies.find(name);
  if (it == policies.end()) return nullptr;
  const auto& entry = outbound ? it->second.outbound : it->second.inbound;
  return entry ? &*entry : nullptr;
}

}  // namespace

OracleTrace OracleForwardFrom(const std::vector<ParticipantConfig>& configs,
                              const std::map<std::string, Rib>& ribs,
                              const PolicyMap& policies,
                              const std::string& ingress,
                              const FlowKeys& keys) {
  // Route lookup over the ingress participant's RIB (plus the fabric's own
  // subnet, which is directly attached everywhere).
  auto rib_it = ribs.find(ingress);
  if (rib_it == ribs.end()) {
    throw InconsistentStateError("no RIB for participant '" + ingress + "'");
  }
  const Rib& rib = rib_it->second;

  const CidrPrefix* routed = nullptr;
  const RibEntry* entry = nullptr;
  for (const auto& [prefix, rib_entry] : rib.entries) {
    if (!prefix.Contains(keys.dst_ip)) continue;
    if (routed == nullptr || prefix.length() > routed->length()) {
      routed = &prefix;
      entry = &rib_entry;
    }
  }
  if (kFabricSubnet.Contains(keys.dst_ip) &&
      (routed == nullptr || kFabricSubnet.length() > routed->length())) {
    return {DeliverDirect(configs, keys.dst_ip), std::nullopt};
  }
  if (routed == nullptr) {
    return {DeliveryResult::DroppedNoRoute(), std::nullopt};
  }

  // Outbound steering: terms restricted to destinations the named peer
  // actually announced. Zero applicable terms means plain best-path
  // forwarding; several with distinct egress is an ambiguity the validator
  // rejects up front.
  std::string egress = entry->best_origin;
  const PolicyTerm* steering_term = nullptr;
  if (const PolicyAst* outbound = PolicyFor(policies, ingress, true)) {
    std::set<std::string> egresses;
    for (const PolicyTerm* term : outbound->Terms()) {
      if (term->action.kind != PolicyAction::Kind::kFwdParticipant) {
        throw InconsistentStateError(
            "outbound policy of '" + ingress +
            "' has a term whose action is not a peer forward");
      }
      bool matches = true;
      for (const MatchPredicate& pred : term->predicates) {
        if (!Matches(pred, keys)) {
          matches = false;
          break;
        }
      }
      if (!matches) continue;
      const ParticipantConfig* peer =
          FindParticipant(configs, term->action.participant);
      if (peer == nullptr) {
        throw InconsistentStateError("outbound policy of '" + ingress +
                                     "' forwards to unknown participant '" +
                                     term->action.participant + "'");
      }
      bool announced = false;
      for (const CidrPrefix& prefix : peer->announced) {
        if (prefix == *routed) {
          announced = true;
          break;
        }
      }
      if (!announced) continue;
      egresses.insert(term->action.participant);
      if (steering_term == nullptr) steering_term = term;
    }
    if (egresses.size() > 1) {
      throw AmbiguousForwardError(
          "multiple outbound terms of '" + ingress + "' apply to " +
          keys.dst_ip.ToString() + ":" + std::to_string(keys.dstport));
    }
    if (egresses.size() == 1) egress = *egresses.begin();
    if (egresses.empty()) steering_term = nullptr;
  }

  const ParticipantConfig* egress_config = FindParticipant(configs, egress);
  if (egress_config == nullptr || egress_config->phys_ports.empty()) {
    throw InconsistentStateError("egress participant '" + egress +
                                 "' missing or has no ports");
  }

  // Inbound port selection at the egress. With no inbound policy the first
  // listed port receives everything; with one, the first matching term picks
  // the port and anything unmatched is dropped. A drop at a steered-to
  // egress that is not the destination's best path is attributed to the
  // steering term (that term is what pulled the traffic there); otherwise it
  // is the fabric default at work.
  int port = egress_config->phys_ports.front();
  if (const PolicyAst* inbound = PolicyFor(policies, egress, false)) {
    const PolicyTerm* selected = nullptr;
    for (const PolicyTerm* term : inbound->Terms()) {
      if (term->action.kind != PolicyAction::Kind::kFwdPhysPort) {
        throw InconsistentStateError(
            "inbound policy of '" + egress +
            "' has a term whose action is not a physical-port forward");
      }
      bool matches = true;
      for (const MatchPredicate& pred : term->predicates) {
        if (!Matches(pred, keys)) {
          matches = false;
          break;
        }
      }
      if (matches) {
        selected = term;
        break;
      }
    }
    if (selected == nullptr) {
      std::string provenance =
          (steering_term != nullptr && egress != entry->best_origin)
              ? TermProvenance(ingress, "outbound", steering_term->span)
              : "default";
      return {DeliveryResult::DroppedByPolicy(std::move(provenance)), egress};
    }
    size_t index = static_cast<size_t>(selected->action.port_index);
    if (index >= egress_config->phys_ports.size()) {
      throw InconsistentStateError("inbound policy of '" + egress +
                                   "' selects port index out of range");
    }
    port = egress_config->phys_ports[index];
  }

  return {DeliverToPort(configs, port, keys.dst_ip), egress};
}

DeliveryResult OracleForward(const std::vector<ParticipantConfig>& configs,
                             const std::map<std::string, Rib>& ribs,
                             const PolicyMap& policies,
                             const PacketProbe& probe) {
  auto [host, owner] = FindHost(configs, probe.src_host);
  if (host == nullptr) {
    throw InconsistentStateError("unknown source host '" + probe.src_host +
                                 "'");
  }
  return OracleForwardFrom(configs, ribs, policies, owner->name, probe.Keys())
      .result;
}

}  // namespace sdx

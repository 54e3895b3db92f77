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

#include "sdx/vnh.hpp"

#include "sdx/errors.hpp"

namespace sdx {

SignatureOutcome SignatureOutcome::Egress(std::string participant, int port) {
  SignatureOutcome o;
  o.kind = Kind::kEgress;
  o.participant = std::move(participant);
  o.port = port;
  return o;
}

SignatureOutcome SignatureOutcome::Drop() {
  SignatureOutcome o;
  o.kind = Kind::kDrop;
  return o;
}

SignatureOutcome SignatureOutcome::NoRoute() {
  SignatureOutcome o;
  o.kind = Kind::kNoRoute;
  return o;
}

std::string SignatureOutcome::ToString() const {
  switch (kind) {
    case Kind::kEgress:
      return participant + ":" + std::to_string(port);
    case Kind::kDrop:
      return "drop";
    case Kind::kNoRoute:
      return "no-route";
  }
  return "?";
}

std::set<uint16_t> CollectPortLiterals(const PolicyMap& policies) {
  std::set<uint16_t> literals;
  auto scan = [&](const std::optional<PolicyAst>& ast) {
    if (!ast) return;
    for (const PolicyTerm* term : ast->Terms()) {
      for (const MatchPredicate& pred : term->predicates) {
        if (pred.field == MatchField::kDstPort) literals.insert(pred.port);
      }
    }
  };
  for (const auto& [name, pair] : policies) {
    scan(pair.outbound);
    scan(pair.inbound);
  }
  return literals;
}

std::vector<PortClass> PortClasses(const std::set<uint16_t>& literals) {
  std::vector<PortClass> classes;
  for (uint16_t port : literals) classes.push_back(PortClass::Literal(port));
  classes.push_back(PortClass::Other());
  return classes;
}

uint16_t RepresentativeOtherPort(const std::set<uint16_t>& literals) {
  if (!literals.contains(22)) return 22;
  for (uint32_t port = 1; port <= 65535; ++port) {
    if (!literals.contains(static_cast<uint16_t>(port))) {
      return static_cast<uint16_t>(port);
    }
  }
  throw InconsistentStateError("every transport port is a policy literal");
}

namespace {

SignatureOutcome OutcomeOf(const DeliveryResult& result) {
  switch (result.kind) {
    case DeliveryResult::Kind::kDelivered:
    case DeliveryResult::Kind::kDeliveredNoListener:
      return SignatureOutcome::Egress(result.participant, result.port);
    case DeliveryResult::Kind::kDroppedByPolicy:
      return SignatureOutcome::Drop();
    case DeliveryResult::Kind::kDroppedNoRoute:
      return SignatureOutcome::NoRoute();
  }
  return SignatureOutcome::NoRoute();
}

}  // namespace

BehaviorSignature ComputeSignature(
    const CidrPrefix& prefix, const std::vector<ParticipantConfig>& configs,
    const std::map<std::string, Rib>& ribs, const PolicyMap& policies) {
  std::set<uint16_t> literals = CollectPortLiterals(policies);
  uint16_t other_port = RepresentativeOtherPort(literals);

  BehaviorSignature signature;
  for (const ParticipantConfig& ingress : configs) {
    // Any source inside the participant stands for the whole participant:
    // validated policies never look at source fields.
    FlowKeys keys;
    keys.dst_ip = prefix.representative();
    if (!ingress.hosts.empty() && !ingress.hosts.front().addrs.empty()) {
      keys.src_ip = ingress.hosts.front().addrs.front();
    }
    for (const PortClass& port_class : PortClasses(literals)) {
      keys.dstport = port_class.is_other() ? other_port : port_class.port();
      OracleTrace trace =
          OracleForwardFrom(configs, ribs, policies, ingress.name, keys);
      signature.cells[{ingress.name, port_class}] = OutcomeOf(trace.result);
    }
  }
  return signature;
}

std::map<CidrPrefix, BehaviorSignature> ComputeSignatures(
    const std::vector<ParticipantConfig>& configs,
    const std::map<std::string, Rib>& ribs, const PolicyMap& policies) {
  std::map<CidrPrefix, BehaviorSignature> signatures;
  for (const auto& [prefix, announcements] : AnnouncementsByPrefix(configs)) {
    signatures[prefix] = ComputeSignature(prefix, configs, ribs, policies);
  }
  return signatures;
}

std::vector<VirtualNextHop> AssignVnhs(
    const std::map<CidrPrefix, BehaviorSignature>& signatures,
    const VnhPool& pool) {
  // Group by signature; the groups come out ordered by smallest member
  // because the input map is ordered by prefix and insertion into each group
  // preserves that.
  std::map<BehaviorSignature, std::set<CidrPrefix>> groups;
  for (const auto& [prefix, signature] : signatures) {
    groups[signature].insert(prefix);
  }

  std::vector<const std::set<CidrPrefix>*> ordered;
  for (const auto& [signature, prefixes] : groups) ordered.push_back(&prefixes);
  std::sort(ordered.begin(), ordered.end(),
            [](const std::set<CidrPrefix>* a, const std::set<CidrPrefix>* b) {
              return *a->begin() < *b->begin();
            });

  size_t available =
      (uint64_t{1} << (32 - pool.base.length())) - 1;  // network addr reserved
  if (ordered.size() > available) {
    throw PoolExhaustedError(ordered.size(), available);
  }

  std::vector<VirtualNextHop> vnhs;
  int label = 0;
  for (const std::set<CidrPrefix>* prefixes : ordered) {
    ++label;
    VirtualNextHop vnh;
    vnh.label = label;
    vnh.prefixes = *prefixes;
    vnh.virtual_ip = pool.base.network() + static_cast<uint32_t>(label);
    vnh.virtual_mac = pool.mac_base + static_cast<uint64_t>(label);
    vnhs.push_back(std::move(vnh));
  }
  return vnhs;
}

const VirtualNextHop* VnhForPrefix(const std::vector<VirtualNextHop>& vnhs,
                                   const CidrPrefix& prefix) {
  for (const VirtualNextHop& vnh : vnhs) {
    if (vnh.prefixes.contains(prefix)) return &vnh;
  }
  return nullptr;
}

const VirtualNextHop* VnhForIp(const std::vector<VirtualNextHop>& vnhs,
                               Ipv4Addr ip) {
  for (const VirtualNextHop& vnh : vnhs) {
    if (vnh.virtual_ip == ip) return &vnh;
  }
  return nullptr;
}

const VirtualNextHop* VnhForMac(const std::vector<VirtualNextHop>& vnhs,
                                const MacAddr& mac) {
  for (const VirtualNextHop& vnh : vnhs) {
    if (vnh.virtual_mac == mac) return &vnh;
  }
  return nullptr;
}

}  // namespace sdx

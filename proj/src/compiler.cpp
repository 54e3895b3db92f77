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

#include "sdx/compiler.hpp"

#include <algorithm>
#include <optional>

#include "sdx/errors.hpp"

namespace sdx {
namespace {

const char* KindName(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::kOverlapAmbiguity: return "OverlapAmbiguity";
    case Violation::Kind::kInboundPortOutOfRange: return "InboundPortOutOfRange";
    case Violation::Kind::kOutboundPhysPort: return "OutboundPhysPort";
    case Violation::Kind::kInboundPeerFwd: return "InboundPeerFwd";
    case Violation::Kind::kUnsupportedMatchField: return "UnsupportedMatchField";
    case Violation::Kind::kOutboundTermNoDstport: return "OutboundTermNoDstport";
  }
  return "?";
}

// Set of dstports a term's predicate chain can match: any port, exactly one
// literal, or none at all (contradictory literals).
struct PortDomain {
  enum class Kind { kAny, kLiteral, kEmpty };
  Kind kind = Kind::kAny;
  uint16_t literal = 0;
};

PortDomain DstportDomain(const std::vector<MatchPredicate>& predicates) {
  PortDomain domain;
  for (const MatchPredicate& pred : predicates) {
    if (pred.field != MatchField::kDstPort) continue;
    if (domain.kind == PortDomain::Kind::kAny) {
      domain.kind = PortDomain::Kind::kLiteral;
      domain.literal = pred.port;
    } else if (domain.kind == PortDomain::Kind::kLiteral &&
               domain.literal != pred.port) {
      domain.kind = PortDomain::Kind::kEmpty;
    }
  }
  return domain;
}

bool DomainsIntersect(const PortDomain& a, const PortDomain& b) {
  if (a.kind == PortDomain::Kind::kEmpty || b.kind == PortDomain::Kind::kEmpty)
    return false;
  if (a.kind == PortDomain::Kind::kAny || b.kind == PortDomain::Kind::kAny)
    return true;
  return a.literal == b.literal;
}

bool UsesOnlyDstport(const std::vector<MatchPredicate>& predicates) {
  return std::all_of(predicates.begin(), predicates.end(),
                     [](const MatchPredicate& pred) {
                       return pred.field == MatchField::kDstPort;
                     });
}

// First inbound term matching the given dstport, or null when the policy
// drops that port. Inbound predicates are dstport-only past validation.
const PolicyTerm* SelectInbound(const PolicyAst& inbound, uint16_t dstport) {
  FlowKeys keys;
  keys.dstport = dstport;
  for (const PolicyTerm* term : inbound.Terms()) {
    bool matches = true;
    for (const MatchPredicate& pred : term->predicates) {
      if (!Matches(pred, keys)) {
        matches = false;
        break;
      }
    }
    if (matches) return term;
  }
  return nullptr;
}

// Best announcer of a VNH. The partition guarantees every prefix in a class
// has the same announcer set, hence the same best path.
std::string BestForVnh(const VirtualNextHop& vnh,
                       const std::map<CidrPrefix, std::string>& best_origin) {
  std::optional<std::string> best;
  for (const CidrPrefix& prefix : vnh.prefixes) {
    auto it = best_origin.find(prefix);
    if (it == best_origin.end()) {
      throw InconsistentStateError("VNH prefix " + prefix.ToString() +
                                   " is not announced by anyone");
    }
    if (best && *best != it->second) {
      throw InconsistentStateError(
          "VNH " + std::to_string(vnh.label) +
          " mixes prefixes with different best paths");
    }
    best = it->second;
  }
  if (!best) {
    throw InconsistentStateError("VNH " + std::to_string(vnh.label) +
                                 " has no prefixes");
  }
  return *best;
}

}  // namespace

std::string ToString(const Violation& violation) {
  return std::string(KindName(violation.kind)) + "(" + violation.participant +
         "): " + violation.detail;
}

std::vector<AugmentedTerm> AugmentWithReachability(
    const PolicyAst& policy, const std::string& owner,
    const std::vector<ParticipantConfig>& configs) {
  (void)owner;
  std::vector<AugmentedTerm> augmented;
  for (const PolicyTerm* term : policy.Terms()) {
    if (term->action.kind != PolicyAction::Kind::kFwdParticipant) continue;
    const ParticipantConfig* egress =
        FindParticipant(configs, term->action.participant);
    if (egress == nullptr) continue;
    std::set<CidrPrefix> prefixes(egress->announced.begin(),
                                  egress->announced.end());
    if (prefixes.empty()) continue;
    augmented.push_back(
        {term->predicates, egress->name, std::move(prefixes), term->span});
  }
  return augmented;
}

std::vector<Violation> ValidatePolicies(
    const std::vector<ParticipantConfig>& configs, const PolicyMap& policies) {
  std::vector<Violation> violations;
  auto add = [&](Violation::Kind kind, const std::string& participant,
                 std::string detail) {
    violations.push_back({kind, participant, std::move(detail)});
  };

  for (const ParticipantConfig& config : configs) {
    auto it = policies.find(config.name);
    if (it == policies.end()) continue;
    const ParticipantPolicies& pair = it->second;

    if (pair.outbound) {
      for (const PolicyTerm* term : pair.outbound->Terms()) {
        if (term->action.kind != PolicyAction::Kind::kFwdParticipant) {
          add(Violation::Kind::kOutboundPhysPort, config.name,
              "outbound term must forward to a peer, got " +
                  ToString(term->action));
          continue;
        }
        if (!UsesOnlyDstport(term->predicates)) {
          add(Violation::Kind::kUnsupportedMatchField, config.name,
              "outbound terms may only match dstport");
        }
        if (DstportDomain(term->predicates).kind == PortDomain::Kind::kAny) {
          add(Violation::Kind::kOutboundTermNoDstport, config.name,
              "outbound term forwarding to '" + term->action.participant +
                  "' has no dstport match");
        }
      }

      // Two parallel terms with different egress that could both claim the
      // same packet make unicast steering nondeterministic.
      std::vector<AugmentedTerm> augmented =
          AugmentWithReachability(*pair.outbound, config.name, configs);
      for (size_t i = 0; i < augmented.size(); ++i) {
        for (size_t j = i + 1; j < augmented.size(); ++j) {
          if (augmented[i].egress == augmented[j].egress) continue;
          if (!DomainsIntersect(DstportDomain(augmented[i].predicates),
                                DstportDomain(augmented[j].predicates))) {
            continue;
          }
          std::vector<CidrPrefix> common;
          std::set_intersection(
              augmented[i].prefixes.begin(), augmented[i].prefixes.end(),
              augmented[j].prefixes.begin(), augmented[j].prefixes.end(),
              std::back_inserter(common));
          if (common.empty()) continue;
          add(Violation::Kind::kOverlapAmbiguity, config.name,
              "terms forwarding to '" + augmented[i].egress + "' and '" +
                  augmented[j].egress + "' both apply to " +
                  common.front().ToString());
        }
      }
    }

    if (pair.inbound) {
      for (const PolicyTerm* term : pair.inbound->Terms()) {
        if (term->action.kind != PolicyAction::Kind::kFwdPhysPort) {
          add(Violation::Kind::kInboundPeerFwd, config.name,
              "inbound term must forward to a physical port, got " +
                  ToString(term->action));
          continue;
        }
        if (!UsesOnlyDstport(term->predicates)) {
          add(Violation::Kind::kUnsupportedMatchField, config.name,
              "inbound terms may only match dstport");
        }
        int index = term->action.port_index;
        if (index < 0 ||
            static_cast<size_t>(index) >= config.phys_ports.size()) {
          add(Violation::Kind::kInboundPortOutOfRange, config.name,
              "phys_ports[" + std::to_string(index) + "] with only " +
                  std::to_string(config.phys_ports.size()) + " port(s)");
        }
      }
    }
  }
  return violations;
}

std::map<CidrPrefix, std::string> BestOriginByPrefix(
    const std::vector<ParticipantConfig>& configs) {
  std::map<CidrPrefix, std::string> best;
  for (const auto& [prefix, announcements] : AnnouncementsByPrefix(configs)) {
    best[prefix] = BestPath(prefix, announcements).origin;
  }
  return best;
}

FlowTable Compile(const std::vector<ParticipantConfig>& configs,
                  const PolicyMap& policies,
                  const std::map<std::string, Rib>& ribs,
                  const std::vector<VirtualNextHop>& vnhs) {
  (void)ribs;
  std::vector<Violation> violations = ValidatePolicies(configs, policies);
  if (!violations.empty()) {
    std::string detail = "policies do not validate:";
    for (const Violation& violation : violations) {
      detail += "\n  " + ToString(violation);
    }
    throw CompileError(detail);
  }

  std::map<CidrPrefix, std::string> best_origin = BestOriginByPrefix(configs);
  std::map<int, std::string> best_for_vnh;  // label -> participant
  for (const VirtualNextHop& vnh : vnhs) {
    best_for_vnh[vnh.label] = BestForVnh(vnh, best_origin);
  }

  auto inbound_of = [&](const std::string& name) -> const PolicyAst* {
    auto it = policies.find(name);
    if (it == policies.end() || !it->second.inbound) return nullptr;
    return &*it->second.inbound;
  };

  FlowTable table;

  // Band 3: outbound steering.
  for (const ParticipantConfig& config : configs) {
    auto it = policies.find(config.name);
    if (it == policies.end() || !it->second.outbound) continue;
    std::vector<AugmentedTerm> augmented =
        AugmentWithReachability(*it->second.outbound, config.name, configs);
    for (const AugmentedTerm& term : augmented) {
      PortDomain domain = DstportDomain(term.predicates);
      if (domain.kind == PortDomain::Kind::kEmpty) continue;  // matches nothing
      uint16_t dstport = domain.literal;  // kLiteral guaranteed by validation

      const ParticipantConfig* egress = FindParticipant(configs, term.egress);
      const PolicyAst* inbound = inbound_of(term.egress);

      for (const VirtualNextHop& vnh : vnhs) {
        bool intersects = std::any_of(
            vnh.prefixes.begin(), vnh.prefixes.end(),
            [&](const CidrPrefix& p) { return term.prefixes.contains(p); });
        if (!intersects) continue;

        FlowRule rule;
        rule.priority = 3;
        rule.match.in_ports = config.phys_ports;
        rule.match.dst_mac = vnh.virtual_mac;
        rule.match.dstport = dstport;
        rule.provenance = TermProvenance(config.name, "outbound", term.span);

        if (inbound == nullptr) {
          rule.action = FlowAction::Output(egress->phys_ports.front());
        } else if (const PolicyTerm* selected =
                       SelectInbound(*inbound, dstport)) {
          size_t index = static_cast<size_t>(selected->action.port_index);
          rule.action = FlowAction::Output(egress->phys_ports[index]);
        } else if (best_for_vnh[vnh.label] == term.egress) {
          // The egress's inbound policy drops this port and the traffic
          // would be destined there anyway; the global default covers it.
          continue;
        } else {
          rule.action = FlowAction::Drop();
        }
        table.Add(std::move(rule));
      }
    }
  }

  // Band 2: inbound port selection on the VNHs whose best path is the
  // policy's owner; that is where default-forwarded traffic lands.
  for (const ParticipantConfig& config : configs) {
    const PolicyAst* inbound = inbound_of(config.name);
    if (inbound == nullptr) continue;
    for (const VirtualNextHop& vnh : vnhs) {
      if (best_for_vnh[vnh.label] != config.name) continue;
      for (const PolicyTerm* term : inbound->Terms()) {
        PortDomain domain = DstportDomain(term->predicates);
        if (domain.kind == PortDomain::Kind::kEmpty) continue;
        FlowRule rule;
        rule.priority = 2;
        rule.match.dst_mac = vnh.virtual_mac;
        if (domain.kind == PortDomain::Kind::kLiteral) {
          rule.match.dstport = domain.literal;
        }
        size_t index = static_cast<size_t>(term->action.port_index);
        rule.action = FlowAction::Output(config.phys_ports[index]);
        rule.provenance = TermProvenance(config.name, "inbound", term->span);
        table.Add(std::move(rule));
      }
    }
  }

  // Band 1: best-path default forwarding, for VNHs whose best participant
  // leaves port selection to the fabric.
  for (const VirtualNextHop& vnh : vnhs) {
    const std::string& best = best_for_vnh[vnh.label];
    if (inbound_of(best) != nullptr) continue;
    const ParticipantConfig* config = FindParticipant(configs, best);
    if (config == nullptr || config->phys_ports.empty()) {
      throw CompileError("best-path participant '" + best +
                         "' missing or has no ports");
    }
    FlowRule rule;
    rule.priority = 1;
    rule.match.dst_mac = vnh.virtual_mac;
    rule.action = FlowAction::Output(config->phys_ports.front());
    rule.provenance = "bgp:" + best;
    table.Add(std::move(rule));
  }

  // Band 0: anything without a positive match is dropped.
  FlowRule fallback;
  fallback.priority = 0;
  fallback.action = FlowAction::Drop();
  fallback.provenance = "default";
  table.Add(std::move(fallback));

  return table;
}

size_t RuleCountBound(const std::vector<ParticipantConfig>& configs,
                      const PolicyMap& policies,
                      const std::vector<VirtualNextHop>& vnhs) {
  std::map<CidrPrefix, std::string> best_origin = BestOriginByPrefix(configs);
  std::map<std::string, size_t> own_vnhs;
  for (const VirtualNextHop& vnh : vnhs) {
    own_vnhs[BestForVnh(vnh, best_origin)] += 1;
  }

  size_t bound = vnhs.size();  // band 1
  for (const auto& [name, pair] : policies) {
    if (pair.outbound) bound += pair.outbound->Terms().size() * vnhs.size();
    if (pair.inbound) bound += pair.inbound->Terms().size() * own_vnhs[name];
  }
  return bound;
}

}  // namespace sdx

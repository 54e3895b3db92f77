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
// Virtual Next Hops: destination prefixes are partitioned into
// forwarding-equivalence classes, and each class is given one virtual
// next hop (virtual IP + virtual MAC). Flow rules then match on the class
// MAC instead of on individual prefixes, which keeps the fabric's flow
// table small.

#ifndef SDX_VNH_HPP_
#define SDX_VNH_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sdx/net.hpp"
#include "sdx/oracle.hpp"
#include "sdx/route_server.hpp"

namespace sdx {

/// Destination-port equivalence class: one class per port literal appearing
/// in any policy, plus a single class for every other port. Policies only
/// ever test ports for equality against literals, so all non-literal ports
/// behave identically.
struct PortClass {
  static constexpr uint32_t kOtherCode = 0x10000;

  uint32_t code = kOtherCode;

  static PortClass Literal(uint16_t port) { return {port}; }
  static PortClass Other() { return {kOtherCode}; }

  bool is_other() const { return code == kOtherCode; }
  uint16_t port() const { return static_cast<uint16_t>(code); }
  std::string ToString() const {
    return is_other() ? "other" : std::to_string(code);
  }

  friend auto operator<=>(const PortClass&, const PortClass&) = default;
};

/// Terminal fate of traffic into a prefix from one ingress: delivered at a
/// participant's port, dropped by policy, or unroutable.
struct SignatureOutcome {
  enum class Kind { kEgress, kDrop, kNoRoute };

  Kind kind = Kind::kNoRoute;
  std::string participant;  // kEgress
  int port = -1;            // kEgress

  static SignatureOutcome Egress(std::string participant, int port);
  static SignatureOutcome Drop();
  static SignatureOutcome NoRoute();

  std::string ToString() const;

  friend auto operator<=>(const SignatureOutcome&, const SignatureOutcome&) =
      default;
};

/// What "similar forwarding behavior" means, made precise: the outcome for
/// every (ingress participant, destination-port class) pair. Two prefixes
/// belong in the same VNH exactly when their signatures are equal.
struct BehaviorSignature {
  std::map<std::pair<std::string, PortClass>, SignatureOutcome> cells;

  friend auto operator<=>(const BehaviorSignature&, const BehaviorSignature&) =
      default;
};

struct VirtualNextHop {
  int label = 0;  // 1-based ordinal
  std::set<CidrPrefix> prefixes;
  Ipv4Addr virtual_ip;
  MacAddr virtual_mac;
};

/// Address pool VNHs are allocated from: virtual IPs come from `base`
/// (skipping the network address itself), MACs are `mac_base` + label.
struct VnhPool {
  CidrPrefix base;
  MacAddr mac_base;
};

/// Every distinct dstport literal in the given policies.
std::set<uint16_t> CollectPortLiterals(const PolicyMap& policies);

/// Port classes for a scenario: one per literal, plus the OTHER class.
std::vector<PortClass> PortClasses(const std::set<uint16_t>& literals);

/// A concrete port that represents the OTHER class (22 when no policy uses
/// it, otherwise the smallest unused port).
uint16_t RepresentativeOtherPort(const std::set<uint16_t>& literals);

/// Computes the behavior signature of one announced prefix by running the
/// interpretive pipeline on a representative probe per (ingress, port
/// class). Assumes policies have passed validation.
BehaviorSignature ComputeSignature(const CidrPrefix& prefix,
                                   const std::vector<ParticipantConfig>& configs,
                                   const std::map<std::string, Rib>& ribs,
                                   const PolicyMap& policies);

/// Signatures for every announced prefix in the scenario.
std::map<CidrPrefix, BehaviorSignature> ComputeSignatures(
    const std::vector<ParticipantConfig>& configs,
    const std::map<std::string, Rib>& ribs, const PolicyMap& policies);

/// Groups prefixes by signature equality and allocates one VNH per group.
/// Groups are ordered by their numerically smallest member prefix and
/// labeled 1..K in that order. Raises PoolExhaustedError when the pool
/// cannot cover the classes.
std::vector<VirtualNextHop> AssignVnhs(
    const std::map<CidrPrefix, BehaviorSignature>& signatures,
    const VnhPool& pool);

/// The VNH whose prefix set covers `prefix`, or null.
const VirtualNextHop* VnhForPrefix(const std::vector<VirtualNextHop>& vnhs,
                                   const CidrPrefix& prefix);

/// The VNH owning a virtual IP / MAC, or null.
const VirtualNextHop* VnhForIp(const std::vector<VirtualNextHop>& vnhs,
                               Ipv4Addr ip);
const VirtualNextHop* VnhForMac(const std::vector<VirtualNextHop>& vnhs,
                                const MacAddr& mac);

}  // namespace sdx

#endif  // SDX_VNH_HPP_

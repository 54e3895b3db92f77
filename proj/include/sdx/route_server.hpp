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
// Centralized route server: every participant peers only with it, it selects
// best paths, and it is the only entity that populates the participants'
// routing state.

#ifndef SDX_ROUTE_SERVER_HPP_
#define SDX_ROUTE_SERVER_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdx/net.hpp"

namespace sdx {

/// A host attached to one of a participant's fabric ports, with the
/// addresses it answers on.
struct HostBinding {
  std::string name;
  int port = 0;  // fabric port index; must be one of the owner's phys_ports
  std::vector<Ipv4Addr> addrs;
};

struct ParticipantConfig {
  std::string name;
  uint32_t asn = 0;
  Ipv4Addr router_id;
  std::vector<int> phys_ports;  // fabric port indices, unique fabric-wide
  std::vector<CidrPrefix> announced;
  std::vector<HostBinding> hosts;
};

/// One prefix advertised to the route server.
struct RouteAnnouncement {
  CidrPrefix prefix;
  std::string origin;
  Ipv4Addr router_id;

  friend auto operator<=>(const RouteAnnouncement&,
                          const RouteAnnouncement&) = default;
};

struct RibEntry {
  std::string best_origin;
  std::set<std::string> candidates;

  friend bool operator==(const RibEntry&, const RibEntry&) = default;
};

/// Routes disseminated to one participant. Prefixes the participant itself
/// announces never appear: traffic to them stays inside its own network.
struct Rib {
  std::string owner;
  std::map<CidrPrefix, RibEntry> entries;
};

/// Fields recoverable from a Quagga-style bgpd.conf fragment. Name, ports
/// and hosts come from the surrounding scenario.
struct BgpdConfig {
  uint32_t asn = 0;
  Ipv4Addr router_id;
  std::vector<CidrPrefix> announced;
};

/// Parses the supported bgpd.conf subset: `router bgp`, `bgp router-id`,
/// `network`, plus `neighbor` and `redistribute` lines which are accepted
/// and ignored. Raises ConfSyntaxError / MissingRouterIdError.
BgpdConfig ParseBgpdConf(std::string_view text);

/// The route server's selection rule: the candidate whose router-id is the
/// numerically smallest 32-bit value. All candidates must be for `prefix`.
/// Raises EmptyCandidatesError.
RouteAnnouncement BestPath(const CidrPrefix& prefix,
                           const std::vector<RouteAnnouncement>& candidates);

/// Builds every participant's RIB from the full set of configurations.
/// Raises DuplicateParticipantError / DuplicateRouterIdError.
std::map<std::string, Rib> ComputeRibs(
    const std::vector<ParticipantConfig>& configs);

/// All announcements across a scenario, grouped by prefix.
std::map<CidrPrefix, std::vector<RouteAnnouncement>> AnnouncementsByPrefix(
    const std::vector<ParticipantConfig>& configs);

const ParticipantConfig* FindParticipant(
    const std::vector<ParticipantConfig>& configs, const std::string& name);

}  // namespace sdx

#endif  // SDX_ROUTE_SERVER_HPP_

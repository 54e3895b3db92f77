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

#include "sdx/route_server.hpp"

#include <charconv>
#include <sstream>

#include "sdx/errors.hpp"

namespace sdx {
namespace {

std::vector<std::string> SplitWords(const std::string& line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

}  // namespace

BgpdConfig ParseBgpdConf(std::string_view text) {
  BgpdConfig config;
  bool saw_router_bgp = false;
  bool saw_router_id = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> words = SplitWords(line);
    if (words.empty() || words[0][0] == '!') continue;  // blank or comment

    if (words[0] == "router") {
      if (words.size() != 3 || words[1] != "bgp") {
        throw ConfSyntaxError(line_no, "expected 'router bgp <asn>'");
      }
      uint32_t asn = 0;
      auto [ptr, ec] = std::from_chars(words[2].data(),
                                       words[2].data() + words[2].size(), asn);
      if (ec != std::errc() || ptr != words[2].data() + words[2].size()) {
        throw ConfSyntaxError(line_no, "bad AS number '" + words[2] + "'");
      }
      config.asn = asn;
      saw_router_bgp = true;
    } else if (words[0] == "bgp") {
      if (words.size() != 3 || words[1] != "router-id") {
        throw ConfSyntaxError(line_no, "expected 'bgp router-id <addr>'");
      }
      auto addr = Ipv4Addr::Parse(words[2]);
      if (!addr) {
        throw ConfSyntaxError(line_no, "bad router-id '" + words[2] + "'");
      }
      config.router_id = *addr;
      saw_router_id = true;
    } else if (words[0] == "network") {
      if (words.size() != 2) {
        throw ConfSyntaxError(line_no, "expected 'network <prefix>'");
      }
      auto prefix = CidrPrefix::Parse(words[1]);
      if (!prefix) {
        throw ConfSyntaxError(line_no, "bad prefix '" + words[1] + "'");
      }
      config.announced.push_back(*prefix);
    } else if (words[0] == "neighbor" || words[0] == "redistribute") {
      // Session plumbing; irrelevant to the simulated route server.
    } else {
      throw ConfSyntaxError(line_no, "unrecognized directive '" + words[0] + "'");
    }
  }

  if (!saw_router_bgp) throw ConfSyntaxError(1, "missing 'router bgp' block");
  if (!saw_router_id) throw MissingRouterIdError();
  return config;
}

RouteAnnouncement BestPath(const CidrPrefix& prefix,
                           const std::vector<RouteAnnouncement>& candidates) {
  if (candidates.empty()) throw EmptyCandidatesError();
  const RouteAnnouncement* best = nullptr;
  for (const RouteAnnouncement& candidate : candidates) {
    if (candidate.prefix != prefix) {
      throw InconsistentStateError("best-path candidate for " +
                                   candidate.prefix.ToString() +
                                   " mixed into selection for " +
                                   prefix.ToString());
    }
    if (best == nullptr ||
        candidate.router_id.value() < best->router_id.value() ||
        (candidate.router_id == best->router_id &&
         candidate.origin < best->origin)) {
      best = &candidate;
    }
  }
  return *best;
}

std::map<CidrPrefix, std::vector<RouteAnnouncement>> AnnouncementsByPrefix(
    const std::vector<ParticipantConfig>& configs) {
  std::map<CidrPrefix, std::vector<RouteAnnouncement>> by_prefix;
  for (const ParticipantConfig& config : configs) {
    for (const CidrPrefix& prefix : config.announced) {
      by_prefix[prefix].push_back({prefix, config.name, config.router_id});
    }
  }
  return by_prefix;
}

std::map<std::string, Rib> ComputeRibs(
    const std::vector<ParticipantConfig>& configs) {
  std::set<std::string> names;
  std::set<uint32_t> router_ids;
  for (const ParticipantConfig& config : configs) {
    if (!names.insert(config.name).second) {
      throw DuplicateParticipantError(config.name);
    }
    if (!router_ids.insert(config.router_id.value()).second) {
      throw DuplicateRouterIdError(config.router_id.ToString());
    }
  }

  auto by_prefix = AnnouncementsByPrefix(configs);

  std::map<std::string, Rib> ribs;
  for (const ParticipantConfig& config : configs) {
    Rib rib;
    rib.owner = config.name;
    for (const auto& [prefix, announcements] : by_prefix) {
      bool self_announced = false;
      std::set<std::string> candidates;
      for (const RouteAnnouncement& announcement : announcements) {
        if (announcement.origin == config.name) self_announced = true;
        candidates.insert(announcement.origin);
      }
      if (self_announced) continue;
      rib.entries[prefix] =
          RibEntry{BestPath(prefix, announcements).origin, candidates};
    }
    ribs[config.name] = std::move(rib);
  }
  return ribs;
}

const ParticipantConfig* FindParticipant(
    const std::vector<ParticipantConfig>& configs, const std::string& name) {
  for (const ParticipantConfig& config : configs) {
    if (config.name == name) return &config;
  }
  return nullptr;
}

}  // namespace sdx

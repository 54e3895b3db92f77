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

#include "sdx/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sdx/errors.hpp"
#include "sdx/policy.hpp"

namespace sdx {
namespace {

using nlohmann::json;

Ipv4Addr RequireAddr(const json& value, const std::string& what,
                     std::vector<std::string>& problems) {
  if (value.is_string()) {
    if (auto addr = Ipv4Addr::Parse(value.get<std::string>())) return *addr;
  }
  problems.push_back("bad IPv4 address for " + what + ": " + value.dump());
  return Ipv4Addr();
}

CidrPrefix RequirePrefix(const json& value, const std::string& what,
                         std::vector<std::string>& problems) {
  if (value.is_string()) {
    if (auto prefix = CidrPrefix::Parse(value.get<std::string>())) {
      return *prefix;
    }
  }
  problems.push_back("bad CIDR prefix for " + what + ": " + value.dump());
  return CidrPrefix();
}

Scenario FromJson(const json& doc, const std::string& origin) {
  if (!doc.is_object()) {
    throw ScenarioParseError(origin, "top level must be an object");
  }
  std::vector<std::string> problems;
  Scenario scenario;

  for (const json& p : doc.value("participants", json::array())) {
    ParticipantConfig config;
    config.name = p.value("name", "");
    if (config.name.empty()) problems.push_back("participant without a name");

    bool has_conf = p.contains("bgpd_conf");
    bool has_inline =
        p.contains("asn") || p.contains("router_id") || p.contains("announced");
    if (has_conf && has_inline) {
      problems.push_back("participant '" + config.name +
                         "': give either bgpd_conf or inline "
                         "asn/router_id/announced, not both");
    } else if (has_conf) {
      try {
        BgpdConfig bgpd = ParseBgpdConf(p["bgpd_conf"].get<std::string>());
        config.asn = bgpd.asn;
        config.router_id = bgpd.router_id;
        config.announced = bgpd.announced;
      } catch (const Error& error) {
        problems.push_back("participant '" + config.name +
                           "': " + error.what());
      }
    } else {
      config.asn = p.value("asn", 0u);
      if (p.contains("router_id")) {
        config.router_id = RequireAddr(p["router_id"],
                                       config.name + ".router_id", problems);
      } else {
        problems.push_back("participant '" + config.name +
                           "' has no router_id");
      }
      for (const json& prefix : p.value("announced", json::array())) {
        config.announced.push_back(
            RequirePrefix(prefix, config.name + ".announced", problems));
      }
    }

    for (const json& port : p.value("phys_ports", json::array())) {
      config.phys_ports.push_back(port.get<int>());
    }
    for (const json& h : p.value("hosts", json::array())) {
      HostBinding host;
      host.name = h.value("name", "");
      host.port = h.value("port", -1);
      for (const json& addr : h.value("addrs", json::array())) {
        host.addrs.push_back(
            RequireAddr(addr, "host " + host.name, problems));
      }
      config.hosts.push_back(std::move(host));
    }
    scenario.participants.push_back(std::move(config));
  }

  const json policies_doc = doc.value("policies", json::object());
  for (const auto& [name, texts] : policies_doc.items()) {
    PolicyTexts pair;
    if (texts.contains("outbound")) {
      pair.outbound = texts["outbound"].get<std::string>();
    }
    if (texts.contains("inbound")) {
      pair.inbound = texts["inbound"].get<std::string>();
    }
    scenario.policies[name] = std::move(pair);
  }

  if (doc.contains("vnh_pool")) {
    const json& pool = doc["vnh_pool"];
    scenario.vnh_pool.base =
        RequirePrefix(pool.value("base", json()), "vnh_pool.base", problems);
    std::string mac = pool.value("mac_base", "");
    if (auto parsed = MacAddr::Parse(mac)) {
      scenario.vnh_pool.mac_base = *parsed;
    } else {
      problems.push_back("bad vnh_pool.mac_base: '" + mac + "'");
    }
  } else {
    problems.push_back("scenario has no vnh_pool");
  }

  for (const json& t : doc.value("traffic_tests", json::array())) {
    TrafficTest test;
    test.name = t.value("name", "");
    test.src_host = t.value("src_host", "");
    test.src_addr = RequireAddr(t.value("src_addr", json()),
                                "test " + test.name + ".src_addr", problems);
    test.dst_addr = RequireAddr(t.value("dst_addr", json()),
                                "test " + test.name + ".dst_addr", problems);
    test.dstport = t.value("dstport", 0);
    const json& expect = t.value("expect", json());
    if (expect.is_string() && expect.get<std::string>() == "dropped") {
      test.expect = TrafficTest::Expect::kDropped;
    } else if (expect.is_object() && expect.contains("delivered_to")) {
      test.expect = TrafficTest::Expect::kDeliveredTo;
      test.expect_host = expect["delivered_to"].get<std::string>();
    } else {
      problems.push_back("test '" + test.name +
                         "' needs expect: \"dropped\" or {delivered_to: h}");
    }
    scenario.traffic_tests.push_back(std::move(test));
  }

  if (!problems.empty()) throw ScenarioValidationError(std::move(problems));
  ValidateScenario(scenario);
  return scenario;
}

}  // namespace

void ValidateScenario(const Scenario& scenario) {
  std::vector<std::string> problems;

  std::set<std::string> names;
  std::set<uint32_t> router_ids;
  std::set<int> ports;
  std::set<std::string> host_names;

  for (const ParticipantConfig& config : scenario.participants) {
    if (!names.insert(config.name).second) {
      problems.push_back("duplicate participant '" + config.name + "'");
    }
    if (!router_ids.insert(config.router_id.value()).second) {
      problems.push_back("duplicate router-id " +
                         config.router_id.ToString());
    }
    if (config.phys_ports.empty()) {
      problems.push_back("participant '" + config.name +
                         "' has no physical ports");
    }
    for (int port : config.phys_ports) {
      if (port < 0) {
        problems.push_back("participant '" + config.name +
                           "' has a negative port index");
      } else if (!ports.insert(port).second) {
        problems.push_back("fabric port " + std::to_string(port) +
                           " assigned twice");
      }
    }
    for (const HostBinding& host : config.hosts) {
      if (!host_names.insert(host.name).second) {
        problems.push_back("duplicate host '" + host.name + "'");
      }
      bool on_own_port =
          std::find(config.phys_ports.begin(), config.phys_ports.end(),
                    host.port) != config.phys_ports.end();
      if (!on_own_port) {
        problems.push_back("host '" + host.name + "' sits on port " +
                           std::to_string(host.port) + " which is not one of " +
                           config.name + "'s ports");
      }
    }
  }

  // Hosts on one port must not share an address, or delivery would be
  // ambiguous.
  for (const ParticipantConfig& config : scenario.participants) {
    std::set<std::pair<int, uint32_t>> bound;
    for (const HostBinding& host : config.hosts) {
      for (Ipv4Addr addr : host.addrs) {
        if (!bound.insert({host.port, addr.value()}).second) {
          problems.push_back("address " + addr.ToString() +
                             " bound twice on port " +
                             std::to_string(host.port));
        }
      }
    }
  }

  // Announced prefixes must be identical or disjoint so that host routing
  // tables have non-overlapping rows; a prefix inside the fabric subnet
  // would shadow the direct route.
  std::vector<CidrPrefix> all_prefixes;
  for (const ParticipantConfig& config : scenario.participants) {
    for (const CidrPrefix& prefix : config.announced) {
      all_prefixes.push_back(prefix);
    }
  }
  for (size_t i = 0; i < all_prefixes.size(); ++i) {
    if (kFabricSubnet.Overlaps(all_prefixes[i])) {
      problems.push_back("announced prefix " + all_prefixes[i].ToString() +
                         " overlaps the fabric subnet " +
                         kFabricSubnet.ToString());
      continue;
    }
    for (size_t j = i + 1; j < all_prefixes.size(); ++j) {
      if (all_prefixes[i] != all_prefixes[j] &&
          all_prefixes[i].Overlaps(all_prefixes[j])) {
        problems.push_back("announced prefixes " +
                           all_prefixes[i].ToString() + " and " +
                           all_prefixes[j].ToString() +
                           " overlap without being equal");
      }
    }
  }

  for (const auto& [name, texts] : scenario.policies) {
    if (!names.contains(name)) {
      problems.push_back("policies given for unknown participant '" + name +
                         "'");
      continue;
    }
    std::set<std::string> peers;
    for (const ParticipantConfig& config : scenario.participants) {
      if (config.name != name) peers.insert(config.name);
    }
    auto try_parse = [&](const std::optional<std::string>& text,
                         const char* direction) {
      if (!text) return;
      try {
        ParsePolicy(*text, peers);
      } catch (const Error& error) {
        problems.push_back(name + " " + direction +
                           " policy: " + error.what());
      }
    };
    try_parse(texts.outbound, "outbound");
    try_parse(texts.inbound, "inbound");
  }

  if (scenario.vnh_pool.base.length() > 30) {
    problems.push_back("vnh_pool.base must leave room for at least 3 hosts");
  }

  for (const TrafficTest& test : scenario.traffic_tests) {
    const HostBinding* src = nullptr;
    for (const ParticipantConfig& config : scenario.participants) {
      for (const HostBinding& host : config.hosts) {
        if (host.name == test.src_host) src = &host;
      }
    }
    if (src == nullptr) {
      problems.push_back("test '" + test.name + "' references unknown host '" +
                         test.src_host + "'");
    } else if (std::find(src->addrs.begin(), src->addrs.end(),
                         test.src_addr) == src->addrs.end()) {
      problems.push_back("test '" + test.name + "': " +
                         test.src_addr.ToString() + " is not bound on '" +
                         test.src_host + "'");
    }
    if (test.expect == TrafficTest::Expect::kDeliveredTo &&
        !host_names.contains(test.expect_host)) {
      problems.push_back("test '" + test.name +
                         "' expects delivery to unknown host '" +
                         test.expect_host + "'");
    }
  }

  if (!problems.empty()) throw ScenarioValidationError(std::move(problems));
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioParseError(path, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return LoadScenarioFromString(buffer.str(), path);
}

Scenario LoadScenarioFromString(const std::string& text,
                                const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& error) {
    throw ScenarioParseError(origin, error.what());
  }
  return FromJson(doc, origin);
}

}  // namespace sdx

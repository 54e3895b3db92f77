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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <random>

#include "sdx/errors.hpp"
#include "sdx/route_server.hpp"
#include "test_util.hpp"

using namespace sdx;

namespace {

const char* kBgpdA =
    "router bgp 100\n"
    "  bgp router-id 172.0.0.1\n"
    "  neighbor 172.0.255.254 remote-as 65000\n"
    "  network 100.0.0.0/24\n"
    "  network 110.0.0.0/24\n"
    "  redistribute static\n";

RouteAnnouncement Ann(const char* prefix, const char* origin,
                      const char* router_id) {
  return {CidrPrefix::MustParse(prefix), origin, Ipv4Addr::MustParse(router_id)};
}

// Independent selection oracle: parse the dotted quad by hand and take the
// minimum 32-bit value with a plain linear scan.
const RouteAnnouncement& BruteForceBest(
    const std::vector<RouteAnnouncement>& candidates) {
  auto as_u32 = [](const std::string& quad) {
    unsigned a = 0, b = 0, c = 0, d = 0;
    std::sscanf(quad.c_str(), "%u.%u.%u.%u", &a, &b, &c, &d);
    return (static_cast<uint64_t>(a) << 24) | (b << 16) | (c << 8) | d;
  };
  const RouteAnnouncement* best = &candidates.front();
  for (const RouteAnnouncement& candidate : candidates) {
    if (as_u32(candidate.router_id.ToString()) <
        as_u32(best->router_id.ToString())) {
      best = &candidate;
    }
  }
  return *best;
}

}  // namespace

TEST_CASE("bgpd.conf fragment yields asn, router-id, networks") {
  BgpdConfig config = ParseBgpdConf(kBgpdA);
  CHECK(config.asn == 100);
  CHECK(config.router_id == Ipv4Addr::MustParse("172.0.0.1"));
  REQUIRE(config.announced.size() == 2);
  CHECK(config.announced[0] == CidrPrefix::MustParse("100.0.0.0/24"));
  CHECK(config.announced[1] == CidrPrefix::MustParse("110.0.0.0/24"));
}

TEST_CASE("bgpd.conf without network statements") {
  BgpdConfig config = ParseBgpdConf("router bgp 200\n bgp router-id 172.0.0.2");
  CHECK(config.asn == 200);
  CHECK(config.announced.empty());
}

TEST_CASE("bgpd.conf error paths") {
  CHECK_THROWS_AS(ParseBgpdConf("router bgp 100\n network 1.0.0.0/24\n"),
                  MissingRouterIdError);
  CHECK_THROWS_AS(ParseBgpdConf("bgp router-id 1.2.3.4\n"), ConfSyntaxError);
  CHECK_THROWS_AS(
      ParseBgpdConf("router bgp 100\n bgp router-id 1.2.3.4\n flarp\n"),
      ConfSyntaxError);
  CHECK_THROWS_AS(
      ParseBgpdConf("router bgp 100\n bgp router-id 1.2.3.4\n network x\n"),
      ConfSyntaxError);
  try {
    ParseBgpdConf("router bgp 100\n bgp rooter-id 1.2.3.4\n");
    FAIL("expected ConfSyntaxError");
  } catch (const ConfSyntaxError& error) {
    CHECK(error.line() == 2);
  }
}

TEST_CASE("bgpd.conf tolerates comments and blank lines") {
  BgpdConfig config = ParseBgpdConf(
      "! generated\n\nrouter bgp 300\n bgp router-id 9.9.9.9\n");
  CHECK(config.asn == 300);
}

TEST_CASE("best path: smallest router-id as 32-bit integer") {
  CidrPrefix p = CidrPrefix::MustParse("140.0.0.0/24");
  SUBCASE("two candidates") {
    auto best = BestPath(p, {Ann("140.0.0.0/24", "B", "172.0.0.2"),
                             Ann("140.0.0.0/24", "C", "172.0.0.3")});
    CHECK(best.origin == "B");
  }
  SUBCASE("singleton") {
    auto best = BestPath(p, {Ann("140.0.0.0/24", "X", "10.0.0.1")});
    CHECK(best.origin == "X");
  }
  SUBCASE("integer order, not lexicographic") {
    auto best = BestPath(p, {Ann("140.0.0.0/24", "X", "10.0.0.1"),
                             Ann("140.0.0.0/24", "Y", "9.255.255.255")});
    CHECK(best.origin == "Y");
  }
  SUBCASE("empty candidates") {
    CHECK_THROWS_AS(BestPath(p, {}), EmptyCandidatesError);
  }
  SUBCASE("mixed prefixes rejected") {
    CHECK_THROWS_AS(BestPath(p, {Ann("150.0.0.0/24", "B", "172.0.0.2")}),
                    InconsistentStateError);
  }
}

TEST_CASE("best path agrees with brute force and ignores order") {
  std::mt19937 rng(3);
  CidrPrefix p = CidrPrefix::MustParse("10.0.0.0/24");
  for (int round = 0; round < 1000; ++round) {
    int count = testing::Rand(rng, 1, 8);
    std::vector<RouteAnnouncement> candidates;
    std::set<uint32_t> used;
    for (int i = 0; i < count; ++i) {
      uint32_t rid = rng();
      while (used.contains(rid)) ++rid;
      used.insert(rid);
      candidates.push_back({p, "AS" + std::to_string(i), Ipv4Addr(rid)});
    }
    RouteAnnouncement expected = BruteForceBest(candidates);
    REQUIRE(BestPath(p, candidates).origin == expected.origin);

    std::shuffle(candidates.begin(), candidates.end(), rng);
    REQUIRE(BestPath(p, candidates).origin == expected.origin);
  }
}

TEST_CASE("reference RIBs: six learned prefixes, self-announced excluded") {
  Scenario scenario = testing::ReferenceScenario();
  auto ribs = ComputeRibs(scenario.participants);

  const Rib& a = ribs.at("A");
  REQUIRE(a.entries.size() == 6);
  for (const char* prefix : {"140.0.0.0/24", "150.0.0.0/24", "160.0.0.0/24",
                             "170.0.0.0/24", "180.0.0.0/24", "190.0.0.0/24"}) {
    CHECK(a.entries.contains(CidrPrefix::MustParse(prefix)));
  }
  CHECK(!a.entries.contains(CidrPrefix::MustParse("100.0.0.0/24")));
  CHECK(!a.entries.contains(CidrPrefix::MustParse("110.0.0.0/24")));

  // Co-announced prefixes resolve to B (the smaller router-id).
  CHECK(a.entries.at(CidrPrefix::MustParse("140.0.0.0/24")).best_origin == "B");
  CHECK(a.entries.at(CidrPrefix::MustParse("140.0.0.0/24")).candidates ==
        std::set<std::string>{"B", "C"});
  CHECK(a.entries.at(CidrPrefix::MustParse("180.0.0.0/24")).best_origin == "C");

  // B learns nothing it announces itself, even when co-announced by C.
  const Rib& b = ribs.at("B");
  CHECK(!b.entries.contains(CidrPrefix::MustParse("140.0.0.0/24")));
  CHECK(!b.entries.contains(CidrPrefix::MustParse("150.0.0.0/24")));
  CHECK(b.entries.size() == 4);  // 100, 110, 180, 190
}

TEST_CASE("one participant alone has an empty RIB") {
  ParticipantConfig solo;
  solo.name = "S";
  solo.router_id = Ipv4Addr::MustParse("1.1.1.1");
  solo.phys_ports = {0};
  solo.announced = {CidrPrefix::MustParse("10.0.0.0/24")};
  auto ribs = ComputeRibs({solo});
  CHECK(ribs.at("S").entries.empty());
}

TEST_CASE("duplicate names and router-ids are rejected") {
  ParticipantConfig a;
  a.name = "A";
  a.router_id = Ipv4Addr::MustParse("1.1.1.1");
  ParticipantConfig b = a;
  CHECK_THROWS_AS(ComputeRibs({a, b}), DuplicateParticipantError);
  b.name = "B";
  CHECK_THROWS_AS(ComputeRibs({a, b}), DuplicateRouterIdError);
}

TEST_CASE("rib candidate sets equal the announcing participants") {
  std::mt19937 rng(17);
  for (int round = 0; round < 50; ++round) {
    Scenario scenario = testing::RandomScenario(rng);
    auto ribs = ComputeRibs(scenario.participants);
    for (const auto& [owner, rib] : ribs) {
      for (const auto& [prefix, entry] : rib.entries) {
        std::set<std::string> announcers;
        for (const ParticipantConfig& config : scenario.participants) {
          for (const CidrPrefix& announced : config.announced) {
            if (announced == prefix) announcers.insert(config.name);
          }
        }
        REQUIRE(entry.candidates == announcers);
        REQUIRE(entry.candidates.contains(entry.best_origin));
        REQUIRE(!entry.candidates.contains(owner));
      }
    }
  }
}

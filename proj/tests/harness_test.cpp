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

#include "sdx/errors.hpp"
#include "sdx/harness.hpp"
#include "test_util.hpp"

using namespace sdx;

TEST_CASE("reference run passes all three traffic tests") {
  Report report = Run(testing::ReferenceScenario());
  REQUIRE(report.tests.size() == 3);
  CHECK(report.overall);
  for (const TestResult& test : report.tests) CHECK(test.pass);
  CHECK(report.diagnostics.empty());
  CHECK(report.tests[0].actual == "delivered(b1, port 1)");
  CHECK(report.tests[1].actual == "delivered(c2, port 3)");
  CHECK(report.tests[2].actual == "dropped(policy: default)");
}

TEST_CASE("removing C's inbound policy reroutes the 8080 probe to c1") {
  Scenario scenario = testing::ReferenceScenario();
  scenario.policies.erase("C");
  Report report = Run(scenario);
  REQUIRE(report.tests.size() == 3);
  // The drop expectation now fails: with no inbound policy, steered traffic
  // lands on C's first port, where c1 listens.
  CHECK(!report.tests[2].pass);
  CHECK(report.tests[2].actual == "delivered(c1, port 2)");
  CHECK(!report.overall);
}

TEST_CASE("a scenario with no traffic tests passes vacuously") {
  Scenario scenario = testing::ReferenceScenario();
  scenario.traffic_tests.clear();
  Report report = Run(scenario);
  CHECK(report.tests.empty());
  CHECK(report.overall);
}

TEST_CASE("violations surface as diagnostics, not exceptions") {
  Scenario scenario = testing::ReferenceScenario();
  scenario.policies["C"].inbound =
      "match(dstport=80) >> sdx.fwd(participant.phys_ports[7])";
  Report report = Run(scenario);
  CHECK(!report.overall);
  REQUIRE(report.diagnostics.size() == 1);
  CHECK(report.diagnostics[0].find("InboundPortOutOfRange") !=
        std::string::npos);
}

TEST_CASE("equivalence check covers the full probe space cleanly") {
  EquivalenceReport report = Check(testing::ReferenceScenario());
  // 15 bound source addresses x 8 announced prefixes x 4 ports.
  CHECK(report.probe_count == 480);
  CHECK(report.divergences.empty());
}

TEST_CASE("a corrupted flow table is caught by the check") {
  Pipeline pipeline = BuildPipeline(testing::ReferenceScenario());
  // Flip the output port of the first steering rule.
  for (FlowRule& rule : pipeline.fabric.flow_table.mutable_rules()) {
    if (rule.action.kind == FlowAction::Kind::kOutput) {
      rule.action.port = rule.action.port == 0 ? 1 : 0;
      break;
    }
  }
  EquivalenceReport report = CheckCompiled(pipeline);
  CHECK(!report.divergences.empty());
}

TEST_CASE("single-participant scenario has only no-route outcomes") {
  Scenario scenario;
  ParticipantConfig solo;
  solo.name = "S";
  solo.asn = 1;
  solo.router_id = Ipv4Addr::MustParse("1.1.1.1");
  solo.phys_ports = {0};
  solo.announced = {CidrPrefix::MustParse("10.0.0.0/24")};
  solo.hosts = {{"s1", 0, {Ipv4Addr::MustParse("10.0.0.1")}}};
  scenario.participants.push_back(solo);
  scenario.vnh_pool.base = CidrPrefix::MustParse("172.0.1.0/28");
  scenario.vnh_pool.mac_base = MacAddr::MustParse("aa:00:00:00:00:00");

  EquivalenceReport report = Check(scenario);
  CHECK(report.probe_count == 1);  // one source, one prefix, port 22 only
  CHECK(report.divergences.empty());
}

TEST_CASE("dumps are byte-identical across pipeline rebuilds") {
  Scenario scenario = testing::ReferenceScenario();
  Pipeline first = BuildPipeline(scenario);
  Pipeline second = BuildPipeline(scenario);
  for (DumpKind kind : {DumpKind::kRib, DumpKind::kEdges, DumpKind::kVnh,
                        DumpKind::kFlows}) {
    std::string a = DumpByKind(first, kind);
    std::string b = DumpByKind(second, kind);
    REQUIRE(!a.empty());
    REQUIRE(a == b);
  }
}

TEST_CASE("the vnh dump lists both mappings") {
  Pipeline pipeline = BuildPipeline(testing::ReferenceScenario());
  std::string dump = DumpVnh(pipeline);
  CHECK(dump.find("Virtual Next Hop --> IP Prefix:") != std::string::npos);
  CHECK(dump.find("Virtual Next Hop --> Next Hop Mac Address (Virtual):") !=
        std::string::npos);
  CHECK(dump.find("aa:00:00:00:00:01") != std::string::npos);
}

TEST_CASE("json report is stable and carries the verdict") {
  Scenario scenario = testing::ReferenceScenario();
  Report report = Run(scenario, {DumpKind::kVnh});
  std::string a = RenderReportJson(report);
  std::string b = RenderReportJson(Run(scenario, {DumpKind::kVnh}));
  CHECK(a == b);
  CHECK(a.find("\"overall_pass\": true") != std::string::npos);
  CHECK(a.find("\"vnh\"") != std::string::npos);
}

TEST_CASE("text report renders one line per test plus a summary") {
  Report report = Run(testing::ReferenceScenario());
  std::string text = RenderReportText(report, /*color=*/false);
  CHECK(text.find("PASS web-traffic-reaches-b1") != std::string::npos);
  CHECK(text.find("3/3 traffic tests passed") != std::string::npos);
  CHECK(text.find("\x1b[") == std::string::npos);  // no ANSI when color off
}

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

#include "sdx/harness.hpp"

#include <cstdio>

#include <json.hpp>

#include "sdx/errors.hpp"
#include "sdx/oracle.hpp"

namespace sdx {
namespace {

using nlohmann::ordered_json;

std::string ExpectedString(const TrafficTest& test) {
  if (test.expect == TrafficTest::Expect::kDropped) return "dropped";
  return "delivered_to(" + test.expect_host + ")";
}

bool Satisfies(const TrafficTest& test, const DeliveryResult& actual) {
  if (test.expect == TrafficTest::Expect::kDropped) return actual.IsDrop();
  return actual.kind == DeliveryResult::Kind::kDelivered &&
         actual.host == test.expect_host;
}

const char* kPass = "\x1b[32mPASS\x1b[0m";
const char* kFail = "\x1b[31mFAIL\x1b[0m";

}  // namespace

Pipeline BuildPipeline(const Scenario& scenario) {
  Pipeline pipeline;
  pipeline.scenario = scenario;

  for (const auto& [name, texts] : scenario.policies) {
    std::set<std::string> peers;
    for (const ParticipantConfig& config : scenario.participants) {
      if (config.name != name) peers.insert(config.name);
    }
    ParticipantPolicies parsed;
    if (texts.outbound) parsed.outbound = ParsePolicy(*texts.outbound, peers);
    if (texts.inbound) parsed.inbound = ParsePolicy(*texts.inbound, peers);
    pipeline.policies[name] = std::move(parsed);
  }

  pipeline.ribs = ComputeRibs(scenario.participants);

  std::vector<Violation> violations =
      ValidatePolicies(scenario.participants, pipeline.policies);
  if (!violations.empty()) {
    std::string detail = "policies do not validate:";
    for (const Violation& violation : violations) {
      detail += "\n  " + ToString(violation);
    }
    throw CompileError(detail);
  }

  pipeline.signatures = ComputeSignatures(scenario.participants, pipeline.ribs,
                                          pipeline.policies);
  pipeline.vnhs = AssignVnhs(pipeline.signatures, scenario.vnh_pool);

  pipeline.fabric.configs = scenario.participants;
  pipeline.fabric.vnhs = pipeline.vnhs;
  pipeline.fabric.flow_table = Compile(scenario.participants, pipeline.policies,
                                       pipeline.ribs, pipeline.vnhs);
  pipeline.fabric.edge_tables =
      BuildEdgeTables(scenario.participants, pipeline.ribs, pipeline.vnhs);
  return pipeline;
}

Report Run(const Pipeline& pipeline, const std::vector<DumpKind>& dumps) {
  Report report;
  report.overall = true;
  for (const TrafficTest& test : pipeline.scenario.traffic_tests) {
    PacketProbe probe;
    probe.src_host = test.src_host;
    probe.src_ip = test.src_addr;
    probe.dst_ip = test.dst_addr;
    probe.dstport = test.dstport;
    DeliveryResult actual = Inject(pipeline.fabric, probe);
    TestResult result;
    result.name = test.name;
    result.expected = ExpectedString(test);
    result.actual = actual.ToString();
    result.pass = Satisfies(test, actual);
    if (!result.pass) report.overall = false;
    report.tests.push_back(std::move(result));
  }
  for (DumpKind kind : dumps) {
    report.dumps.emplace_back(DumpName(kind), DumpByKind(pipeline, kind));
  }
  return report;
}

Report Run(const Scenario& scenario, const std::vector<DumpKind>& dumps) {
  try {
    return Run(BuildPipeline(scenario), dumps);
  } catch (const Error& error) {
    Report report;
    report.overall = false;
    report.diagnostics.push_back(error.what());
    return report;
  }
}

EquivalenceReport CheckCompiled(const Pipeline& pipeline) {
  EquivalenceReport report;
  const auto& configs = pipeline.scenario.participants;

  std::set<uint16_t> ports = CollectPortLiterals(pipeline.policies);
  ports.insert(22);

  std::vector<CidrPrefix> prefixes;
  for (const auto& [prefix, announcements] : AnnouncementsByPrefix(configs)) {
    prefixes.push_back(prefix);
  }

  bool inbound_default_drop_seen = false;
  for (const ParticipantConfig& config : configs) {
    for (const HostBinding& host : config.hosts) {
      for (Ipv4Addr addr : host.addrs) {
        for (const CidrPrefix& prefix : prefixes) {
          for (uint16_t port : ports) {
            PacketProbe probe;
            probe.src_host = host.name;
            probe.src_ip = addr;
            probe.dst_ip = prefix.representative();
            probe.dstport = port;
            DeliveryResult injected = Inject(pipeline.fabric, probe);
            DeliveryResult interpreted = OracleForward(
                configs, pipeline.ribs, pipeline.policies, probe);
            ++report.probe_count;
            if (!(injected == interpreted)) {
              report.divergences.push_back({probe, injected, interpreted});
            }
            if (injected.kind == DeliveryResult::Kind::kDroppedByPolicy &&
                injected.provenance == "default") {
              inbound_default_drop_seen = true;
            }
          }
        }
      }
    }
  }

  report.notes.push_back(
      "probe space: every bound source address x one address per announced "
      "prefix x dstports {policy literals, 22}");
  if (inbound_default_drop_seen) {
    report.notes.push_back(
        "some probes (including port-22 traffic) were dropped by the fabric "
        "default: destinations whose best path applies inbound selection "
        "drop every port their inbound policy does not name");
  }
  return report;
}

EquivalenceReport Check(const Scenario& scenario) {
  return CheckCompiled(BuildPipeline(scenario));
}

// --------------------------------------------------------------------------
// Dumps

std::string DumpRib(const Pipeline& pipeline) {
  std::string out;
  for (const auto& [name, rib] : pipeline.ribs) {
    out += "RIB for " + name + "\n";
    for (const auto& [prefix, entry] : rib.entries) {
      out += "  " + prefix.ToString() + " -> " + entry.best_origin +
             " (candidates:";
      for (const std::string& candidate : entry.candidates) {
        out += " " + candidate;
      }
      out += ")\n";
    }
  }
  return out;
}

std::string DumpEdges(const Pipeline& pipeline) {
  std::string out;
  bool first = true;
  for (const auto& [host, table] : pipeline.fabric.edge_tables) {
    if (!first) out += "\n";
    first = false;
    out += "Kernel IP routing table for " + host + "\n";
    out +=
        "Destination     Gateway         Genmask         Flags Metric Ref    "
        "Use Iface\n";
    for (const EdgeRow& row : table.rows) {
      char line[160];
      std::snprintf(line, sizeof(line), "%-16s%-16s%-16s%-6s%-7d%-7d%-4d%s",
                    row.prefix.network().ToString().c_str(),
                    row.gateway ? row.gateway->ToString().c_str() : "0.0.0.0",
                    row.prefix.NetmaskString().c_str(),
                    row.gateway ? "UG" : "U", 0, 0, 0, row.iface.c_str());
      out += line;
      out += "\n";
    }
  }
  return out;
}

std::string DumpVnh(const Pipeline& pipeline) {
  std::string out = "Virtual Next Hop --> IP Prefix:\n";
  for (const VirtualNextHop& vnh : pipeline.vnhs) {
    out += "VNH" + std::to_string(vnh.label) + ":";
    for (const CidrPrefix& prefix : vnh.prefixes) {
      out += " " + prefix.ToString();
    }
    out += "\n";
  }
  out += "Virtual Next Hop --> Next Hop IP Address (Virtual):\n";
  for (const VirtualNextHop& vnh : pipeline.vnhs) {
    out += "VNH" + std::to_string(vnh.label) + ": " +
           vnh.virtual_ip.ToString() + "\n";
  }
  out += "Virtual Next Hop --> Next Hop Mac Address (Virtual):\n";
  for (const VirtualNextHop& vnh : pipeline.vnhs) {
    out += "VNH" + std::to_string(vnh.label) + ": " +
           vnh.virtual_mac.ToString() + "\n";
  }
  return out;
}

std::string DumpFlows(const Pipeline& pipeline) {
  return pipeline.fabric.flow_table.Dump();
}

const char* DumpName(DumpKind kind) {
  switch (kind) {
    case DumpKind::kRib: return "rib";
    case DumpKind::kEdges: return "edges";
    case DumpKind::kVnh: return "vnh";
    case DumpKind::kFlows: return "flows";
  }
  return "?";
}

std::string DumpByKind(const Pipeline& pipeline, DumpKind kind) {
  switch (kind) {
    case DumpKind::kRib: return DumpRib(pipeline);
    case DumpKind::kEdges: return DumpEdges(pipeline);
    case DumpKind::kVnh: return DumpVnh(pipeline);
    case DumpKind::kFlows: return DumpFlows(pipeline);
  }
  return "";
}

// --------------------------------------------------------------------------
// Rendering

std::string RenderReportText(const Report& report, bool color) {
  std::string out;
  for (const std::string& diagnostic : report.diagnostics) {
    out += "error: " + diagnostic + "\n";
  }
  for (const TestResult& test : report.tests) {
    out += std::string(test.pass ? (color ? kPass : "PASS")
                                 : (color ? kFail : "FAIL")) +
           " " + test.name + ": expected " + test.expected + ", got " +
           test.actual + "\n";
  }
  size_t passed = 0;
  for (const TestResult& test : report.tests) {
    if (test.pass) ++passed;
  }
  out += std::to_string(passed) + "/" + std::to_string(report.tests.size()) +
         " traffic tests passed\n";
  for (const auto& [kind, text] : report.dumps) {
    out += "\n--- " + kind + " ---\n" + text;
  }
  return out;
}

std::string RenderReportJson(const Report& report) {
  ordered_json doc;
  doc["tests"] = ordered_json::array();
  for (const TestResult& test : report.tests) {
    doc["tests"].push_back({{"name", test.name},
                            {"expected", test.expected},
                            {"actual", test.actual},
                            {"pass", test.pass}});
  }
  doc["diagnostics"] = report.diagnostics;
  ordered_json dumps = ordered_json::object();
  for (const auto& [kind, text] : report.dumps) dumps[kind] = text;
  doc["dumps"] = dumps;
  doc["overall_pass"] = report.overall;
  return doc.dump(2) + "\n";
}

std::string RenderEquivalenceText(const EquivalenceReport& report,
                                  bool color) {
  std::string out;
  for (const Divergence& divergence : report.divergences) {
    out += "divergence: probe " + divergence.probe.ToString() +
           "\n  compiled fabric: " + divergence.injected.ToString() +
           "\n  interpretive:    " + divergence.interpreted.ToString() + "\n";
  }
  bool ok = report.divergences.empty();
  out += std::string(ok ? (color ? kPass : "PASS")
                        : (color ? kFail : "FAIL")) +
         " equivalence check: " + std::to_string(report.probe_count) +
         " probes, " + std::to_string(report.divergences.size()) +
         " divergences\n";
  for (const std::string& note : report.notes) {
    out += "note: " + note + "\n";
  }
  return out;
}

std::string RenderEquivalenceJson(const EquivalenceReport& report) {
  ordered_json doc;
  doc["probes"] = report.probe_count;
  doc["divergences"] = ordered_json::array();
  for (const Divergence& divergence : report.divergences) {
    doc["divergences"].push_back(
        {{"probe", divergence.probe.ToString()},
         {"compiled", divergence.injected.ToString()},
         {"interpretive", divergence.interpreted.ToString()}});
  }
  doc["notes"] = report.notes;
  doc["pass"] = report.divergences.empty();
  return doc.dump(2) + "\n";
}

}  // namespace sdx

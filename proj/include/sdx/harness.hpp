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
// End-to-end orchestration: parse policies, compute RIBs, assign VNHs,
// compile the flow table, build the fabric, and run traffic tests or the
// compiled-vs-interpretive equivalence check.

#ifndef SDX_HARNESS_HPP_
#define SDX_HARNESS_HPP_

#include <map>
#include <string>
#include <vector>

#include "sdx/compiler.hpp"
#include "sdx/fabric.hpp"
#include "sdx/scenario.hpp"
#include "sdx/vnh.hpp"

namespace sdx {

/// Everything derived from a scenario, built once and then read-only.
struct Pipeline {
  Scenario scenario;
  PolicyMap policies;
  std::map<std::string, Rib> ribs;
  std::map<CidrPrefix, BehaviorSignature> signatures;
  std::vector<VirtualNextHop> vnhs;
  FabricState fabric;
};

/// Runs the whole compilation pipeline. Raises CompileError when the
/// policies carry violations (the messages name each one).
Pipeline BuildPipeline(const Scenario& scenario);

enum class DumpKind { kRib, kEdges, kVnh, kFlows };

struct TestResult {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct Report {
  std::vector<TestResult> tests;
  std::vector<std::string> diagnostics;  // compile errors, violations
  std::vector<std::pair<std::string, std::string>> dumps;  // (kind, text)
  bool overall = false;
};

/// Executes every traffic test through the compiled fabric. Compilation
/// failures become a failed report carrying the diagnostics.
Report Run(const Scenario& scenario, const std::vector<DumpKind>& dumps = {});
Report Run(const Pipeline& pipeline, const std::vector<DumpKind>& dumps = {});

struct Divergence {
  PacketProbe probe;
  DeliveryResult injected;
  DeliveryResult interpreted;
};

struct EquivalenceReport {
  size_t probe_count = 0;
  std::vector<Divergence> divergences;
  std::vector<std::string> notes;
};

/// Enumerates the canonical probe space (every bound source address, one
/// representative address per announced prefix, every policy port literal
/// plus port 22) and compares the compiled fabric against the interpretive
/// pipeline on each probe.
EquivalenceReport Check(const Scenario& scenario);

/// Same enumeration over an already-built pipeline; lets tests corrupt the
/// compiled state and confirm the check notices.
EquivalenceReport CheckCompiled(const Pipeline& pipeline);

std::string DumpRib(const Pipeline& pipeline);
std::string DumpEdges(const Pipeline& pipeline);
std::string DumpVnh(const Pipeline& pipeline);
std::string DumpFlows(const Pipeline& pipeline);
std::string DumpByKind(const Pipeline& pipeline, DumpKind kind);
const char* DumpName(DumpKind kind);

std::string RenderReportText(const Report& report, bool color);
std::string RenderReportJson(const Report& report);
std::string RenderEquivalenceText(const EquivalenceReport& report, bool color);
std::string RenderEquivalenceJson(const EquivalenceReport& report);

}  // namespace sdx

#endif  // SDX_HARNESS_HPP_

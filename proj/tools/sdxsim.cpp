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

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sdx/errors.hpp"
#include "sdx/harness.hpp"
#include "sdx/policy.hpp"
#include "sdx/scenario.hpp"

namespace {

// Exit codes: 0 all tests/checks pass, 1 a test or check failed,
// 2 scenario/config error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfigError = 2;

bool ColorEnabled() {
  const char* env = std::getenv("SDXSIM_COLOR");
  if (env != nullptr && std::string(env) == "0") return false;
  return isatty(fileno(stdout)) != 0;
}

std::vector<sdx::DumpKind> ParseDumps(const std::string& spec) {
  std::vector<sdx::DumpKind> kinds;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    if (item == "rib") {
      kinds.push_back(sdx::DumpKind::kRib);
    } else if (item == "edges") {
      kinds.push_back(sdx::DumpKind::kEdges);
    } else if (item == "vnh") {
      kinds.push_back(sdx::DumpKind::kVnh);
    } else if (item == "flows") {
      kinds.push_back(sdx::DumpKind::kFlows);
    } else {
      throw CLI::ValidationError("--dump",
                                 "unknown dump '" + item +
                                     "' (expected rib, edges, vnh, flows)");
    }
  }
  return kinds;
}

int RunCommand(const std::string& path, const std::string& dump_spec,
               const std::string& format) {
  std::vector<sdx::DumpKind> dumps = ParseDumps(dump_spec);
  sdx::Scenario scenario = sdx::LoadScenario(path);
  sdx::Report report = sdx::Run(scenario, dumps);
  if (format == "json") {
    std::cout << sdx::RenderReportJson(report);
  } else {
    std::cout << sdx::RenderReportText(report, ColorEnabled());
  }
  if (!report.diagnostics.empty()) return kExitConfigError;
  return report.overall ? kExitPass : kExitFail;
}

int CheckCommand(const std::string& path, const std::string& format) {
  sdx::Scenario scenario = sdx::LoadScenario(path);
  sdx::EquivalenceReport report = sdx::Check(scenario);
  if (format == "json") {
    std::cout << sdx::RenderEquivalenceJson(report);
  } else {
    std::cout << sdx::RenderEquivalenceText(report, ColorEnabled());
  }
  return report.divergences.empty() ? kExitPass : kExitFail;
}

// Debugging aid: parse a policy file and echo the AST's canonical form.
// Peer names come from --peers when given, otherwise every name the text
// mentions is accepted.
int ParsePolicyCommand(const std::string& path, const std::string& peers_arg) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open '" << path << "'\n";
    return kExitConfigError;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();

  std::set<std::string> peers;
  if (!peers_arg.empty()) {
    std::stringstream names(peers_arg);
    std::string name;
    while (std::getline(names, name, ',')) {
      if (!name.empty()) peers.insert(name);
    }
  } else {
    std::regex peer_ref("peers\\['([^']*)'\\]");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), peer_ref);
         it != std::sregex_iterator(); ++it) {
      peers.insert((*it)[1]);
    }
  }

  sdx::PolicyAst ast = sdx::ParsePolicy(text, peers);
  std::string printed = sdx::PrettyPrint(ast);
  std::cout << printed << "\n";

  size_t terms = ast.Terms().size();
  std::cout << "# " << terms << (terms == 1 ? " term" : " terms") << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sdxsim: software-defined IXP simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string dump_spec;
  std::string format = "text";
  std::string policy_path;
  std::string peers_arg;

  CLI::App* run = app.add_subcommand(
      "run", "compile a scenario and execute its traffic tests");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--dump", dump_spec,
                  "comma-separated dumps to include: rib,edges,vnh,flows");
  run->add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* check = app.add_subcommand(
      "check",
      "compare the compiled fabric against the interpretive pipeline over "
      "the full probe enumeration");
  check->add_option("scenario", scenario_path, "scenario JSON file")
      ->required();
  check->add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* parse = app.add_subcommand(
      "parse-policy", "parse a policy file and echo its canonical form");
  parse->add_option("file", policy_path, "policy text file")->required();
  parse->add_option("--peers", peers_arg,
                    "comma-separated peer names to validate against");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return RunCommand(scenario_path, dump_spec, format);
    if (check->parsed()) return CheckCommand(scenario_path, format);
    if (parse->parsed()) return ParsePolicyCommand(policy_path, peers_arg);
  } catch (const sdx::Error& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}

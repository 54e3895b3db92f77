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
#include <random>

#include "sdx/errors.hpp"
#include "sdx/policy.hpp"
#include "test_util.hpp"

using namespace sdx;

namespace {

const std::set<std::string> kPeersOfA = {"B", "C"};

const char* kOutboundA =
    "final_policy = ((match(dstport=80) >> sdx.fwd(participant.peers['B'])) +\n"
    "                (match(dstport=443) >> sdx.fwd(participant.peers['C'])) +\n"
    "                (match(dstport=8080) >> sdx.fwd(participant.peers['C'])))\n";

const char* kInboundC =
    "final_policy = ((match(dstport=443) >> sdx.fwd(participant.phys_ports[0])) +\n"
    "                (match(dstport=80) >> sdx.fwd(participant.phys_ports[1])))\n";

FlowKeys KeysWithDstport(uint16_t port) {
  FlowKeys keys;
  keys.dstport = port;
  return keys;
}

}  // namespace

TEST_CASE("outbound policy text parses to a three-term parallel") {
  PolicyAst ast = ParsePolicy(kOutboundA, kPeersOfA);
  REQUIRE(!ast.is_term());
  REQUIRE(ast.children().size() == 3);

  auto terms = ast.Terms();
  REQUIRE(terms.size() == 3);
  CHECK(terms[0]->predicates ==
        std::vector<MatchPredicate>{
            MatchPredicate::Port(MatchField::kDstPort, 80)});
  CHECK(terms[0]->action == PolicyAction::FwdParticipant("B"));
  CHECK(terms[1]->predicates ==
        std::vector<MatchPredicate>{
            MatchPredicate::Port(MatchField::kDstPort, 443)});
  CHECK(terms[1]->action == PolicyAction::FwdParticipant("C"));
  CHECK(terms[2]->predicates ==
        std::vector<MatchPredicate>{
            MatchPredicate::Port(MatchField::kDstPort, 8080)});
  CHECK(terms[2]->action == PolicyAction::FwdParticipant("C"));
}

TEST_CASE("inbound policy text parses to two phys-port terms") {
  PolicyAst ast = ParsePolicy(
      "match(dstport=443) >> sdx.fwd(participant.phys_ports[0]) + "
      "match(dstport=80) >> sdx.fwd(participant.phys_ports[1])",
      {});
  auto terms = ast.Terms();
  REQUIRE(terms.size() == 2);
  CHECK(terms[0]->action == PolicyAction::FwdPhysPort(0));
  CHECK(terms[1]->action == PolicyAction::FwdPhysPort(1));
}

TEST_CASE("unknown peer is rejected") {
  CHECK_THROWS_AS(
      ParsePolicy("match(dstport=80) >> sdx.fwd(participant.peers['Z'])",
                  kPeersOfA),
      UnknownPeerError);
}

TEST_CASE("parse errors carry a position and expectation") {
  SUBCASE("empty text") {
    CHECK_THROWS_AS(ParsePolicy("   \n ", kPeersOfA), PolicySyntaxError);
  }
  SUBCASE("unsupported field") {
    CHECK_THROWS_AS(
        ParsePolicy("match(ethtype=800) >> sdx.fwd(participant.peers['B'])",
                    kPeersOfA),
        UnsupportedFieldError);
  }
  SUBCASE("port out of range") {
    CHECK_THROWS_AS(
        ParsePolicy("match(dstport=70000) >> sdx.fwd(participant.peers['B'])",
                    kPeersOfA),
        PolicySyntaxError);
  }
  SUBCASE("chain without an action") {
    CHECK_THROWS_AS(ParsePolicy("match(dstport=80)", kPeersOfA),
                    PolicySyntaxError);
  }
  SUBCASE("action must be terminal") {
    CHECK_THROWS_AS(
        ParsePolicy("sdx.fwd(participant.peers['B']) >> match(dstport=80)",
                    kPeersOfA),
        PolicySyntaxError);
  }
  SUBCASE("dangling parallel operator") {
    try {
      ParsePolicy("match(dstport=80) >> sdx.fwd(participant.peers['B']) + ",
                  kPeersOfA);
      FAIL("expected PolicySyntaxError");
    } catch (const PolicySyntaxError& error) {
      CHECK(error.position() > 0);
    }
  }
}

TEST_CASE("pretty-print of a single term is the canonical text") {
  PolicyTerm term;
  term.predicates = {MatchPredicate::Port(MatchField::kDstPort, 80)};
  term.action = PolicyAction::FwdParticipant("B");
  CHECK(PrettyPrint(PolicyAst::Term(term)) ==
        "match(dstport=80) >> sdx.fwd(participant.peers['B'])");
}

TEST_CASE("pretty-printed parallel has one '+' less than terms") {
  PolicyAst ast = ParsePolicy(kOutboundA, kPeersOfA);
  std::string text = PrettyPrint(ast);
  CHECK(std::count(text.begin(), text.end(), '+') == 2);
}

TEST_CASE("paper policies round-trip through pretty-print") {
  for (const char* text : {kOutboundA, kInboundC}) {
    PolicyAst ast = ParsePolicy(text, kPeersOfA);
    PolicyAst reparsed = ParsePolicy(PrettyPrint(ast), kPeersOfA);
    CHECK(reparsed == ast);
  }
}

TEST_CASE("nested parallels survive the round-trip") {
  PolicyAst ast = ParsePolicy(
      "((match(dstport=80) >> sdx.fwd(participant.peers['B']) + "
      "match(dstport=443) >> sdx.fwd(participant.peers['C'])) + "
      "match(dstport=22) >> sdx.fwd(participant.peers['B']))",
      kPeersOfA);
  REQUIRE(!ast.is_term());
  REQUIRE(ast.children().size() == 2);
  CHECK(!ast.children()[0].is_term());  // the inner parallel is preserved
  CHECK(ParsePolicy(PrettyPrint(ast), kPeersOfA) == ast);
}

TEST_CASE("generated asts round-trip losslessly") {
  std::mt19937 rng(7);
  std::vector<std::string> peers = {"B", "C", "D"};
  std::set<std::string> peer_set(peers.begin(), peers.end());
  for (int i = 0; i < 300; ++i) {
    PolicyAst ast = testing::RandomAst(rng, peers);
    PolicyAst reparsed = ParsePolicy(PrettyPrint(ast), peer_set);
    REQUIRE(reparsed == ast);
  }
}

TEST_CASE("parsing is deterministic") {
  PolicyAst a = ParsePolicy(kOutboundA, kPeersOfA);
  PolicyAst b = ParsePolicy(kOutboundA, kPeersOfA);
  CHECK(a == b);
  CHECK(PrettyPrint(a) == PrettyPrint(b));
}

TEST_CASE("eval: outbound policy selects by dstport") {
  PolicyAst ast = ParsePolicy(kOutboundA, kPeersOfA);
  CHECK(EvalPolicy(&ast, KeysWithDstport(80)) ==
        std::set<PolicyAction>{PolicyAction::FwdParticipant("B")});
  CHECK(EvalPolicy(&ast, KeysWithDstport(443)) ==
        std::set<PolicyAction>{PolicyAction::FwdParticipant("C")});
  CHECK(EvalPolicy(&ast, KeysWithDstport(22)).empty());
}

TEST_CASE("eval: inbound policy has no positive match for port 8080") {
  PolicyAst ast = ParsePolicy(kInboundC, {});
  CHECK(EvalPolicy(&ast, KeysWithDstport(8080)).empty());
}

TEST_CASE("eval: absent policy yields the empty set") {
  CHECK(EvalPolicy(nullptr, KeysWithDstport(80)).empty());
}

TEST_CASE("eval: parallel composition is set union") {
  std::mt19937 rng(11);
  std::vector<std::string> peers = {"B", "C"};
  for (int i = 0; i < 100; ++i) {
    PolicyAst p = testing::RandomAst(rng, peers);
    PolicyAst q = testing::RandomAst(rng, peers);
    PolicyAst both = PolicyAst::Parallel({p, q}, {});
    FlowKeys keys = testing::RandomKeys(rng);

    std::set<PolicyAction> expected = EvalPolicy(&p, keys);
    std::set<PolicyAction> from_q = EvalPolicy(&q, keys);
    expected.insert(from_q.begin(), from_q.end());
    REQUIRE(EvalPolicy(&both, keys) == expected);
  }
}

TEST_CASE("eval: output depends only on fields the policy names") {
  std::mt19937 rng(13);
  std::vector<std::string> peers = {"B", "C"};
  for (int i = 0; i < 100; ++i) {
    PolicyAst ast = testing::RandomAst(rng, peers);

    std::set<MatchField> named;
    for (const PolicyTerm* term : ast.Terms()) {
      for (const MatchPredicate& pred : term->predicates) {
        named.insert(pred.field);
      }
    }

    FlowKeys keys = testing::RandomKeys(rng);
    std::set<PolicyAction> before = EvalPolicy(&ast, keys);

    FlowKeys mutated = keys;
    if (!named.contains(MatchField::kSrcIp)) {
      mutated.src_ip = Ipv4Addr(static_cast<uint32_t>(rng()));
    }
    if (!named.contains(MatchField::kDstIp)) {
      mutated.dst_ip = Ipv4Addr(static_cast<uint32_t>(rng()));
    }
    if (!named.contains(MatchField::kSrcPort)) {
      mutated.srcport = static_cast<uint16_t>(testing::Rand(rng, 0, 65535));
    }
    if (!named.contains(MatchField::kDstPort)) {
      mutated.dstport = static_cast<uint16_t>(testing::Rand(rng, 0, 65535));
    }
    REQUIRE(EvalPolicy(&ast, mutated) == before);
  }
}

TEST_CASE("eval: ip predicates match by prefix containment") {
  PolicyAst ast = ParsePolicy(
      "match(dstip=140.0.0.0/24) >> sdx.fwd(participant.peers['B'])",
      kPeersOfA);
  FlowKeys keys;
  keys.dst_ip = Ipv4Addr::MustParse("140.0.0.200");
  CHECK(EvalPolicy(&ast, keys).size() == 1);
  keys.dst_ip = Ipv4Addr::MustParse("140.0.1.1");
  CHECK(EvalPolicy(&ast, keys).empty());
}

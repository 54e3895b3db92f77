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
// Traffic-engineering policy language: a small composable DSL in which each
// term is a sequential chain of header matches ending in a forward action,
// and `+` composes terms in parallel.
//
//   final_policy = ((match(dstport=80) >> sdx.fwd(participant.peers['B'])) +
//                   (match(dstport=443) >> sdx.fwd(participant.peers['C'])))
//
// The grammar is documented in docs/policy-grammar.md.

#ifndef SDX_POLICY_HPP_
#define SDX_POLICY_HPP_

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sdx/net.hpp"

namespace sdx {

enum class MatchField { kDstPort, kSrcPort, kDstIp, kSrcIp };

std::string ToString(MatchField field);

/// One `match(field=value)` predicate. Port fields carry a transport port,
/// IP fields a CIDR prefix.
struct MatchPredicate {
  MatchField field;
  uint16_t port = 0;      // kDstPort / kSrcPort
  CidrPrefix prefix;      // kDstIp / kSrcIp

  static MatchPredicate Port(MatchField field, uint16_t value);
  static MatchPredicate Ip(MatchField field, CidrPrefix value);

  friend auto operator<=>(const MatchPredicate&, const MatchPredicate&) =
      default;
};

/// Terminal action of a policy term.
struct PolicyAction {
  enum class Kind { kFwdParticipant, kFwdPhysPort, kDrop };

  Kind kind = Kind::kDrop;
  std::string participant;  // kFwdParticipant
  int port_index = -1;      // kFwdPhysPort: index into the owner's phys_ports

  static PolicyAction FwdParticipant(std::string name);
  static PolicyAction FwdPhysPort(int index);
  static PolicyAction Drop();

  friend auto operator<=>(const PolicyAction&, const PolicyAction&) = default;
};

std::string ToString(const PolicyAction& action);

/// Byte range [begin, end) into the policy source text.
struct SourceSpan {
  size_t begin = 0;
  size_t end = 0;
};

/// One sequential chain: every predicate must match for the action to apply.
struct PolicyTerm {
  std::vector<MatchPredicate> predicates;
  PolicyAction action;
  SourceSpan span;

  friend bool operator==(const PolicyTerm& a, const PolicyTerm& b) {
    return a.predicates == b.predicates && a.action == b.action;
  }
};

/// Policy AST node: either a single term or a parallel composition of two or
/// more sub-policies. Equality is structural and ignores source spans.
class PolicyAst {
 public:
  static PolicyAst Term(PolicyTerm term);
  static PolicyAst Parallel(std::vector<PolicyAst> children, SourceSpan span);

  bool is_term() const { return std::holds_alternative<PolicyTerm>(node_); }
  const PolicyTerm& term() const { return std::get<PolicyTerm>(node_); }
  const std::vector<PolicyAst>& children() const {
    return std::get<std::vector<PolicyAst>>(node_);
  }
  SourceSpan span() const { return span_; }

  /// The terms of this policy in source order (one for a term node, the
  /// leaves of the tree for parallel nodes).
  std::vector<const PolicyTerm*> Terms() const;

  friend bool operator==(const PolicyAst& a, const PolicyAst& b) {
    return a.node_ == b.node_;
  }

 private:
  PolicyAst() = default;
  std::variant<PolicyTerm, std::vector<PolicyAst>> node_;
  SourceSpan span_;
};

/// Header fields a policy predicate can observe.
struct FlowKeys {
  Ipv4Addr src_ip;
  Ipv4Addr dst_ip;
  uint16_t srcport = 0;
  uint16_t dstport = 0;
};

/// Parses policy text. `peer_names` is the set of participant names the
/// policy may forward to; anything else raises UnknownPeerError.
/// Raises PolicySyntaxError / UnsupportedFieldError on malformed input.
PolicyAst ParsePolicy(std::string_view text,
                      const std::set<std::string>& peer_names);

/// Canonical text form; parsing the result yields an AST equal to `ast`.
std::string PrettyPrint(const PolicyAst& ast);

bool Matches(const MatchPredicate& predicate, const FlowKeys& keys);

/// Reference semantics: the set of actions of all terms whose every
/// predicate matches. A null policy (participant with no policy) yields the
/// empty set. This is the oracle the flow-table compiler is checked against.
std::set<PolicyAction> EvalPolicy(const PolicyAst* ast, const FlowKeys& keys);

}  // namespace sdx

#endif  // SDX_POLICY_HPP_

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

#include "sdx/policy.hpp"

#include <cctype>
#include <charconv>

#include "sdx/errors.hpp"

namespace sdx {

std::string ToString(MatchField field) {
  switch (field) {
    case MatchField::kDstPort: return "dstport";
    case MatchField::kSrcPort: return "srcport";
    case MatchField::kDstIp: return "dstip";
    case MatchField::kSrcIp: return "srcip";
  }
  return "?";
}

MatchPredicate MatchPredicate::Port(MatchField field, uint16_t value) {
  MatchPredicate p;
  p.field = field;
  p.port = value;
  return p;
}

MatchPredicate MatchPredicate::Ip(MatchField field, CidrPrefix value) {
  MatchPredicate p;
  p.field = field;
  p.prefix = value;
  return p;
}

PolicyAction PolicyAction::FwdParticipant(std::string name) {
  PolicyAction a;
  a.kind = Kind::kFwdParticipant;
  a.participant = std::move(name);
  return a;
}

PolicyAction PolicyAction::FwdPhysPort(int index) {
  PolicyAction a;
  a.kind = Kind::kFwdPhysPort;
  a.port_index = index;
  return a;
}

PolicyAction PolicyAction::Drop() {
  PolicyAction a;
  a.kind = Kind::kDrop;
  return a;
}

std::string ToString(const PolicyAction& action) {
  switch (action.kind) {
    case PolicyAction::Kind::kFwdParticipant:
      return "sdx.fwd(participant.peers['" + action.participant + "'])";
    case PolicyAction::Kind::kFwdPhysPort:
      return "sdx.fwd(participant.phys_ports[" +
             std::to_string(action.port_index) + "])";
    case PolicyAction::Kind::kDrop:
      return "drop";
  }
  return "?";
}

PolicyAst PolicyAst::Term(PolicyTerm term) {
  PolicyAst ast;
  ast.span_ = term.span;
  ast.node_ = std::move(term);
  return ast;
}

PolicyAst PolicyAst::Parallel(std::vector<PolicyAst> children,
                              SourceSpan span) {
  PolicyAst ast;
  ast.node_ = std::move(children);
  ast.span_ = span;
  return ast;
}

std::vector<const PolicyTerm*> PolicyAst::Terms() const {
  std::vector<const PolicyTerm*> out;
  if (is_term()) {
    out.push_back(&term());
    return out;
  }
  for (const PolicyAst& child : children()) {
    for (const PolicyTerm* t : child.Terms()) out.push_back(t);
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Lexer

enum class TokKind {
  kIdent,    // match, sdx, fwd, participant, peers, phys_ports, final_policy
  kNumber,   // decimal integer
  kIpValue,  // dotted quad, optionally with /len
  kName,     // 'X' single-quoted participant name
  kLParen,
  kRParen,
  kLBracket,
  kRBracket,
  kEquals,
  kDot,
  kPlus,
  kSeq,  // >>
  kEnd,
};

struct Token {
  TokKind kind;
  std::string text;
  size_t begin;
  size_t end;
};

const char* Describe(TokKind kind) {
  switch (kind) {
    case TokKind::kIdent: return "identifier";
    case TokKind::kNumber: return "number";
    case TokKind::kIpValue: return "address";
    case TokKind::kName: return "quoted name";
    case TokKind::kLParen: return "'('";
    case TokKind::kRParen: return "')'";
    case TokKind::kLBracket: return "'['";
    case TokKind::kRBracket: return "']'";
    case TokKind::kEquals: return "'='";
    case TokKind::kDot: return "'.'";
    case TokKind::kPlus: return "'+'";
    case TokKind::kSeq: return "'>>'";
    case TokKind::kEnd: return "end of input";
  }
  return "?";
}

std::vector<Token> Lex(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  auto push = [&](TokKind kind, size_t begin, size_t end) {
    tokens.push_back(
        {kind, std::string(text.substr(begin, end - begin)), begin, end});
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    size_t begin = i;
    auto single = [&](TokKind kind) {
      push(kind, begin, begin + 1);
      i = begin + 1;
    };
    if (c == '(') { single(TokKind::kLParen); continue; }
    if (c == ')') { single(TokKind::kRParen); continue; }
    if (c == '[') { single(TokKind::kLBracket); continue; }
    if (c == ']') { single(TokKind::kRBracket); continue; }
    if (c == '=') { single(TokKind::kEquals); continue; }
    if (c == '.') { single(TokKind::kDot); continue; }
    if (c == '+') { single(TokKind::kPlus); continue; }
    if (c == '>') {
      if (i + 1 < text.size() && text[i + 1] == '>') {
        i += 2;
        push(TokKind::kSeq, begin, i);
        continue;
      }
      throw PolicySyntaxError(i, "'>>'");
    }
    if (c == '\'') {
      size_t close = text.find('\'', i + 1);
      if (close == std::string_view::npos) {
        throw PolicySyntaxError(i, "closing quote");
      }
      tokens.push_back({TokKind::kName,
                        std::string(text.substr(i + 1, close - i - 1)), i,
                        close + 1});
      i = close + 1;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      bool dotted = false;
      while (j < text.size() &&
             (std::isdigit(static_cast<unsigned char>(text[j])) ||
              text[j] == '.' || text[j] == '/')) {
        if (text[j] == '.' || text[j] == '/') dotted = true;
        ++j;
      }
      push(dotted ? TokKind::kIpValue : TokKind::kNumber, i, j);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_')) {
        ++j;
      }
      push(TokKind::kIdent, i, j);
      i = j;
      continue;
    }
    throw PolicySyntaxError(i, "policy token");
  }
  tokens.push_back({TokKind::kEnd, "", text.size(), text.size()});
  return tokens;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser
//
//   policy   := [ "final_policy" "=" ] parallel
//   parallel := pterm { "+" pterm }
//   pterm    := "(" parallel ")" | chain
//   chain    := item { ">>" item }        -- matches then one final action
//   item     := match | action
//
// Parentheses around a single chain are grouping only; parentheses around a
// parallel composition create a nested parallel node.

class Parser {
 public:
  Parser(std::vector<Token> tokens, const std::set<std::string>& peers)
      : tokens_(std::move(tokens)), peers_(peers) {}

  PolicyAst ParseTopLevel() {
    if (PeekIdent("final_policy")) {
      Advance();
      Expect(TokKind::kEquals);
    }
    PolicyAst ast = ParseParallel();
    Expect(TokKind::kEnd);
    return ast;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Advance() { return tokens_[pos_++]; }

  bool PeekIdent(std::string_view name) const {
    return Peek().kind == TokKind::kIdent && Peek().text == name;
  }

  const Token& Expect(TokKind kind) {
    if (Peek().kind != kind) {
      throw PolicySyntaxError(Peek().begin, Describe(kind));
    }
    return Advance();
  }

  void ExpectIdent(std::string_view name) {
    if (!PeekIdent(name)) {
      throw PolicySyntaxError(Peek().begin, "'" + std::string(name) + "'");
    }
    Advance();
  }

  PolicyAst ParseParallel() {
    size_t begin = Peek().begin;
    std::vector<PolicyAst> parts;
    parts.push_back(ParsePTerm());
    while (Peek().kind == TokKind::kPlus) {
      Advance();
      parts.push_back(ParsePTerm());
    }
    if (parts.size() == 1) return std::move(parts.front());
    size_t end = parts.back().span().end;
    return PolicyAst::Parallel(std::move(parts), {begin, end});
  }

  PolicyAst ParsePTerm() {
    if (Peek().kind == TokKind::kLParen) {
      Advance();
      PolicyAst inner = ParseParallel();
      Expect(TokKind::kRParen);
      return inner;
    }
    return ParseChain();
  }

  PolicyAst ParseChain() {
    size_t begin = Peek().begin;
    PolicyTerm term;
    bool have_action = false;
    size_t end = begin;
    while (true) {
      if (PeekIdent("match")) {
        if (have_action) {
          throw PolicySyntaxError(Peek().begin,
                                  "end of chain (action must be terminal)");
        }
        term.predicates.push_back(ParseMatch());
      } else if (PeekIdent("sdx")) {
        if (have_action) {
          throw PolicySyntaxError(Peek().begin,
                                  "end of chain (at most one action)");
        }
        term.action = ParseAction();
        have_action = true;
      } else {
        throw PolicySyntaxError(Peek().begin, "'match' or 'sdx.fwd'");
      }
      end = tokens_[pos_ - 1].end;
      if (Peek().kind != TokKind::kSeq) break;
      Advance();
    }
    if (!have_action) {
      throw PolicySyntaxError(Peek().begin,
                              "'sdx.fwd' (chain must end in an action)");
    }
    term.span = {begin, end};
    return PolicyAst::Term(std::move(term));
  }

  MatchPredicate ParseMatch() {
    ExpectIdent("match");
    Expect(TokKind::kLParen);
    const Token& field_tok = Expect(TokKind::kIdent);
    MatchField field;
    if (field_tok.text == "dstport") {
      field = MatchField::kDstPort;
    } else if (field_tok.text == "srcport") {
      field = MatchField::kSrcPort;
    } else if (field_tok.text == "dstip") {
      field = MatchField::kDstIp;
    } else if (field_tok.text == "srcip") {
      field = MatchField::kSrcIp;
    } else {
      throw UnsupportedFieldError(field_tok.text);
    }
    Expect(TokKind::kEquals);
    MatchPredicate pred;
    if (field == MatchField::kDstPort || field == MatchField::kSrcPort) {
      const Token& value = Expect(TokKind::kNumber);
      uint32_t port = 0;
      auto [ptr, ec] = std::from_chars(
          value.text.data(), value.text.data() + value.text.size(), port);
      if (ec != std::errc() || ptr != value.text.data() + value.text.size() ||
          port > 65535) {
        throw PolicySyntaxError(value.begin, "port in 0..65535");
      }
      pred = MatchPredicate::Port(field, static_cast<uint16_t>(port));
    } else {
      const Token& value = Advance();
      if (value.kind != TokKind::kIpValue && value.kind != TokKind::kNumber) {
        throw PolicySyntaxError(value.begin, "CIDR prefix");
      }
      auto prefix = CidrPrefix::Parse(value.text);
      if (!prefix) throw PolicySyntaxError(value.begin, "CIDR prefix");
      pred = MatchPredicate::Ip(field, *prefix);
    }
    Expect(TokKind::kRParen);
    return pred;
  }

  PolicyAction ParseAction() {
    ExpectIdent("sdx");
    Expect(TokKind::kDot);
    ExpectIdent("fwd");
    Expect(TokKind::kLParen);
    ExpectIdent("participant");
    Expect(TokKind::kDot);
    const Token& selector = Expect(TokKind::kIdent);
    PolicyAction action;
    if (selector.text == "peers") {
      Expect(TokKind::kLBracket);
      const Token& name = Expect(TokKind::kName);
      if (!peers_.contains(name.text)) throw UnknownPeerError(name.text);
      Expect(TokKind::kRBracket);
      action = PolicyAction::FwdParticipant(name.text);
    } else if (selector.text == "phys_ports") {
      Expect(TokKind::kLBracket);
      const Token& index = Expect(TokKind::kNumber);
      int idx = 0;
      auto [ptr, ec] = std::from_chars(
          index.text.data(), index.text.data() + index.text.size(), idx);
      if (ec != std::errc() || ptr != index.text.data() + index.text.size()) {
        throw PolicySyntaxError(index.begin, "port index");
      }
      Expect(TokKind::kRBracket);
      action = PolicyAction::FwdPhysPort(idx);
    } else {
      throw PolicySyntaxError(selector.begin, "'peers' or 'phys_ports'");
    }
    Expect(TokKind::kRParen);
    return action;
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  const std::set<std::string>& peers_;
};

std::string PrintPredicate(const MatchPredicate& pred) {
  std::string value;
  switch (pred.field) {
    case MatchField::kDstPort:
    case MatchField::kSrcPort:
      value = std::to_string(pred.port);
      break;
    case MatchField::kDstIp:
    case MatchField::kSrcIp:
      value = pred.prefix.ToString();
      break;
  }
  return "match(" + ToString(pred.field) + "=" + value + ")";
}

std::string PrintTerm(const PolicyTerm& term) {
  std::string out;
  for (const MatchPredicate& pred : term.predicates) {
    out += PrintPredicate(pred);
    out += " >> ";
  }
  out += ToString(term.action);
  return out;
}

std::string PrintNode(const PolicyAst& ast, bool top_level) {
  if (ast.is_term()) {
    std::string text = PrintTerm(ast.term());
    return top_level ? text : "(" + text + ")";
  }
  std::string out;
  for (size_t i = 0; i < ast.children().size(); ++i) {
    if (i > 0) out += " + ";
    out += PrintNode(ast.children()[i], /*top_level=*/false);
  }
  return top_level ? out : "(" + out + ")";
}

}  // namespace

PolicyAst ParsePolicy(std::string_view text,
                      const std::set<std::string>& peer_names) {
  size_t content = text.find_first_not_of(" \t\r\n");
  if (content == std::string_view::npos) {
    throw PolicySyntaxError(0, "non-empty policy text");
  }
  return Parser(Lex(text), peer_names).ParseTopLevel();
}

std::string PrettyPrint(const PolicyAst& ast) {
  return PrintNode(ast, /*top_level=*/true);
}

bool Matches(const MatchPredicate& predicate, const FlowKeys& keys) {
  switch (predicate.field) {
    case MatchField::kDstPort: return keys.dstport == predicate.port;
    case MatchField::kSrcPort: return keys.srcport == predicate.port;
    case MatchField::kDstIp: return predicate.prefix.Contains(keys.dst_ip);
    case MatchField::kSrcIp: return predicate.prefix.Contains(keys.src_ip);
  }
  return false;
}

std::set<PolicyAction> EvalPolicy(const PolicyAst* ast, const FlowKeys& keys) {
  std::set<PolicyAction> actions;
  if (ast == nullptr) return actions;
  for (const PolicyTerm* term : ast->Terms()) {
    bool all = true;
    for (const MatchPredicate& pred : term->predicates) {
      if (!Matches(pred, keys)) {
        all = false;
        break;
      }
    }
    if (all) actions.insert(term->action);
  }
  return actions;
}

}  // namespace sdx

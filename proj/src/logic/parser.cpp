#include <algorithm>
#include <cctype>
#include <optional>

#include "adsyn/logic.hpp"

namespace adsyn::logic {

namespace {

enum class Tok { Ident, Not, And, Or, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (is_ident_start(c)) {
      while (i < text.size() && is_ident_char(text[i])) ++i;
      out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '!':
      case '~': out.push_back({Tok::Not, std::string(1, c), start}); ++i; break;
      case '&':
        i += (i + 1 < text.size() && text[i + 1] == '&') ? 2 : 1;
        out.push_back({Tok::And, "&", start});
        break;
      case '|':
        i += (i + 1 < text.size() && text[i + 1] == '|') ? 2 : 1;
        out.push_back({Tok::Or, "|", start});
        break;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; break;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; break;
      default: throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "G" || s == "F" || s == "U" || s == "true" || s == "false";
}

bool is_temporal_run(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == 'G' || c == 'F'; });
}

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& props)
      : tokens_(tokenize(text)), props_(props) {}

  LtlFormula parse() {
    if (tokens_.size() == 1) throw SyntaxError("empty formula", 0);
    LtlFormula f = parse_or();
    if (peek().kind != Tok::End) throw SyntaxError("unexpected '" + peek().text + "'", peek().pos);
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }

  std::optional<std::size_t> prop_index(const std::string& name) const {
    auto it = std::find(props_.begin(), props_.end(), name);
    if (it == props_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - props_.begin());
  }

  bool at_operator_run() const {
    const Token& t = peek();
    return t.kind == Tok::Ident && is_temporal_run(t.text) && !prop_index(t.text);
  }

  LtlFormula parse_or() {
    LtlFormula f = parse_and();
    while (peek().kind == Tok::Or) {
      next();
      f = LtlFormula::disjunction(f, parse_and());
    }
    return f;
  }

  LtlFormula parse_and() {
    LtlFormula f = parse_until();
    while (peek().kind == Tok::And) {
      next();
      f = LtlFormula::conjunction(f, parse_until());
    }
    return f;
  }

  LtlFormula parse_until() {
    LtlFormula f = parse_unary();
    if (peek().kind == Tok::Ident && peek().text == "U") {
      next();
      return LtlFormula::until(f, parse_until());
    }
    return f;
  }

  LtlFormula parse_unary() {
    if (peek().kind == Tok::Not) {
      next();
      return LtlFormula::negation(parse_unary());
    }
    if (at_operator_run()) {
      std::string ops = next().text;
      LtlFormula f = parse_unary();
      for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        f = *it == 'G' ? LtlFormula::globally(f) : LtlFormula::finally(f);
      }
      return f;
    }
    return parse_primary();
  }

  LtlFormula parse_primary() {
    Token t = next();
    switch (t.kind) {
      case Tok::LParen: {
        LtlFormula f = parse_or();
        if (peek().kind != Tok::RParen) throw SyntaxError("expected ')'", peek().pos);
        next();
        return f;
      }
      case Tok::Ident: {
        if (t.text == "true") return LtlFormula::truth();
        if (t.text == "false") return LtlFormula::negation(LtlFormula::truth());
        if (t.text == "U") throw SyntaxError("'U' needs a left operand", t.pos);
        auto idx = prop_index(t.text);
        if (!idx) {
          throw Error(ErrorKind::UndeclaredProposition,
                      "'" + t.text + "' at " + std::to_string(t.pos));
        }
        return LtlFormula::atom(*idx);
      }
      case Tok::End: throw SyntaxError("unexpected end of formula", t.pos);
      default: throw SyntaxError("unexpected '" + t.text + "'", t.pos);
    }
  }

  std::vector<Token> tokens_;
  const std::vector<std::string>& props_;
  std::size_t pos_ = 0;
};

}  // namespace

LtlFormula parse_ltl(std::string_view text, const std::vector<std::string>& props) {
  for (const auto& p : props) {
    if (p.empty() || is_keyword(p)) {
      throw Error(ErrorKind::InvalidArgument, "invalid proposition name '" + p + "'");
    }
  }
  return Parser(text, props).parse();
}

std::vector<std::string> infer_propositions(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(text)) {
    if (t.kind != Tok::Ident || is_keyword(t.text) || is_temporal_run(t.text)) continue;
    if (std::find(out.begin(), out.end(), t.text) == out.end()) out.push_back(t.text);
  }
  return out;
}

}  // namespace adsyn::logic

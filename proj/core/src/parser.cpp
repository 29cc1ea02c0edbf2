#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "goedel/errors.hpp"
#include "goedel/syntax.hpp"

namespace goedel {

namespace {

enum class Tok {
  Ident,
  LParen,
  RParen,
  Comma,
  Dot,
  Bang,
  Tilde,
  Amp,
  Bar,
  Arrow,
  Iff,
  End,
};

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_';
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    auto single = [&](Tok t) {
      out.push_back({t, s.substr(start, 1), start});
      ++i;
    };
    switch (c) {
      case '(': single(Tok::LParen); continue;
      case ')': single(Tok::RParen); continue;
      case ',': single(Tok::Comma); continue;
      case '.': single(Tok::Dot); continue;
      case '!': single(Tok::Bang); continue;
      case '~': single(Tok::Tilde); continue;
      case '&': single(Tok::Amp); continue;
      case '|': single(Tok::Bar); continue;
      default: break;
    }
    if (s.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, s.substr(i, 2), i});
      i += 2;
      continue;
    }
    if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, s.substr(i, 3), i});
      i += 3;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({Tok::Ident, s.substr(start, i - start), start});
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, {}, s.size()});
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature* sig) : toks_(tokenize(text)), sig_(sig) {}

  Formula parse() {
    Formula f = iff();
    if (peek().kind != Tok::End) fail("unexpected '" + std::string(peek().text) + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool accept(Tok t) {
    if (peek().kind != t) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, peek().pos);
  }
  void expect(Tok t, const char* what) {
    if (!accept(t)) fail(std::string("expected ") + what);
  }

  Formula iff() {
    Formula f = imp();
    while (accept(Tok::Iff)) f = Formula::iff(f, imp());
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (accept(Tok::Arrow)) return Formula::implies(f, imp());
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Bar)) f = Formula::disj(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = Formula::conj(f, unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Bang)) return Formula::negation(unary());
    if (accept(Tok::Tilde)) return Formula::tilde(unary());
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "D") {
        ++pos_;
        return Formula::delta(unary());
      }
      if (t.text == "forall" || t.text == "exists") return quantifier();
    }
    return primary();
  }

  Formula quantifier() {
    bool universal = next().text == "forall";
    const Token& var = peek();
    if (var.kind != Tok::Ident || is_reserved_word(var.text)) fail("expected a variable name");
    std::string name(var.text);
    if (sig_ && (sig_->has_constant(name) || sig_->has_relation(name))) {
      throw SymbolError("cannot bind declared symbol '" + name + "'");
    }
    ++pos_;
    expect(Tok::Dot, "'.' after quantified variable");
    bound_.push_back(name);
    Formula body = iff();
    bound_.pop_back();
    return universal ? Formula::forall(name, body) : Formula::exists(name, body);
  }

  Formula primary() {
    if (accept(Tok::LParen)) {
      Formula f = iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    const Token& t = peek();
    if (t.kind != Tok::Ident) fail("expected a formula");
    ++pos_;
    if (t.text == "bot") return Formula::bottom();
    if (t.text == "top") return Formula::top();
    if (is_reserved_word(t.text)) throw ParseError("misplaced keyword '" + std::string(t.text) + "'", t.pos);

    std::string name(t.text);
    std::vector<Term> terms;
    if (accept(Tok::LParen)) {
      do {
        terms.push_back(term());
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')' after arguments");
    }
    declare_relation(name, terms.size(), t.pos);
    return Formula::atom(std::move(name), std::move(terms));
  }

  Term term() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_reserved_word(t.text)) fail("expected a term");
    ++pos_;
    std::string name(t.text);
    bool bound = std::find(bound_.begin(), bound_.end(), name) != bound_.end();
    if (bound) return Term::variable(std::move(name));
    if (sig_) {
      if (sig_->has_relation(name)) {
        throw SymbolError("relation '" + name + "' used as a term");
      }
      return sig_->has_constant(name) ? Term::constant(std::move(name))
                                      : Term::variable(std::move(name));
    }
    if (inferred_.has_relation(name)) throw SymbolError("relation '" + name + "' used as a term");
    inferred_.add_constant(name);
    return Term::constant(std::move(name));
  }

  void declare_relation(const std::string& name, std::size_t arity, std::size_t pos) {
    if (sig_) {
      auto a = sig_->arity(name);
      if (!a) throw SymbolError("undeclared relation '" + name + "' at position " + std::to_string(pos));
      if (*a != arity) {
        throw SymbolError("relation '" + name + "' has arity " + std::to_string(*a) + ", used with " +
                          std::to_string(arity) + " at position " + std::to_string(pos));
      }
      return;
    }
    inferred_.add_relation(name, arity);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature* sig_;
  Signature inferred_;
  std::vector<std::string> bound_;
};

template <typename ParseLine>
Theory parse_lines(std::string_view text, ParseLine&& parse_line) {
  Theory theory;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t end = text.find('\n', offset);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(offset, end - offset);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = line.find_first_not_of(" \t\r") == std::string_view::npos;
    if (!blank) {
      try {
        theory.add(parse_line(line));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), offset + e.position());
      }
    }
    offset = end + 1;
  }
  return theory;
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  return Parser(text, &sig).parse();
}

Formula parse_formula(std::string_view text) { return Parser(text, nullptr).parse(); }

Theory parse_theory(std::string_view text, const Signature& sig) {
  return parse_lines(text, [&](std::string_view line) { return parse_formula(line, sig); });
}

Theory parse_theory(std::string_view text) {
  return parse_lines(text, [](std::string_view line) { return parse_formula(line); });
}

}  // namespace goedel

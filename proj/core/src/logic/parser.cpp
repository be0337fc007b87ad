#include "thompson/logic/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "thompson/error.hpp"

namespace thompson::logic {

namespace {

enum class Tok {
  Ident, LParen, RParen, Comma, Dot, Eq, Neq, Not, And, Or, Implies, Iff, Forall, Exists, True, False, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view s) {
  struct Spelling {
    std::string_view text;
    Tok kind;
  };
  // Longest spellings first.
  static const Spelling kSymbols[] = {
      {"<->", Tok::Iff}, {"->", Tok::Implies}, {"!=", Tok::Neq},   {"/\\", Tok::And},  {"\\/", Tok::Or},
      {"¬", Tok::Not},   {"∧", Tok::And},      {"∨", Tok::Or},     {"→", Tok::Implies}, {"↔", Tok::Iff},
      {"∀", Tok::Forall}, {"∃", Tok::Exists},  {"⊤", Tok::True},   {"⊥", Tok::False},  {"≠", Tok::Neq},
      {"(", Tok::LParen}, {")", Tok::RParen},  {",", Tok::Comma},  {".", Tok::Dot},    {"=", Tok::Eq},
      {"~", Tok::Not},   {"!", Tok::Not},      {"&", Tok::And},    {"|", Tok::Or},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    if (ident_start(s[i])) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      const std::string word(s.substr(i, j - i));
      Tok kind = Tok::Ident;
      if (word == "forall") kind = Tok::Forall;
      else if (word == "exists") kind = Tok::Exists;
      else if (word == "not") kind = Tok::Not;
      else if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      out.push_back({kind, word, i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& sym : kSymbols) {
      if (s.substr(i, sym.text.size()) == sym.text) {
        out.push_back({sym.kind, std::string(sym.text), i});
        i += sym.text.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError("unexpected character", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected token '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  void expect(Tok kind, const char* what) {
    if (!accept(kind)) fail(std::string("expected ") + what);
  }
  /// Name at `ahead` immediately followed by '(' with no space between.
  bool applied(std::size_t ahead) const {
    const Token& name = peek(ahead);
    const Token& next = peek(ahead + 1);
    return name.kind == Tok::Ident && next.kind == Tok::LParen && next.offset == name.offset + name.text.size();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().offset); }

  Formula parse_iff() {
    Formula f = parse_implies();
    while (accept(Tok::Iff)) f = iff(std::move(f), parse_implies());
    return f;
  }

  Formula parse_implies() {
    Formula f = parse_or();
    if (accept(Tok::Implies)) return implies(std::move(f), parse_implies());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = disj(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::And)) f = conj(std::move(f), parse_unary());
    return f;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not:
        take();
        return neg(parse_unary());
      case Tok::Forall:
      case Tok::Exists:
        return parse_quantifier();
      case Tok::LParen: {
        take();
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::True:
        take();
        return f_true();
      case Tok::False:
        take();
        return f_false();
      case Tok::Ident:
        return parse_atom();
      default:
        fail(peek().kind == Tok::End ? "unexpected end of input" : "unexpected token '" + peek().text + "'");
    }
  }

  Formula parse_quantifier() {
    const bool universal = take().kind == Tok::Forall;
    std::vector<std::string> vars;
    for (;;) {
      if (peek().kind != Tok::Ident) break;
      const Tok after = peek(1).kind;
      if (applied(0) || after == Tok::Eq || after == Tok::Neq) break;
      vars.push_back(take().text);
      accept(Tok::Comma);
    }
    if (vars.empty()) fail("quantifier without variables");
    accept(Tok::Dot);
    Formula body = parse_unary();
    return universal ? forall(std::move(vars), std::move(body)) : exists(std::move(vars), std::move(body));
  }

  Term parse_term() {
    if (peek().kind != Tok::Ident) fail("expected a term");
    const bool application = applied(0);
    Token name = take();
    if (!application) return Term::var(name.text);
    take();
    std::vector<Term> args;
    if (!accept(Tok::RParen)) {
      do {
        args.push_back(parse_term());
      } while (accept(Tok::Comma));
      expect(Tok::RParen, "')'");
    }
    return Term::func(name.text, std::move(args));
  }

  Formula parse_atom() {
    Term lhs = parse_term();
    if (accept(Tok::Eq)) return eq(std::move(lhs), parse_term());
    if (accept(Tok::Neq)) return neg(eq(std::move(lhs), parse_term()));
    return rel(std::move(lhs.name), std::move(lhs.args));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Term bind_term(const Term& t, const Signature& sig, const std::set<std::string>& bound) {
  if (t.is_var()) {
    const auto it = sig.functions.find(t.name);
    if (!bound.contains(t.name) && it != sig.functions.end() && it->second == 0) return Term::func(t.name);
    return t;
  }
  Term out = t;
  for (auto& a : out.args) a = bind_term(a, sig, bound);
  return out;
}

Formula bind_impl(const Formula& f, const Signature& sig, const std::set<std::string>& bound) {
  Formula out = f;
  for (auto& t : out.terms) t = bind_term(t, sig, bound);
  if (f.op == Op::Exists || f.op == Op::Forall) {
    std::set<std::string> inner = bound;
    inner.insert(f.vars.begin(), f.vars.end());
    out.subs[0] = bind_impl(f.subs[0], sig, inner);
    return out;
  }
  for (auto& s : out.subs) s = bind_impl(s, sig, bound);
  return out;
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

Formula bind_constants(const Formula& f, const Signature& sig) { return bind_impl(f, sig, {}); }

Formula parse(std::string_view text, const Signature& sig) {
  Formula f = bind_constants(parse(text), sig);
  check_signature(f, sig);
  return f;
}

}  // namespace thompson::logic

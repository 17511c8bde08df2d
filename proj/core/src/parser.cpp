#include "simval/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace simval {

namespace {

enum class Tok {
  ident,
  number,
  kw_in,
  kw_true,
  kw_false,
  lparen,
  rparen,
  lbracket,
  rbracket,
  lbrace,
  rbrace,
  comma,
  amp,
  pipe,
  bang,
  eq,
  ne,
  lt,
  le,
  gt,
  ge,
  end,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::number: return "number";
    case Tok::kw_in: return "'in'";
    case Tok::kw_true: return "'true'";
    case Tok::kw_false: return "'false'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::lbracket: return "'['";
    case Tok::rbracket: return "']'";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::comma: return "','";
    case Tok::amp: return "'&'";
    case Tok::pipe: return "'|'";
    case Tok::bang: return "'!'";
    case Tok::eq: return "'=='";
    case Tok::ne: return "'!='";
    case Tok::lt: return "'<'";
    case Tok::le: return "'<='";
    case Tok::gt: return "'>'";
    case Tok::ge: return "'>='";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  double num = 0.0;
  int line = 1;
  int col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      int line = line_, col = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::end, "", 0.0, line, col});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string word = take_while([](char ch) {
          return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
        });
        Tok kind = Tok::ident;
        if (word == "in") kind = Tok::kw_in;
        else if (word == "true") kind = Tok::kw_true;
        else if (word == "false") kind = Tok::kw_false;
        out.push_back({kind, std::move(word), 0.0, line, col});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '.') {
        out.push_back(lex_number(line, col));
        continue;
      }
      switch (c) {
        case '(': out.push_back(simple(Tok::lparen, line, col)); continue;
        case ')': out.push_back(simple(Tok::rparen, line, col)); continue;
        case '[': out.push_back(simple(Tok::lbracket, line, col)); continue;
        case ']': out.push_back(simple(Tok::rbracket, line, col)); continue;
        case '{': out.push_back(simple(Tok::lbrace, line, col)); continue;
        case '}': out.push_back(simple(Tok::rbrace, line, col)); continue;
        case ',': out.push_back(simple(Tok::comma, line, col)); continue;
        case '&': out.push_back(simple(Tok::amp, line, col)); continue;
        case '|': out.push_back(simple(Tok::pipe, line, col)); continue;
        case '<':
          advance();
          if (peek() == '=') { advance(); out.push_back({Tok::le, "<=", 0.0, line, col}); }
          else out.push_back({Tok::lt, "<", 0.0, line, col});
          continue;
        case '>':
          advance();
          if (peek() == '=') { advance(); out.push_back({Tok::ge, ">=", 0.0, line, col}); }
          else out.push_back({Tok::gt, ">", 0.0, line, col});
          continue;
        case '=':
          advance();
          if (peek() == '=') { advance(); out.push_back({Tok::eq, "==", 0.0, line, col}); }
          else
            throw ParseError(errc::syntax_error, "stray '='; did you mean '=='", line, col,
                             {"'=='"});
          continue;
        case '!':
          advance();
          if (peek() == '=') { advance(); out.push_back({Tok::ne, "!=", 0.0, line, col}); }
          else out.push_back({Tok::bang, "!", 0.0, line, col});
          continue;
        default:
          throw ParseError(errc::syntax_error,
                           "unexpected character '" + printable(c) + "'", line, col);
      }
    }
  }

private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void advance() {
    if (pos_ >= src_.size()) return;
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_blank() {
    for (;;) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
        advance();
      if (pos_ < src_.size() && src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      return;
    }
  }

  template <class Pred>
  std::string take_while(Pred pred) {
    std::string out;
    while (pos_ < src_.size() && pred(src_[pos_])) {
      out.push_back(src_[pos_]);
      advance();
    }
    return out;
  }

  Token simple(Tok kind, int line, int col) {
    std::string text(1, src_[pos_]);
    advance();
    return {kind, std::move(text), 0.0, line, col};
  }

  Token lex_number(int line, int col) {
    std::string text;
    if (peek() == '-') {
      text.push_back('-');
      advance();
    }
    bool digits = false;
    while (std::isdigit(static_cast<unsigned char>(peek()))) { text.push_back(peek()); advance(); digits = true; }
    if (peek() == '.') {
      text.push_back('.');
      advance();
      while (std::isdigit(static_cast<unsigned char>(peek()))) { text.push_back(peek()); advance(); digits = true; }
    }
    if (!digits)
      throw ParseError(errc::syntax_error, "malformed number '" + text + "'", line, col,
                       {"number"});
    if (peek() == 'e' || peek() == 'E') {
      text.push_back(peek());
      advance();
      if (peek() == '+' || peek() == '-') { text.push_back(peek()); advance(); }
      bool exp_digits = false;
      while (std::isdigit(static_cast<unsigned char>(peek()))) { text.push_back(peek()); advance(); exp_digits = true; }
      if (!exp_digits)
        throw ParseError(errc::syntax_error, "malformed exponent in '" + text + "'", line, col,
                         {"number"});
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
      throw ParseError(errc::syntax_error, "number '" + text + "' is out of range", line, col,
                       {"number"});
    return {Tok::number, std::move(text), v, line, col};
  }

  static std::string printable(char c) {
    if (std::isprint(static_cast<unsigned char>(c))) return std::string(1, c);
    char buf[8];
    std::snprintf(buf, sizeof(buf), "\\x%02x", static_cast<unsigned char>(c));
    return buf;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
public:
  Parser(std::string_view text, const Alphabet& alphabet)
      : alphabet_(alphabet), toks_(Lexer(text).run()) {}

  AssertionSet run() {
    AssertionSet result = parse_expr();
    expect(Tok::end);
    return result;
  }

private:
  const Token& cur() const { return toks_[pos_]; }

  Token take() { return toks_[pos_++]; }

  bool accept(Tok kind) {
    if (cur().kind != kind) return false;
    ++pos_;
    return true;
  }

  Token expect(Tok kind) {
    if (cur().kind != kind)
      throw ParseError(errc::syntax_error,
                       std::string("expected ") + tok_name(kind) + ", found " +
                           tok_name(cur().kind),
                       cur().line, cur().col, {tok_name(kind)});
    return take();
  }

  [[noreturn]] void fail_here(const std::string& msg, std::vector<std::string> expected) {
    throw ParseError(errc::syntax_error, msg + ", found " + tok_name(cur().kind), cur().line,
                     cur().col, std::move(expected));
  }

  AssertionSet parse_expr() {
    AssertionSet set = parse_term();
    while (accept(Tok::pipe)) set = set.unite(parse_term());
    return set;
  }

  AssertionSet parse_term() {
    AssertionSet set = parse_factor();
    while (accept(Tok::amp)) set = set.intersect(parse_factor());
    return set;
  }

  AssertionSet parse_factor() {
    if (accept(Tok::bang)) return parse_factor().complement();
    if (accept(Tok::lparen)) {
      AssertionSet set = parse_expr();
      expect(Tok::rparen);
      return set;
    }
    return parse_atom();
  }

  AssertionSet parse_atom() {
    if (accept(Tok::kw_true)) return AssertionSet::universe(alphabet_);
    if (accept(Tok::kw_false)) return AssertionSet::empty(alphabet_);
    if (cur().kind != Tok::ident)
      fail_here("expected an atom", {"identifier", "'true'", "'false'", "'!'", "'('"});
    Token name = take();
    const VariableDecl* decl = alphabet_.find(name.text);
    if (!decl)
      throw ParseError(errc::unknown_variable,
                       "variable '" + name.text + "' is not declared", name.line, name.col);
    switch (cur().kind) {
      case Tok::kw_in: {
        take();
        if (cur().kind == Tok::lbrace) return parse_label_set(*decl);
        return parse_interval(*decl);
      }
      case Tok::eq:
      case Tok::ne:
      case Tok::lt:
      case Tok::le:
      case Tok::gt:
      case Tok::ge:
        return parse_comparison(*decl);
      default:
        fail_here("expected a constraint on '" + name.text + "'",
                  {"'in'", "'=='", "'!='", "'<'", "'<='", "'>'", "'>='"});
    }
  }

  AssertionSet parse_interval(const VariableDecl& decl) {
    Token open = cur();
    bool lo_open;
    if (accept(Tok::lbracket)) lo_open = false;
    else if (accept(Tok::lparen)) lo_open = true;
    else fail_here("expected an interval", {"'['", "'('"});
    if (!decl.numeric())
      throw ParseError(errc::type_mismatch,
                       "interval constraint on " + std::string(var_kind_name(decl.kind)) +
                           " variable '" + decl.name + "'",
                       open.line, open.col);
    Token lo = expect(Tok::number);
    expect(Tok::comma);
    Token hi = expect(Tok::number);
    bool hi_open;
    if (accept(Tok::rbracket)) hi_open = false;
    else if (accept(Tok::rparen)) hi_open = true;
    else fail_here("unterminated interval", {"']'", "')'"});
    return AssertionSet::single_atom(alphabet_, decl.name,
                                     Interval{lo.num, hi.num, lo_open, hi_open});
  }

  AssertionSet parse_label_set(const VariableDecl& decl) {
    Token open = expect(Tok::lbrace);
    if (decl.numeric())
      throw ParseError(errc::type_mismatch,
                       "label constraint on numeric variable '" + decl.name + "'", open.line,
                       open.col);
    LabelSet labels;
    do {
      labels.push_back(parse_label(decl));
    } while (accept(Tok::comma));
    expect(Tok::rbrace);
    return AssertionSet::single_atom(alphabet_, decl.name, std::move(labels));
  }

  std::string parse_label(const VariableDecl& decl) {
    Token t = cur();
    if (t.kind != Tok::ident && t.kind != Tok::kw_true && t.kind != Tok::kw_false)
      fail_here("expected a label", {"identifier"});
    take();
    if (!std::binary_search(decl.labels.begin(), decl.labels.end(), t.text))
      throw ParseError(errc::out_of_domain_literal,
                       "label '" + t.text + "' is not in the domain of '" + decl.name + "'",
                       t.line, t.col);
    return t.text;
  }

  AssertionSet parse_comparison(const VariableDecl& decl) {
    Token op = take();
    if (decl.numeric()) {
      Token lit = expect(Tok::number);
      double v = lit.num;
      switch (op.kind) {
        case Tok::eq:
          if (v < decl.lo || v > decl.hi)
            throw ParseError(errc::out_of_domain_literal,
                             "literal " + lit.text + " is outside the domain of '" + decl.name +
                                 "'",
                             lit.line, lit.col);
          return AssertionSet::single_atom(alphabet_, decl.name, Interval{v, v, false, false});
        case Tok::ne: {
          if (v < decl.lo || v > decl.hi)
            throw ParseError(errc::out_of_domain_literal,
                             "literal " + lit.text + " is outside the domain of '" + decl.name +
                                 "'",
                             lit.line, lit.col);
          AssertionSet below = AssertionSet::single_atom(alphabet_, decl.name,
                                                         Interval{decl.lo, v, false, true});
          AssertionSet above = AssertionSet::single_atom(alphabet_, decl.name,
                                                         Interval{v, decl.hi, true, false});
          return below.unite(above);
        }
        case Tok::lt:
          return AssertionSet::single_atom(alphabet_, decl.name,
                                           Interval{decl.lo, v, false, true});
        case Tok::le:
          return AssertionSet::single_atom(alphabet_, decl.name,
                                           Interval{decl.lo, v, false, false});
        case Tok::gt:
          return AssertionSet::single_atom(alphabet_, decl.name,
                                           Interval{v, decl.hi, true, false});
        case Tok::ge:
          return AssertionSet::single_atom(alphabet_, decl.name,
                                           Interval{v, decl.hi, false, false});
        default: break;
      }
    } else {
      if (op.kind == Tok::lt || op.kind == Tok::le || op.kind == Tok::gt || op.kind == Tok::ge)
        throw ParseError(errc::type_mismatch,
                         "ordering comparison on " + std::string(var_kind_name(decl.kind)) +
                             " variable '" + decl.name + "'",
                         op.line, op.col);
      std::string label = parse_label(decl);
      if (op.kind == Tok::eq)
        return AssertionSet::single_atom(alphabet_, decl.name, LabelSet{label});
      LabelSet rest;
      for (const auto& l : decl.labels)
        if (l != label) rest.push_back(l);
      if (rest.empty()) return AssertionSet::empty(alphabet_);
      return AssertionSet::single_atom(alphabet_, decl.name, std::move(rest));
    }
    fail_here("unsupported comparison", {});
  }

  const Alphabet& alphabet_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string render_atom(const std::string& name, const AtomConstraint& atom) {
  std::string out = name + " in ";
  if (const Interval* iv = std::get_if<Interval>(&atom)) {
    out += iv->lo_open ? '(' : '[';
    out += format_number(iv->lo) + ", " + format_number(iv->hi);
    out += iv->hi_open ? ')' : ']';
    return out;
  }
  const LabelSet& ls = std::get<LabelSet>(atom);
  out += '{';
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (i) out += ", ";
    out += ls[i];
  }
  out += '}';
  return out;
}

}  // namespace

AssertionSet parse_assertion(std::string_view text, const Alphabet& alphabet) {
  return Parser(text, alphabet).run();
}

std::string render_assertion(const AssertionSet& set) {
  if (set.is_empty()) return "false";
  std::string out;
  for (std::size_t bi = 0; bi < set.boxes().size(); ++bi) {
    const Box& box = set.boxes()[bi];
    if (bi) out += " | ";
    if (box.empty()) return "true";  // universe box subsumes everything
    bool first = true;
    for (const auto& [name, atom] : box) {
      if (!first) out += " & ";
      first = false;
      out += render_atom(name, atom);
    }
  }
  return out;
}

}  // namespace simval

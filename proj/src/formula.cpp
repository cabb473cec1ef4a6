#include "sulcheck/formula.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

#include "sulcheck/model.hpp"

namespace sulcheck {

std::string_view flavor_name(Flavor f) {
  switch (f) {
  case Flavor::none: return "none";
  case Flavor::sdl: return "sdl";
  case Flavor::scl: return "scl";
  case Flavor::sul: return "sul";
  }
  return "?";
}

bool is_path_kind(FKind k) { return k == FKind::next || k == FKind::until || k == FKind::release; }

bool is_strategic_kind(FKind k) {
  return k == FKind::strat_d || k == FKind::strat_a || k == FKind::strat_u;
}

namespace fml {

static Formula node(FKind kind, std::vector<Formula> kids) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = kind;
  n->kids = std::move(kids);
  return n;
}

Formula top() { return node(FKind::konst_true, {}); }
Formula bottom() { return node(FKind::konst_false, {}); }

Formula atom(std::string name) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::atom;
  n->atom = std::move(name);
  return n;
}

Formula negation(Formula a) { return node(FKind::negation, {std::move(a)}); }
Formula conj(Formula a, Formula b) { return node(FKind::conj, {std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return node(FKind::disj, {std::move(a), std::move(b)}); }
Formula implies(Formula a, Formula b) { return node(FKind::implies, {std::move(a), std::move(b)}); }
Formula iff(Formula a, Formula b) { return node(FKind::iff, {std::move(a), std::move(b)}); }
Formula next(Formula a) { return node(FKind::next, {std::move(a)}); }
Formula until(Formula a, Formula b) { return node(FKind::until, {std::move(a), std::move(b)}); }
Formula release(Formula a, Formula b) { return node(FKind::release, {std::move(a), std::move(b)}); }
Formula finally_(Formula a) { return until(top(), std::move(a)); }
Formula globally(Formula a) { return release(bottom(), std::move(a)); }

Formula strat_d(uint64_t budget, bool dual, Formula path) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::strat_d;
  n->dual = dual;
  n->demon_budget = budget;
  n->kids.push_back(std::move(path));
  return n;
}

Formula strat_a(uint64_t budget, bool dual, Formula path) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::strat_a;
  n->dual = dual;
  n->angel_budget = budget;
  n->kids.push_back(std::move(path));
  return n;
}

Formula strat_u(bool angel, bool demon, uint64_t angel_budget, uint64_t demon_budget, bool dual,
                Formula path) {
  auto n = std::make_shared<FormulaNode>();
  n->kind = FKind::strat_u;
  n->dual = dual;
  n->coalition_angel = angel;
  n->coalition_demon = demon;
  n->angel_budget = angel_budget;
  n->demon_budget = demon_budget;
  n->kids.push_back(std::move(path));
  return n;
}

} // namespace fml

bool equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get())
    return true;
  if (!a || !b)
    return false;
  if (a->kind != b->kind || a->atom != b->atom || a->dual != b->dual ||
      a->coalition_angel != b->coalition_angel || a->coalition_demon != b->coalition_demon ||
      a->angel_budget != b->angel_budget || a->demon_budget != b->demon_budget ||
      a->kids.size() != b->kids.size())
    return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i]))
      return false;
  return true;
}

// --- lexer -------------------------------------------------------------------

namespace {

enum class Tok {
  ident,
  konst_true,
  konst_false,
  bang,
  amp,
  pipe,
  arrow,
  darrow,
  lparen,
  rparen,
  op_x,
  op_u,
  op_r,
  op_f,
  op_g,
  dia,
  box,
  strat,
  end,
};

struct Token {
  Tok kind;
  int column = 0;
  std::string text;           // ident
  // strat payload
  FKind strat_kind = FKind::strat_d;
  bool dual = false;
  bool coalition_angel = false;
  bool coalition_demon = false;
  uint64_t angel_budget = 0;
  uint64_t demon_budget = 0;
};

[[noreturn]] void lex_fail(Errc c, const std::string& msg, int col) { throw Error(c, msg, 1, col); }

class Lexer {
public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      Token t = next();
      bool done = t.kind == Tok::end;
      out.push_back(std::move(t));
      if (done)
        return out;
    }
  }

private:
  std::string_view text_;
  size_t pos_ = 0;

  int col() const { return static_cast<int>(pos_) + 1; }
  char peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  uint64_t lex_nat() {
    size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
    if (pos_ == start)
      lex_fail(Errc::bad_budget, "expected a budget (natural number)", col());
    uint64_t value = 0;
    auto [p, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc())
      lex_fail(Errc::bad_budget, "budget does not fit in 64 bits", static_cast<int>(start) + 1);
    (void)p;
    return value;
  }

  void expect(char c, const char* what) {
    if (peek() != c)
      lex_fail(Errc::syntax, std::string("expected '") + c + "' in " + what, col());
    ++pos_;
  }

  Token coalition_token(bool dual) {
    int start_col = col();
    Token t;
    t.kind = Tok::strat;
    t.strat_kind = FKind::strat_u;
    t.dual = dual;
    t.column = start_col;
    // coalition letters up to '|'; canonical spellings: '', 'a', 'd', 'a,d'
    bool first = true;
    while (peek() != '|') {
      if (!first)
        expect(',', "coalition list");
      first = false;
      if (peek() == 'a' && !t.coalition_angel && !t.coalition_demon) {
        t.coalition_angel = true;
        ++pos_;
      } else if (peek() == 'd' && !t.coalition_demon) {
        t.coalition_demon = true;
        ++pos_;
      } else {
        lex_fail(Errc::bad_coalition, "coalition must be one of '', 'a', 'd', 'a,d'", col());
      }
    }
    expect('|', "coalition operator");
    uint64_t first_budget = lex_nat();
    expect(',', "coalition operator");
    uint64_t second_budget = lex_nat();
    if (dual) {
      expect(']', "coalition operator");
      expect(']', "coalition operator");
    } else {
      expect('>', "coalition operator");
      expect('>', "coalition operator");
    }
    // Budgets are listed coalition-first: the demon-only form names the
    // demon's budget first; every other form lists angel then demon.
    if (t.coalition_demon && !t.coalition_angel) {
      t.demon_budget = first_budget;
      t.angel_budget = second_budget;
    } else {
      t.angel_budget = first_budget;
      t.demon_budget = second_budget;
    }
    return t;
  }

  Token single_agent_token(bool dual) {
    Token t;
    t.kind = Tok::strat;
    t.dual = dual;
    t.column = col();
    char agent = peek();
    ++pos_;
    expect(':', "strategic operator");
    uint64_t budget = lex_nat();
    expect(dual ? ']' : '>', "strategic operator");
    if (agent == 'd') {
      t.strat_kind = FKind::strat_d;
      t.demon_budget = budget;
    } else {
      t.strat_kind = FKind::strat_a;
      t.angel_budget = budget;
    }
    return t;
  }

  Token next() {
    while (std::isspace(static_cast<unsigned char>(peek())))
      ++pos_;
    int c0 = col();
    char c = peek();
    auto simple = [&](Tok k, int len) {
      pos_ += len;
      Token t;
      t.kind = k;
      t.column = c0;
      return t;
    };
    switch (c) {
    case '\0': return simple(Tok::end, 0);
    case '(': return simple(Tok::lparen, 1);
    case ')': return simple(Tok::rparen, 1);
    case '!': return simple(Tok::bang, 1);
    case '&': return simple(Tok::amp, 1);
    case '|': return simple(Tok::pipe, 1);
    case '-':
      if (peek(1) == '>')
        return simple(Tok::arrow, 2);
      lex_fail(Errc::syntax, "expected '->'", c0);
    case '<':
      if (peek(1) == '-' && peek(2) == '>')
        return simple(Tok::darrow, 3);
      if (peek(1) == '<') {
        pos_ += 2;
        return coalition_token(false);
      }
      if (peek(1) == 'd' || peek(1) == 'a') {
        ++pos_;
        return single_agent_token(false);
      }
      lex_fail(Errc::syntax, "unexpected '<'", c0);
    case '[':
      if (peek(1) == '[') {
        pos_ += 2;
        return coalition_token(true);
      }
      if (peek(1) == 'd' || peek(1) == 'a') {
        ++pos_;
        return single_agent_token(true);
      }
      lex_fail(Errc::syntax, "unexpected '['", c0);
    default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '^')
        ++pos_;
      std::string word(text_.substr(start, pos_ - start));
      Token t;
      t.column = c0;
      if (word == "true")
        t.kind = Tok::konst_true;
      else if (word == "false")
        t.kind = Tok::konst_false;
      else if (word == "X")
        t.kind = Tok::op_x;
      else if (word == "U")
        t.kind = Tok::op_u;
      else if (word == "R")
        t.kind = Tok::op_r;
      else if (word == "F")
        t.kind = Tok::op_f;
      else if (word == "G")
        t.kind = Tok::op_g;
      else if (word == "dia")
        t.kind = Tok::dia;
      else if (word == "box")
        t.kind = Tok::box;
      else {
        t.kind = Tok::ident;
        t.text = std::move(word);
      }
      return t;
    }
    lex_fail(Errc::syntax, std::string("unexpected character '") + c + "'", c0);
  }
};

// --- parser ------------------------------------------------------------------

class Parser {
public:
  Parser(std::vector<Token> tokens, Flavor flavor) : tokens_(std::move(tokens)), flavor_(flavor) {}

  Formula run() {
    Formula f = parse_iff();
    if (cur().kind != Tok::end)
      fail("unexpected trailing input");
    return f;
  }

private:
  std::vector<Token> tokens_;
  size_t at_ = 0;
  Flavor flavor_;

  const Token& cur() const { return tokens_[at_]; }
  Token take() { return tokens_[at_++]; }
  bool eat(Tok k) {
    if (cur().kind != k)
      return false;
    ++at_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::syntax, msg, 1, cur().column);
  }

  Formula parse_iff() {
    Formula l = parse_impl();
    while (eat(Tok::darrow))
      l = fml::iff(std::move(l), parse_impl());
    return l;
  }

  Formula parse_impl() {
    Formula l = parse_or();
    if (eat(Tok::arrow))
      return fml::implies(std::move(l), parse_impl());
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (eat(Tok::pipe))
      l = fml::disj(std::move(l), parse_and());
    return l;
  }

  Formula parse_and() {
    Formula l = parse_ur();
    while (eat(Tok::amp))
      l = fml::conj(std::move(l), parse_ur());
    return l;
  }

  Formula parse_ur() {
    Formula l = parse_unary();
    if (eat(Tok::op_u))
      return fml::until(std::move(l), parse_ur());
    if (eat(Tok::op_r))
      return fml::release(std::move(l), parse_ur());
    return l;
  }

  Formula sugar_modal(bool dia) {
    // dia/box are the budget-0 next-step operators of the formula's flavor.
    Formula arg = parse_unary();
    switch (flavor_) {
    case Flavor::scl: return fml::strat_a(0, dia, fml::next(std::move(arg)));
    case Flavor::sul: return fml::strat_u(true, true, 0, 0, dia, fml::next(std::move(arg)));
    default: return fml::strat_d(0, dia, fml::next(std::move(arg)));
    }
  }

  Formula parse_unary() {
    switch (cur().kind) {
    case Tok::bang: take(); return fml::negation(parse_unary());
    case Tok::op_x: take(); return fml::next(parse_unary());
    case Tok::op_f: take(); return fml::finally_(parse_unary());
    case Tok::op_g: take(); return fml::globally(parse_unary());
    case Tok::dia: take(); return sugar_modal(true);
    case Tok::box: take(); return sugar_modal(false);
    case Tok::strat: {
      Token t = take();
      Formula path = parse_unary();
      if (t.strat_kind == FKind::strat_d)
        return fml::strat_d(t.demon_budget, t.dual, std::move(path));
      if (t.strat_kind == FKind::strat_a)
        return fml::strat_a(t.angel_budget, t.dual, std::move(path));
      return fml::strat_u(t.coalition_angel, t.coalition_demon, t.angel_budget, t.demon_budget,
                          t.dual, std::move(path));
    }
    default: return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (cur().kind) {
    case Tok::konst_true: take(); return fml::top();
    case Tok::konst_false: take(); return fml::bottom();
    case Tok::ident: return fml::atom(take().text);
    case Tok::lparen: {
      take();
      Formula f = parse_iff();
      if (!eat(Tok::rparen))
        fail("expected ')'");
      return f;
    }
    default: fail("expected a formula");
    }
  }
};

Flavor flavor_of_tokens(const std::vector<Token>& tokens) {
  bool d = false, a = false, u = false;
  int col = 0;
  for (const Token& t : tokens) {
    if (t.kind != Tok::strat)
      continue;
    col = t.column;
    if (t.strat_kind == FKind::strat_d)
      d = true;
    else if (t.strat_kind == FKind::strat_a)
      a = true;
    else
      u = true;
  }
  if (static_cast<int>(d) + static_cast<int>(a) + static_cast<int>(u) > 1)
    throw Error(Errc::flavor_mix, "formula mixes strategic operators of different logics", 1, col);
  if (d)
    return Flavor::sdl;
  if (a)
    return Flavor::scl;
  if (u)
    return Flavor::sul;
  return Flavor::none;
}

void walk_validate(const Formula& f, bool strat_child, ParseMode mode) {
  if (is_path_kind(f->kind)) {
    if (!strat_child && mode == ParseMode::state_formula)
      throw Error(Errc::path_outside_strategic,
                  "path operator outside a strategic context");
    for (const auto& k : f->kids)
      walk_validate(k, mode == ParseMode::any, mode);
    return;
  }
  if (is_strategic_kind(f->kind)) {
    if (!is_path_kind(f->kids[0]->kind))
      throw Error(Errc::strategic_needs_path,
                  "strategic operator must be applied to a path formula (X, U, R, F, G)");
    walk_validate(f->kids[0], true, mode);
    return;
  }
  for (const auto& k : f->kids)
    walk_validate(k, mode == ParseMode::any, mode);
}

} // namespace

void validate_formula(const Formula& f, ParseMode mode) {
  walk_validate(f, mode == ParseMode::any, mode);
  formula_flavor(f);
}

Formula parse_formula(std::string_view text, ParseMode mode) {
  std::vector<Token> tokens = Lexer(text).run();
  Flavor flavor = flavor_of_tokens(tokens);
  Formula f = Parser(std::move(tokens), flavor).run();
  validate_formula(f, mode);
  return f;
}

Flavor formula_flavor(const Formula& f) {
  bool d = false, a = false, u = false;
  std::vector<const FormulaNode*> stack{f.get()};
  while (!stack.empty()) {
    const FormulaNode* n = stack.back();
    stack.pop_back();
    if (n->kind == FKind::strat_d)
      d = true;
    else if (n->kind == FKind::strat_a)
      a = true;
    else if (n->kind == FKind::strat_u)
      u = true;
    for (const auto& k : n->kids)
      stack.push_back(k.get());
  }
  if (static_cast<int>(d) + static_cast<int>(a) + static_cast<int>(u) > 1)
    throw Error(Errc::flavor_mix, "formula mixes strategic operators of different logics");
  if (d)
    return Flavor::sdl;
  if (a)
    return Flavor::scl;
  if (u)
    return Flavor::sul;
  return Flavor::none;
}

bool is_next_time_fragment(const Formula& f) {
  if (is_strategic_kind(f->kind) && f->kids[0]->kind != FKind::next)
    return false;
  for (const auto& k : f->kids)
    if (!is_next_time_fragment(k))
      return false;
  return true;
}

// --- printing ----------------------------------------------------------------

namespace {

std::string strat_token(const FormulaNode& n) {
  std::ostringstream out;
  if (n.kind == FKind::strat_d) {
    out << (n.dual ? "[d:" : "<d:") << n.demon_budget << (n.dual ? "]" : ">");
  } else if (n.kind == FKind::strat_a) {
    out << (n.dual ? "[a:" : "<a:") << n.angel_budget << (n.dual ? "]" : ">");
  } else {
    out << (n.dual ? "[[" : "<<");
    if (n.coalition_angel && n.coalition_demon)
      out << "a,d|" << n.angel_budget << ',' << n.demon_budget;
    else if (n.coalition_angel)
      out << "a|" << n.angel_budget << ',' << n.demon_budget;
    else if (n.coalition_demon)
      out << "d|" << n.demon_budget << ',' << n.angel_budget;
    else
      out << '|' << n.angel_budget << ',' << n.demon_budget;
    out << (n.dual ? "]]" : ">>");
  }
  return out.str();
}

int prec_of(const FormulaNode& n) {
  switch (n.kind) {
  case FKind::konst_true:
  case FKind::konst_false:
  case FKind::atom: return 0;
  case FKind::negation:
  case FKind::next:
  case FKind::strat_d:
  case FKind::strat_a:
  case FKind::strat_u: return 1;
  case FKind::until:
  case FKind::release: return 2;
  case FKind::conj: return 3;
  case FKind::disj: return 4;
  case FKind::implies: return 5;
  case FKind::iff: return 6;
  }
  return 6;
}

void print_rec(const Formula& f, int ctx, std::string& out);

void print_ur_operand(const Formula& f, std::string& out) {
  if (prec_of(*f) == 0) {
    print_rec(f, 0, out);
  } else {
    out += '(';
    print_rec(f, 6, out);
    out += ')';
  }
}

void print_path(const Formula& f, std::string& out) {
  // Called for the child of a strategic node (or a top-level path formula).
  if (f->kind == FKind::next) {
    out += "X ";
    print_rec(f->kids[0], 1, out);
    return;
  }
  if (f->kind == FKind::until && f->kids[0]->kind == FKind::konst_true) {
    out += "F ";
    print_rec(f->kids[1], 1, out);
    return;
  }
  if (f->kind == FKind::release && f->kids[0]->kind == FKind::konst_false) {
    out += "G ";
    print_rec(f->kids[1], 1, out);
    return;
  }
  out += '(';
  print_ur_operand(f->kids[0], out);
  out += f->kind == FKind::until ? " U " : " R ";
  print_ur_operand(f->kids[1], out);
  out += ')';
}

void print_rec(const Formula& f, int ctx, std::string& out) {
  const FormulaNode& n = *f;
  int p = prec_of(n);
  bool parens = p > ctx;
  if (parens) {
    out += '(';
    ctx = 6;
  }
  switch (n.kind) {
  case FKind::konst_true: out += "true"; break;
  case FKind::konst_false: out += "false"; break;
  case FKind::atom: out += n.atom; break;
  case FKind::negation:
    out += '!';
    print_rec(n.kids[0], 1, out);
    break;
  case FKind::conj:
    print_rec(n.kids[0], 3, out);
    out += " & ";
    print_rec(n.kids[1], 2, out);
    break;
  case FKind::disj:
    print_rec(n.kids[0], 4, out);
    out += " | ";
    print_rec(n.kids[1], 3, out);
    break;
  case FKind::implies:
    print_rec(n.kids[0], 4, out);
    out += " -> ";
    print_rec(n.kids[1], 5, out);
    break;
  case FKind::iff:
    print_rec(n.kids[0], 6, out);
    out += " <-> ";
    print_rec(n.kids[1], 5, out);
    break;
  case FKind::next:
  case FKind::until:
  case FKind::release:
    // A bare path formula (ParseMode::any); U/R render self-delimited.
    if (n.kind == FKind::next) {
      out += "X ";
      print_rec(n.kids[0], 1, out);
    } else if (n.kind == FKind::until && n.kids[0]->kind == FKind::konst_true) {
      out += "F ";
      print_rec(n.kids[1], 1, out);
    } else if (n.kind == FKind::release && n.kids[0]->kind == FKind::konst_false) {
      out += "G ";
      print_rec(n.kids[1], 1, out);
    } else {
      print_ur_operand(n.kids[0], out);
      out += n.kind == FKind::until ? " U " : " R ";
      print_ur_operand(n.kids[1], out);
    }
    break;
  case FKind::strat_d:
  case FKind::strat_a:
  case FKind::strat_u:
    out += strat_token(n);
    out += ' ';
    print_path(n.kids[0], out);
    break;
  }
  if (parens)
    out += ')';
}

} // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  if (is_path_kind(f->kind) && (f->kind == FKind::until || f->kind == FKind::release) &&
      !(f->kind == FKind::until && f->kids[0]->kind == FKind::konst_true) &&
      !(f->kind == FKind::release && f->kids[0]->kind == FKind::konst_false)) {
    // Top-level plain U/R: no delimiting parens needed.
    print_ur_operand(f->kids[0], out);
    out += f->kind == FKind::until ? " U " : " R ";
    print_ur_operand(f->kids[1], out);
    return out;
  }
  print_rec(f, 6, out);
  return out;
}

// --- negation normal form ------------------------------------------------------

namespace {

Formula nnf_rec(const Formula& f, bool neg) {
  const FormulaNode& n = *f;
  switch (n.kind) {
  case FKind::konst_true: return neg ? fml::bottom() : fml::top();
  case FKind::konst_false: return neg ? fml::top() : fml::bottom();
  case FKind::atom: return neg ? fml::negation(f) : f;
  case FKind::negation: return nnf_rec(n.kids[0], !neg);
  case FKind::conj:
    return neg ? fml::disj(nnf_rec(n.kids[0], true), nnf_rec(n.kids[1], true))
               : fml::conj(nnf_rec(n.kids[0], false), nnf_rec(n.kids[1], false));
  case FKind::disj:
    return neg ? fml::conj(nnf_rec(n.kids[0], true), nnf_rec(n.kids[1], true))
               : fml::disj(nnf_rec(n.kids[0], false), nnf_rec(n.kids[1], false));
  case FKind::implies:
    return neg ? fml::conj(nnf_rec(n.kids[0], false), nnf_rec(n.kids[1], true))
               : fml::disj(nnf_rec(n.kids[0], true), nnf_rec(n.kids[1], false));
  case FKind::iff: {
    Formula a = n.kids[0], b = n.kids[1];
    if (!neg)
      return fml::disj(fml::conj(nnf_rec(a, false), nnf_rec(b, false)),
                       fml::conj(nnf_rec(a, true), nnf_rec(b, true)));
    return fml::disj(fml::conj(nnf_rec(a, false), nnf_rec(b, true)),
                     fml::conj(nnf_rec(a, true), nnf_rec(b, false)));
  }
  case FKind::next: return fml::next(nnf_rec(n.kids[0], neg));
  case FKind::until:
    return neg ? fml::release(nnf_rec(n.kids[0], true), nnf_rec(n.kids[1], true))
               : fml::until(nnf_rec(n.kids[0], false), nnf_rec(n.kids[1], false));
  case FKind::release:
    return neg ? fml::until(nnf_rec(n.kids[0], true), nnf_rec(n.kids[1], true))
               : fml::release(nnf_rec(n.kids[0], false), nnf_rec(n.kids[1], false));
  case FKind::strat_d:
    return fml::strat_d(n.demon_budget, n.dual != neg, nnf_rec(n.kids[0], neg));
  case FKind::strat_a:
    return fml::strat_a(n.angel_budget, n.dual != neg, nnf_rec(n.kids[0], neg));
  case FKind::strat_u:
    return fml::strat_u(n.coalition_angel, n.coalition_demon, n.angel_budget, n.demon_budget,
                        n.dual != neg, nnf_rec(n.kids[0], neg));
  }
  throw Error(Errc::syntax, "malformed formula node");
}

} // namespace

Formula to_nnf(const Formula& f) { return nnf_rec(f, false); }

uint64_t formula_size(const Formula& f) {
  auto budget_bits = [](uint64_t n) -> uint64_t {
    return std::max<uint64_t>(1, static_cast<uint64_t>(std::bit_width(n)));
  };
  uint64_t size = 1;
  if (f->kind == FKind::strat_d)
    size = checked_add(size, budget_bits(f->demon_budget));
  else if (f->kind == FKind::strat_a)
    size = checked_add(size, budget_bits(f->angel_budget));
  else if (f->kind == FKind::strat_u)
    size = checked_add(size, checked_add(budget_bits(f->angel_budget), budget_bits(f->demon_budget)));
  for (const auto& k : f->kids)
    size = checked_add(size, formula_size(k));
  return size;
}

// --- CTL -----------------------------------------------------------------------

namespace ctl {

static CtlFormula node(CKind kind, std::vector<CtlFormula> kids) {
  auto n = std::make_shared<CtlNode>();
  n->kind = kind;
  n->kids = std::move(kids);
  return n;
}

CtlFormula top() { return node(CKind::konst_true, {}); }
CtlFormula bottom() { return node(CKind::konst_false, {}); }
CtlFormula atom(std::string name) {
  auto n = std::make_shared<CtlNode>();
  n->kind = CKind::atom;
  n->atom = std::move(name);
  return n;
}
CtlFormula negation(CtlFormula a) { return node(CKind::negation, {std::move(a)}); }
CtlFormula conj(CtlFormula a, CtlFormula b) { return node(CKind::conj, {std::move(a), std::move(b)}); }
CtlFormula disj(CtlFormula a, CtlFormula b) { return node(CKind::disj, {std::move(a), std::move(b)}); }
CtlFormula implies(CtlFormula a, CtlFormula b) {
  return node(CKind::implies, {std::move(a), std::move(b)});
}
CtlFormula iff(CtlFormula a, CtlFormula b) { return node(CKind::iff, {std::move(a), std::move(b)}); }
CtlFormula ax(CtlFormula a) { return node(CKind::ax, {std::move(a)}); }
CtlFormula ex(CtlFormula a) { return node(CKind::ex, {std::move(a)}); }
CtlFormula af(CtlFormula a) { return node(CKind::af, {std::move(a)}); }
CtlFormula ef(CtlFormula a) { return node(CKind::ef, {std::move(a)}); }
CtlFormula ag(CtlFormula a) { return node(CKind::ag, {std::move(a)}); }
CtlFormula eg(CtlFormula a) { return node(CKind::eg, {std::move(a)}); }
CtlFormula au(CtlFormula a, CtlFormula b) { return node(CKind::au, {std::move(a), std::move(b)}); }
CtlFormula eu(CtlFormula a, CtlFormula b) { return node(CKind::eu, {std::move(a), std::move(b)}); }
CtlFormula ar(CtlFormula a, CtlFormula b) { return node(CKind::ar, {std::move(a), std::move(b)}); }
CtlFormula er(CtlFormula a, CtlFormula b) { return node(CKind::er, {std::move(a), std::move(b)}); }

} // namespace ctl

bool equal(const CtlFormula& a, const CtlFormula& b) {
  if (a.get() == b.get())
    return true;
  if (!a || !b)
    return false;
  if (a->kind != b->kind || a->atom != b->atom || a->kids.size() != b->kids.size())
    return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!equal(a->kids[i], b->kids[i]))
      return false;
  return true;
}

namespace {

class CtlParser {
public:
  explicit CtlParser(std::string_view text) : text_(text) {}

  CtlFormula run() {
    CtlFormula f = parse_iff();
    skip_ws();
    if (pos_ != text_.size())
      fail("unexpected trailing input");
    return f;
  }

private:
  std::string_view text_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::syntax, msg, 1, static_cast<int>(pos_) + 1);
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() != c)
      return false;
    ++pos_;
    return true;
  }
  bool eat_str(std::string_view s) {
    skip_ws();
    if (text_.substr(pos_, s.size()) != s)
      return false;
    pos_ += s.size();
    return true;
  }

  std::string word() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == '^'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  CtlFormula parse_iff() {
    CtlFormula l = parse_impl();
    while (eat_str("<->"))
      l = ctl::iff(std::move(l), parse_impl());
    return l;
  }
  CtlFormula parse_impl() {
    CtlFormula l = parse_or();
    skip_ws();
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return ctl::implies(std::move(l), parse_impl());
    }
    return l;
  }
  CtlFormula parse_or() {
    CtlFormula l = parse_and();
    while (eat('|'))
      l = ctl::disj(std::move(l), parse_and());
    return l;
  }
  CtlFormula parse_and() {
    CtlFormula l = parse_unary();
    while (eat('&'))
      l = ctl::conj(std::move(l), parse_unary());
    return l;
  }

  CtlFormula quantified(bool universal) {
    skip_ws();
    if (!eat('('))
      fail("expected '(' after path quantifier");
    CtlFormula a = parse_iff();
    skip_ws();
    std::string op = word();
    if (op != "U" && op != "R")
      fail("expected 'U' or 'R' inside quantified path formula");
    CtlFormula b = parse_iff();
    if (!eat(')'))
      fail("expected ')'");
    if (op == "U")
      return universal ? ctl::au(std::move(a), std::move(b)) : ctl::eu(std::move(a), std::move(b));
    return universal ? ctl::ar(std::move(a), std::move(b)) : ctl::er(std::move(a), std::move(b));
  }

  CtlFormula parse_unary() {
    char c = peek();
    if (c == '!') {
      ++pos_;
      return ctl::negation(parse_unary());
    }
    if (c == '(') {
      ++pos_;
      CtlFormula f = parse_iff();
      if (!eat(')'))
        fail("expected ')'");
      return f;
    }
    std::string w = word();
    if (w.empty())
      fail("expected a CTL formula");
    if (w == "true")
      return ctl::top();
    if (w == "false")
      return ctl::bottom();
    if (w == "AX")
      return ctl::ax(parse_unary());
    if (w == "EX")
      return ctl::ex(parse_unary());
    if (w == "AF")
      return ctl::af(parse_unary());
    if (w == "EF")
      return ctl::ef(parse_unary());
    if (w == "AG")
      return ctl::ag(parse_unary());
    if (w == "EG")
      return ctl::eg(parse_unary());
    if (w == "A")
      return quantified(true);
    if (w == "E")
      return quantified(false);
    return ctl::atom(std::move(w));
  }
};

int ctl_prec(const CtlNode& n) {
  switch (n.kind) {
  case CKind::konst_true:
  case CKind::konst_false:
  case CKind::atom:
  case CKind::au:
  case CKind::eu:
  case CKind::ar:
  case CKind::er: return 0;
  case CKind::negation:
  case CKind::ax:
  case CKind::ex:
  case CKind::af:
  case CKind::ef:
  case CKind::ag:
  case CKind::eg: return 1;
  case CKind::conj: return 3;
  case CKind::disj: return 4;
  case CKind::implies: return 5;
  case CKind::iff: return 6;
  }
  return 6;
}

void ctl_print_rec(const CtlFormula& f, int ctx, std::string& out) {
  const CtlNode& n = *f;
  int p = ctl_prec(n);
  bool parens = p > ctx;
  if (parens) {
    out += '(';
    ctx = 6;
  }
  auto prefix = [&](const char* op) {
    out += op;
    out += ' ';
    ctl_print_rec(n.kids[0], 1, out);
  };
  auto quant = [&](char q, const char* op) {
    out += q;
    out += '(';
    ctl_print_rec(n.kids[0], 6, out);
    out += op;
    ctl_print_rec(n.kids[1], 6, out);
    out += ')';
  };
  switch (n.kind) {
  case CKind::konst_true: out += "true"; break;
  case CKind::konst_false: out += "false"; break;
  case CKind::atom: out += n.atom; break;
  case CKind::negation:
    out += '!';
    ctl_print_rec(n.kids[0], 1, out);
    break;
  case CKind::conj:
    ctl_print_rec(n.kids[0], 3, out);
    out += " & ";
    ctl_print_rec(n.kids[1], 2, out);
    break;
  case CKind::disj:
    ctl_print_rec(n.kids[0], 4, out);
    out += " | ";
    ctl_print_rec(n.kids[1], 3, out);
    break;
  case CKind::implies:
    ctl_print_rec(n.kids[0], 4, out);
    out += " -> ";
    ctl_print_rec(n.kids[1], 5, out);
    break;
  case CKind::iff:
    ctl_print_rec(n.kids[0], 6, out);
    out += " <-> ";
    ctl_print_rec(n.kids[1], 5, out);
    break;
  case CKind::ax: prefix("AX"); break;
  case CKind::ex: prefix("EX"); break;
  case CKind::af: prefix("AF"); break;
  case CKind::ef: prefix("EF"); break;
  case CKind::ag: prefix("AG"); break;
  case CKind::eg: prefix("EG"); break;
  case CKind::au: quant('A', " U "); break;
  case CKind::eu: quant('E', " U "); break;
  case CKind::ar: quant('A', " R "); break;
  case CKind::er: quant('E', " R "); break;
  }
  if (parens)
    out += ')';
}

} // namespace

CtlFormula parse_ctl(std::string_view text) { return CtlParser(text).run(); }

std::string print_ctl(const CtlFormula& f) {
  std::string out;
  ctl_print_rec(f, 6, out);
  return out;
}

} // namespace sulcheck

#include "grz/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace grz {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const Formula::Node>;

bool valid_identifier(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0])))
    return false;
  for (char c : name.substr(1))
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  static const char* keywords[] = {"true", "false", "penultimate",
                                   "wpenultimate", "contingent"};
  for (const char* kw : keywords)
    if (name == kw) return false;
  return true;
}

} // namespace

Formula Formula::var(std::string_view name) {
  if (!valid_identifier(name))
    throw std::invalid_argument("invalid variable name: " + std::string(name));
  return Formula(std::make_shared<Node>(
      Node{Kind::Var, std::string(name), nullptr, nullptr}));
}

Formula Formula::top() {
  return Formula(std::make_shared<Node>(Node{Kind::Top, "", nullptr, nullptr}));
}

Formula Formula::bottom() {
  return Formula(
      std::make_shared<Node>(Node{Kind::Bottom, "", nullptr, nullptr}));
}

Formula Formula::Not(Formula f) {
  return Formula(
      std::make_shared<Node>(Node{Kind::Not, "", std::move(f.node_), nullptr}));
}

Formula Formula::And(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<Node>(
      Node{Kind::And, "", std::move(lhs.node_), std::move(rhs.node_)}));
}

Formula Formula::Or(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<Node>(
      Node{Kind::Or, "", std::move(lhs.node_), std::move(rhs.node_)}));
}

Formula Formula::Implies(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<Node>(
      Node{Kind::Implies, "", std::move(lhs.node_), std::move(rhs.node_)}));
}

Formula Formula::Iff(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<Node>(
      Node{Kind::Iff, "", std::move(lhs.node_), std::move(rhs.node_)}));
}

Formula Formula::Box(Formula f) {
  return Formula(
      std::make_shared<Node>(Node{Kind::Box, "", std::move(f.node_), nullptr}));
}

Formula Formula::Diamond(Formula f) {
  return Formula(std::make_shared<Node>(
      Node{Kind::Diamond, "", std::move(f.node_), nullptr}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const std::string& Formula::name() const { return node_->name; }

Formula Formula::child() const { return Formula(node_->a); }

Formula Formula::left() const { return Formula(node_->a); }

Formula Formula::right() const { return Formula(node_->b); }

namespace {

bool nodes_equal(const Formula::Node* x, const Formula::Node* y) {
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Formula::Kind::Var: return x->name == y->name;
    case Formula::Kind::Top:
    case Formula::Kind::Bottom: return true;
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: return nodes_equal(x->a.get(), y->a.get());
    default:
      return nodes_equal(x->a.get(), y->a.get()) &&
             nodes_equal(x->b.get(), y->b.get());
  }
}

} // namespace

bool Formula::operator==(const Formula& other) const {
  return nodes_equal(node_.get(), other.node_.get());
}

// --- printer ----------------------------------------------------------------

namespace {

// Precedence level a node exposes; a context demanding at least `min`
// parenthesizes anything weaker.
int level(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: return 5;
    default: return 6;
  }
}

void print_node(const Formula& f, int min_level, std::string& out) {
  if (level(f.kind()) < min_level) {
    out += '(';
    print_node(f, 1, out);
    out += ')';
    return;
  }
  switch (f.kind()) {
    case Formula::Kind::Var: out += f.name(); break;
    case Formula::Kind::Top: out += "true"; break;
    case Formula::Kind::Bottom: out += "false"; break;
    case Formula::Kind::Not:
      out += '~';
      print_node(f.child(), 5, out);
      break;
    case Formula::Kind::Box:
      out += "[]";
      print_node(f.child(), 5, out);
      break;
    case Formula::Kind::Diamond:
      out += "<>";
      print_node(f.child(), 5, out);
      break;
    case Formula::Kind::And:
      print_node(f.left(), 4, out);
      out += " & ";
      print_node(f.right(), 5, out);
      break;
    case Formula::Kind::Or:
      print_node(f.left(), 3, out);
      out += " | ";
      print_node(f.right(), 4, out);
      break;
    case Formula::Kind::Implies:
      print_node(f.left(), 3, out);
      out += " -> ";
      print_node(f.right(), 2, out);
      break;
    case Formula::Kind::Iff:
      print_node(f.left(), 1, out);
      out += " <-> ";
      print_node(f.right(), 2, out);
      break;
  }
}

} // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print_node(f, 1, out);
  return out;
}

// --- parser -----------------------------------------------------------------

namespace {

enum class Tok {
  Ident,
  True,
  False,
  Macro,
  Not,
  Box,
  Diamond,
  And,
  Or,
  Implies,
  Iff,
  LParen,
  RParen,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '~': out.push_back({Tok::Not, "~", start}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", start}); ++i; continue;
      case '|': out.push_back({Tok::Or, "|", start}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case '[':
        if (i + 1 < text.size() && text[i + 1] == ']') {
          out.push_back({Tok::Box, "[]", start});
          i += 2;
          continue;
        }
        throw ParseError("expected \"[]\"", start, {"[]"});
      case '<':
        if (i + 2 < text.size() && text[i + 1] == '-' && text[i + 2] == '>') {
          out.push_back({Tok::Iff, "<->", start});
          i += 3;
          continue;
        }
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Diamond, "<>", start});
          i += 2;
          continue;
        }
        throw ParseError("expected \"<>\" or \"<->\"", start, {"<>", "<->"});
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Implies, "->", start});
          i += 2;
          continue;
        }
        throw ParseError("expected \"->\"", start, {"->"});
      default: break;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) ||
              text[j] == '_'))
        ++j;
      std::string word(text.substr(i, j - i));
      i = j;
      if (word == "true") {
        out.push_back({Tok::True, word, start});
      } else if (word == "false") {
        out.push_back({Tok::False, word, start});
      } else if (word == "penultimate" || word == "wpenultimate" ||
                 word == "contingent") {
        out.push_back({Tok::Macro, word, start});
      } else {
        out.push_back({Tok::Ident, word, start});
      }
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", start,
                     {"formula"});
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula run() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End)
      fail({"&", "|", "->", "<->", "end of input"});
    return f;
  }

private:
  const Token& peek() const { return toks_[pos_]; }

  Token take() { return toks_[pos_++]; }

  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("unexpected " + got, t.offset, std::move(expected));
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept(Tok::Iff)) f = Formula::Iff(f, parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept(Tok::Implies)) return Formula::Implies(f, parse_imp());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::Or)) f = Formula::Or(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::And)) f = Formula::And(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::Not)) return Formula::Not(parse_unary());
    if (accept(Tok::Box)) return Formula::Box(parse_unary());
    if (accept(Tok::Diamond)) return Formula::Diamond(parse_unary());
    return parse_atom();
  }

  Formula parse_atom() {
    switch (peek().kind) {
      case Tok::True: take(); return Formula::top();
      case Tok::False: take(); return Formula::bottom();
      case Tok::Ident: {
        Token t = take();
        if (peek().kind == Tok::LParen)
          throw ParseError("unknown macro name '" + t.text + "'", t.offset,
                           {"penultimate", "wpenultimate", "contingent"});
        return Formula::var(t.text);
      }
      case Tok::Macro: {
        Token t = take();
        if (!accept(Tok::LParen)) fail({"("});
        Formula arg = parse_iff();
        if (!accept(Tok::RParen)) fail({")"});
        if (t.text == "penultimate") return penultimate(arg);
        if (t.text == "wpenultimate") return weak_penultimate(arg);
        return contingent(arg);
      }
      case Tok::LParen: {
        take();
        Formula f = parse_iff();
        if (!accept(Tok::RParen)) fail({")"});
        return f;
      }
      default:
        fail({"identifier", "true", "false", "~", "[]", "<>", "(",
              "penultimate", "wpenultimate", "contingent"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

} // namespace

Formula parse_formula(std::string_view text) {
  return Parser(lex(text)).run();
}

// --- substitution and helpers ------------------------------------------------

Formula substitute(const Formula& f, const Substitution& s) {
  switch (f.kind()) {
    case Formula::Kind::Var: {
      auto it = s.find(f.name());
      return it == s.end() ? f : it->second;
    }
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return f;
    case Formula::Kind::Not: return Formula::Not(substitute(f.child(), s));
    case Formula::Kind::Box: return Formula::Box(substitute(f.child(), s));
    case Formula::Kind::Diamond:
      return Formula::Diamond(substitute(f.child(), s));
    case Formula::Kind::And:
      return Formula::And(substitute(f.left(), s), substitute(f.right(), s));
    case Formula::Kind::Or:
      return Formula::Or(substitute(f.left(), s), substitute(f.right(), s));
    case Formula::Kind::Implies:
      return Formula::Implies(substitute(f.left(), s),
                              substitute(f.right(), s));
    case Formula::Kind::Iff:
      return Formula::Iff(substitute(f.left(), s), substitute(f.right(), s));
  }
  throw std::logic_error("unreachable");
}

namespace {

void collect_vars(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Var: out.insert(f.name()); break;
    case Formula::Kind::Top:
    case Formula::Kind::Bottom: break;
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: collect_vars(f.child(), out); break;
    default:
      collect_vars(f.left(), out);
      collect_vars(f.right(), out);
  }
}

} // namespace

std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> vars;
  collect_vars(f, vars);
  return {vars.begin(), vars.end()};
}

Formula conjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::And(out, fs[i]);
  return out;
}

Formula disjunction(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bottom();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::Or(out, fs[i]);
  return out;
}

Formula penultimate(const Formula& f) {
  return Formula::And(
      Formula::And(f, Formula::Diamond(Formula::Not(f))),
      Formula::Box(
          Formula::Implies(Formula::Not(f), Formula::Box(Formula::Not(f)))));
}

Formula weak_penultimate(const Formula& f) {
  return Formula::And(
      f, Formula::Box(Formula::Implies(Formula::Not(f),
                                       Formula::Box(Formula::Not(f)))));
}

Formula contingent(const Formula& f) {
  return Formula::And(Formula::Diamond(f), Formula::Diamond(Formula::Not(f)));
}

Formula build_macro(Macro m, const Formula& arg) {
  switch (m) {
    case Macro::Penultimate: return penultimate(arg);
    case Macro::WeakPenultimate: return weak_penultimate(arg);
    case Macro::Contingent: return contingent(arg);
  }
  throw std::logic_error("unreachable");
}

int schema_arity(Schema s) {
  switch (s) {
    case Schema::K:
    case Schema::Three: return 2;
    default: return 1;
  }
}

Formula build_axiom(Schema s, const std::vector<Formula>& args) {
  if (static_cast<int>(args.size()) != schema_arity(s))
    throw std::invalid_argument("schema arity mismatch");
  const Formula& p = args[0];
  switch (s) {
    case Schema::K: {
      const Formula& q = args[1];
      return Formula::Implies(
          Formula::Box(Formula::Implies(p, q)),
          Formula::Implies(Formula::Box(p), Formula::Box(q)));
    }
    case Schema::T: return Formula::Implies(Formula::Box(p), p);
    case Schema::Four:
      return Formula::Implies(Formula::Box(p),
                              Formula::Box(Formula::Box(p)));
    case Schema::Two:
      return Formula::Implies(Formula::Diamond(Formula::Box(p)),
                              Formula::Box(Formula::Diamond(p)));
    case Schema::Three: {
      const Formula& q = args[1];
      return Formula::Or(
          Formula::Box(Formula::Implies(Formula::Box(p), q)),
          Formula::Box(Formula::Implies(Formula::Box(q), p)));
    }
    case Schema::Grz:
      return Formula::Implies(
          Formula::Box(Formula::Implies(
              Formula::Box(Formula::Implies(p, Formula::Box(p))), p)),
          p);
    case Schema::GrzStar:
      return Formula::Implies(
          contingent(p),
          Formula::Diamond(
              Formula::Or(penultimate(p), penultimate(Formula::Not(p)))));
    case Schema::Alt1:
      return Formula::Or(Formula::Box(p), Formula::Box(Formula::Not(p)));
    case Schema::GrzDisjunctive:
      return Formula::Or(
          p, Formula::Diamond(Formula::And(
                 Formula::Not(p),
                 Formula::Box(Formula::Implies(p, Formula::Box(p))))));
    case Schema::GrzConcise:
      return Formula::Or(p,
                         Formula::Diamond(weak_penultimate(Formula::Not(p))));
    case Schema::TechnicalLemma: {
      Formula dp_imp_p = Formula::Implies(Formula::Diamond(p), p);
      return Formula::Implies(
          Formula::Box(Formula::Implies(dp_imp_p, Formula::Box(dp_imp_p))),
          Formula::Or(
              Formula::Box(Formula::Implies(p, Formula::Box(p))),
              Formula::Diamond(penultimate(p))));
    }
  }
  throw std::logic_error("unreachable");
}

Formula theta(const std::vector<Formula>& buttons, unsigned pattern) {
  if (buttons.size() < 32 && (pattern >> buttons.size()) != 0)
    throw std::invalid_argument("pattern index out of range");
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < buttons.size(); ++i)
    if (pattern & (1u << i)) parts.push_back(Formula::Box(buttons[i]));
  for (std::size_t i = 0; i < buttons.size(); ++i)
    if (!(pattern & (1u << i)))
      parts.push_back(Formula::Not(Formula::Box(buttons[i])));
  return conjunction(parts);
}

Formula jankov_fine(const Frame& f, int w0) {
  if (w0 < 0 || w0 >= f.size())
    throw std::invalid_argument("designated node out of range");
  std::vector<Formula> vars;
  for (int i = 0; i < f.size(); ++i)
    vars.push_back(Formula::var("w" + std::to_string(i)));

  std::vector<Formula> clauses;
  clauses.push_back(disjunction(vars));
  for (int w = 0; w < f.size(); ++w)
    for (int v = 0; v < f.size(); ++v)
      if (w != v)
        clauses.push_back(Formula::Implies(vars[w], Formula::Not(vars[v])));
  for (int w = 0; w < f.size(); ++w)
    for (int v = 0; v < f.size(); ++v)
      if (f.sees(w, v))
        clauses.push_back(
            Formula::Implies(vars[w], Formula::Diamond(vars[v])));
  for (int w = 0; w < f.size(); ++w)
    for (int v = 0; v < f.size(); ++v)
      if (!f.sees(w, v))
        clauses.push_back(Formula::Implies(
            vars[w], Formula::Not(Formula::Diamond(vars[v]))));
  return Formula::And(vars[w0], Formula::Box(conjunction(clauses)));
}

} // namespace grz

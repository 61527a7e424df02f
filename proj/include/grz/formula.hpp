#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "grz/errors.hpp"
#include "grz/frame.hpp"

namespace grz {

/// Immutable modal formula tree. Handles are cheap to copy and share
/// structure; all construction goes through the static factories.
class Formula {
public:
  enum class Kind {
    Var,
    Top,
    Bottom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Box,
    Diamond,
  };

  static Formula var(std::string_view name);
  static Formula top();
  static Formula bottom();
  static Formula Not(Formula f);
  static Formula And(Formula lhs, Formula rhs);
  static Formula Or(Formula lhs, Formula rhs);
  static Formula Implies(Formula lhs, Formula rhs);
  static Formula Iff(Formula lhs, Formula rhs);
  static Formula Box(Formula f);
  static Formula Diamond(Formula f);

  Kind kind() const;
  const std::string& name() const; // Var only
  Formula child() const;           // Not / Box / Diamond
  Formula left() const;            // binary nodes
  Formula right() const;

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  struct Node;

  const Node* node() const { return node_.get(); }

private:
  explicit Formula(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Grammar (whitespace-insensitive between tokens):
///   formula := iff
///   iff     := imp ("<->" imp)*          left associative
///   imp     := or ("->" imp)?            right associative
///   or      := and ("|" and)*
///   and     := unary ("&" unary)*
///   unary   := "~" unary | "[]" unary | "<>" unary | atom
///   atom    := "true" | "false" | ident | "(" formula ")"
///            | macro "(" formula ")"
///   macro   := "penultimate" | "wpenultimate" | "contingent"
///   ident   := [a-z][a-zA-Z0-9_]*  excluding keywords
/// Macros are expanded while parsing; the tree never contains them.
Formula parse_formula(std::string_view text);

/// Minimal-parenthesis rendering; parsing the result reproduces the tree.
std::string to_string(const Formula& f);

using Substitution = std::map<std::string, Formula>;

/// Simultaneous uniform substitution.
Formula substitute(const Formula& f, const Substitution& s);

/// Distinct variable names, sorted.
std::vector<std::string> variables(const Formula& f);

/// Left-fold conjunction; empty list yields true.
Formula conjunction(const std::vector<Formula>& fs);
/// Left-fold disjunction; empty list yields false.
Formula disjunction(const std::vector<Formula>& fs);

enum class Macro { Penultimate, WeakPenultimate, Contingent };

Formula build_macro(Macro m, const Formula& arg);

/// f holds, possibly fails, and once false stays necessarily false.
Formula penultimate(const Formula& f);
/// f holds and once false stays necessarily false (f may be necessary).
Formula weak_penultimate(const Formula& f);
/// Both f and its negation are possible.
Formula contingent(const Formula& f);

enum class Schema {
  K,             // [](p -> q) -> ([]p -> []q)
  T,             // []p -> p
  Four,          // []p -> [][]p
  Two,           // <>[]p -> []<>p
  Three,         // []([]p -> q) | []([]q -> p)
  Grz,           // []([](p -> []p) -> p) -> p
  GrzStar,       // contingent(p) -> <>(penultimate(p) | penultimate(~p))
  Alt1,          // []p | []~p
  GrzDisjunctive, // p | <>(~p & [](p -> []p))
  GrzConcise,    // p | <> wpenultimate(~p)
  TechnicalLemma,
};

int schema_arity(Schema s);

Formula build_axiom(Schema s, const std::vector<Formula>& args);

/// Theta_A: the exact button pattern given by the index set `pattern`
/// (bit i set = button i pushed): pushed buttons boxed, the rest negated.
Formula theta(const std::vector<Formula>& buttons, unsigned pattern);

/// Single formula pinning the shape of a finite frame: a fresh variable
/// w<i> per node, the designated node's variable, and boxed clauses for
/// coverage, mutual exclusion, and (non-)accessibility of each node pair.
Formula jankov_fine(const Frame& f, int w0);

} // namespace grz

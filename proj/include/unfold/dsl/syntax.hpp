#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "unfold/collections.hpp"
#include "unfold/dsl/lexer.hpp"
#include "unfold/patterns.hpp"
#include "unfold/term.hpp"

namespace unfold::dsl {

enum class Pattern { Folds, Iters, Maps, Filters };

std::string_view pattern_keyword(Pattern p);
std::optional<Pattern> pattern_from_keyword(std::string_view word);

/// Type expressions: variables ('a), constructors applied postfix
/// ('b seq, gt), tuples (gt * vt) and arrows.
struct TypeExpr {
  enum class Kind { Var, Con, Tuple, Arrow };
  Kind kind = Kind::Con;
  std::string name;             // Var / Con
  std::vector<TypeExpr> args;   // Con parameters, Tuple members, Arrow (from, to)

  static TypeExpr var(std::string n) { return {Kind::Var, std::move(n), {}}; }
  static TypeExpr con(std::string n, std::vector<TypeExpr> as = {}) {
    return {Kind::Con, std::move(n), std::move(as)};
  }
  static TypeExpr tuple(std::vector<TypeExpr> ms) { return {Kind::Tuple, "", std::move(ms)}; }
  static TypeExpr arrow(TypeExpr from, TypeExpr to) {
    return {Kind::Arrow, "", {std::move(from), std::move(to)}};
  }

  friend bool operator==(const TypeExpr&, const TypeExpr&) = default;
};

/// Interface-side specification of a higher-order iterator.
struct DeclSpec {
  std::optional<TypeExpr> signature;  // from `val name : type`
  std::string result;                 // r in `r = fold func acc col`
  std::string function;               // fold
  std::vector<std::string> arguments; // func acc col
  Pattern pattern = Pattern::Folds;
  Term permitted;
  Term complete;
  TypeExpr structure;
  TypeExpr elt;
  std::optional<std::string> accumulator;

  /// Header argument that `collection` refers to: the one that is neither
  /// the consumer (first) nor the accumulator.
  std::string collection_argument() const;
  /// Invariant argument order implied by the consumer type in the signature.
  ArgOrder order() const;
  /// Traversal used to produce elements at run time.
  Traversal traversal() const;

  friend bool operator==(const DeclSpec&, const DeclSpec&) = default;
};

/// Call-site specification.
struct CallSpec {
  Pattern pattern = Pattern::Folds;
  Term inv;
  Term collection;
  Term convergence;

  friend bool operator==(const CallSpec&, const CallSpec&) = default;
};

/// How the consumer of a scenario call is given.
struct ConsumerSpec {
  enum class Kind { Builtin, Lambda, Nested };
  Kind kind = Kind::Lambda;
  std::string name;              // builtin name / nested call name
  std::vector<Term> args;        // builtin arguments
  Term lambda;                   // Lambda
  std::vector<Param> params;     // Nested: parameters bound before running

  friend bool operator==(const ConsumerSpec&, const ConsumerSpec&) = default;
};

struct CollectionItem {
  enum class Kind { Term, Graph, Tree, Stack, Queue, Ref, RandomSeq, RandomGraph, RandomTree };
  Kind kind = Kind::Term;
  std::string name;
  Term term;                                       // Term, Ref
  std::vector<long long> vertices;                 // Graph
  std::vector<std::pair<long long, long long>> edges;
  Value tree;                                      // Tree
  std::vector<long long> params;                   // Random*: size, bounds / density
  Location at;
};

struct PredicateItem {
  std::string name;
  std::vector<Param> params;
  Term body;
  Location at;
};

struct DeclItem {
  std::string name;
  DeclSpec spec;
  Location at;
};

struct CallItem {
  std::string name;
  std::string decl;
  CallSpec spec;
  ConsumerSpec consumer;
  std::optional<Term> init;
  std::optional<Term> expect;
  std::optional<Term> result;
  std::optional<Term> ensures;
  Location at;
};

struct Scenario {
  struct Item {
    enum class Kind { Collection, Predicate, Decl, Call };
    Kind kind;
    std::size_t index;  // into the matching vector below
  };
  std::vector<Item> order;
  std::vector<CollectionItem> collections;
  std::vector<PredicateItem> predicates;
  std::vector<DeclItem> decls;
  std::vector<CallItem> calls;

  const DeclItem* find_decl(std::string_view name) const;
  const CallItem* find_call(std::string_view name) const;
  /// Calls never run by another call's consumer.
  std::vector<const CallItem*> top_level_calls() const;
};

}  // namespace unfold::dsl

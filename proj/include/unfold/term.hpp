#pragma once

#include <functional>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unfold/value.hpp"

namespace unfold {

/// Term operators of the first-order specification language.
enum class Op {
  Var,
  Lit,
  // arithmetic
  Add,
  Sub,
  Mul,
  Neg,
  // comparison
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  // logic
  And,
  Or,
  Not,
  Implies,
  If,
  // sequences
  Len,
  Index,
  Prefix,
  Reverse,
  Distinct,
  Filter,
  SeqLit,
  // sets
  SetOf,
  Mem,
  Subset,
  Union,
  Inter,
  Diff,
  SetAdd,
  SetLit,
  // graphs and trees
  Dom,
  Suc,
  AddVertex,
  AddEdge,
  CopyGraph,
  EmptyGraph,
  Flatten,
  Levels,
  // structure
  Tuple,
  LetTuple,
  ForallRange,
  ForallIn,
  Lambda,
  App,
  Sum,
  Deref,
};

/// Lambda / let binder: a single name, or a tuple pattern `(a, b)`.
struct Param {
  std::vector<std::string> names;
  bool tuple = false;

  static Param name(std::string n) { return Param{{std::move(n)}, false}; }
  static Param pattern(std::vector<std::string> ns) {
    return Param{std::move(ns), true};
  }
  friend bool operator==(const Param&, const Param&) = default;
};

struct TermNode;

/// Immutable, shareable handle to a term AST node. `operator==` is
/// structural equality.
class Term {
 public:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}

  bool valid() const { return node_ != nullptr; }
  const TermNode& node() const { return *node_; }
  const TermNode* get() const { return node_.get(); }
  Op op() const;

  friend bool operator==(const Term& a, const Term& b);

 private:
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  Op op = Op::Lit;
  // Var name, bound variable of ForallRange / ForallIn.
  std::string name;
  Value literal;
  // Lambda parameters or LetTuple binder (exactly one).
  std::vector<Param> params;
  std::vector<Term> kids;
  // ForallRange: upper bound is inclusive (`lo <= i <= hi`).
  bool inclusive = false;
};

/// Persistent name → Value environment. Extension is O(1) and never
/// disturbs environments already captured by closures.
class Env {
 public:
  Env() = default;
  Env(std::initializer_list<std::pair<std::string, Value>> bindings);

  Env bind(std::string name, Value v) const;
  const Value* lookup(std::string_view name) const;
  bool contains(std::string_view name) const { return lookup(name) != nullptr; }

 private:
  struct Node {
    std::string name;
    Value value;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

using NativeFunction = std::function<Value(std::span<const Value>)>;

/// A lambda closed over its environment, possibly partially applied. Native
/// closures wrap C++ callables of fixed arity.
struct Closure {
  std::vector<Param> params;
  Term body;
  Env env;
  std::vector<Value> bound;
  // Native closures only.
  NativeFunction native;
  std::size_t native_arity = 0;
  std::string name;
  // Source term the closure was created from, if any (for rendering).
  Term origin;

  std::size_t arity() const {
    return (native ? native_arity : params.size()) - bound.size();
  }
};

Value make_native(std::string name, std::size_t arity, NativeFunction fn);

/// Evaluates `t` under `env`. Deterministic and terminating: every
/// quantifier ranges over a finite, explicit domain.
Value eval(const Term& t, const Env& env);

/// Applies a closure. With fewer arguments than its remaining arity, returns
/// a new closure holding the supplied arguments.
Value apply_lambda(const Value& f, std::span<const Value> args);
Value apply_lambda(const Value& f, std::initializer_list<Value> args);

/// Σ_{i=lo}^{hi-1} f(i); 0 for an empty range.
Integer sum_range(const std::function<Integer(const Integer&)>& f,
                  const Integer& lo, const Integer& hi);

/// Names occurring free in `t`.
std::set<std::string> free_variables(const Term& t);

/// Programmatic term construction.
namespace term {

Term var(std::string name);
Term lit(Value v);
Term integer(long long i);
Term boolean(bool b);
Term unit();

Term add(Term a, Term b);
Term sub(Term a, Term b);
Term mul(Term a, Term b);
Term neg(Term a);

Term eq(Term a, Term b);
Term ne(Term a, Term b);
Term lt(Term a, Term b);
Term le(Term a, Term b);
Term gt(Term a, Term b);
Term ge(Term a, Term b);

Term conj(Term a, Term b);
Term disj(Term a, Term b);
Term negate(Term a);
Term implies(Term a, Term b);
Term if_then_else(Term c, Term t, Term e);

Term len(Term s);
Term index(Term s, Term i);
Term prefix(Term s, Term k);
Term reverse(Term s);
Term distinct(Term s);
Term filter(Term pred, Term s);
Term seq_lit(std::vector<Term> items);

Term set_of(Term s);
Term mem(Term x, Term s);
Term subset(Term a, Term b);
Term set_union(Term a, Term b);
Term set_inter(Term a, Term b);
Term set_diff(Term a, Term b);
Term set_add(Term x, Term s);
Term set_lit(std::vector<Term> items);
Term empty_set();

Term dom(Term g);
Term suc(Term g, Term v);
Term add_vertex(Term g, Term v);
Term add_edge(Term g, Term from, Term to);
Term copy_graph(Term g);
Term empty_graph();
Term flatten(Term t);
Term levels(Term t);

Term tuple(std::vector<Term> items);
Term let_tuple(std::vector<std::string> names, Term bound, Term body);
/// ∀name ∈ [lo, hi). Body is the consequent only.
Term forall_range(std::string name, Term lo, Term hi, Term body,
                  bool inclusive = false);
/// ∀name ∈ set (a Set, or a Seq read as the set of its elements).
Term forall_in(std::string name, Term domain, Term body);
Term lambda(std::vector<Param> params, Term body);
Term lambda(std::initializer_list<std::string_view> params, Term body);
Term apply(Term f, std::vector<Term> args);
Term sum(Term f, Term lo, Term hi);
Term deref(Term r);

// Opt-in operator sugar: `using namespace unfold::term;`.
inline Term operator+(Term a, Term b) { return add(std::move(a), std::move(b)); }
inline Term operator-(Term a, Term b) { return sub(std::move(a), std::move(b)); }
inline Term operator*(Term a, Term b) { return mul(std::move(a), std::move(b)); }
inline Term operator&&(Term a, Term b) { return conj(std::move(a), std::move(b)); }
inline Term operator||(Term a, Term b) { return disj(std::move(a), std::move(b)); }
inline Term operator!(Term a) { return negate(std::move(a)); }
inline Term operator<(Term a, Term b) { return lt(std::move(a), std::move(b)); }
inline Term operator<=(Term a, Term b) { return le(std::move(a), std::move(b)); }
inline Term operator>(Term a, Term b) { return gt(std::move(a), std::move(b)); }
inline Term operator>=(Term a, Term b) { return ge(std::move(a), std::move(b)); }

}  // namespace term

}  // namespace unfold

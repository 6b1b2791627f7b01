#include "unfold/term.hpp"

#include <algorithm>

#include "unfold/graph_model.hpp"
#include "unfold/tree.hpp"

namespace unfold {

using EK = EvaluationError::Kind;
using VK = Value::Kind;

// ---------------------------------------------------------------------------
// Term, Env

Op Term::op() const { return node_->op; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  return x.op == y.op && x.name == y.name && x.literal == y.literal &&
         x.params == y.params && x.inclusive == y.inclusive && x.kids == y.kids;
}

Env::Env(std::initializer_list<std::pair<std::string, Value>> bindings) {
  for (const auto& [n, v] : bindings) *this = bind(n, v);
}

Env Env::bind(std::string name, Value v) const {
  Env e;
  e.head_ = std::make_shared<const Node>(Node{std::move(name), std::move(v), head_});
  return e;
}

const Value* Env::lookup(std::string_view name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->name == name) return &n->value;
  return nullptr;
}

Value make_native(std::string name, std::size_t arity, NativeFunction fn) {
  auto c = std::make_shared<Closure>();
  c->native = std::move(fn);
  c->native_arity = arity;
  c->name = std::move(name);
  return Value::closure(std::move(c));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void type_error(const std::string& what) {
  throw EvaluationError(EK::TypeMismatch, what);
}

const Integer& want_int(const Value& v, std::string_view ctx) {
  if (!v.is(VK::Int))
    type_error(std::string(ctx) + ": expected int, got " + v.to_string());
  return v.as_int();
}

bool want_bool(const Value& v, std::string_view ctx) {
  if (!v.is(VK::Bool))
    type_error(std::string(ctx) + ": expected bool, got " + v.to_string());
  return v.as_bool();
}

std::vector<Value> want_seq(const Value& v, std::string_view ctx) {
  if (!v.is_sequence_like())
    type_error(std::string(ctx) + ": expected sequence, got " + v.to_string());
  return v.sequence_view();
}

std::size_t want_index(const Integer& i, std::size_t size, std::string_view ctx) {
  if (i < 0 || i >= size)
    throw EvaluationError(EK::IndexOutOfRange,
                          std::string(ctx) + ": index " + i.str() +
                              " out of range for length " + std::to_string(size));
  return static_cast<std::size_t>(i);
}

bool is_set_or_seq(const Value& v) {
  return v.is(VK::Set) || v.is_sequence_like();
}

/// Equality with the coercions the specification notation relies on: a
/// sequence compared with a set is read as the set of its elements, and a
/// stack/queue compared with a sequence is read through its contents view.
bool spec_equal(const Value& a, const Value& b) {
  if (a.is(VK::Set) && is_set_or_seq(b)) return a == set_of(b);
  if (b.is(VK::Set) && is_set_or_seq(a)) return set_of(a) == b;
  if (a.is_sequence_like() && b.is_sequence_like() && a.kind() != b.kind())
    return a.sequence_view() == b.sequence_view();
  return a == b;
}

bool binds_pattern(const Param& p, const Value& v, Env& env) {
  if (!p.tuple) {
    env = env.bind(p.names.front(), v);
    return true;
  }
  if (!v.is(VK::Tuple) || v.items().size() != p.names.size())
    type_error("tuple pattern of arity " + std::to_string(p.names.size()) +
               " does not match " + v.to_string());
  auto items = v.items();
  for (std::size_t i = 0; i < items.size(); ++i)
    env = env.bind(p.names[i], items[i]);
  return true;
}

Value eval_node(const TermNode& n, const Env& env);

Value ev(const Term& t, const Env& env) { return eval_node(t.node(), env); }

Value arith(const TermNode& n, const Env& env) {
  const Integer a = want_int(ev(n.kids[0], env), "arithmetic");
  const Integer b = want_int(ev(n.kids[1], env), "arithmetic");
  switch (n.op) {
    case Op::Add: return Value::integer(a + b);
    case Op::Sub: return Value::integer(a - b);
    default: return Value::integer(a * b);
  }
}

Value order_cmp(const TermNode& n, const Env& env) {
  const Value a = ev(n.kids[0], env);
  const Value b = ev(n.kids[1], env);
  if (a.kind() != b.kind() || (!a.is(VK::Int) && !a.is(VK::Bool)))
    type_error("comparison of " + a.to_string() + " and " + b.to_string());
  const auto c = a <=> b;
  switch (n.op) {
    case Op::Lt: return Value::boolean(c < 0);
    case Op::Le: return Value::boolean(c <= 0);
    case Op::Gt: return Value::boolean(c > 0);
    default: return Value::boolean(c >= 0);
  }
}

Value forall_range(const TermNode& n, const Env& env) {
  const Integer lo = want_int(ev(n.kids[0], env), "forall lower bound");
  Integer hi = want_int(ev(n.kids[1], env), "forall upper bound");
  if (n.inclusive) hi += 1;
  for (Integer i = lo; i < hi; ++i) {
    if (!want_bool(ev(n.kids[2], env.bind(n.name, Value::integer(i))), "forall"))
      return Value::boolean(false);
  }
  return Value::boolean(true);
}

Value forall_in(const TermNode& n, const Env& env) {
  const Value domain = ev(n.kids[0], env);
  if (!is_set_or_seq(domain))
    type_error("forall domain must be a finite set, got " + domain.to_string());
  const Value s = set_of(domain);
  for (const auto& x : s.items()) {
    if (!want_bool(ev(n.kids[1], env.bind(n.name, x)), "forall"))
      return Value::boolean(false);
  }
  return Value::boolean(true);
}

Value make_closure(const TermNode& n, const Env& env, const Term& self) {
  auto c = std::make_shared<Closure>();
  c->params = n.params;
  c->body = n.kids[0];
  c->env = env;
  c->origin = self;
  return Value::closure(std::move(c));
}

Value eval_node(const TermNode& n, const Env& env) {
  switch (n.op) {
    case Op::Var: {
      if (const Value* v = env.lookup(n.name)) return *v;
      throw EvaluationError(EK::UnboundVariable, "unbound variable '" + n.name + "'");
    }
    case Op::Lit:
      return n.literal;

    case Op::Add:
    case Op::Sub:
    case Op::Mul:
      return arith(n, env);
    case Op::Neg:
      return Value::integer(-want_int(ev(n.kids[0], env), "negation"));

    case Op::Eq:
      return Value::boolean(spec_equal(ev(n.kids[0], env), ev(n.kids[1], env)));
    case Op::Ne:
      return Value::boolean(!spec_equal(ev(n.kids[0], env), ev(n.kids[1], env)));
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge:
      return order_cmp(n, env);

    case Op::And:
      return Value::boolean(want_bool(ev(n.kids[0], env), "/\\") &&
                            want_bool(ev(n.kids[1], env), "/\\"));
    case Op::Or:
      return Value::boolean(want_bool(ev(n.kids[0], env), "\\/") ||
                            want_bool(ev(n.kids[1], env), "\\/"));
    case Op::Not:
      return Value::boolean(!want_bool(ev(n.kids[0], env), "not"));
    case Op::Implies:
      return Value::boolean(!want_bool(ev(n.kids[0], env), "->") ||
                            want_bool(ev(n.kids[1], env), "->"));
    case Op::If:
      return want_bool(ev(n.kids[0], env), "if") ? ev(n.kids[1], env)
                                                  : ev(n.kids[2], env);

    case Op::Len: {
      const Value v = ev(n.kids[0], env);
      switch (v.kind()) {
        case VK::Seq:
        case VK::Set:
        case VK::Tuple:
          return Value::integer(static_cast<long long>(v.items().size()));
        case VK::Stack:
          return Value::integer(static_cast<long long>(v.as_stack().items.size()));
        case VK::Queue:
          return Value::integer(static_cast<long long>(v.as_queue().items.size()));
        default:
          type_error("len of " + v.to_string());
      }
    }
    case Op::Index: {
      const Value v = ev(n.kids[0], env);
      const Integer i = want_int(ev(n.kids[1], env), "index");
      if (v.is(VK::Seq)) {
        const auto s = v.items();
        return s[want_index(i, s.size(), "index")];
      }
      const auto s = want_seq(v, "index");
      return s[want_index(i, s.size(), "index")];
    }
    case Op::Prefix: {
      auto s = want_seq(ev(n.kids[0], env), "prefix");
      const Integer k = want_int(ev(n.kids[1], env), "prefix");
      if (k < 0)
        throw EvaluationError(EK::NegativeSliceBound,
                              "prefix: negative bound " + k.str());
      if (k > s.size())
        throw EvaluationError(EK::IndexOutOfRange,
                              "prefix: bound " + k.str() + " exceeds length " +
                                  std::to_string(s.size()));
      s.resize(static_cast<std::size_t>(k));
      return Value::seq(std::move(s));
    }
    case Op::Reverse: {
      auto s = want_seq(ev(n.kids[0], env), "reverse");
      std::reverse(s.begin(), s.end());
      return Value::seq(std::move(s));
    }
    case Op::Distinct: {
      const Value v = ev(n.kids[0], env);
      const auto s = want_seq(v, "distinct");
      return Value::boolean(set_of(v).items().size() == s.size());
    }
    case Op::Filter: {
      const Value f = ev(n.kids[0], env);
      std::vector<Value> out;
      for (const auto& x : want_seq(ev(n.kids[1], env), "filter"))
        if (want_bool(apply_lambda(f, {x}), "filter predicate")) out.push_back(x);
      return Value::seq(std::move(out));
    }
    case Op::SeqLit:
    case Op::SetLit:
    case Op::Tuple: {
      std::vector<Value> items;
      items.reserve(n.kids.size());
      for (const auto& k : n.kids) items.push_back(ev(k, env));
      if (n.op == Op::SeqLit) return Value::seq(std::move(items));
      if (n.op == Op::SetLit) return Value::set(std::move(items));
      return Value::tuple(std::move(items));
    }

    case Op::SetOf:
      return set_of(ev(n.kids[0], env));
    case Op::Mem: {
      const Value x = ev(n.kids[0], env);
      const Value s = ev(n.kids[1], env);
      if (s.is(VK::Set)) return Value::boolean(s.set_contains(x));
      if (s.is(VK::Seq)) {
        const auto items = s.items();
        return Value::boolean(std::find(items.begin(), items.end(), x) != items.end());
      }
      const auto items = want_seq(s, "mem");
      return Value::boolean(std::find(items.begin(), items.end(), x) != items.end());
    }
    case Op::Subset:
      return Value::boolean(set_subset(ev(n.kids[0], env), ev(n.kids[1], env)));
    case Op::Union:
      return set_union(ev(n.kids[0], env), ev(n.kids[1], env));
    case Op::Inter:
      return set_inter(ev(n.kids[0], env), ev(n.kids[1], env));
    case Op::Diff:
      return set_diff(ev(n.kids[0], env), ev(n.kids[1], env));
    case Op::SetAdd:
      return set_insert(ev(n.kids[1], env), ev(n.kids[0], env));

    case Op::Dom: {
      const Value g = ev(n.kids[0], env);
      if (!g.is(VK::Graph)) type_error(".dom of " + g.to_string());
      return g.as_graph().dom();
    }
    case Op::Suc: {
      const Value g = ev(n.kids[0], env);
      if (!g.is(VK::Graph)) type_error(".suc of " + g.to_string());
      return g.as_graph().suc(ev(n.kids[1], env));
    }
    case Op::AddVertex: {
      const Value g = ev(n.kids[0], env);
      if (!g.is(VK::Graph)) type_error("add_vertex on " + g.to_string());
      return Value::graph(g.as_graph().with_vertex(ev(n.kids[1], env)));
    }
    case Op::AddEdge: {
      const Value g = ev(n.kids[0], env);
      if (!g.is(VK::Graph)) type_error("add_edge on " + g.to_string());
      try {
        return Value::graph(
            g.as_graph().with_edge(ev(n.kids[1], env), ev(n.kids[2], env)));
      } catch (const PreconditionError& e) {
        throw EvaluationError(EK::Precondition, e.what());
      }
    }
    case Op::CopyGraph: {
      const Value g = ev(n.kids[0], env);
      if (!g.is(VK::Graph)) type_error("copy of " + g.to_string());
      return g;
    }
    case Op::EmptyGraph:
      return Value::graph(GraphModel{});
    case Op::Flatten: {
      const Value t = ev(n.kids[0], env);
      if (!t.is(VK::Tree)) type_error("flatten of " + t.to_string());
      return Value::seq(flatten(BinaryTree::from_value(t)));
    }
    case Op::Levels: {
      const Value t = ev(n.kids[0], env);
      if (!t.is(VK::Tree)) type_error("levels of " + t.to_string());
      std::vector<Value> out;
      for (auto& level : levels(BinaryTree::from_value(t)))
        out.push_back(Value::seq(std::move(level)));
      return Value::seq(std::move(out));
    }

    case Op::LetTuple: {
      Env inner = env;
      binds_pattern(n.params.front(), ev(n.kids[0], env), inner);
      return ev(n.kids[1], inner);
    }
    case Op::ForallRange:
      return forall_range(n, env);
    case Op::ForallIn:
      return forall_in(n, env);
    case Op::Lambda:
      return make_closure(n, env, Term());
    case Op::App: {
      const Value f = ev(n.kids[0], env);
      std::vector<Value> args;
      args.reserve(n.kids.size() - 1);
      for (std::size_t i = 1; i < n.kids.size(); ++i) args.push_back(ev(n.kids[i], env));
      return apply_lambda(f, args);
    }
    case Op::Sum: {
      const Value f = ev(n.kids[0], env);
      const Integer lo = want_int(ev(n.kids[1], env), "sum lower bound");
      const Integer hi = want_int(ev(n.kids[2], env), "sum upper bound");
      return Value::integer(sum_range(
          [&](const Integer& i) {
            return want_int(apply_lambda(f, {Value::integer(i)}), "sum body");
          },
          lo, hi));
    }
    case Op::Deref: {
      const Value r = ev(n.kids[0], env);
      if (!r.is(VK::Ref)) type_error("! applied to " + r.to_string());
      return r.as_ref().value;
    }
  }
  type_error("unknown term");
}

void collect_free(const Term& t, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  const TermNode& n = t.node();
  auto with_bound = [&](const std::vector<std::string>& names, const Term& body) {
    std::vector<std::string> added;
    for (const auto& nm : names)
      if (bound.insert(nm).second) added.push_back(nm);
    collect_free(body, bound, out);
    for (const auto& nm : added) bound.erase(nm);
  };
  switch (n.op) {
    case Op::Var:
      if (!bound.count(n.name)) out.insert(n.name);
      return;
    case Op::Lit:
      return;
    case Op::ForallRange:
      collect_free(n.kids[0], bound, out);
      collect_free(n.kids[1], bound, out);
      with_bound({n.name}, n.kids[2]);
      return;
    case Op::ForallIn:
      collect_free(n.kids[0], bound, out);
      with_bound({n.name}, n.kids[1]);
      return;
    case Op::LetTuple:
      collect_free(n.kids[0], bound, out);
      with_bound(n.params.front().names, n.kids[1]);
      return;
    case Op::Lambda: {
      std::vector<std::string> names;
      for (const auto& p : n.params) names.insert(names.end(), p.names.begin(), p.names.end());
      with_bound(names, n.kids[0]);
      return;
    }
    default:
      for (const auto& k : n.kids) collect_free(k, bound, out);
  }
}

}  // namespace

Value eval(const Term& t, const Env& env) {
  if (!t.valid()) type_error("evaluating an empty term");
  if (t.op() == Op::Lambda) return make_closure(t.node(), env, t);
  return ev(t, env);
}

Value apply_lambda(const Value& f, std::span<const Value> args) {
  if (!f.is(VK::Closure)) type_error("applying non-function " + f.to_string());
  const Closure& c = f.as_closure();
  const std::size_t remaining = c.arity();
  if (args.size() < remaining) {
    auto partial = std::make_shared<Closure>(c);
    partial->bound.insert(partial->bound.end(), args.begin(), args.end());
    return Value::closure(std::move(partial));
  }
  std::vector<Value> all = c.bound;
  all.insert(all.end(), args.begin(), args.begin() + remaining);

  Value result;
  if (c.native) {
    result = c.native(all);
  } else {
    Env env = c.env;
    for (std::size_t i = 0; i < c.params.size(); ++i) binds_pattern(c.params[i], all[i], env);
    result = ev(c.body, env);
  }
  if (args.size() == remaining) return result;
  if (!result.is(VK::Closure))
    throw EvaluationError(EK::ArityExceeded,
                          "function of arity " + std::to_string(remaining) +
                              " applied to " + std::to_string(args.size()) +
                              " arguments");
  return apply_lambda(result, args.subspan(remaining));
}

Value apply_lambda(const Value& f, std::initializer_list<Value> args) {
  return apply_lambda(f, std::span<const Value>(args.begin(), args.size()));
}

Integer sum_range(const std::function<Integer(const Integer&)>& f,
                  const Integer& lo, const Integer& hi) {
  Integer total = 0;
  for (Integer i = lo; i < hi; ++i) total += f(i);
  return total;
}

std::set<std::string> free_variables(const Term& t) {
  std::set<std::string> bound, out;
  collect_free(t, bound, out);
  return out;
}

// ---------------------------------------------------------------------------
// Builders

namespace term {

namespace {

Term node(Op op, std::vector<Term> kids) {
  auto n = std::make_shared<TermNode>();
  n->op = op;
  n->kids = std::move(kids);
  return Term(std::move(n));
}

}  // namespace

Term var(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::Var;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term lit(Value v) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::Lit;
  n->literal = std::move(v);
  return Term(std::move(n));
}

Term integer(long long i) { return lit(Value::integer(i)); }
Term boolean(bool b) { return lit(Value::boolean(b)); }
Term unit() { return lit(Value::unit()); }

Term add(Term a, Term b) { return node(Op::Add, {std::move(a), std::move(b)}); }
Term sub(Term a, Term b) { return node(Op::Sub, {std::move(a), std::move(b)}); }
Term mul(Term a, Term b) { return node(Op::Mul, {std::move(a), std::move(b)}); }
Term neg(Term a) { return node(Op::Neg, {std::move(a)}); }

Term eq(Term a, Term b) { return node(Op::Eq, {std::move(a), std::move(b)}); }
Term ne(Term a, Term b) { return node(Op::Ne, {std::move(a), std::move(b)}); }
Term lt(Term a, Term b) { return node(Op::Lt, {std::move(a), std::move(b)}); }
Term le(Term a, Term b) { return node(Op::Le, {std::move(a), std::move(b)}); }
Term gt(Term a, Term b) { return node(Op::Gt, {std::move(a), std::move(b)}); }
Term ge(Term a, Term b) { return node(Op::Ge, {std::move(a), std::move(b)}); }

Term conj(Term a, Term b) { return node(Op::And, {std::move(a), std::move(b)}); }
Term disj(Term a, Term b) { return node(Op::Or, {std::move(a), std::move(b)}); }
Term negate(Term a) { return node(Op::Not, {std::move(a)}); }
Term implies(Term a, Term b) { return node(Op::Implies, {std::move(a), std::move(b)}); }
Term if_then_else(Term c, Term t, Term e) {
  return node(Op::If, {std::move(c), std::move(t), std::move(e)});
}

Term len(Term s) { return node(Op::Len, {std::move(s)}); }
Term index(Term s, Term i) { return node(Op::Index, {std::move(s), std::move(i)}); }
Term prefix(Term s, Term k) { return node(Op::Prefix, {std::move(s), std::move(k)}); }
Term reverse(Term s) { return node(Op::Reverse, {std::move(s)}); }
Term distinct(Term s) { return node(Op::Distinct, {std::move(s)}); }
Term filter(Term pred, Term s) { return node(Op::Filter, {std::move(pred), std::move(s)}); }
Term seq_lit(std::vector<Term> items) { return node(Op::SeqLit, std::move(items)); }

Term set_of(Term s) { return node(Op::SetOf, {std::move(s)}); }
Term mem(Term x, Term s) { return node(Op::Mem, {std::move(x), std::move(s)}); }
Term subset(Term a, Term b) { return node(Op::Subset, {std::move(a), std::move(b)}); }
Term set_union(Term a, Term b) { return node(Op::Union, {std::move(a), std::move(b)}); }
Term set_inter(Term a, Term b) { return node(Op::Inter, {std::move(a), std::move(b)}); }
Term set_diff(Term a, Term b) { return node(Op::Diff, {std::move(a), std::move(b)}); }
Term set_add(Term x, Term s) { return node(Op::SetAdd, {std::move(x), std::move(s)}); }
Term set_lit(std::vector<Term> items) { return node(Op::SetLit, std::move(items)); }
Term empty_set() { return set_lit({}); }

Term dom(Term g) { return node(Op::Dom, {std::move(g)}); }
Term suc(Term g, Term v) { return node(Op::Suc, {std::move(g), std::move(v)}); }
Term add_vertex(Term g, Term v) { return node(Op::AddVertex, {std::move(g), std::move(v)}); }
Term add_edge(Term g, Term from, Term to) {
  return node(Op::AddEdge, {std::move(g), std::move(from), std::move(to)});
}
Term copy_graph(Term g) { return node(Op::CopyGraph, {std::move(g)}); }
Term empty_graph() { return node(Op::EmptyGraph, {}); }
Term flatten(Term t) { return node(Op::Flatten, {std::move(t)}); }
Term levels(Term t) { return node(Op::Levels, {std::move(t)}); }

Term tuple(std::vector<Term> items) { return node(Op::Tuple, std::move(items)); }

Term let_tuple(std::vector<std::string> names, Term bound, Term body) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::LetTuple;
  n->params = {Param::pattern(std::move(names))};
  n->kids = {std::move(bound), std::move(body)};
  return Term(std::move(n));
}

Term forall_range(std::string name, Term lo, Term hi, Term body, bool inclusive) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::ForallRange;
  n->name = std::move(name);
  n->inclusive = inclusive;
  n->kids = {std::move(lo), std::move(hi), std::move(body)};
  return Term(std::move(n));
}

Term forall_in(std::string name, Term domain, Term body) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::ForallIn;
  n->name = std::move(name);
  n->kids = {std::move(domain), std::move(body)};
  return Term(std::move(n));
}

Term lambda(std::vector<Param> params, Term body) {
  auto n = std::make_shared<TermNode>();
  n->op = Op::Lambda;
  n->params = std::move(params);
  n->kids = {std::move(body)};
  return Term(std::move(n));
}

Term lambda(std::initializer_list<std::string_view> params, Term body) {
  std::vector<Param> ps;
  for (auto p : params) ps.push_back(Param::name(std::string(p)));
  return lambda(std::move(ps), std::move(body));
}

Term apply(Term f, std::vector<Term> args) {
  std::vector<Term> kids;
  kids.reserve(args.size() + 1);
  kids.push_back(std::move(f));
  for (auto& a : args) kids.push_back(std::move(a));
  return node(Op::App, std::move(kids));
}

Term sum(Term f, Term lo, Term hi) {
  return node(Op::Sum, {std::move(f), std::move(lo), std::move(hi)});
}

Term deref(Term r) { return node(Op::Deref, {std::move(r)}); }

}  // namespace term

}  // namespace unfold

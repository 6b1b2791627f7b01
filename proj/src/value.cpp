#include "unfold/value.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "unfold/graph_model.hpp"
#include "unfold/term.hpp"
#include "unfold/tree.hpp"

namespace unfold {

namespace {

[[noreturn]] void mismatch(std::string_view want, const Value& got) {
  throw EvaluationError(EvaluationError::Kind::TypeMismatch,
                        "expected " + std::string(want) + ", got " +
                            std::string(kind_name(got.kind())) + " " +
                            got.to_string());
}

std::strong_ordering compare_items(std::span<const Value> a,
                                   std::span<const Value> b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

std::strong_ordering compare_trees(const std::shared_ptr<const TreeNode>& a,
                                   const std::shared_ptr<const TreeNode>& b) {
  if (a == b) return std::strong_ordering::equal;
  if (!a) return std::strong_ordering::less;
  if (!b) return std::strong_ordering::greater;
  if (auto c = compare_trees(a->left, b->left); c != 0) return c;
  if (auto c = a->value <=> b->value; c != 0) return c;
  return compare_trees(a->right, b->right);
}

void print_tree(std::ostream& os, const std::shared_ptr<const TreeNode>& n) {
  if (!n) {
    os << "leaf";
    return;
  }
  os << "(node ";
  print_tree(os, n->left);
  os << ' ' << n->value << ' ';
  print_tree(os, n->right);
  os << ')';
}

void print_items(std::ostream& os, std::span<const Value> items,
                 std::string_view open, std::string_view close) {
  os << open;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ", ";
    os << items[i];
  }
  os << close;
}

}  // namespace

Value Value::boolean(bool b) { return Value(Kind::Bool, b); }

Value Value::integer(Integer i) { return Value(Kind::Int, std::move(i)); }

Value Value::tuple(std::vector<Value> items) {
  return Value(Kind::Tuple,
               std::make_shared<const std::vector<Value>>(std::move(items)));
}

Value Value::seq(std::vector<Value> items) {
  return Value(Kind::Seq,
               std::make_shared<const std::vector<Value>>(std::move(items)));
}

Value Value::set(std::vector<Value> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return set_from_sorted(std::move(items));
}

Value Value::set_from_sorted(std::vector<Value> items) {
  return Value(Kind::Set,
               std::make_shared<const std::vector<Value>>(std::move(items)));
}

Value Value::graph(GraphModel g) {
  return graph(std::make_shared<const GraphModel>(std::move(g)));
}

Value Value::graph(std::shared_ptr<const GraphModel> g) {
  return Value(Kind::Graph, std::move(g));
}

Value Value::tree(std::shared_ptr<const TreeNode> root) {
  return Value(Kind::Tree, std::move(root));
}

Value Value::ref(Value initial) {
  return Value(Kind::Ref, std::make_shared<RefCell>(RefCell{std::move(initial)}));
}

Value Value::stack() { return Value(Kind::Stack, std::make_shared<StackBox>()); }

Value Value::queue() { return Value(Kind::Queue, std::make_shared<QueueBox>()); }

Value Value::closure(std::shared_ptr<const Closure> c) {
  return Value(Kind::Closure, std::move(c));
}

bool Value::as_bool() const {
  if (kind_ != Kind::Bool) mismatch("bool", *this);
  return std::get<bool>(payload_);
}

const Integer& Value::as_int() const {
  if (kind_ != Kind::Int) mismatch("int", *this);
  return std::get<Integer>(payload_);
}

std::span<const Value> Value::items() const {
  if (kind_ != Kind::Tuple && kind_ != Kind::Seq && kind_ != Kind::Set)
    mismatch("tuple, seq or set", *this);
  return *std::get<Items>(payload_);
}

const GraphModel& Value::as_graph() const { return *graph_ptr(); }

const std::shared_ptr<const GraphModel>& Value::graph_ptr() const {
  if (kind_ != Kind::Graph) mismatch("graph", *this);
  return std::get<std::shared_ptr<const GraphModel>>(payload_);
}

const std::shared_ptr<const TreeNode>& Value::as_tree() const {
  if (kind_ != Kind::Tree) mismatch("tree", *this);
  return std::get<std::shared_ptr<const TreeNode>>(payload_);
}

const Closure& Value::as_closure() const { return *closure_ptr(); }

const std::shared_ptr<const Closure>& Value::closure_ptr() const {
  if (kind_ != Kind::Closure) mismatch("function", *this);
  return std::get<std::shared_ptr<const Closure>>(payload_);
}

RefCell& Value::as_ref() const {
  if (kind_ != Kind::Ref) mismatch("ref", *this);
  return *std::get<std::shared_ptr<RefCell>>(payload_);
}

StackBox& Value::as_stack() const {
  if (kind_ != Kind::Stack) mismatch("stack", *this);
  return *std::get<std::shared_ptr<StackBox>>(payload_);
}

QueueBox& Value::as_queue() const {
  if (kind_ != Kind::Queue) mismatch("queue", *this);
  return *std::get<std::shared_ptr<QueueBox>>(payload_);
}

std::vector<Value> Value::sequence_view() const {
  switch (kind_) {
    case Kind::Seq: {
      auto s = items();
      return {s.begin(), s.end()};
    }
    case Kind::Stack: {
      const auto& v = as_stack().items;
      return {v.rbegin(), v.rend()};
    }
    case Kind::Queue:
      return as_queue().items;
    default:
      mismatch("sequence", *this);
  }
}

bool Value::set_contains(const Value& v) const {
  if (kind_ != Kind::Set) mismatch("set", *this);
  auto s = items();
  return std::binary_search(s.begin(), s.end(), v);
}

std::string Value::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

bool operator==(const Value& a, const Value& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  using K = Value::Kind;
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  switch (a.kind_) {
    case K::Unit:
      return std::strong_ordering::equal;
    case K::Bool:
      return std::get<bool>(a.payload_) <=> std::get<bool>(b.payload_);
    case K::Int: {
      const auto& x = std::get<Integer>(a.payload_);
      const auto& y = std::get<Integer>(b.payload_);
      if (x < y) return std::strong_ordering::less;
      if (y < x) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    case K::Tuple:
    case K::Seq:
    case K::Set:
      return compare_items(a.items(), b.items());
    case K::Graph:
      return a.as_graph() <=> b.as_graph();
    case K::Tree:
      return compare_trees(a.as_tree(), b.as_tree());
    case K::Ref:
      return a.as_ref().value <=> b.as_ref().value;
    case K::Stack:
    case K::Queue: {
      auto x = a.sequence_view();
      auto y = b.sequence_view();
      return compare_items(x, y);
    }
    case K::Closure: {
      const auto* x = a.closure_ptr().get();
      const auto* y = b.closure_ptr().get();
      return std::compare_three_way{}(x, y);
    }
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Value& v) {
  using K = Value::Kind;
  switch (v.kind()) {
    case K::Unit:
      return os << "()";
    case K::Bool:
      return os << (v.as_bool() ? "true" : "false");
    case K::Int:
      return os << v.as_int();
    case K::Tuple:
      print_items(os, v.items(), "(", ")");
      return os;
    case K::Seq:
      print_items(os, v.items(), "[", "]");
      return os;
    case K::Set:
      print_items(os, v.items(), "{", "}");
      return os;
    case K::Graph:
      return os << "graph { " << v.as_graph().to_text() << " }";
    case K::Tree:
      print_tree(os, v.as_tree());
      return os;
    case K::Ref:
      return os << "ref " << v.as_ref().value;
    case K::Stack: {
      os << "stack ";
      auto view = v.sequence_view();
      print_items(os, view, "[", "]");
      return os;
    }
    case K::Queue: {
      os << "queue ";
      print_items(os, v.as_queue().items, "[", "]");
      return os;
    }
    case K::Closure: {
      const auto& c = v.as_closure();
      os << "<fun";
      if (!c.name.empty()) os << ' ' << c.name;
      return os << "/" << c.arity() << ">";
    }
  }
  return os;
}

std::string_view kind_name(Value::Kind k) {
  using K = Value::Kind;
  switch (k) {
    case K::Unit: return "unit";
    case K::Bool: return "bool";
    case K::Int: return "int";
    case K::Tuple: return "tuple";
    case K::Seq: return "seq";
    case K::Set: return "set";
    case K::Graph: return "graph";
    case K::Tree: return "tree";
    case K::Ref: return "ref";
    case K::Stack: return "stack";
    case K::Queue: return "queue";
    case K::Closure: return "function";
  }
  return "?";
}

std::string_view evaluation_error_name(EvaluationError::Kind k) {
  using K = EvaluationError::Kind;
  switch (k) {
    case K::UnboundVariable: return "UnboundVariable";
    case K::TypeMismatch: return "TypeMismatch";
    case K::IndexOutOfRange: return "IndexOutOfRange";
    case K::NegativeSliceBound: return "NegativeSliceBound";
    case K::ArityExceeded: return "ArityExceeded";
    case K::Precondition: return "Precondition";
  }
  return "?";
}

Value set_of(const Value& v) {
  if (v.is(Value::Kind::Set)) return v;
  if (!v.is_sequence_like()) mismatch("set or sequence", v);
  return Value::set(v.sequence_view());
}

Value set_union(const Value& a, const Value& b) {
  Value x = set_of(a), y = set_of(b);
  std::vector<Value> out;
  auto s = x.items(), t = y.items();
  out.reserve(s.size() + t.size());
  std::set_union(s.begin(), s.end(), t.begin(), t.end(), std::back_inserter(out));
  return Value::set_from_sorted(std::move(out));
}

Value set_inter(const Value& a, const Value& b) {
  Value x = set_of(a), y = set_of(b);
  std::vector<Value> out;
  auto s = x.items(), t = y.items();
  std::set_intersection(s.begin(), s.end(), t.begin(), t.end(),
                        std::back_inserter(out));
  return Value::set_from_sorted(std::move(out));
}

Value set_diff(const Value& a, const Value& b) {
  Value x = set_of(a), y = set_of(b);
  std::vector<Value> out;
  auto s = x.items(), t = y.items();
  std::set_difference(s.begin(), s.end(), t.begin(), t.end(),
                      std::back_inserter(out));
  return Value::set_from_sorted(std::move(out));
}

Value set_insert(const Value& s, const Value& x) {
  Value base = set_of(s);
  if (base.set_contains(x)) return base;
  auto items = base.items();
  std::vector<Value> out(items.begin(), items.end());
  out.insert(std::lower_bound(out.begin(), out.end(), x), x);
  return Value::set_from_sorted(std::move(out));
}

bool set_subset(const Value& a, const Value& b) {
  Value x = set_of(a), y = set_of(b);
  auto s = x.items(), t = y.items();
  return std::includes(t.begin(), t.end(), s.begin(), s.end());
}

}  // namespace unfold

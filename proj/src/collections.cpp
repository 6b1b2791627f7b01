#include "unfold/collections.hpp"

#include <deque>
#include <memory>
#include <stdexcept>

#include "unfold/graph_model.hpp"

namespace unfold {

using namespace term;

std::string_view traversal_name(Traversal t) {
  switch (t) {
    case Traversal::Sequence: return "sequence";
    case Traversal::Set: return "set";
    case Traversal::Vertices: return "vertices";
    case Traversal::Successors: return "successors";
    case Traversal::InOrder: return "in-order";
    case Traversal::LevelOrder: return "level-order";
  }
  return "?";
}

namespace {

// fun v -> len v <= len s /\ (forall i. 0 <= i < len v -> v[i] = s[i])
Term prefix_of(const Term& s) {
  const Term v = var("v"), i = var("i");
  return lambda({"v"}, len(v) <= len(s) &&
                           forall_range("i", integer(0), len(v),
                                        eq(index(v, i), index(s, i))));
}

// fun v -> len v = len s
Term same_length(const Term& s) { return lambda({"v"}, eq(len(var("v")), len(s))); }

// fun v -> v subset s /\ distinct v
Term distinct_subset(const Term& s) {
  const Term v = var("v");
  return lambda({"v"}, subset(v, s) && distinct(v));
}

Term let_pair(const Term& body) {
  return let_tuple({"g", "s"}, var("collection"), body);
}

}  // namespace

CursorTerms cursor_terms(Traversal t) {
  const Term c = var("collection");
  const Term v = var("v");
  switch (t) {
    case Traversal::Sequence:
      return {prefix_of(c), same_length(c)};
    case Traversal::Set:
      return {distinct_subset(c), same_length(c)};
    case Traversal::Vertices:
      return {distinct_subset(dom(c)), lambda({"v"}, eq(v, dom(c)))};
    case Traversal::Successors: {
      const Term succ = suc(var("g"), var("s"));
      return {lambda({"v"}, let_pair(subset(v, succ) && distinct(v))),
              lambda({"v"}, let_pair(eq(len(v), len(succ))))};
    }
    case Traversal::InOrder:
      return {prefix_of(flatten(c)), same_length(flatten(c))};
    case Traversal::LevelOrder:
      return {prefix_of(levels(c)), same_length(levels(c))};
  }
  throw std::invalid_argument("unknown traversal");
}

Term vertices_complete_by_cardinality() {
  return same_length(dom(var("collection")));
}

namespace {

Producer in_order(std::shared_ptr<const TreeNode> root) {
  struct State {
    std::vector<const TreeNode*> stack;
    const TreeNode* current;
    std::shared_ptr<const TreeNode> keep;
  };
  auto st = std::make_shared<State>(State{{}, root.get(), root});
  return [st]() -> std::optional<Value> {
    while (st->current) {
      st->stack.push_back(st->current);
      st->current = st->current->left.get();
    }
    if (st->stack.empty()) return std::nullopt;
    const TreeNode* n = st->stack.back();
    st->stack.pop_back();
    st->current = n->right.get();
    return n->value;
  };
}

Producer level_order(std::shared_ptr<const TreeNode> root) {
  struct State {
    std::deque<const TreeNode*> frontier;
    std::shared_ptr<const TreeNode> keep;
  };
  auto st = std::make_shared<State>();
  st->keep = root;
  if (root) st->frontier.push_back(root.get());
  return [st]() -> std::optional<Value> {
    if (st->frontier.empty()) return std::nullopt;
    std::vector<Value> level;
    for (std::size_t n = st->frontier.size(); n > 0; --n) {
      const TreeNode* node = st->frontier.front();
      st->frontier.pop_front();
      level.push_back(node->value);
      if (node->left) st->frontier.push_back(node->left.get());
      if (node->right) st->frontier.push_back(node->right.get());
    }
    return Value::seq(std::move(level));
  };
}

void require_kind(const Value& v, Value::Kind k, Traversal t) {
  if (!v.is(k))
    throw std::invalid_argument(std::string(traversal_name(t)) +
                                " traversal over " + v.to_string());
}

}  // namespace

Producer traversal_producer(Traversal t, const Value& collection) {
  switch (t) {
    case Traversal::Sequence:
      require_kind(collection, Value::Kind::Seq, t);
      return producer_of(collection.sequence_view());
    case Traversal::Set: {
      require_kind(collection, Value::Kind::Set, t);
      auto items = collection.items();
      return producer_of({items.begin(), items.end()});
    }
    case Traversal::Vertices: {
      require_kind(collection, Value::Kind::Graph, t);
      auto items = collection.as_graph().dom().items();
      return producer_of({items.begin(), items.end()});
    }
    case Traversal::Successors: {
      require_kind(collection, Value::Kind::Tuple, t);
      auto pair = collection.items();
      if (pair.size() != 2 || !pair[0].is(Value::Kind::Graph))
        throw std::invalid_argument("successor traversal needs (graph, vertex)");
      auto succ = pair[0].as_graph().suc(pair[1]);
      auto items = succ.items();
      return producer_of({items.begin(), items.end()});
    }
    case Traversal::InOrder:
      require_kind(collection, Value::Kind::Tree, t);
      return in_order(collection.as_tree());
    case Traversal::LevelOrder:
      require_kind(collection, Value::Kind::Tree, t);
      return level_order(collection.as_tree());
  }
  throw std::invalid_argument("unknown traversal");
}

SeqPredicate traversal_permitted(Traversal t, const Value& collection) {
  return predicate_of(eval(cursor_terms(t).permitted, Env{{"collection", collection}}));
}

SeqPredicate traversal_complete(Traversal t, const Value& collection) {
  return predicate_of(eval(cursor_terms(t).complete, Env{{"collection", collection}}));
}

Cursor make_cursor(Traversal t, const Value& collection) {
  return make_cursor(t, collection, traversal_producer(t, collection));
}

Cursor make_cursor(Traversal t, const Value& collection, Producer producer) {
  return create_cursor(std::move(producer), traversal_permitted(t, collection),
                       traversal_complete(t, collection));
}

Cursor seq_cursor(std::vector<Value> s) {
  return make_cursor(Traversal::Sequence, Value::seq(std::move(s)));
}

Cursor set_cursor(const Value& set) { return make_cursor(Traversal::Set, set_of(set)); }

Cursor tree_cursor(const BinaryTree& t) {
  return make_cursor(Traversal::InOrder, t.to_value());
}

Cursor level_cursor(const BinaryTree& t) {
  return make_cursor(Traversal::LevelOrder, t.to_value());
}

namespace {

Value build_container(const std::vector<Value>& s, InvariantContext& ctx,
                      bool lifo) {
  const Value box = lifo ? Value::stack() : Value::queue();
  const Value seq = Value::seq(s);
  const Term v = var("v"), contents = var("r");
  // stack: fun v -> reverse r = prefix s (len v); queue: fun v -> r = prefix s (len v)
  const Term view = lifo ? reverse(contents) : contents;
  const Term inv = lambda({"v"}, eq(view, prefix(var("s"), len(v))));
  const Env env{{"r", box}, {"s", seq}};

  ClientContract contract{eval(inv, env), remaining_elements_measure(), seq,
                          ArgOrder::AccumulatorFirst,
                          lifo ? "stack_of_seq" : "queue_of_seq"};
  Cursor cursor = seq_cursor(s);
  checked_iter(
      [&](const Value& x, InvariantContext&) {
        if (lifo) box.as_stack().items.push_back(x);
        else box.as_queue().items.push_back(x);
      },
      cursor, contract, ctx);

  const Term post = eq(view, var("s"));
  if (!eval(post, env).as_bool())
    throw std::logic_error("postcondition failed: " + box.to_string());
  return box;
}

}  // namespace

Value stack_of_seq(const std::vector<Value>& s, InvariantContext& ctx) {
  return build_container(s, ctx, true);
}

Value queue_of_seq(const std::vector<Value>& s, InvariantContext& ctx) {
  return build_container(s, ctx, false);
}

Value stack_of_seq(const std::vector<Value>& s) {
  InvariantContext ctx;
  return stack_of_seq(s, ctx);
}

Value queue_of_seq(const std::vector<Value>& s) {
  InvariantContext ctx;
  return queue_of_seq(s, ctx);
}

}  // namespace unfold

#pragma once

#include <string_view>
#include <vector>

#include "unfold/cursor.hpp"
#include "unfold/patterns.hpp"
#include "unfold/term.hpp"
#include "unfold/tree.hpp"
#include "unfold/value.hpp"

namespace unfold {

/// Built-in traversal orders. Each pairs a producer with the
/// permitted/complete terms that specify it.
enum class Traversal {
  Sequence,    // collection: Seq, in order
  Set,         // collection: Set, canonical order
  Vertices,    // collection: Graph, dom in canonical order
  Successors,  // collection: (Graph, vertex), suc in canonical order
  InOrder,     // collection: Tree, in-order
  LevelOrder,  // collection: Tree, one Seq per level
};

std::string_view traversal_name(Traversal t);

/// permitted / complete as one-parameter lambdas over `v`, with the iterated
/// structure free as `collection`.
struct CursorTerms {
  Term permitted;
  Term complete;
};

CursorTerms cursor_terms(Traversal t);

/// Alternative complete for Vertices: `len v = len collection.dom`. Agrees
/// with the set-equality reading whenever permitted holds.
Term vertices_complete_by_cardinality();

/// The standard producer for `t` over `collection`.
Producer traversal_producer(Traversal t, const Value& collection);

/// Cursor with the specified predicates and the standard producer.
Cursor make_cursor(Traversal t, const Value& collection);
/// Same predicates, caller-supplied producer (used to exercise faulty
/// producers).
Cursor make_cursor(Traversal t, const Value& collection, Producer producer);

SeqPredicate traversal_permitted(Traversal t, const Value& collection);
SeqPredicate traversal_complete(Traversal t, const Value& collection);

Cursor seq_cursor(std::vector<Value> s);
Cursor set_cursor(const Value& set);
Cursor tree_cursor(const BinaryTree& t);
Cursor level_cursor(const BinaryTree& t);

/// Builds a stack by iterating `s` and pushing each element; checks
/// `reverse stack = s[..len v]` at every step and `reverse r = s` at exit.
Value stack_of_seq(const std::vector<Value>& s, InvariantContext& ctx);
/// Queue counterpart: `queue = s[..len v]`, `r = s`.
Value queue_of_seq(const std::vector<Value>& s, InvariantContext& ctx);

Value stack_of_seq(const std::vector<Value>& s);
Value queue_of_seq(const std::vector<Value>& s);

}  // namespace unfold

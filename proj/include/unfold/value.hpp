#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace unfold {

class GraphModel;
struct TreeNode;
struct Closure;
class Value;

using Integer = boost::multiprecision::cpp_int;

/// Mutable reference cell (`ref x` / `!r`).
struct RefCell;
/// LIFO container; `items` is stored bottom-to-top.
struct StackBox;
/// FIFO container; `items` is stored front-to-back.
struct QueueBox;

/// Runtime value for every specification symbol: scalars, sequences, finite
/// sets, graphs, trees, effectful containers and closures.
///
/// Everything except the Ref/Stack/Queue variants is immutable; copies share
/// structure. Sets are kept sorted and duplicate-free under the structural
/// order defined by `operator<=>`.
class Value {
 public:
  enum class Kind : std::uint8_t {
    Unit,
    Bool,
    Int,
    Tuple,
    Seq,
    Set,
    Graph,
    Tree,
    Ref,
    Stack,
    Queue,
    Closure,
  };

  Value() = default;

  static Value unit() { return Value(); }
  static Value boolean(bool b);
  static Value integer(Integer i);
  static Value integer(long long i) { return integer(Integer(i)); }
  static Value tuple(std::vector<Value> items);
  static Value seq(std::vector<Value> items);
  /// Sorts and deduplicates `items`.
  static Value set(std::vector<Value> items);
  /// Trusts that `items` is already sorted and duplicate-free.
  static Value set_from_sorted(std::vector<Value> items);
  static Value graph(GraphModel g);
  static Value graph(std::shared_ptr<const GraphModel> g);
  static Value tree(std::shared_ptr<const TreeNode> root);
  static Value ref(Value initial);
  static Value stack();
  static Value queue();
  static Value closure(std::shared_ptr<const Closure> c);

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }
  bool is_sequence_like() const {
    return kind_ == Kind::Seq || kind_ == Kind::Stack || kind_ == Kind::Queue;
  }

  bool as_bool() const;
  const Integer& as_int() const;
  /// Elements of a Tuple, Seq or Set.
  std::span<const Value> items() const;
  const GraphModel& as_graph() const;
  const std::shared_ptr<const GraphModel>& graph_ptr() const;
  const std::shared_ptr<const TreeNode>& as_tree() const;
  const Closure& as_closure() const;
  const std::shared_ptr<const Closure>& closure_ptr() const;

  RefCell& as_ref() const;
  StackBox& as_stack() const;
  QueueBox& as_queue() const;

  /// Sequence view: Seq as-is, Stack top-first, Queue front-first.
  std::vector<Value> sequence_view() const;

  /// Set membership by binary search; requires kind() == Set.
  bool set_contains(const Value& v) const;

  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);
  friend std::strong_ordering operator<=>(const Value& a, const Value& b);

 private:
  using Items = std::shared_ptr<const std::vector<Value>>;
  using Payload =
      std::variant<std::monostate, bool, Integer, Items,
                   std::shared_ptr<const GraphModel>,
                   std::shared_ptr<const TreeNode>, std::shared_ptr<RefCell>,
                   std::shared_ptr<StackBox>, std::shared_ptr<QueueBox>,
                   std::shared_ptr<const Closure>>;

  Value(Kind k, Payload p) : kind_(k), payload_(std::move(p)) {}

  Kind kind_ = Kind::Unit;
  Payload payload_;
};

struct RefCell {
  Value value;
};

struct StackBox {
  std::vector<Value> items;
};

struct QueueBox {
  std::vector<Value> items;
};

std::string_view kind_name(Value::Kind k);

std::ostream& operator<<(std::ostream& os, const Value& v);

/// Raised when a term cannot be evaluated: unbound names, ill-typed
/// operands, out-of-range indices. Distinct from a contract violation.
class EvaluationError : public std::runtime_error {
 public:
  enum class Kind {
    UnboundVariable,
    TypeMismatch,
    IndexOutOfRange,
    NegativeSliceBound,
    ArityExceeded,
    Precondition,
  };

  EvaluationError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view evaluation_error_name(EvaluationError::Kind k);

// Set algebra on Set values. Sequence arguments are accepted and read as the
// set of their elements.
Value set_of(const Value& v);
Value set_union(const Value& a, const Value& b);
Value set_inter(const Value& a, const Value& b);
Value set_diff(const Value& a, const Value& b);
Value set_insert(const Value& s, const Value& x);
bool set_subset(const Value& a, const Value& b);

}  // namespace unfold

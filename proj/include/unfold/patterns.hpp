#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "unfold/cursor.hpp"
#include "unfold/value.hpp"

namespace unfold {

/// Order of the accumulator and visited arguments in an invariant
/// application. Mirrors the consumer's (accumulator, element) order: a
/// `'a -> 'b -> 'a` consumer gives (acc, visited), a `'b -> 'a -> 'a`
/// consumer gives (visited, acc).
enum class ArgOrder { AccumulatorFirst, VisitedFirst };

/// Per-call-site contract: invariant, convergence measure and the iterated
/// collection. `inv` and `convergence` are closures, possibly with leading
/// arguments already supplied.
struct ClientContract {
  Value inv;
  Value convergence;
  Value collection;
  ArgOrder order = ArgOrder::AccumulatorFirst;
  std::string label;
  // Source text of the invariant / variant annotations, copied into trace
  // events.
  std::string inv_text;
  std::string variant_text;
};

struct IterationStats {
  std::size_t invariant_checks = 0;
  std::size_t variant_checks = 0;
  std::size_t steps = 0;
};

struct TraceEvent {
  enum class Kind { Invariant, Variant, Next };
  Kind kind;
  std::size_t depth;
  std::size_t step;
  std::string label;
  Value value;
  std::string text;
};

/// Stack of (accumulator?, visited) frames from the enclosing checked
/// iterations, outermost first. Also collects check counts and an optional
/// trace for the whole iteration tree.
class InvariantContext {
 public:
  struct Frame {
    std::optional<Value> accumulator;  // absent for iter levels
    Value visited;
    ArgOrder order = ArgOrder::AccumulatorFirst;
  };

  void push_frame(std::optional<Value> accumulator, Value visited,
                  ArgOrder order = ArgOrder::AccumulatorFirst);
  void pop_frame();
  std::size_t depth() const { return frames_.size(); }
  const std::vector<Frame>& frames() const { return frames_; }

  /// Arguments contributed by the enclosing levels, outer level first.
  std::vector<Value> outer_arguments() const;

  IterationStats& stats() { return stats_; }
  const IterationStats& stats() const { return stats_; }

  void set_tracer(std::function<void(const TraceEvent&)> tracer) {
    tracer_ = std::move(tracer);
  }
  bool tracing() const { return static_cast<bool>(tracer_); }
  void trace(const TraceEvent& e) const {
    if (tracer_) tracer_(e);
  }

 private:
  std::vector<Frame> frames_;
  IterationStats stats_;
  std::function<void(const TraceEvent&)> tracer_;
};

InvariantContext push_frame(InvariantContext ctx, std::optional<Value> accumulator,
                            Value visited);
InvariantContext pop_frame(InvariantContext ctx);

/// Pushes a frame for the lifetime of the guard.
class ScopedFrame {
 public:
  ScopedFrame(InvariantContext& ctx, std::optional<Value> accumulator,
              Value visited, ArgOrder order)
      : ctx_(ctx) {
    ctx_.push_frame(std::move(accumulator), std::move(visited), order);
  }
  ~ScopedFrame() { ctx_.pop_frame(); }
  ScopedFrame(const ScopedFrame&) = delete;
  ScopedFrame& operator=(const ScopedFrame&) = delete;

 private:
  InvariantContext& ctx_;
};

/// Consumers receive the context so that nested iterations they run see the
/// enclosing frames.
using FoldConsumer =
    std::function<Value(const Value& acc, const Value& elt, InvariantContext& ctx)>;
using IterConsumer = std::function<void(const Value& elt, InvariantContext& ctx)>;
using ElementMap = std::function<Value(const Value& elt, InvariantContext& ctx)>;
using ElementFilter = std::function<bool(const Value& elt, InvariantContext& ctx)>;

/// Runs the first-order cursor client for a fold:
///
///   acc := init; check inv(acc, [])
///   while has_next:
///     m0 := convergence(collection, visited); require m0 >= 0
///     x := next; acc := consumer(acc, x)
///     check inv(acc, visited); require convergence(collection, visited) < m0
///
/// The cursor must be fresh. Consumer exceptions propagate unchanged.
Value checked_fold(const FoldConsumer& consumer, Value init, Cursor& cursor,
                   const ClientContract& contract, InvariantContext& ctx);

/// Fold with no accumulator; `contract.inv` takes (visited, outer...).
void checked_iter(const IterConsumer& consumer, Cursor& cursor,
                  const ClientContract& contract, InvariantContext& ctx);

/// Fold building `out ++ [f x]`; `contract.inv` takes (out, visited, ...).
Value checked_map(const ElementMap& f, Cursor& cursor,
                  const ClientContract& contract, InvariantContext& ctx);

/// Fold keeping the elements satisfying `p`, in order.
Value checked_filter(const ElementFilter& p, Cursor& cursor,
                     const ClientContract& contract, InvariantContext& ctx);

/// Arity the invariant must have at the current nesting depth.
std::size_t expected_invariant_arity(bool has_accumulator,
                                     const InvariantContext& ctx);

/// Convergence measure `fun c v -> len c - len v`.
Value remaining_elements_measure();

}  // namespace unfold

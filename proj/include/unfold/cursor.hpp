#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unfold/value.hpp"

namespace unfold {

/// Runtime counterpart of an undischarged verification condition.
class ContractViolation : public std::runtime_error {
 public:
  enum class Kind {
    PermittedViolated,
    CompleteViolatedAtExhaustion,
    InvariantViolated,
    ConvergenceNotDecreasing,
    ConvergenceNegative,
    NextOnExhausted,
    InvariantViolatedInitially,
  };

  ContractViolation(Kind kind, std::size_t step, std::string detail);

  Kind kind() const { return kind_; }
  /// Length of the visited sequence when the violation was detected.
  std::size_t step() const { return step_; }
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  std::size_t step_;
  std::string detail_;
};

std::string_view violation_name(ContractViolation::Kind k);

/// Predicate over a visited sequence (passed as a Seq value).
using SeqPredicate = std::function<bool(const Value& visited)>;
/// Step source: the next element, or nullopt once exhausted.
using Producer = std::function<std::optional<Value>()>;

/// Adapts a one-argument closure returning bool.
SeqPredicate predicate_of(Value closure);

/// Step-by-step iterator carrying its visited sequence and the
/// permitted/complete pair.
///
/// `permitted(visited)` holds after construction and after every public
/// operation; once the producer is exhausted, `complete(visited)` is checked.
/// Single owner; not for concurrent use.
class Cursor {
 public:
  Cursor(Producer producer, SeqPredicate permitted, SeqPredicate complete);

  Cursor(Cursor&&) noexcept = default;
  Cursor& operator=(Cursor&&) noexcept = default;
  Cursor(const Cursor&) = delete;
  Cursor& operator=(const Cursor&) = delete;

  /// May pull one element of lookahead from the producer; `visited` is
  /// unchanged. Returning false checks complete(visited). Idempotent once
  /// exhausted.
  bool has_next();

  /// Appends the next element to visited and returns it.
  Value next();

  /// Snapshot copy.
  std::vector<Value> visited() const { return visited_; }
  Value visited_value() const { return Value::seq(visited_); }
  std::size_t steps() const { return visited_.size(); }

  bool permitted(const Value& visited) const { return permitted_(visited); }
  bool complete(const Value& visited) const { return complete_(visited); }

 private:
  void fill();

  Producer producer_;
  SeqPredicate permitted_;
  SeqPredicate complete_;
  std::vector<Value> visited_;
  std::optional<Value> lookahead_;
  bool exhausted_ = false;
};

Cursor create_cursor(Producer producer, SeqPredicate permitted,
                     SeqPredicate complete);

/// Producer over a fixed sequence, in order.
Producer producer_of(std::vector<Value> items);

}  // namespace unfold

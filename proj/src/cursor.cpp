#include "unfold/cursor.hpp"

#include <memory>

#include "unfold/term.hpp"

namespace unfold {

ContractViolation::ContractViolation(Kind kind, std::size_t step,
                                     std::string detail)
    : std::runtime_error(std::string(violation_name(kind)) + " at step " +
                         std::to_string(step) + ": " + detail),
      kind_(kind),
      step_(step),
      detail_(std::move(detail)) {}

std::string_view violation_name(ContractViolation::Kind k) {
  using K = ContractViolation::Kind;
  switch (k) {
    case K::PermittedViolated: return "PermittedViolated";
    case K::CompleteViolatedAtExhaustion: return "CompleteViolatedAtExhaustion";
    case K::InvariantViolated: return "InvariantViolated";
    case K::ConvergenceNotDecreasing: return "ConvergenceNotDecreasing";
    case K::ConvergenceNegative: return "ConvergenceNegative";
    case K::NextOnExhausted: return "NextOnExhausted";
    case K::InvariantViolatedInitially: return "InvariantViolatedInitially";
  }
  return "?";
}

SeqPredicate predicate_of(Value closure) {
  return [f = std::move(closure)](const Value& visited) {
    const Value r = apply_lambda(f, {visited});
    if (!r.is(Value::Kind::Bool))
      throw EvaluationError(EvaluationError::Kind::TypeMismatch,
                            "predicate returned " + r.to_string());
    return r.as_bool();
  };
}

Cursor::Cursor(Producer producer, SeqPredicate permitted, SeqPredicate complete)
    : producer_(std::move(producer)),
      permitted_(std::move(permitted)),
      complete_(std::move(complete)) {
  if (!permitted_(Value::seq({})))
    throw ContractViolation(ContractViolation::Kind::PermittedViolated, 0,
                            "permitted rejects the empty visited sequence");
}

void Cursor::fill() {
  if (lookahead_ || exhausted_) return;
  lookahead_ = producer_();
  if (!lookahead_) exhausted_ = true;
}

bool Cursor::has_next() {
  fill();
  if (!exhausted_) return true;
  if (!complete_(visited_value()))
    throw ContractViolation(ContractViolation::Kind::CompleteViolatedAtExhaustion,
                            visited_.size(),
                            "producer exhausted but complete fails on visited " +
                                visited_value().to_string());
  return false;
}

Value Cursor::next() {
  fill();
  if (exhausted_)
    throw ContractViolation(ContractViolation::Kind::NextOnExhausted,
                            visited_.size(), "next called on an exhausted cursor");
  Value x = std::move(*lookahead_);
  lookahead_.reset();
  visited_.push_back(x);
  if (!permitted_(visited_value())) {
    const std::string offending = visited_value().to_string();
    visited_.pop_back();
    throw ContractViolation(ContractViolation::Kind::PermittedViolated,
                            visited_.size(),
                            "visited " + offending + " is not permitted");
  }
  return x;
}

Cursor create_cursor(Producer producer, SeqPredicate permitted,
                     SeqPredicate complete) {
  return Cursor(std::move(producer), std::move(permitted), std::move(complete));
}

Producer producer_of(std::vector<Value> items) {
  auto data = std::make_shared<const std::vector<Value>>(std::move(items));
  return [data, pos = std::size_t{0}]() mutable -> std::optional<Value> {
    if (pos >= data->size()) return std::nullopt;
    return (*data)[pos++];
  };
}

}  // namespace unfold

#include "unfold/patterns.hpp"

#include <cassert>
#include <stdexcept>

#include "unfold/term.hpp"

namespace unfold {

using CK = ContractViolation::Kind;

void InvariantContext::push_frame(std::optional<Value> accumulator,
                                  Value visited, ArgOrder order) {
  frames_.push_back(Frame{std::move(accumulator), std::move(visited), order});
}

void InvariantContext::pop_frame() {
  assert(!frames_.empty() && "pop_frame on an empty InvariantContext");
  frames_.pop_back();
}

std::vector<Value> InvariantContext::outer_arguments() const {
  std::vector<Value> args;
  for (const auto& f : frames_) {
    if (!f.accumulator) {
      args.push_back(f.visited);
    } else if (f.order == ArgOrder::AccumulatorFirst) {
      args.push_back(*f.accumulator);
      args.push_back(f.visited);
    } else {
      args.push_back(f.visited);
      args.push_back(*f.accumulator);
    }
  }
  return args;
}

InvariantContext push_frame(InvariantContext ctx, std::optional<Value> accumulator,
                            Value visited) {
  ctx.push_frame(std::move(accumulator), std::move(visited));
  return ctx;
}

InvariantContext pop_frame(InvariantContext ctx) {
  ctx.pop_frame();
  return ctx;
}

std::size_t expected_invariant_arity(bool has_accumulator,
                                     const InvariantContext& ctx) {
  std::size_t n = has_accumulator ? 2 : 1;
  for (const auto& f : ctx.frames()) n += f.accumulator ? 2 : 1;
  return n;
}

Value remaining_elements_measure() {
  using namespace term;
  static const Value measure =
      eval(lambda({"c", "v"}, len(var("c")) - len(var("v"))), Env{});
  return measure;
}

namespace {

using Step = std::function<std::optional<Value>(const std::optional<Value>& acc,
                                                const Value& x)>;

class Loop {
 public:
  Loop(Cursor& cursor, const ClientContract& contract, InvariantContext& ctx)
      : cursor_(cursor), contract_(contract), ctx_(ctx) {}

  std::optional<Value> run(std::optional<Value> acc, const Step& step) {
    if (cursor_.steps() != 0)
      throw std::invalid_argument("checked iteration requires a fresh cursor");
    const std::size_t want = expected_invariant_arity(acc.has_value(), ctx_);
    if (contract_.inv.as_closure().arity() != want)
      throw std::invalid_argument(
          "invariant '" + contract_.label + "' takes " +
          std::to_string(contract_.inv.as_closure().arity()) +
          " arguments, expected " + std::to_string(want) + " at nesting depth " +
          std::to_string(ctx_.depth()));

    const Value empty = Value::seq({});
    check_invariant(acc, empty, CK::InvariantViolatedInitially);

    while (cursor_.has_next()) {
      const Value before = cursor_.visited_value();
      const Integer m0 = measure(before);
      if (m0 < 0)
        throw ContractViolation(CK::ConvergenceNegative, cursor_.steps(),
                                "convergence " + m0.str() + " at visited " +
                                    before.to_string());
      const Value x = cursor_.next();
      const Value now = cursor_.visited_value();
      ctx_.trace({TraceEvent::Kind::Next, ctx_.depth(), cursor_.steps(),
                  contract_.label, x});
      {
        ScopedFrame frame(ctx_, acc, now, contract_.order);
        acc = step(acc, x);
      }
      ++ctx_.stats().steps;
      check_invariant(acc, now, CK::InvariantViolated);
      const Integer m1 = measure(now);
      if (m1 >= m0)
        throw ContractViolation(CK::ConvergenceNotDecreasing, cursor_.steps(),
                                "convergence went from " + m0.str() + " to " +
                                    m1.str() + " at visited " + now.to_string());
    }
    assert(cursor_.complete(cursor_.visited_value()));
    return acc;
  }

 private:
  void check_invariant(const std::optional<Value>& acc, const Value& visited,
                       CK failure) {
    std::vector<Value> args;
    if (!acc) {
      args.push_back(visited);
    } else if (contract_.order == ArgOrder::AccumulatorFirst) {
      args = {*acc, visited};
    } else {
      args = {visited, *acc};
    }
    for (auto& a : ctx_.outer_arguments()) args.push_back(std::move(a));

    const Value r = apply_lambda(contract_.inv, args);
    ++ctx_.stats().invariant_checks;
    ctx_.trace({TraceEvent::Kind::Invariant, ctx_.depth(), cursor_.steps(),
                contract_.label, r, contract_.inv_text});
    if (!r.is(Value::Kind::Bool))
      throw EvaluationError(EvaluationError::Kind::TypeMismatch,
                            "invariant returned " + r.to_string());
    if (!r.as_bool()) {
      std::string detail = "invariant";
      if (!contract_.label.empty()) detail += " '" + contract_.label + "'";
      detail += " fails with visited " + visited.to_string();
      if (acc) detail += ", accumulator " + acc->to_string();
      throw ContractViolation(failure, cursor_.steps(), detail);
    }
  }

  Integer measure(const Value& visited) {
    const Value m = apply_lambda(contract_.convergence, {contract_.collection, visited});
    ++ctx_.stats().variant_checks;
    ctx_.trace({TraceEvent::Kind::Variant, ctx_.depth(), cursor_.steps(),
                contract_.label, m, contract_.variant_text});
    if (!m.is(Value::Kind::Int))
      throw EvaluationError(EvaluationError::Kind::TypeMismatch,
                            "convergence returned " + m.to_string());
    return m.as_int();
  }

  Cursor& cursor_;
  const ClientContract& contract_;
  InvariantContext& ctx_;
};

}  // namespace

Value checked_fold(const FoldConsumer& consumer, Value init, Cursor& cursor,
                   const ClientContract& contract, InvariantContext& ctx) {
  Loop loop(cursor, contract, ctx);
  return *loop.run(std::move(init),
                   [&](const std::optional<Value>& acc, const Value& x) {
                     return std::optional<Value>(consumer(*acc, x, ctx));
                   });
}

void checked_iter(const IterConsumer& consumer, Cursor& cursor,
                  const ClientContract& contract, InvariantContext& ctx) {
  Loop loop(cursor, contract, ctx);
  loop.run(std::nullopt, [&](const std::optional<Value>&, const Value& x) {
    consumer(x, ctx);
    return std::optional<Value>();
  });
}

Value checked_map(const ElementMap& f, Cursor& cursor,
                  const ClientContract& contract, InvariantContext& ctx) {
  return checked_fold(
      [&](const Value& out, const Value& x, InvariantContext& c) {
        auto items = out.sequence_view();
        items.push_back(f(x, c));
        return Value::seq(std::move(items));
      },
      Value::seq({}), cursor, contract, ctx);
}

Value checked_filter(const ElementFilter& p, Cursor& cursor,
                     const ClientContract& contract, InvariantContext& ctx) {
  return checked_fold(
      [&](const Value& out, const Value& x, InvariantContext& c) {
        if (!p(x, c)) return out;
        auto items = out.sequence_view();
        items.push_back(x);
        return Value::seq(std::move(items));
      },
      Value::seq({}), cursor, contract, ctx);
}

}  // namespace unfold

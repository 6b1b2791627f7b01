#include "unfold/case_studies.hpp"

#include "unfold/collections.hpp"
#include "unfold/term.hpp"

namespace unfold {

using namespace term;

namespace {

const Term A = var("a");
const Term V = var("v");
const Term X = var("x");
const Term I = var("i");

// fun a v -> a = sum (fun i -> v[i]) 0 (len v)
Value sum_invariant() {
  static const Value inv = eval(
      lambda({"a", "v"}, eq(A, sum(lambda({"i"}, index(V, I)), integer(0), len(V)))),
      Env{});
  return inv;
}

// fun x -> x > k, with k free
Term above(const Term& k) { return lambda({"x"}, X > k); }

Value add_consumer(const Value& a, const Value& x, InvariantContext&) {
  return Value::integer(a.as_int() + x.as_int());
}

void bump(const Value& counter) {
  RefCell& c = counter.as_ref();
  c.value = Value::integer(c.value.as_int() + 1);
}

}  // namespace

Value sum_seq(const std::vector<Value>& s, InvariantContext& ctx) {
  ClientContract contract{sum_invariant(), remaining_elements_measure(), Value::seq(s),
                          ArgOrder::AccumulatorFirst, "sum_seq"};
  Cursor cursor = seq_cursor(s);
  return checked_fold(add_consumer, Value::integer(0), cursor, contract, ctx);
}

Value gt_seq(const std::vector<Value>& s, const Value& threshold,
             InvariantContext& ctx) {
  const Env env{{"k", threshold}};
  const Value inv =
      eval(lambda({"out", "v"}, eq(var("out"), filter(above(var("k")), V))), env);
  ClientContract contract{inv, remaining_elements_measure(), Value::seq(s),
                          ArgOrder::AccumulatorFirst, "gt_seq"};
  Cursor cursor = seq_cursor(s);
  const Value kept = checked_filter(
      [&](const Value& x, InvariantContext&) { return x > threshold; }, cursor,
      contract, ctx);
  return eval(len(var("r")), Env{{"r", kept}});
}

CountedResult counter_filter_seq(const std::vector<Value>& s, InvariantContext& ctx) {
  const Value counter = Value::ref(Value::integer(0));
  const Env env{{"counter", counter}};
  const Value inv = eval(lambda({"out", "v"},
                                eq(var("out"), filter(above(integer(0)), V)) &&
                                    eq(deref(var("counter")), len(V))),
                         env);
  ClientContract contract{inv, remaining_elements_measure(), Value::seq(s),
                          ArgOrder::AccumulatorFirst, "counter_filter_seq"};
  Cursor cursor = seq_cursor(s);
  Value out = checked_filter(
      [&](const Value& x, InvariantContext&) {
        bump(counter);
        return x.as_int() > 0;
      },
      cursor, contract, ctx);
  return {std::move(out), counter.as_ref().value};
}

CountedResult counter_map_seq(const std::vector<Value>& s, InvariantContext& ctx) {
  const Value counter = Value::ref(Value::integer(0));
  const Env env{{"counter", counter}};
  const Term out = var("out");
  const Value inv = eval(
      lambda({"out", "v"},
             eq(len(out), len(V)) &&
                 forall_range("i", integer(0), len(V),
                              eq(index(out, I), index(V, I) + integer(1))) &&
                 eq(deref(var("counter")), len(V))),
      env);
  ClientContract contract{inv, remaining_elements_measure(), Value::seq(s),
                          ArgOrder::AccumulatorFirst, "counter_map_seq"};
  Cursor cursor = seq_cursor(s);
  Value mapped = checked_map(
      [&](const Value& x, InvariantContext&) {
        bump(counter);
        return Value::integer(x.as_int() + 1);
      },
      cursor, contract, ctx);
  return {std::move(mapped), counter.as_ref().value};
}

Value sum_tree(const BinaryTree& t, InvariantContext& ctx) {
  const Value collection = t.to_value();
  // The collection of a tree fold is the tree; the measure counts its
  // in-order elements.
  static const Value measure =
      eval(lambda({"c", "v"}, len(flatten(var("c"))) - len(V)), Env{});
  ClientContract contract{sum_invariant(), measure, collection,
                          ArgOrder::AccumulatorFirst, "sum_tree"};
  Cursor cursor = tree_cursor(t);
  return checked_fold(add_consumer, Value::integer(0), cursor, contract, ctx);
}

Value height_tree(const BinaryTree& t, InvariantContext& ctx) {
  static const Value inv = eval(lambda({"a", "v"}, eq(A, len(V))), Env{});
  static const Value measure =
      eval(lambda({"c", "v"}, len(levels(var("c"))) - len(V)), Env{});
  ClientContract contract{inv, measure, t.to_value(), ArgOrder::AccumulatorFirst,
                          "height_tree"};
  Cursor cursor = level_cursor(t);
  return checked_fold(
      [](const Value& a, const Value&, InvariantContext&) {
        return Value::integer(a.as_int() + 1);
      },
      Value::integer(0), cursor, contract, ctx);
}

Value gt_tree(const BinaryTree& t, const Value& threshold, InvariantContext& ctx) {
  const Value count = Value::ref(Value::integer(0));
  const Env env{{"count", count}, {"k", threshold}};
  const Value inv = eval(
      lambda({"v"}, eq(deref(var("count")), len(filter(above(var("k")), V)))), env);
  static const Value measure =
      eval(lambda({"c", "v"}, len(flatten(var("c"))) - len(V)), Env{});
  ClientContract contract{inv, measure, t.to_value(), ArgOrder::AccumulatorFirst,
                          "gt_tree"};
  Cursor cursor = tree_cursor(t);
  checked_iter(
      [&](const Value& x, InvariantContext&) {
        if (x > threshold) bump(count);
      },
      cursor, contract, ctx);
  return count.as_ref().value;
}

Value sum_seq(const std::vector<Value>& s) {
  InvariantContext ctx;
  return sum_seq(s, ctx);
}

Value gt_seq(const std::vector<Value>& s, const Value& threshold) {
  InvariantContext ctx;
  return gt_seq(s, threshold, ctx);
}

CountedResult counter_filter_seq(const std::vector<Value>& s) {
  InvariantContext ctx;
  return counter_filter_seq(s, ctx);
}

CountedResult counter_map_seq(const std::vector<Value>& s) {
  InvariantContext ctx;
  return counter_map_seq(s, ctx);
}

Value sum_tree(const BinaryTree& t) {
  InvariantContext ctx;
  return sum_tree(t, ctx);
}

Value height_tree(const BinaryTree& t) {
  InvariantContext ctx;
  return height_tree(t, ctx);
}

Value gt_tree(const BinaryTree& t, const Value& threshold) {
  InvariantContext ctx;
  return gt_tree(t, threshold, ctx);
}

}  // namespace unfold

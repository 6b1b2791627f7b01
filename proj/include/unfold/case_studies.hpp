#pragma once

#include <vector>

#include "unfold/patterns.hpp"
#include "unfold/tree.hpp"
#include "unfold/value.hpp"

namespace unfold {

// Sequence and tree clients, each run through a checked engine with its
// own invariant. Results are Int values unless noted.

Value sum_seq(const std::vector<Value>& s, InvariantContext& ctx);
/// Number of elements strictly above `threshold`, via filter then length.
Value gt_seq(const std::vector<Value>& s, const Value& threshold,
             InvariantContext& ctx);

struct CountedResult {
  Value output;   // the filtered or mapped sequence
  Value counter;  // consumer calls recorded through a reference
};

/// Keeps positives; the predicate bumps a counter on every call.
CountedResult counter_filter_seq(const std::vector<Value>& s, InvariantContext& ctx);
/// Increments each element; the mapped function bumps a counter.
CountedResult counter_map_seq(const std::vector<Value>& s, InvariantContext& ctx);

Value sum_tree(const BinaryTree& t, InvariantContext& ctx);
/// Number of levels, folding over one whole level per step.
Value height_tree(const BinaryTree& t, InvariantContext& ctx);
/// Count of values above `threshold`, using iter and a counter reference.
Value gt_tree(const BinaryTree& t, const Value& threshold, InvariantContext& ctx);

Value sum_seq(const std::vector<Value>& s);
Value gt_seq(const std::vector<Value>& s, const Value& threshold);
CountedResult counter_filter_seq(const std::vector<Value>& s);
CountedResult counter_map_seq(const std::vector<Value>& s);
Value sum_tree(const BinaryTree& t);
Value height_tree(const BinaryTree& t);
Value gt_tree(const BinaryTree& t, const Value& threshold);

}  // namespace unfold

#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "unfold/value.hpp"

namespace unfold {

/// Raised when a graph builder is called outside its precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Logical graph model: a finite vertex set `dom` and a successor map `suc`
/// that defaults to the empty set.
///
/// Type invariant (checked by `is_closed()` and enforced by the public
/// builders): every successor of a vertex in `dom` is in `dom`, and vertices
/// outside `dom` have no successors.
class GraphModel {
 public:
  GraphModel();

  const Value& dom() const { return dom_; }
  Value suc(const Value& v) const;
  bool contains(const Value& v) const { return dom_.set_contains(v); }
  std::size_t vertex_count() const { return dom_.items().size(); }
  std::size_t edge_count() const;
  /// Only non-empty successor sets are stored.
  const std::map<Value, Value>& successor_map() const { return suc_; }

  /// dom' = dom ∪ {v}; successors unchanged.
  GraphModel with_vertex(const Value& v) const;
  /// suc'(from) = suc(from) ∪ {to}. Only requires `from` in dom, so the
  /// result may be temporarily open (target outside dom); this is the
  /// logical `add_edge` that accumulating algorithms rely on mid-iteration.
  GraphModel with_edge(const Value& from, const Value& to) const;

  bool is_closed() const;
  /// Throws PreconditionError when the closure invariant is broken.
  void require_closed(const std::string& context) const;

  std::string to_text() const;

  friend bool operator==(const GraphModel& a, const GraphModel& b);
  friend std::strong_ordering operator<=>(const GraphModel& a,
                                          const GraphModel& b);

 private:
  Value dom_;
  std::map<Value, Value> suc_;
};

GraphModel add_vertex(const GraphModel& g, const Value& v);
/// Requires both endpoints in dom.
GraphModel add_edge(const GraphModel& g, const Value& from, const Value& to);
GraphModel copy(const GraphModel& g);

/// Builds a closed graph from vertex and edge lists.
GraphModel make_graph(const std::vector<long long>& vertices,
                      const std::vector<std::pair<long long, long long>>& edges);

}  // namespace unfold

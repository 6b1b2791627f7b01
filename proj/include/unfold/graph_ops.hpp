#pragma once

#include <vector>

#include "unfold/graph_model.hpp"
#include "unfold/patterns.hpp"
#include "unfold/term.hpp"

namespace unfold {

/// Checked fold over `g.dom` (distinct-subset permitted, set-equality
/// complete). `inv` takes (visited, acc, outer...), matching the
/// vertex-first consumer order of fold_vertex. Default convergence:
/// `fun g v -> len g.dom - len v`.
Value fold_vertex(const FoldConsumer& consumer, const GraphModel& g, Value init,
                  Value inv, InvariantContext& ctx, Value convergence = {});

/// Checked fold over `g.suc s` with collection `(g, s)`. Requires s in dom.
/// Default convergence: `fun (g, s) v -> len (g.suc s) - len v`.
Value fold_succ(const FoldConsumer& consumer, Value init, const GraphModel& g,
                const Value& s, Value inv, InvariantContext& ctx,
                Value convergence = {});

Value vertex_measure();
Value successor_measure();

/// Invariant closures; the leading graph (and source vertex) arguments are
/// already supplied. Outer: (visited, acc). Inner: (visited', acc',
/// visited, acc).
Value union_outer(const GraphModel& g1, const GraphModel& g2);
Value union_inner(const GraphModel& g1, const GraphModel& g2, const Value& src);

/// The unapplied predicates: union_outer g1 g2 visited acc and
/// union_inner g1 g2 src visited' acc' visited acc.
Term union_outer_term();
Term union_inner_term();

GraphModel graph_union(const GraphModel& g1, const GraphModel& g2,
                       InvariantContext& ctx);
GraphModel graph_intersect(const GraphModel& g1, const GraphModel& g2,
                           InvariantContext& ctx);
GraphModel graph_complement(const GraphModel& g, InvariantContext& ctx);
GraphModel graph_mirror(const GraphModel& g, InvariantContext& ctx);
GraphModel copy_vertices(const GraphModel& g, InvariantContext& ctx);
bool check_path(const GraphModel& g, const std::vector<Value>& path,
                InvariantContext& ctx);

GraphModel graph_union(const GraphModel& g1, const GraphModel& g2);
GraphModel graph_intersect(const GraphModel& g1, const GraphModel& g2);
GraphModel graph_complement(const GraphModel& g);
GraphModel graph_mirror(const GraphModel& g);
GraphModel copy_vertices(const GraphModel& g);
bool check_path(const GraphModel& g, const std::vector<Value>& path);

}  // namespace unfold

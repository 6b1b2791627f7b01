#include "unfold/graph_ops.hpp"

#include <stdexcept>

#include "unfold/collections.hpp"

namespace unfold {

using namespace term;

namespace {

const Term V = var("v");
const Term W = var("w");
const Term U = var("u");
const Term G = var("g");
const Term G1 = var("g1");
const Term G2 = var("g2");
const Term SRC = var("src");
const Term VISITED = var("visited");
const Term VISITED_INNER = var("visited'");
const Term ACC = var("acc");
const Term ACC_INNER = var("acc'");

Value apply_leading(const Term& predicate, std::vector<Value> leading) {
  return apply_lambda(eval(predicate, Env{}), leading);
}

Value graph_value(const GraphModel& g) { return Value::graph(g); }

const GraphModel& as_graph(const Value& v) { return v.as_graph(); }

// acc.suc w = {} for every w in acc.dom
Term edgeless(const Term& acc) {
  return forall_in("w", dom(acc), eq(suc(acc, W), empty_set()));
}

}  // namespace

Value vertex_measure() {
  static const Value m = eval(lambda({"g", "v"}, len(dom(G)) - len(V)), Env{});
  return m;
}

Value successor_measure() {
  static const Value m =
      eval(lambda({Param::pattern({"g", "s"}), Param::name("v")},
                  len(suc(G, var("s"))) - len(V)),
           Env{});
  return m;
}

Value fold_vertex(const FoldConsumer& consumer, const GraphModel& g, Value init,
                  Value inv, InvariantContext& ctx, Value convergence) {
  const Value collection = graph_value(g);
  Cursor cursor = make_cursor(Traversal::Vertices, collection);
  ClientContract contract{std::move(inv),
                          convergence.is(Value::Kind::Closure) ? convergence
                                                               : vertex_measure(),
                          collection, ArgOrder::VisitedFirst, "fold_vertex"};
  return checked_fold(consumer, std::move(init), cursor, contract, ctx);
}

Value fold_succ(const FoldConsumer& consumer, Value init, const GraphModel& g,
                const Value& s, Value inv, InvariantContext& ctx,
                Value convergence) {
  if (!g.contains(s))
    throw PreconditionError("fold_succ: " + s.to_string() + " is not a vertex");
  const Value collection = Value::tuple({graph_value(g), s});
  Cursor cursor = make_cursor(Traversal::Successors, collection);
  ClientContract contract{std::move(inv),
                          convergence.is(Value::Kind::Closure) ? convergence
                                                               : successor_measure(),
                          collection, ArgOrder::VisitedFirst, "fold_succ"};
  return checked_fold(consumer, std::move(init), cursor, contract, ctx);
}

// ---------------------------------------------------------------------------
// union

Term union_outer_term() {
  return lambda(
      {"g1", "g2", "visited", "acc"},
      eq(dom(ACC), set_union(VISITED, dom(G2))) &&
          forall_in("v", VISITED,
                    eq(suc(ACC, V), set_union(suc(G1, V), suc(G2, V)))) &&
          forall_in("v", set_diff(dom(ACC), VISITED), eq(suc(ACC, V), suc(G2, V))));
}

Term union_inner_term() {
  return lambda(
      {"g1", "g2", "src", "visited'", "acc'", "visited", "acc"},
      eq(dom(ACC_INNER), set_union(VISITED, dom(G2))) &&
          forall_in("v", set_diff(dom(ACC_INNER), VISITED),
                    eq(suc(ACC_INNER, V), suc(G2, V))) &&
          forall_in("v", VISITED,
                    implies(ne(V, SRC), eq(suc(ACC_INNER, V),
                                           set_union(suc(G1, V), suc(G2, V))))) &&
          eq(suc(ACC_INNER, SRC), set_union(VISITED_INNER, suc(G2, SRC))));
}

Value union_outer(const GraphModel& g1, const GraphModel& g2) {
  return apply_leading(union_outer_term(), {graph_value(g1), graph_value(g2)});
}

Value union_inner(const GraphModel& g1, const GraphModel& g2, const Value& src) {
  return apply_leading(union_inner_term(), {graph_value(g1), graph_value(g2), src});
}

GraphModel graph_union(const GraphModel& g1, const GraphModel& g2,
                       InvariantContext& ctx) {
  const Value result = fold_vertex(
      [&](const Value& acc, const Value& v, InvariantContext& c) {
        return fold_succ(
            [&v](const Value& inner, const Value& e, InvariantContext&) {
              return graph_value(as_graph(inner).with_edge(v, e));
            },
            graph_value(add_vertex(as_graph(acc), v)), g1, v,
            union_inner(g1, g2, v), c);
      },
      g1, graph_value(copy(g2)), union_outer(g1, g2), ctx);
  as_graph(result).require_closed("union");
  return as_graph(result);
}

// ---------------------------------------------------------------------------
// intersect: vertices first, then edges between surviving vertices

namespace {

Term inter_vertices_term() {
  return lambda({"g2", "visited", "acc"},
                eq(dom(ACC), set_inter(VISITED, dom(G2))) && edgeless(ACC));
}

Term inter_outer_term() {
  return lambda(
      {"g1", "g2", "visited", "acc"},
      eq(dom(ACC), set_inter(dom(G1), dom(G2))) &&
          forall_in("w", VISITED,
                    eq(suc(ACC, W), set_inter(suc(G1, W), suc(G2, W)))) &&
          forall_in("w", set_diff(dom(ACC), VISITED), eq(suc(ACC, W), empty_set())));
}

Term inter_inner_term() {
  return lambda(
      {"g1", "g2", "src", "visited'", "acc'", "visited", "acc"},
      eq(dom(ACC_INNER), set_inter(dom(G1), dom(G2))) &&
          forall_in("w", VISITED,
                    implies(ne(W, SRC), eq(suc(ACC_INNER, W),
                                           set_inter(suc(G1, W), suc(G2, W))))) &&
          forall_in("w", set_diff(dom(ACC_INNER), VISITED),
                    eq(suc(ACC_INNER, W), empty_set())) &&
          eq(suc(ACC_INNER, SRC), set_inter(VISITED_INNER, suc(G2, SRC))));
}

}  // namespace

GraphModel graph_intersect(const GraphModel& g1, const GraphModel& g2,
                           InvariantContext& ctx) {
  const Value vertices = fold_vertex(
      [&](const Value& acc, const Value& v, InvariantContext&) {
        return g2.contains(v) ? graph_value(add_vertex(as_graph(acc), v)) : acc;
      },
      g1, graph_value(GraphModel{}),
      apply_leading(inter_vertices_term(), {graph_value(g2)}), ctx);

  const Value result = fold_vertex(
      [&](const Value& acc, const Value& v, InvariantContext& c) {
        const Value keep = g2.suc(v);
        return fold_succ(
            [&](const Value& inner, const Value& e, InvariantContext&) {
              return keep.set_contains(e)
                         ? graph_value(add_edge(as_graph(inner), v, e))
                         : inner;
            },
            acc, g1, v,
            apply_leading(inter_inner_term(), {graph_value(g1), graph_value(g2), v}),
            c);
      },
      g1, vertices, apply_leading(inter_outer_term(), {graph_value(g1), graph_value(g2)}),
      ctx);
  as_graph(result).require_closed("intersect");
  return as_graph(result);
}

// ---------------------------------------------------------------------------
// complement: for each u, scan the whole universe and keep non-successors

namespace {

Term comp_outer_term() {
  return lambda(
      {"g", "visited", "acc"},
      eq(dom(ACC), dom(G)) &&
          forall_in("u", VISITED, eq(suc(ACC, U), set_diff(dom(G), suc(G, U)))) &&
          forall_in("u", set_diff(dom(ACC), VISITED), eq(suc(ACC, U), empty_set())));
}

Term comp_inner_term() {
  return lambda(
      {"g", "src", "visited'", "acc'", "visited", "acc"},
      eq(dom(ACC_INNER), dom(G)) &&
          forall_in("u", VISITED,
                    implies(ne(U, SRC),
                            eq(suc(ACC_INNER, U), set_diff(dom(G), suc(G, U))))) &&
          forall_in("u", set_diff(dom(ACC_INNER), VISITED),
                    eq(suc(ACC_INNER, U), empty_set())) &&
          eq(suc(ACC_INNER, SRC), set_diff(VISITED_INNER, suc(G, SRC))));
}

}  // namespace

GraphModel graph_complement(const GraphModel& g, InvariantContext& ctx) {
  const Value start = graph_value(copy_vertices(g, ctx));
  const Value result = fold_vertex(
      [&](const Value& acc, const Value& u, InvariantContext& c) {
        const Value existing = g.suc(u);
        return fold_vertex(
            [&](const Value& inner, const Value& w, InvariantContext&) {
              return existing.set_contains(w)
                         ? inner
                         : graph_value(add_edge(as_graph(inner), u, w));
            },
            g, acc, apply_leading(comp_inner_term(), {graph_value(g), u}), c);
      },
      g, start, apply_leading(comp_outer_term(), {graph_value(g)}), ctx);
  as_graph(result).require_closed("complement");
  return as_graph(result);
}

// ---------------------------------------------------------------------------
// mirror

namespace {

Term mirror_outer_term() {
  return lambda(
      {"g", "visited", "acc"},
      eq(dom(ACC), dom(G)) &&
          forall_in("w", dom(ACC),
                    forall_in("u", dom(ACC),
                              eq(mem(U, suc(ACC, W)),
                                 mem(U, VISITED) && mem(W, suc(G, U))))));
}

Term mirror_inner_term() {
  return lambda(
      {"g", "src", "visited'", "acc'", "visited", "acc"},
      eq(dom(ACC_INNER), dom(G)) &&
          forall_in(
              "w", dom(ACC_INNER),
              forall_in("u", dom(ACC_INNER),
                        eq(mem(U, suc(ACC_INNER, W)),
                           (mem(U, VISITED) && ne(U, SRC) && mem(W, suc(G, U))) ||
                               (eq(U, SRC) && mem(W, VISITED_INNER))))));
}

}  // namespace

GraphModel graph_mirror(const GraphModel& g, InvariantContext& ctx) {
  const Value start = graph_value(copy_vertices(g, ctx));
  const Value result = fold_vertex(
      [&](const Value& acc, const Value& u, InvariantContext& c) {
        return fold_succ(
            [&u](const Value& inner, const Value& e, InvariantContext&) {
              return graph_value(add_edge(as_graph(inner), e, u));
            },
            acc, g, u, apply_leading(mirror_inner_term(), {graph_value(g), u}), c);
      },
      g, start, apply_leading(mirror_outer_term(), {graph_value(g)}), ctx);
  as_graph(result).require_closed("mirror");
  return as_graph(result);
}

// ---------------------------------------------------------------------------
// copy_vertices

GraphModel copy_vertices(const GraphModel& g, InvariantContext& ctx) {
  static const Term inv =
      lambda({"visited", "acc"}, eq(dom(ACC), set_of(VISITED)) && edgeless(ACC));
  const Value result = fold_vertex(
      [](const Value& acc, const Value& v, InvariantContext&) {
        return graph_value(add_vertex(as_graph(acc), v));
      },
      g, graph_value(GraphModel{}), eval(inv, Env{}), ctx);
  return as_graph(result);
}

// ---------------------------------------------------------------------------
// check_path

bool check_path(const GraphModel& g, const std::vector<Value>& path,
                InvariantContext& ctx) {
  const Value ok = Value::ref(Value::boolean(true));
  const Value prev = Value::ref(Value::unit());
  const Value gv = graph_value(g);
  const Term i = var("i");

  // !ok = (every element in dom /\ every consecutive pair is an edge)
  //   /\ (len v > 0 -> !prev = v[len v - 1])
  const Term valid =
      forall_range("i", integer(0), len(V), mem(index(V, i), dom(G))) &&
      forall_range("i", integer(0), len(V) - integer(1),
                   mem(index(V, i + integer(1)), suc(G, index(V, i))));
  const Term inv = lambda(
      {"v"}, eq(deref(var("ok")), valid) &&
                 implies(len(V) > integer(0),
                         eq(deref(var("prev")), index(V, len(V) - integer(1)))));
  const Env env{{"g", gv}, {"ok", ok}, {"prev", prev}};

  const Value collection = Value::seq(path);
  ClientContract contract{eval(inv, env), remaining_elements_measure(), collection,
                          ArgOrder::AccumulatorFirst, "check_path"};
  Cursor cursor = seq_cursor(path);
  checked_iter(
      [&](const Value& x, InvariantContext&) {
        RefCell& flag = ok.as_ref();
        RefCell& last = prev.as_ref();
        const bool first = last.value.is(Value::Kind::Unit);
        bool step_ok = g.contains(x);
        if (!first) step_ok = step_ok && g.suc(last.value).set_contains(x);
        flag.value = Value::boolean(flag.value.as_bool() && step_ok);
        last.value = x;
      },
      cursor, contract, ctx);
  return ok.as_ref().value.as_bool();
}

// ---------------------------------------------------------------------------

GraphModel graph_union(const GraphModel& g1, const GraphModel& g2) {
  InvariantContext ctx;
  return graph_union(g1, g2, ctx);
}

GraphModel graph_intersect(const GraphModel& g1, const GraphModel& g2) {
  InvariantContext ctx;
  return graph_intersect(g1, g2, ctx);
}

GraphModel graph_complement(const GraphModel& g) {
  InvariantContext ctx;
  return graph_complement(g, ctx);
}

GraphModel graph_mirror(const GraphModel& g) {
  InvariantContext ctx;
  return graph_mirror(g, ctx);
}

GraphModel copy_vertices(const GraphModel& g) {
  InvariantContext ctx;
  return copy_vertices(g, ctx);
}

bool check_path(const GraphModel& g, const std::vector<Value>& path) {
  InvariantContext ctx;
  return check_path(g, path, ctx);
}

}  // namespace unfold

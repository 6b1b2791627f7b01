#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "unfold/graph_model.hpp"
#include "unfold/graph_ops.hpp"
#include "unfold/term.hpp"

using namespace unfold;
using oracle::ints;

namespace {

Value vx(long long v) { return Value::integer(v); }
Value vset(std::vector<long long> xs) { return Value::set(ints(xs)); }

}  // namespace

TEST(GraphModel, AddVertex) {
  GraphModel g = add_vertex(GraphModel{}, vx(1));
  EXPECT_EQ(g.dom(), vset({1}));
  EXPECT_EQ(g.suc(vx(1)), vset({}));
  EXPECT_EQ(add_vertex(g, vx(1)), g);
  EXPECT_EQ(add_vertex(g, vx(2)).dom(), vset({1, 2}));
}

TEST(GraphModel, AddEdge) {
  const GraphModel g = make_graph({1, 2}, {});
  const GraphModel h = add_edge(g, vx(1), vx(2));
  EXPECT_EQ(h.suc(vx(1)), vset({2}));
  EXPECT_EQ(h.dom(), g.dom());
  EXPECT_EQ(add_edge(h, vx(1), vx(2)), h);
  EXPECT_THROW(add_edge(g, vx(1), vx(3)), PreconditionError);
  EXPECT_THROW(add_edge(g, vx(3), vx(1)), PreconditionError);
}

TEST(GraphModel, CopyHasValueSemantics) {
  const GraphModel g = make_graph({1, 2}, {{1, 2}});
  const GraphModel c = copy(g);
  EXPECT_EQ(c, g);
  const GraphModel d = add_vertex(c, vx(9));
  EXPECT_EQ(g.dom(), vset({1, 2}));
  EXPECT_NE(d, g);
  EXPECT_EQ(copy(GraphModel{}), GraphModel{});
}

TEST(GraphModel, OutsideDomHasNoSuccessors) {
  const GraphModel g = make_graph({1}, {{1, 1}});
  EXPECT_EQ(g.suc(vx(7)), vset({}));
  EXPECT_TRUE(g.is_closed());
}

TEST(FoldVertex, CountsAndCollects) {
  const GraphModel g = make_graph({1, 4, 6}, {{1, 4}});
  InvariantContext ctx;
  using namespace unfold::term;
  const Value count_inv = eval(lambda({"v", "a"}, eq(var("a"), len(var("v")))), Env{});
  EXPECT_EQ(fold_vertex([](const Value& a, const Value&, InvariantContext&) {
    return Value::integer(a.as_int() + 1);
  }, g, Value::integer(0), count_inv, ctx),
            vx(3));
  const Value collect_inv = eval(lambda({"v", "a"}, eq(var("a"), set_of(var("v")))), Env{});
  EXPECT_EQ(fold_vertex([](const Value& a, const Value& x, InvariantContext&) {
    return set_insert(a, x);
  }, g, vset({}), collect_inv, ctx),
            g.dom());
  const Value any = eval(lambda({"v", "a"}, boolean(true)), Env{});
  EXPECT_EQ(fold_vertex([](const Value& a, const Value&, InvariantContext&) { return a; },
                        GraphModel{}, vx(5), any, ctx),
            vx(5));
}

TEST(FoldSucc, OutDegree) {
  const GraphModel g = make_graph({1, 2, 3}, {{1, 2}, {1, 3}});
  InvariantContext ctx;
  using namespace unfold::term;
  const Value inv = eval(lambda({"v", "a"}, eq(var("a"), len(var("v")))), Env{});
  auto inc = [](const Value& a, const Value&, InvariantContext&) {
    return Value::integer(a.as_int() + 1);
  };
  EXPECT_EQ(fold_succ(inc, vx(0), g, vx(1), inv, ctx), vx(2));
  EXPECT_EQ(fold_succ(inc, vx(0), g, vx(3), inv, ctx), vx(0));
  EXPECT_THROW(fold_succ(inc, vx(0), g, vx(8), inv, ctx), PreconditionError);
}

TEST(Union, Examples) {
  const GraphModel g = make_graph({1, 2}, {{1, 2}, {2, 2}});
  EXPECT_EQ(graph_union(g, GraphModel{}), g);
  EXPECT_EQ(graph_union(g, g), g);
  const GraphModel r = graph_union(make_graph({1, 2}, {{1, 2}}), make_graph({2, 3}, {{2, 3}}));
  EXPECT_EQ(r.dom(), vset({1, 2, 3}));
  EXPECT_EQ(r.suc(vx(1)), vset({2}));
  EXPECT_EQ(r.suc(vx(2)), vset({3}));
}

TEST(Union, InvariantsAtBoundaries) {
  const GraphModel g1 = make_graph({1, 2}, {{1, 2}});
  const GraphModel g2 = make_graph({2, 3}, {{2, 3}});
  const Value outer = union_outer(g1, g2);
  EXPECT_TRUE(apply_lambda(outer, {Value::seq({}), Value::graph(copy(g2))}).as_bool());
  const GraphModel r = graph_union(g1, g2);
  EXPECT_TRUE(apply_lambda(outer, {Value::seq(ints({1, 2})), Value::graph(r)}).as_bool());
  // Inner invariant at the end of vertex 1's successors.
  GraphModel step = add_edge(add_vertex(g2, vx(1)), vx(1), vx(2));
  const Value inner = union_inner(g1, g2, vx(1));
  EXPECT_TRUE(apply_lambda(inner, {Value::seq(ints({2})), Value::graph(step),
                                   Value::seq(ints({1})), Value::graph(g2)})
                  .as_bool());
}

TEST(Union, WrongStartIsCaught) {
  // Appending an extra edge breaks the outer invariant at the first step.
  const GraphModel g1 = make_graph({1, 2}, {{1, 2}});
  const GraphModel g2 = make_graph({2}, {});
  const Value outer = union_outer(g1, g2);
  const GraphModel bad = make_graph({1, 2}, {{1, 2}, {2, 1}});
  EXPECT_FALSE(apply_lambda(outer, {Value::seq(ints({1})), Value::graph(bad)}).as_bool());
}

TEST(Intersect, Examples) {
  const GraphModel g = make_graph({1, 2, 3}, {{1, 2}, {1, 3}});
  EXPECT_EQ(graph_intersect(g, g), g);
  EXPECT_EQ(graph_intersect(make_graph({1}, {}), make_graph({2}, {})), GraphModel{});
  const GraphModel r = graph_intersect(g, make_graph({1, 2}, {{1, 2}}));
  EXPECT_EQ(r.dom(), vset({1, 2}));
  EXPECT_EQ(r.suc(vx(1)), vset({2}));
}

TEST(Complement, Examples) {
  const GraphModel full = make_graph({1, 2}, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  const GraphModel none = make_graph({1, 2}, {});
  EXPECT_EQ(graph_complement(full), none);
  EXPECT_EQ(graph_complement(none), full);
  const GraphModel r = graph_complement(make_graph({1, 2}, {{1, 2}}));
  EXPECT_EQ(r.suc(vx(1)), vset({1}));
  EXPECT_EQ(r.suc(vx(2)), vset({1, 2}));
}

TEST(Mirror, Examples) {
  const GraphModel g = make_graph({1, 2, 3}, {{1, 2}, {2, 3}});
  EXPECT_EQ(graph_mirror(graph_mirror(g)), g);
  EXPECT_EQ(graph_mirror(make_graph({1, 2}, {{1, 2}})), make_graph({1, 2}, {{2, 1}}));
  const GraphModel sym = make_graph({1, 2}, {{1, 2}, {2, 1}});
  EXPECT_EQ(graph_mirror(sym), sym);
}

TEST(CopyVertices, Examples) {
  EXPECT_EQ(copy_vertices(GraphModel{}), GraphModel{});
  EXPECT_EQ(copy_vertices(make_graph({1, 2}, {{1, 2}})), make_graph({1, 2}, {}));
  InvariantContext ctx;
  copy_vertices(make_graph({4, 5, 6}, {}), ctx);
  EXPECT_EQ(ctx.stats().invariant_checks, 4u);
}

TEST(CheckPath, Examples) {
  const GraphModel chain = make_graph({1, 2, 3}, {{1, 2}, {2, 3}});
  EXPECT_TRUE(check_path(chain, {}));
  EXPECT_TRUE(check_path(chain, ints({1, 2, 3})));
  EXPECT_TRUE(check_path(chain, ints({2})));
  EXPECT_FALSE(check_path(chain, ints({9})));
  EXPECT_FALSE(check_path(make_graph({1, 2}, {{1, 2}}), ints({1, 3})));
  EXPECT_FALSE(check_path(chain, ints({1, 3})));
}

TEST(GraphProperty, OperationsMatchOracles) {
  oracle::Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = oracle::random_graph(rng, 6);
    const auto b = oracle::random_graph(rng, 6);
    const GraphModel ga = oracle::to_model(a), gb = oracle::to_model(b);
    EXPECT_TRUE(oracle::same(oracle::from_model(graph_union(ga, gb)), oracle::graph_union(a, b)));
    EXPECT_TRUE(oracle::same(oracle::from_model(graph_intersect(ga, gb)),
                             oracle::graph_intersect(a, b)));
    EXPECT_TRUE(oracle::same(oracle::from_model(graph_complement(ga)),
                             oracle::graph_complement(a)));
    EXPECT_TRUE(oracle::same(oracle::from_model(graph_mirror(ga)), oracle::graph_mirror(a)));
    EXPECT_TRUE(oracle::same(oracle::from_model(copy_vertices(ga)), oracle::copy_vertices(a)));
  }
}

TEST(GraphProperty, Algebra) {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const GraphModel a = oracle::to_model(oracle::random_graph(rng, 5));
    const GraphModel b = oracle::to_model(oracle::random_graph(rng, 5));
    const GraphModel c = oracle::to_model(oracle::random_graph(rng, 5));
    EXPECT_EQ(graph_union(a, b), graph_union(b, a));
    EXPECT_EQ(graph_union(graph_union(a, b), c), graph_union(a, graph_union(b, c)));
    EXPECT_EQ(graph_intersect(a, a), a);
    EXPECT_EQ(graph_mirror(graph_mirror(a)), a);
    EXPECT_EQ(graph_complement(graph_complement(a)), a);
  }
}

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "unfold/dsl/demo.hpp"
#include "unfold/dsl/desugar.hpp"
#include "unfold/dsl/parser.hpp"
#include "unfold/dsl/render.hpp"
#include "unfold/dsl/runner.hpp"

using namespace unfold;
using namespace unfold::dsl;

namespace {

const std::vector<std::string> kGoldens = {"fold_sum", "iter_stack", "graph_union", "nested3"};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  EXPECT_TRUE(in) << path;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string golden(const std::string& name, const char* ext) {
  return slurp(std::string(UNFOLD_GOLDEN_DIR) + "/" + name + ext);
}

// Every source the front end should handle: the golden specs and the
// embedded demo scenarios.
std::vector<std::pair<std::string, std::string>> all_sources() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& g : kGoldens) out.emplace_back(g, golden(g, ".spec"));
  for (const auto& d : demo_corpus()) out.emplace_back(std::string(d.name), std::string(d.source));
  return out;
}

const char* kFold = R"(val fold : ('a -> 'b -> 'a) -> 'a -> 'b seq -> 'a
(*@ r = fold func acc col
    folds ~permitted:(fun v -> len v <= len collection)
    ~complete:(fun v -> len v = len collection)
    with structure = ('b seq), elt = 'b, accumulator = acc *))";

const char* kIter = R"(val iter : ('a -> unit) -> 'a seq -> unit
(*@ r = iter func col
    iters ~permitted:(fun v -> len v <= len collection)
    ~complete:(fun v -> len v = len collection)
    with structure = ('a seq), elt = 'a *))";

}  // namespace

class Golden : public ::testing::TestWithParam<std::string> {};

TEST_P(Golden, SkeletonIsByteExact) {
  const Scenario s = parse_scenario(golden(GetParam(), ".spec"));
  EXPECT_EQ(desugar_scenario(s), golden(GetParam(), ".skel"));
}

TEST_P(Golden, DesugarIsDeterministic) {
  const std::string text = golden(GetParam(), ".spec");
  const std::string first = desugar_scenario(parse_scenario(text));
  for (int i = 0; i < 3; ++i) EXPECT_EQ(desugar_scenario(parse_scenario(text)), first);
}

TEST_P(Golden, ScenarioPassesUnderTheChecker) {
  const Report r = run_scenario(parse_scenario(golden(GetParam(), ".spec")));
  ASSERT_FALSE(r.rows.empty());
  for (const auto& row : r.rows) EXPECT_EQ(row.status, Status::Pass) << row.name << " " << row.detail;
}

INSTANTIATE_TEST_SUITE_P(Specs, Golden, ::testing::ValuesIn(kGoldens),
                         [](const auto& info) { return info.param; });

TEST(RoundTrip, EveryDeclAndCallReparsesToItself) {
  std::size_t decls = 0, calls = 0;
  for (const auto& [name, source] : all_sources()) {
    const Scenario s = parse_scenario(source);
    for (const auto& d : s.decls) {
      const std::string text = render_decl(d.spec);
      EXPECT_EQ(parse_decl(text), d.spec) << name << "\n" << text;
      ++decls;
    }
    for (const auto& c : s.calls) {
      const std::string text = render_call(c.spec);
      EXPECT_EQ(parse_call(text), c.spec) << name << "\n" << text;
      ++calls;
    }
  }
  EXPECT_GE(decls, 19u);
  EXPECT_GE(calls, 25u);
}

TEST(RoundTrip, RenderIsAFixedPoint) {
  for (const auto& [name, source] : all_sources()) {
    for (const auto& d : parse_scenario(source).decls) {
      const std::string once = render_decl(d.spec);
      EXPECT_EQ(render_decl(parse_decl(once)), once) << name;
    }
  }
}

TEST(Desugar, SingleLoopWithoutClientWrapper) {
  const DeclSpec d = parse_decl(kFold);
  const CallSpec c = parse_call(
      "folds ~inv:(fun a v -> a = len v) ~collection:s ~convergence:(fun c v -> len c - len v)");
  const std::string out = desugar(d, c);
  EXPECT_EQ(out.rfind("scope Fold\n", 0), 0u) << out;
  EXPECT_NE(out.find("  val create (collection: 'b seq) : cursor 'b\n"), std::string::npos);
  EXPECT_NE(out.find("let acc = ref x0 in\n"), std::string::npos) << out;
  EXPECT_NE(out.find("let cursor = Fold.create s in\n"), std::string::npos);
  EXPECT_NE(out.find("invariant { (fun a v -> a = len v) !acc cursor.visited }"),
            std::string::npos);
  EXPECT_NE(out.find("acc := func !acc x;"), std::string::npos) << out;
  EXPECT_EQ(out.find("let main"), std::string::npos);
  EXPECT_EQ(out.substr(out.size() - 5), "!acc\n");
}

TEST(Desugar, ItersHaveNoAccumulator) {
  const DeclSpec d = parse_decl(kIter);
  const CallSpec c = parse_call(
      "iters ~inv:(fun v -> true) ~collection:s ~convergence:(fun c v -> len c - len v)");
  const std::string out = desugar(d, c);
  EXPECT_EQ(out.find("acc"), std::string::npos) << out;
  EXPECT_NE(out.find("invariant { (fun v -> true) cursor.visited }"), std::string::npos);
  EXPECT_NE(out.find("func x;"), std::string::npos);
  EXPECT_EQ(out.substr(out.size() - 3), "()\n");
}

TEST(Desugar, MapsAndFiltersBuildSequences) {
  const std::string common =
      "~permitted:(fun v -> true) ~complete:(fun v -> true) "
      "with structure = ('a seq), elt = 'a, accumulator = acc";
  const CallSpec map_call = parse_call(
      "maps ~inv:(fun a v -> len a = len v) ~collection:s ~convergence:(fun c v -> 0)");
  const std::string map = desugar(parse_decl("r = map func acc col maps " + common), map_call);
  EXPECT_NE(map.find("let acc = ref empty in"), std::string::npos) << map;
  EXPECT_NE(map.find("acc := snoc !acc (func x);"), std::string::npos) << map;

  CallSpec filter_call = map_call;
  filter_call.pattern = Pattern::Filters;
  const std::string filter =
      desugar(parse_decl("r = filter func acc col filters " + common), filter_call);
  EXPECT_NE(filter.find("if func x then acc := snoc !acc x;"), std::string::npos) << filter;
}

TEST(Annotations, OuterArgumentsFollowOwnArguments) {
  const DeclSpec d = parse_decl(kFold);
  const CallSpec c = parse_call(
      "folds ~inv:p ~collection:xs ~convergence:(fun c v -> len c - len v)");
  EXPECT_EQ(annotations(d, c, {}).invariant, "p !acc cursor.visited");
  EXPECT_EQ(annotations(d, c, {}).variant, "(fun c v -> len c - len v) xs cursor.visited");

  const Enclosing fold_level{Pattern::Folds, ArgOrder::AccumulatorFirst};
  const Enclosing iter_level{Pattern::Iters, ArgOrder::AccumulatorFirst};
  EXPECT_EQ(annotations(d, c, {fold_level}).invariant,
            "p !acc' cursor'.visited !acc cursor.visited");
  EXPECT_EQ(annotations(d, c, {iter_level, fold_level}).invariant,
            "p !acc'' cursor''.visited cursor.visited !acc' cursor'.visited");
  EXPECT_EQ(annotations(d, c, {Enclosing{Pattern::Folds, ArgOrder::VisitedFirst}}).invariant,
            "p !acc' cursor'.visited cursor.visited !acc");
  CallSpec iter_call = c;
  iter_call.pattern = Pattern::Iters;
  EXPECT_EQ(annotations(parse_decl(kIter), iter_call, {fold_level}).invariant,
            "p cursor'.visited !acc cursor.visited");
}

TEST(Annotations, InvariantArity) {
  const Enclosing fold_level{Pattern::Folds, ArgOrder::AccumulatorFirst};
  const Enclosing iter_level{Pattern::Iters, ArgOrder::AccumulatorFirst};
  EXPECT_EQ(invariant_arity(Pattern::Folds, {}), 2u);
  EXPECT_EQ(invariant_arity(Pattern::Iters, {}), 1u);
  EXPECT_EQ(invariant_arity(Pattern::Folds, {fold_level, iter_level}), 5u);
  EXPECT_EQ(term_arity(parse_term("fun a v -> true"), {}), 2u);
  EXPECT_EQ(term_arity(parse_term("(fun g a v -> true) h"), {}), 2u);
  EXPECT_EQ(term_arity(parse_term("p g1 g2"), {{"p", 5}}), 3u);
  EXPECT_FALSE(term_arity(parse_term("q"), {}));
}

TEST(Desugar, ArityMismatchIsASemanticError) {
  const DeclSpec d = parse_decl(kFold);
  const CallSpec c = parse_call(
      "folds ~inv:(fun v -> true) ~collection:s ~convergence:(fun c v -> len c - len v)");
  EXPECT_THROW(desugar(d, c), SemanticError);
  CallSpec three = c;
  three.inv = parse_term("fun a v u -> true");
  EXPECT_NO_THROW(desugar(d, three, {Enclosing{Pattern::Iters, ArgOrder::AccumulatorFirst}}));
  EXPECT_THROW(desugar(d, three), SemanticError);
  try {
    desugar(d, c);
  } catch (const SemanticError& e) {
    EXPECT_EQ(e.where().line, 0u);
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos) << e.what();
  }

  // The same mismatch reached through a nested scenario.
  std::string nested = golden("nested3", ".spec");
  nested.replace(nested.find("fun c w a u b v ->"), 18, "fun c w a u ->");
  EXPECT_THROW(desugar_scenario(parse_scenario(nested)), SemanticError);
}

TEST(Desugar, ScopeNamesComeFromTheFunction) {
  EXPECT_EQ(scope_name(parse_decl(kFold)), "Fold");
  DeclSpec d = parse_decl(kIter);
  d.function = "fold_vertex";
  EXPECT_EQ(scope_name(d), "Fold_vertex");
}

namespace {

struct Expected {
  std::vector<std::string> variants;
  std::vector<std::string> invariants;
};

// Annotation texts of each client function of a skeleton, in the order
// they occur, which is also the nesting depth.
std::map<std::string, Expected> annotation_lines(const std::string& skeleton) {
  std::map<std::string, Expected> out;
  static const std::regex fn(R"(^let (\w+) \(\) =$)");
  static const std::regex note(R"(^\s*(variant|invariant) \{ (.*) \}$)");
  std::istringstream in(skeleton);
  std::string line, current;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_match(line, m, fn)) {
      current = m[1];
    } else if (!current.empty() && std::regex_match(line, m, note)) {
      auto& e = out[current];
      (m[1] == "variant" ? e.variants : e.invariants).push_back(m[2]);
    }
  }
  return out;
}

}  // namespace

TEST(TraceAgreement, EventTextsMatchTheSkeleton) {
  for (const auto& [name, source] : all_sources()) {
    const Scenario s = parse_scenario(source);
    const auto expected = annotation_lines(desugar_scenario(s));
    std::size_t events = 0;
    RunOptions options;
    options.on_event = [&](const std::string& call, const TraceEvent& e) {
      if (e.kind == TraceEvent::Kind::Next) return;
      ++events;
      auto it = expected.find(call);
      ASSERT_NE(it, expected.end()) << name << ": " << call;
      const auto& lines = e.kind == TraceEvent::Kind::Variant ? it->second.variants
                                                             : it->second.invariants;
      ASSERT_LT(e.depth, lines.size()) << name << ": " << call;
      EXPECT_EQ(e.text, lines[e.depth]) << name << ": " << call << " depth " << e.depth;
    };
    run_scenario(s, options);
    EXPECT_GT(events, 0u) << name;
  }
}

TEST(TraceAgreement, EventsFollowTheLoopShape) {
  const Scenario s = parse_scenario(golden("fold_sum", ".spec"));
  std::string kinds;
  RunOptions options;
  options.on_event = [&](const std::string&, const TraceEvent& e) {
    kinds += e.kind == TraceEvent::Kind::Invariant ? 'I'
             : e.kind == TraceEvent::Kind::Variant ? 'V'
                                                   : 'N';
  };
  run_scenario(s, options);
  // Initial invariant; then per element: variant, next, invariant, variant.
  EXPECT_EQ(kinds, "IVNIV" "VNIV" "VNIV");
}

TEST(TraceAgreement, NestedDepthsAndStepCounts) {
  const Scenario s = parse_scenario(golden("nested3", ".spec"));
  std::map<std::size_t, std::size_t> next_per_depth;
  RunOptions options;
  options.on_event = [&](const std::string&, const TraceEvent& e) {
    if (e.kind == TraceEvent::Kind::Next) ++next_per_depth[e.depth];
  };
  const Report r = run_scenario(s, options);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].status, Status::Pass);
  // cube = [[[1, 2], [3]], [[4, 5, 6]], []]
  EXPECT_EQ(next_per_depth[0], 3u);
  EXPECT_EQ(next_per_depth[1], 3u);
  EXPECT_EQ(next_per_depth[2], 6u);
}

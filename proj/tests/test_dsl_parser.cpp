#include <gtest/gtest.h>

#include <random>

#include "unfold/dsl/lexer.hpp"
#include "unfold/dsl/parser.hpp"
#include "unfold/dsl/render.hpp"

using namespace unfold;
using namespace unfold::dsl;
namespace t = unfold::term;

namespace {

const char* kFoldDecl = R"(val fold : ('a -> 'b -> 'a) -> 'a -> 'b seq -> 'a
(*@ r = fold func acc col
    folds ~permitted:(fun v -> len v <= len collection /\
                forall i. 0 <= i < len v -> v[i] = (collection)[i])
    ~complete:(fun v -> len v = len collection)
    with structure = ('b seq), elt = 'b, accumulator = acc *))";

const char* kIterDecl = R"(val iter: ('a -> unit) -> 'a seq -> unit
(*@ r = iter func col
  iters ~permitted:(fun v -> len v <= len collection /\
                    forall i. 0 <= i < len v -> v[i] = (collection)[i])
        ~complete:(fun v -> len v = len collection)
  with structure = ('a seq), elt = 'a *))";

const char* kSumCall = R"((*@ folds
      ~collection:s
      ~convergence:(fun c v -> len c - len v)
      ~inv:(fun a v -> a = sum (fun i -> v[i]) 0 (len v)) *))";

Value eval_closed(const std::string& text, const Env& env = {}) {
  return eval(parse_term(text), env);
}

template <class E>
std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(Lexer, TokensAndPositions) {
  const auto toks = tokenize("(*@ folds ~inv:(fun a' v -> !a <= v[0]) *)");
  ASSERT_GE(toks.size(), 5u);
  EXPECT_EQ(toks[0].kind, Tok::SpecOpen);
  EXPECT_EQ(toks[1].kind, Tok::Ident);
  EXPECT_EQ(toks[2].kind, Tok::Clause);
  EXPECT_EQ(toks[2].text, "inv");
  EXPECT_EQ(toks[5].text, "a'");
  EXPECT_EQ(toks.back().kind, Tok::End);
  EXPECT_EQ(toks[toks.size() - 2].kind, Tok::SpecClose);
  EXPECT_EQ(toks[1].at.line, 1u);
  EXPECT_EQ(toks[1].at.column, 5u);
}

TEST(Lexer, CommentsAndTypeVariables) {
  const auto toks = tokenize("# note\n(* outer (* inner *) *) 'b seq");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[0].kind, Tok::TypeVar);
  EXPECT_EQ(toks[0].text, "'b");
  EXPECT_EQ(toks[0].at.line, 2u);

  const auto trailing = tokenize("a # rest of line\nb");
  ASSERT_EQ(trailing.size(), 3u);
  EXPECT_EQ(trailing[1].text, "b");
}

TEST(Lexer, UnterminatedCommentIsAParseError) {
  EXPECT_THROW(tokenize("(* never closed"), ParseError);
}

TEST(ParseTerm, ArithmeticPrecedence) {
  EXPECT_EQ(eval_closed("1 + 2 * 3 - 4"), Value::integer(3));
  EXPECT_EQ(eval_closed("-2 * 3"), Value::integer(-6));
  EXPECT_EQ(parse_term("-3"), t::integer(-3));
}

TEST(ParseTerm, ComparisonChainsBecomeConjunctions) {
  EXPECT_EQ(parse_term("0 <= i < n"),
            t::conj(t::le(t::integer(0), t::var("i")), t::lt(t::var("i"), t::var("n"))));
}

TEST(ParseTerm, ImplicationIsRightAssociative) {
  const Term a = t::var("a"), b = t::var("b"), c = t::var("c");
  EXPECT_EQ(parse_term("a -> b -> c"), t::implies(a, t::implies(b, c)));
  EXPECT_EQ(parse_term("a /\\ b \\/ c"), t::disj(t::conj(a, b), c));
}

TEST(ParseTerm, PostfixIndexVersusApplication) {
  EXPECT_EQ(parse_term("v[i]"), t::index(t::var("v"), t::var("i")));
  EXPECT_EQ(parse_term("f [1]"), t::apply(t::var("f"), {t::seq_lit({t::integer(1)})}));
  EXPECT_EQ(parse_term("s[..k]"), t::prefix(t::var("s"), t::var("k")));
  EXPECT_EQ(parse_term("g.suc s"), t::suc(t::var("g"), t::var("s")));
  EXPECT_EQ(parse_term("len g.dom"), t::len(t::dom(t::var("g"))));
}

TEST(ParseTerm, ForallOverRangeAndSet) {
  const Term range = parse_term("forall i. 0 <= i < len v -> v[i] > 0");
  ASSERT_EQ(range.op(), Op::ForallRange);
  EXPECT_EQ(range.node().name, "i");
  EXPECT_FALSE(range.node().inclusive);

  const Term in = parse_term("forall v. v mem s /\\ v <> 3 -> v > 0");
  ASSERT_EQ(in.op(), Op::ForallIn);
  EXPECT_EQ(in.node().kids[1].op(), Op::Implies);

  EXPECT_EQ(eval_closed("forall v. v mem {1, 2, 3} /\\ v <> 2 -> v <> 2"), Value::boolean(true));
  EXPECT_EQ(eval_closed("forall i. 1 <= i <= 3 -> i < 3"), Value::boolean(false));
}

TEST(ParseTerm, UnboundedForallIsRejected) {
  EXPECT_THROW(parse_term("forall x. x > 0"), ParseError);
  EXPECT_THROW(parse_term("forall x. x > 0 -> x > 1"), ParseError);
}

TEST(ParseTerm, LetIfAndLambdas) {
  EXPECT_EQ(eval_closed("let (a, b) = (2, 5) in if a < b then b - a else 0"), Value::integer(3));
  EXPECT_EQ(eval_closed("(fun (x, y) z -> x * y + z) (3, 4) 5"), Value::integer(17));
  EXPECT_EQ(eval_closed("sum (fun i -> i) 0 5"), Value::integer(10));
}

TEST(ParseTerm, GraphPrimitives) {
  const Value g = eval_closed("add_edge (add_vertex (add_vertex empty_graph 1) 2) 1 2");
  EXPECT_EQ(eval(parse_term("g.suc 1 = {2} /\\ 2 mem g.dom"), Env{{"g", g}}),
            Value::boolean(true));
}

TEST(ParseTerm, ErrorsCarryLocations) {
  try {
    parse_term("1 +\n  )");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.where().line, 2u);
    EXPECT_EQ(e.where().column, 3u);
  }
  EXPECT_THROW(parse_term("len"), ParseError);
  EXPECT_THROW(parse_term("(1, 2"), ParseError);
  EXPECT_THROW(parse_term("1 2 )"), ParseError);
}

TEST(ParseType, ConstructorsTuplesArrows) {
  EXPECT_EQ(parse_type("'b seq"), TypeExpr::con("seq", {TypeExpr::var("b")}));
  EXPECT_EQ(parse_type("gt * vt"),
            TypeExpr::tuple({TypeExpr::con("gt"), TypeExpr::con("vt")}));
  const TypeExpr f = parse_type("('a -> 'b -> 'a) -> 'a");
  ASSERT_EQ(f.kind, TypeExpr::Kind::Arrow);
  EXPECT_EQ(f.args[0].kind, TypeExpr::Kind::Arrow);
}

TEST(ParseDecl, FoldOverSequences) {
  const DeclSpec d = parse_decl(kFoldDecl);
  EXPECT_EQ(d.pattern, Pattern::Folds);
  EXPECT_EQ(d.result, "r");
  EXPECT_EQ(d.function, "fold");
  EXPECT_EQ(d.arguments, (std::vector<std::string>{"func", "acc", "col"}));
  EXPECT_EQ(d.accumulator, "acc");
  EXPECT_EQ(d.collection_argument(), "col");
  EXPECT_EQ(d.structure, TypeExpr::con("seq", {TypeExpr::var("b")}));
  EXPECT_EQ(d.elt, TypeExpr::var("b"));
  EXPECT_EQ(d.order(), ArgOrder::AccumulatorFirst);
  EXPECT_EQ(d.traversal(), Traversal::Sequence);

  // permitted is the prefix predicate: evaluate it on a concrete collection.
  const Env env{{"collection", Value::seq({Value::integer(4), Value::integer(5)})}};
  const Value permitted = eval(d.permitted, env);
  EXPECT_EQ(apply_lambda(permitted, {Value::seq({Value::integer(4)})}), Value::boolean(true));
  EXPECT_EQ(apply_lambda(permitted, {Value::seq({Value::integer(5)})}), Value::boolean(false));
  const Value complete = eval(d.complete, env);
  EXPECT_EQ(apply_lambda(complete, {Value::seq({Value::integer(4), Value::integer(5)})}),
            Value::boolean(true));
}

TEST(ParseDecl, IterHasNoAccumulator) {
  const DeclSpec d = parse_decl(kIterDecl);
  EXPECT_EQ(d.pattern, Pattern::Iters);
  EXPECT_FALSE(d.accumulator);
  EXPECT_EQ(d.collection_argument(), "col");
}

TEST(ParseDecl, ClausesInAnyOrderAndBareBlocks) {
  const DeclSpec a = parse_decl(
      "r = fold_vertex func graph acc folds ~complete:(fun v -> v = collection.dom) "
      "~permitted:(fun v -> v subset collection.dom /\\ distinct v) "
      "with structure = gt, elt = vt, accumulator = acc");
  EXPECT_EQ(a.traversal(), Traversal::Vertices);
  EXPECT_EQ(a.collection_argument(), "graph");
  EXPECT_EQ(a.complete, parse_term("fun v -> v = collection.dom"));
}

TEST(ParseDecl, SignatureDecidesArgumentOrder) {
  const DeclSpec d = parse_decl(
      "val fold_vertex : (vt -> 'a -> 'a) -> gt -> 'a -> 'a\n"
      "(*@ r = fold_vertex func graph acc folds ~permitted:(fun v -> true) "
      "~complete:(fun v -> true) with structure = gt, elt = vt, accumulator = acc *)");
  EXPECT_EQ(d.order(), ArgOrder::VisitedFirst);
}

TEST(ParseDecl, MissingAccumulatorOnFolds) {
  EXPECT_THROW(parse_decl("r = fold func acc col folds ~permitted:(fun v -> true) "
                          "~complete:(fun v -> true) with structure = ('b seq), elt = 'b"),
               SemanticError);
}

TEST(ParseDecl, AccumulatorOnItersIsRejected) {
  EXPECT_THROW(parse_decl("r = iter func acc col iters ~permitted:(fun v -> true) "
                          "~complete:(fun v -> true) with structure = ('b seq), elt = 'b, "
                          "accumulator = acc"),
               SemanticError);
}

TEST(ParseDecl, AccumulatorMustBeAHeaderArgument) {
  EXPECT_THROW(parse_decl("r = fold func acc col folds ~permitted:(fun v -> true) "
                          "~complete:(fun v -> true) with structure = ('b seq), elt = 'b, "
                          "accumulator = other"),
               SemanticError);
}

TEST(ParseDecl, ClauseErrors) {
  const std::string unknown = error_of<ParseError>([] {
    parse_decl("r = fold func acc col folds ~variant:(fun v -> true) "
               "~complete:(fun v -> true) with structure = 'b, elt = 'b, accumulator = acc");
  });
  EXPECT_NE(unknown.find("~permitted:"), std::string::npos) << unknown;
  EXPECT_NE(unknown.find("~complete:"), std::string::npos) << unknown;

  EXPECT_THROW(parse_decl("r = fold func acc col folds ~permitted:(fun v -> true) "
                          "with structure = 'b, elt = 'b, accumulator = acc"),
               SemanticError);
  EXPECT_THROW(parse_decl("r = fold func acc col folds ~permitted:(fun v -> true) "
                          "~permitted:(fun v -> true) ~complete:(fun v -> true) "
                          "with structure = 'b, elt = 'b, accumulator = acc"),
               SemanticError);
  EXPECT_THROW(parse_decl("r = fold func acc col folds ~inv:(fun v -> true) "
                          "~complete:(fun v -> true) with structure = 'b, elt = 'b, "
                          "accumulator = acc"),
               SemanticError);
  EXPECT_THROW(parse_decl("r = fold func acc col folds ~permitted:(fun a v -> true) "
                          "~complete:(fun v -> true) with structure = 'b, elt = 'b, "
                          "accumulator = acc"),
               SemanticError);
}

TEST(ParseDecl, TypeArityIsChecked) {
  EXPECT_THROW(parse_decl("r = fold func acc col folds ~permitted:(fun v -> true) "
                          "~complete:(fun v -> true) with structure = seq, elt = 'b, "
                          "accumulator = acc"),
               SemanticError);
}

TEST(ParseCall, SumClient) {
  const CallSpec c = parse_call(kSumCall);
  EXPECT_EQ(c.pattern, Pattern::Folds);
  EXPECT_EQ(c.collection, t::var("s"));
  EXPECT_EQ(c.inv, parse_term("fun a v -> a = sum (fun i -> v[i]) 0 (len v)"));
  EXPECT_EQ(c.convergence, parse_term("fun c v -> len c - len v"));
}

TEST(ParseCall, StackClient) {
  const CallSpec c = parse_call(
      "(*@ iters ~inv:(fun v -> reverse stack = s[..len v])\n"
      "    ~collection:s ~convergence:(fun c v -> len c - len v) *)");
  EXPECT_EQ(c.pattern, Pattern::Iters);
  EXPECT_EQ(c.inv, t::lambda({"v"}, t::eq(t::reverse(t::var("stack")),
                                            t::prefix(t::var("s"), t::len(t::var("v"))))));
}

TEST(ParseCall, UnknownClauseListsValidKeys) {
  const std::string what = error_of<ParseError>([] {
    parse_call("folds ~inv:(fun a v -> true) ~collection:s ~variant:(fun c v -> 0)");
  });
  for (const char* key : {"~inv:", "~collection:", "~convergence:"})
    EXPECT_NE(what.find(key), std::string::npos) << what;
}

TEST(ParseCall, ConvergenceTakesTwoParameters) {
  EXPECT_THROW(parse_call("folds ~inv:(fun a v -> true) ~collection:s "
                          "~convergence:(fun v -> 0)"),
               SemanticError);
  EXPECT_THROW(parse_call("folds ~inv:(fun a v -> true) ~collection:s"), SemanticError);
}

TEST(ParseScenario, CollectionsCallsAndValidation) {
  const Scenario s = parse_scenario(R"(
collection s = [1, 2, 3]
collection g = graph {
  vertices: 1 2
  edge: 1 2
}
collection t = tree (node leaf 1 (node leaf 2 leaf))
decl fold {
  r = fold func acc col folds ~permitted:(fun v -> true) ~complete:(fun v -> true)
  with structure = ('b seq), elt = 'b, accumulator = acc
}
call total uses fold {
  folds ~inv:(fun a v -> true) ~collection:s ~convergence:(fun c v -> len c - len v)
  consumer = add;
  init = 0;
  expect = 6;
}
)");
  ASSERT_EQ(s.collections.size(), 3u);
  EXPECT_EQ(s.collections[1].kind, CollectionItem::Kind::Graph);
  EXPECT_EQ(s.collections[1].edges.size(), 1u);
  ASSERT_EQ(s.calls.size(), 1u);
  EXPECT_EQ(s.calls[0].consumer.kind, ConsumerSpec::Kind::Builtin);
  EXPECT_EQ(s.top_level_calls().size(), 1u);
}

namespace {

std::string scenario_with(const std::string& call_body, const std::string& extra = "") {
  return "collection s = [1]\n" + extra +
         "decl fold {\n  r = fold func acc col folds ~permitted:(fun v -> true) "
         "~complete:(fun v -> true)\n  with structure = ('b seq), elt = 'b, accumulator = acc\n}\n"
         "call c uses fold {\n" +
         call_body + "\n}\n";
}

const std::string kSpec =
    "  folds ~inv:(fun a v -> true) ~collection:s ~convergence:(fun c v -> len c - len v)\n";

}  // namespace

TEST(ParseScenario, SemanticErrors) {
  EXPECT_NO_THROW(parse_scenario(scenario_with(kSpec + "  consumer = add; init = 0;")));
  // unbound names
  EXPECT_THROW(parse_scenario(scenario_with(kSpec + "  consumer = add; init = nothing;")),
               SemanticError);
  EXPECT_THROW(parse_scenario(scenario_with(
                   "  folds ~inv:(fun a v -> a = w) ~collection:s "
                   "~convergence:(fun c v -> 0)\n  consumer = add; init = 0;")),
               SemanticError);
  // init required and forbidden
  EXPECT_THROW(parse_scenario(scenario_with(kSpec + "  consumer = add;")), SemanticError);
  // pattern mismatch with the declaration
  EXPECT_THROW(parse_scenario(scenario_with(
                   "  iters ~inv:(fun v -> true) ~collection:s ~convergence:(fun c v -> 0)\n"
                   "  consumer = add;")),
               SemanticError);
  // builtin not valid for folds
  EXPECT_THROW(parse_scenario(scenario_with(kSpec + "  consumer = push_stack s; init = 0;")),
               SemanticError);
  // duplicate definitions
  EXPECT_THROW(parse_scenario(scenario_with(kSpec + "  consumer = add; init = 0;",
                                            "collection s = [2]\n")),
               SemanticError);
  // unknown declaration
  EXPECT_THROW(parse_scenario("collection s = [1]\ncall c uses nope {\n" + kSpec +
                              "  consumer = add; init = 0;\n}\n"),
               SemanticError);
  // unknown entry is a syntax error
  EXPECT_THROW(parse_scenario(scenario_with(kSpec + "  consumer = add; init = 0; within = 1;")),
               ParseError);
}

TEST(ParseScenario, NestedCallsSeeConsumerParameters) {
  const std::string text = R"(
collection xss = [[1, 2], [3]]
decl fold {
  r = fold func acc col folds ~permitted:(fun v -> true) ~complete:(fun v -> true)
  with structure = ('b seq), elt = 'b, accumulator = acc
}
call inner uses fold {
  folds ~inv:(fun b w a u -> true) ~collection:xs ~convergence:(fun c v -> len c - len v)
  consumer = add;
  init = a;
}
call outer uses fold {
  folds ~inv:(fun a u -> true) ~collection:xss ~convergence:(fun c v -> len c - len v)
  consumer = fun a xs -> run inner;
  init = 0;
}
)";
  const Scenario s = parse_scenario(text);
  ASSERT_EQ(s.top_level_calls().size(), 1u);
  EXPECT_EQ(s.top_level_calls()[0]->name, "outer");

  // Without the enclosing consumer, `xs` and `a` are unbound.
  std::string broken = text;
  broken.replace(broken.find("fun a xs -> run inner"), 21, "add");
  EXPECT_THROW(parse_scenario(broken), SemanticError);
}

// ---- round trip ------------------------------------------------------------

TEST(Render, ExamplesReparse) {
  for (const char* text :
       {"fun v -> len v <= len collection /\\ (forall i. 0 <= i < len v -> v[i] = collection[i])",
        "a - (b - c)", "(a - b) - c", "-(3)", "- -x", "f (-3) (g x) !r", "not (a /\\ b)",
        "(fun x -> x) 1", "g.suc (v[i])", "len (g.suc s)", "(a, b).dom",
        "let (g, s) = collection in v subset g.suc s /\\ distinct v",
        "if a then b else c", "(a -> b) -> c", "{1, 2} union {3} diff s", "prefix s (len v)",
        "forall w. w mem acc.dom diff visited -> acc.suc w = {}"}) {
    const Term a = parse_term(text);
    EXPECT_EQ(parse_term(render_term(a)), a) << text << " rendered as " << render_term(a);
  }
  EXPECT_EQ(render_term(parse_term("s[..len v]")), "prefix s (len v)");
  EXPECT_EQ(render_term(parse_term("(a + b) * c")), "(a + b) * c");
  EXPECT_EQ(render_term(parse_term("a + (b * c)")), "a + b * c");
}

TEST(Render, DeclAndCallReparse) {
  const DeclSpec d = parse_decl(kFoldDecl);
  EXPECT_EQ(parse_decl(render_decl(d)), d);
  const DeclSpec i = parse_decl(kIterDecl);
  EXPECT_EQ(parse_decl(render_decl(i)), i);
  const CallSpec c = parse_call(kSumCall);
  EXPECT_EQ(parse_call(render_call(c)), c);
}

namespace {

// Random well-scoped terms over a small grammar; every operator occurs.
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  Term term(int depth) {
    if (depth <= 0) return leaf();
    switch (pick(26)) {
      case 0: return t::add(term(depth - 1), term(depth - 1));
      case 1: return t::sub(term(depth - 1), term(depth - 1));
      case 2: return t::mul(term(depth - 1), term(depth - 1));
      case 3: return t::neg(term(depth - 1));
      case 4: return t::eq(term(depth - 1), term(depth - 1));
      case 5: return t::lt(term(depth - 1), term(depth - 1));
      case 6: return t::conj(term(depth - 1), term(depth - 1));
      case 7: return t::disj(term(depth - 1), term(depth - 1));
      case 8: return t::negate(term(depth - 1));
      case 9: return t::implies(term(depth - 1), term(depth - 1));
      case 10: return t::if_then_else(term(depth - 1), term(depth - 1), term(depth - 1));
      case 11: return t::len(term(depth - 1));
      case 12: return t::index(term(depth - 1), term(depth - 1));
      case 13: return t::prefix(term(depth - 1), term(depth - 1));
      case 14: return t::mem(term(depth - 1), term(depth - 1));
      case 15: return t::set_union(term(depth - 1), term(depth - 1));
      case 16: return t::dom(term(depth - 1));
      case 17: return t::suc(term(depth - 1), term(depth - 1));
      case 18: return t::tuple({term(depth - 1), term(depth - 1)});
      case 19: return t::seq_lit({term(depth - 1), term(depth - 1)});
      case 20: return t::lambda({"x", "y"}, term(depth - 1));
      case 21: return t::apply(term(depth - 1), {term(depth - 1), term(depth - 1)});
      case 22: return t::forall_in("i", term(depth - 1), term(depth - 1));
      case 23: return t::forall_range("i", term(depth - 1), term(depth - 1), term(depth - 1),
                                      pick(2) == 0);
      case 24: return t::let_tuple({"p", "q"}, term(depth - 1), term(depth - 1));
      default: return t::deref(term(depth - 1));
    }
  }

 private:
  Term leaf() {
    switch (pick(5)) {
      case 0: return t::integer(static_cast<long long>(pick(7)) - 3);
      case 1: return t::boolean(pick(2) == 0);
      case 2: return t::set_lit({});
      default: return t::var(std::string(1, "abcvw"[pick(5)]));
    }
  }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937_64 rng_;
};

// Quantifier bounds must not mention the bound variable for the guard
// to be recoverable; the generator only uses `i` as a binder and never
// as a leaf, so this holds by construction.

}  // namespace

TEST(RenderProperty, RandomTermsRoundTrip) {
  TermGen gen(20240917);
  for (int n = 0; n < 2000; ++n) {
    const Term a = gen.term(1 + n % 5);
    const std::string text = render_term(a);
    Term b;
    ASSERT_NO_THROW(b = parse_term(text)) << text;
    ASSERT_EQ(b, a) << text << "\nreparsed as\n" << render_term(b);
  }
}

TEST(RenderProperty, RandomDeclsRoundTrip) {
  TermGen gen(77);
  std::mt19937_64 rng(5);
  const std::vector<TypeExpr> types = {
      parse_type("'b seq"), parse_type("gt"), parse_type("gt * vt"), parse_type("'a"),
      parse_type("('a * 'b) tree")};
  for (int n = 0; n < 300; ++n) {
    DeclSpec d;
    d.pattern = static_cast<Pattern>(rng() % 4);
    d.result = "r";
    d.function = "walk";
    if (d.pattern == Pattern::Folds || (d.pattern != Pattern::Iters && rng() % 2))
      d.accumulator = "acc";
    d.arguments = d.accumulator ? std::vector<std::string>{"func", "acc", "col"}
                                : std::vector<std::string>{"func", "col"};
    d.permitted = t::lambda({"v"}, gen.term(3));
    d.complete = t::lambda({"v"}, gen.term(3));
    d.structure = types[rng() % types.size()];
    d.elt = types[rng() % types.size()];
    if (d.pattern == Pattern::Folds && rng() % 2) d.signature = parse_type("('a -> 'b -> 'a) -> 'a -> 'b seq -> 'a");
    const std::string text = render_decl(d);
    DeclSpec back;
    ASSERT_NO_THROW(back = parse_decl(text)) << text;
    ASSERT_EQ(back, d) << text;

    CallSpec c;
    c.pattern = d.pattern;
    c.inv = gen.term(3);
    c.collection = gen.term(2);
    c.convergence = t::lambda({"c", "v"}, gen.term(2));
    const std::string call_text = render_call(c);
    CallSpec call_back;
    ASSERT_NO_THROW(call_back = parse_call(call_text)) << call_text;
    ASSERT_EQ(call_back, c) << call_text;
  }
}

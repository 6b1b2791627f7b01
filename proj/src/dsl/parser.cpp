#include "unfold/dsl/parser.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace unfold::dsl {

namespace t = unfold::term;

namespace {

const std::set<std::string, std::less<>>& keywords() {
  static const std::set<std::string, std::less<>> k = {
      "fun",   "forall", "let",   "in",    "if",      "then",       "else",
      "not",   "not_",   "mem",   "subset", "union",  "inter",      "diff",
      "true",  "false",  "folds", "iters", "maps",    "filters",    "with",
      "run",   "len",    "reverse", "distinct", "setof", "flatten", "levels",
      "copy",  "prefix", "add",   "filter", "add_vertex", "add_edge", "sum",
      "empty_graph"};
  return k;
}

// Primitive words applied by juxtaposition, with their fixed arity.
const std::map<std::string, std::size_t, std::less<>>& primitives() {
  static const std::map<std::string, std::size_t, std::less<>> p = {
      {"len", 1},     {"reverse", 1}, {"distinct", 1},   {"setof", 1},
      {"flatten", 1}, {"levels", 1},  {"copy", 1},       {"prefix", 2},
      {"add", 2},     {"filter", 2},  {"add_vertex", 2}, {"add_edge", 3},
      {"sum", 3}};
  return p;
}

Term make_primitive(std::string_view name, std::vector<Term> a) {
  if (name == "len") return t::len(a[0]);
  if (name == "reverse") return t::reverse(a[0]);
  if (name == "distinct") return t::distinct(a[0]);
  if (name == "setof") return t::set_of(a[0]);
  if (name == "flatten") return t::flatten(a[0]);
  if (name == "levels") return t::levels(a[0]);
  if (name == "copy") return t::copy_graph(a[0]);
  if (name == "prefix") return t::prefix(a[0], a[1]);
  if (name == "add") return t::set_add(a[0], a[1]);
  if (name == "filter") return t::filter(a[0], a[1]);
  if (name == "add_vertex") return t::add_vertex(a[0], a[1]);
  if (name == "add_edge") return t::add_edge(a[0], a[1], a[2]);
  return t::sum(a[0], a[1], a[2]);
}

const std::vector<std::string> kDeclKeys = {"permitted", "complete"};
const std::vector<std::string> kCallKeys = {"inv", "collection", "convergence"};

std::string key_list(const std::vector<std::string>& keys) {
  std::string out;
  for (const auto& k : keys) {
    if (!out.empty()) out += " ";
    out += "~" + k + ":";
  }
  return out;
}

bool known_clause(std::string_view k) {
  return std::find(kDeclKeys.begin(), kDeclKeys.end(), k) != kDeclKeys.end() ||
         std::find(kCallKeys.begin(), kCallKeys.end(), k) != kCallKeys.end();
}

// Splits the left spine of a conjunction.
void conjuncts(const Term& g, std::vector<Term>& out) {
  if (g.op() == Op::And) {
    conjuncts(g.node().kids[0], out);
    out.push_back(g.node().kids[1]);
  } else {
    out.push_back(g);
  }
}

bool is_var(const Term& x, std::string_view name) {
  return x.op() == Op::Var && x.node().name == name;
}

bool mentions(const Term& x, const std::string& name) {
  return free_variables(x).count(name) > 0;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  // ---- token helpers ---------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& tok = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return tok;
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_word(std::string_view w) const {
    return peek().kind == Tok::Ident && peek().text == w;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    next();
    return true;
  }
  bool accept_word(std::string_view w) {
    if (!at_word(w)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + ", found " + describe(peek()), peek().at);
  }
  static std::string describe(const Token& tok) {
    if (tok.kind == Tok::End) return "end of input";
    if (tok.kind == Tok::Clause) return "'~" + tok.text + ":'";
    return "'" + tok.text + "'";
  }
  const Token& expect(Tok k, std::string_view what) {
    if (!at(k)) fail("expected " + std::string(what));
    return next();
  }
  void expect_word(std::string_view w) {
    if (!accept_word(w)) fail("expected '" + std::string(w) + "'");
  }
  std::string ident(std::string_view what) {
    if (!at(Tok::Ident) || keywords().count(peek().text))
      fail("expected " + std::string(what));
    return next().text;
  }
  // Iterator names may coincide with term primitives (`filter`).
  std::string function_name() {
    if (!at(Tok::Ident) || pattern_from_keyword(peek().text)) fail("expected a function name");
    return next().text;
  }
  Location location() const { return peek().at; }
  void expect_end() {
    if (!at(Tok::End)) fail("unexpected input");
  }

  // A token in column 1 starts a new top-level item and never continues
  // the current term.
  bool continues() const { return peek().at.column != 1 && !at(Tok::End); }

  // ---- terms -------------------------------------------------------------

  Term term() {
    if (accept_word("fun")) {
      std::vector<Param> ps = params();
      expect(Tok::Arrow, "'->'");
      return t::lambda(std::move(ps), term());
    }
    if (at_word("forall")) return forall();
    if (accept_word("let")) {
      expect(Tok::LParen, "'(' after let");
      std::vector<std::string> names{ident("a name")};
      while (accept(Tok::Comma)) names.push_back(ident("a name"));
      expect(Tok::RParen, "')'");
      expect(Tok::Eq, "'='");
      Term bound = term();
      expect_word("in");
      return t::let_tuple(std::move(names), std::move(bound), term());
    }
    if (accept_word("if")) {
      Term c = term();
      expect_word("then");
      Term a = term();
      expect_word("else");
      return t::if_then_else(std::move(c), std::move(a), term());
    }
    return implication();
  }

  std::vector<Param> params() {
    std::vector<Param> ps;
    while (at(Tok::Ident) || at(Tok::LParen)) {
      if (accept(Tok::LParen)) {
        std::vector<std::string> names{ident("a parameter")};
        while (accept(Tok::Comma)) names.push_back(ident("a parameter"));
        expect(Tok::RParen, "')'");
        ps.push_back(names.size() == 1 ? Param::name(names[0]) : Param::pattern(names));
      } else {
        ps.push_back(Param::name(ident("a parameter")));
      }
    }
    if (ps.empty()) fail("expected lambda parameters");
    return ps;
  }

  Term forall() {
    const Location where = location();
    next();
    std::vector<std::string> names{ident("a bound variable")};
    for (;;) {
      if (accept(Tok::Comma) || at(Tok::Ident)) {
        names.push_back(ident("a bound variable"));
      } else {
        break;
      }
    }
    expect(Tok::Dot, "'.' after quantified variables");
    Term body = term();
    return bound_quantifier(names, 0, std::move(body), where);
  }

  // Turns `forall x. G -> B` into a ForallIn / ForallRange whose domain is
  // taken from the conjunct of G that bounds x.
  Term bound_quantifier(const std::vector<std::string>& names, std::size_t k, Term body,
                        Location where) {
    const std::string& x = names[k];
    if (body.op() != Op::Implies)
      throw ParseError("quantifier over '" + x + "' needs a bound such as '" + x +
                           " mem S' or 'lo <= " + x + " < hi'",
                       where);
    std::vector<Term> guard;
    conjuncts(body.node().kids[0], guard);
    const Term consequent = body.node().kids[1];

    auto finish = [&](std::vector<Term> rest) {
      Term inner = consequent;
      if (!rest.empty()) {
        Term g = rest[0];
        for (std::size_t i = 1; i < rest.size(); ++i) g = t::conj(g, rest[i]);
        inner = t::implies(g, consequent);
      }
      if (k + 1 < names.size()) inner = bound_quantifier(names, k + 1, inner, where);
      return inner;
    };

    for (std::size_t i = 0; i < guard.size(); ++i) {
      const Term& g = guard[i];
      if (g.op() == Op::Mem && is_var(g.node().kids[0], x) && !mentions(g.node().kids[1], x)) {
        std::vector<Term> rest = guard;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        return t::forall_in(x, g.node().kids[1], finish(std::move(rest)));
      }
    }

    std::optional<std::size_t> lo_at, hi_at;
    Term lo, hi;
    bool inclusive = false;
    for (std::size_t i = 0; i < guard.size(); ++i) {
      const Term& g = guard[i];
      if (g.node().kids.size() != 2) continue;
      const Term& a = g.node().kids[0];
      const Term& b = g.node().kids[1];
      if (!lo_at && ((g.op() == Op::Le && is_var(b, x) && !mentions(a, x)) ||
                     (g.op() == Op::Ge && is_var(a, x) && !mentions(b, x)))) {
        lo_at = i;
        lo = g.op() == Op::Le ? a : b;
      } else if (!hi_at && (g.op() == Op::Lt || g.op() == Op::Le) && is_var(a, x) &&
                 !mentions(b, x)) {
        hi_at = i;
        hi = b;
        inclusive = g.op() == Op::Le;
      } else if (!hi_at && (g.op() == Op::Gt || g.op() == Op::Ge) && is_var(b, x) &&
                 !mentions(a, x)) {
        hi_at = i;
        hi = a;
        inclusive = g.op() == Op::Ge;
      }
    }
    if (!lo_at || !hi_at)
      throw ParseError("quantifier over '" + x + "' needs a bound such as '" + x +
                           " mem S' or 'lo <= " + x + " < hi'",
                       where);
    std::vector<Term> rest;
    for (std::size_t i = 0; i < guard.size(); ++i)
      if (i != *lo_at && i != *hi_at) rest.push_back(guard[i]);
    return t::forall_range(x, lo, hi, finish(std::move(rest)), inclusive);
  }

  Term implication() {
    Term lhs = disjunction();
    if (continues() && accept(Tok::Arrow)) return t::implies(std::move(lhs), term());
    return lhs;
  }

  Term disjunction() {
    Term lhs = conjunction();
    while (continues() && accept(Tok::Or)) lhs = t::disj(std::move(lhs), conjunction());
    return lhs;
  }

  Term conjunction() {
    Term lhs = negation();
    while (continues() && accept(Tok::And)) lhs = t::conj(std::move(lhs), negation());
    return lhs;
  }

  bool at_binding_form() const {
    return at_word("forall") || at_word("fun") || at_word("let") || at_word("if");
  }

  // Binding forms may close a connective chain: `a /\ forall i. ...`.
  Term negation() {
    if (at_binding_form()) return term();
    if (accept_word("not") || accept_word("not_")) return t::negate(negation());
    return comparison();
  }

  std::optional<Op> comparison_op() const {
    if (!continues()) return std::nullopt;
    switch (peek().kind) {
      case Tok::Eq: return Op::Eq;
      case Tok::Ne: return Op::Ne;
      case Tok::Lt: return Op::Lt;
      case Tok::Le: return Op::Le;
      case Tok::Gt: return Op::Gt;
      case Tok::Ge: return Op::Ge;
      case Tok::Ident:
        if (peek().text == "mem") return Op::Mem;
        if (peek().text == "subset") return Op::Subset;
        return std::nullopt;
      default: return std::nullopt;
    }
  }

  static Term binary(Op op, Term a, Term b) {
    switch (op) {
      case Op::Eq: return t::eq(std::move(a), std::move(b));
      case Op::Ne: return t::ne(std::move(a), std::move(b));
      case Op::Lt: return t::lt(std::move(a), std::move(b));
      case Op::Le: return t::le(std::move(a), std::move(b));
      case Op::Gt: return t::gt(std::move(a), std::move(b));
      case Op::Ge: return t::ge(std::move(a), std::move(b));
      case Op::Mem: return t::mem(std::move(a), std::move(b));
      case Op::Subset: return t::subset(std::move(a), std::move(b));
      case Op::Union: return t::set_union(std::move(a), std::move(b));
      case Op::Inter: return t::set_inter(std::move(a), std::move(b));
      case Op::Diff: return t::set_diff(std::move(a), std::move(b));
      case Op::Add: return t::add(std::move(a), std::move(b));
      case Op::Sub: return t::sub(std::move(a), std::move(b));
      default: return t::mul(std::move(a), std::move(b));
    }
  }

  // a < b <= c reads as a < b /\ b <= c.
  Term comparison() {
    Term lhs = set_expression();
    std::optional<Term> chain;
    while (auto op = comparison_op()) {
      next();
      Term rhs = set_expression();
      Term link = binary(*op, lhs, rhs);
      chain = chain ? t::conj(*chain, link) : link;
      lhs = rhs;
    }
    return chain ? *chain : lhs;
  }

  Term set_expression() {
    Term lhs = additive();
    for (;;) {
      if (!continues() || !at(Tok::Ident)) return lhs;
      const std::string& w = peek().text;
      Op op;
      if (w == "union") op = Op::Union;
      else if (w == "inter") op = Op::Inter;
      else if (w == "diff") op = Op::Diff;
      else return lhs;
      next();
      lhs = binary(op, std::move(lhs), additive());
    }
  }

  Term additive() {
    Term lhs = multiplicative();
    for (;;) {
      if (continues() && accept(Tok::Plus)) lhs = t::add(std::move(lhs), multiplicative());
      else if (continues() && accept(Tok::Minus)) lhs = t::sub(std::move(lhs), multiplicative());
      else return lhs;
    }
  }

  Term multiplicative() {
    Term lhs = unary();
    while (continues() && accept(Tok::Star)) lhs = t::mul(std::move(lhs), unary());
    return lhs;
  }

  Term unary() {
    if (accept(Tok::Minus)) {
      if (at(Tok::Int)) return t::lit(Value::integer(-Integer(next().text)));
      return t::neg(unary());
    }
    return application();
  }

  bool starts_argument() const {
    if (!continues()) return false;
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Int:
      case Tok::LParen:
      case Tok::LBracket:
      case Tok::LBrace:
      case Tok::Bang:
        return true;
      case Tok::Ident:
        if (in_call_block_ && peek(1).kind == Tok::Eq && is_call_entry(tok.text)) return false;
        return !keywords().count(tok.text) || tok.text == "true" || tok.text == "false" ||
               tok.text == "empty_graph";
      default:
        return false;
    }
  }

  Term application() {
    if (at(Tok::Ident)) {
      auto it = primitives().find(peek().text);
      if (it != primitives().end()) {
        const Token& head = next();
        std::vector<Term> args;
        for (std::size_t i = 0; i < it->second; ++i) {
          if (!starts_argument())
            fail("'" + head.text + "' takes " + std::to_string(it->second) + " argument(s)");
          args.push_back(argument());
        }
        return make_primitive(head.text, std::move(args));
      }
    }
    Term head = argument();
    std::vector<Term> args;
    while (starts_argument()) args.push_back(argument());
    return args.empty() ? head : t::apply(std::move(head), std::move(args));
  }

  Term argument() {
    if (accept(Tok::Bang)) return t::deref(argument());
    return postfix();
  }

  Term postfix() {
    Term base = atom();
    for (;;) {
      if (at(Tok::LBracket) && !peek().spaced) {
        next();
        if (accept(Tok::DotDot)) {
          Term k = term();
          expect(Tok::RBracket, "']'");
          base = t::prefix(std::move(base), std::move(k));
        } else {
          Term i = term();
          expect(Tok::RBracket, "']'");
          base = t::index(std::move(base), std::move(i));
        }
      } else if (at(Tok::Dot) && !peek().spaced &&
                 (peek(1).text == "dom" || peek(1).text == "suc")) {
        next();
        if (next().text == "dom") {
          base = t::dom(std::move(base));
        } else {
          base = t::suc(std::move(base), atom());
        }
      } else {
        return base;
      }
    }
  }

  std::vector<Term> items(Tok close, std::string_view what) {
    std::vector<Term> out;
    if (accept(close)) return out;
    out.push_back(term());
    while (accept(Tok::Comma) || accept(Tok::Semi)) {
      if (at(close)) break;
      out.push_back(term());
    }
    expect(close, what);
    return out;
  }

  Term atom() {
    const Token& tok = peek();
    switch (tok.kind) {
      case Tok::Int:
        next();
        return t::lit(Value::integer(Integer(tok.text)));
      case Tok::Ident:
        if (tok.text == "true" || tok.text == "false") {
          next();
          return t::boolean(tok.text == "true");
        }
        if (tok.text == "empty_graph") {
          next();
          return t::empty_graph();
        }
        if (keywords().count(tok.text)) fail("expected a term");
        next();
        return t::var(tok.text);
      case Tok::LParen: {
        next();
        if (accept(Tok::RParen)) return t::unit();
        std::vector<Term> members{term()};
        while (accept(Tok::Comma)) members.push_back(term());
        expect(Tok::RParen, "')'");
        return members.size() == 1 ? members[0] : t::tuple(std::move(members));
      }
      case Tok::LBracket:
        next();
        return t::seq_lit(items(Tok::RBracket, "']'"));
      case Tok::LBrace:
        next();
        return t::set_lit(items(Tok::RBrace, "'}'"));
      default:
        fail("expected a term");
    }
  }

  // ---- types -------------------------------------------------------------

  TypeExpr type() {
    TypeExpr lhs = tuple_type();
    if (accept(Tok::Arrow)) return TypeExpr::arrow(std::move(lhs), type());
    return lhs;
  }

  TypeExpr tuple_type() {
    std::vector<TypeExpr> members{applied_type()};
    while (accept(Tok::Star)) members.push_back(applied_type());
    return members.size() == 1 ? members[0] : TypeExpr::tuple(std::move(members));
  }

  TypeExpr applied_type() {
    TypeExpr base = atomic_type();
    while (at(Tok::Ident) && continues() && peek(1).kind != Tok::Eq &&
           !keywords().count(peek().text))
      base = TypeExpr::con(next().text, {std::move(base)});
    return base;
  }

  TypeExpr atomic_type() {
    if (at(Tok::TypeVar)) return TypeExpr::var(next().text.substr(1));
    if (at(Tok::Ident) && !keywords().count(peek().text)) return TypeExpr::con(next().text);
    if (accept(Tok::LParen)) {
      TypeExpr inner = type();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail("expected a type");
  }

  // ---- declarations and calls -------------------------------------------

  Pattern pattern_keyword() {
    if (at(Tok::Ident))
      if (auto p = pattern_from_keyword(peek().text)) {
        next();
        return *p;
      }
    fail("expected one of folds, iters, maps, filters");
  }

  using Clauses = std::map<std::string, std::pair<Term, Location>>;

  Clauses clauses(const std::vector<std::string>& allowed, std::string_view block) {
    Clauses out;
    while (at(Tok::Clause)) {
      const Token key = next();
      if (!known_clause(key.text))
        throw ParseError("unknown clause '~" + key.text + ":'; valid keys are " +
                             key_list(allowed),
                         key.at);
      if (std::find(allowed.begin(), allowed.end(), key.text) == allowed.end())
        throw SemanticError("clause '~" + key.text + ":' is not allowed in " +
                                std::string(block) + "; valid keys are " + key_list(allowed),
                            key.at);
      if (out.count(key.text))
        throw SemanticError("duplicate clause '~" + key.text + ":'", key.at);
      out[key.text] = {term(), key.at};
    }
    return out;
  }

  static void require_lambda(const Term& x, std::size_t arity, const std::string& what,
                             Location at) {
    if (x.op() != Op::Lambda) return;
    std::size_t n = x.node().params.size();
    if (n != arity)
      throw SemanticError(what + " must take " + std::to_string(arity) +
                              " parameter(s), not " + std::to_string(n),
                          at);
  }

  static void check_type(const TypeExpr& ty, Location at) {
    static const std::map<std::string, std::size_t, std::less<>> arity = {
        {"seq", 1},  {"list", 1}, {"fset", 1}, {"set", 1}, {"tree", 1},
        {"stack", 1}, {"queue", 1}, {"ref", 1}, {"int", 0}, {"bool", 0},
        {"unit", 0}, {"gt", 0},   {"vt", 0}};
    if (ty.kind == TypeExpr::Kind::Con) {
      auto it = arity.find(ty.name);
      if (it != arity.end() && it->second != ty.args.size())
        throw SemanticError("type '" + ty.name + "' takes " + std::to_string(it->second) +
                                " parameter(s)",
                            at);
    }
    for (const auto& a : ty.args) check_type(a, at);
  }

  DeclSpec decl() {
    const Location start = location();
    DeclSpec d;
    if (accept_word("val")) {
      function_name();
      expect(Tok::Colon, "':'");
      d.signature = type();
      check_type(*d.signature, start);
    }
    const bool wrapped = accept(Tok::SpecOpen);
    const Location header_at = location();
    d.result = ident("the result name");
    expect(Tok::Eq, "'='");
    d.function = function_name();
    while (at(Tok::Ident) && !pattern_from_keyword(peek().text))
      d.arguments.push_back(ident("an argument name"));
    d.pattern = pattern_keyword();
    Clauses cs = clauses(kDeclKeys, "a declaration");

    const Location with_at = location();
    expect_word("with");
    std::set<std::string> seen;
    bool has_structure = false, has_elt = false;
    do {
      const Location key_at = location();
      if (!at(Tok::Ident)) fail("expected structure, elt or accumulator");
      const std::string key = next().text;
      if (key != "structure" && key != "elt" && key != "accumulator")
        throw ParseError("unknown typing key '" + key +
                             "'; valid keys are structure, elt, accumulator",
                         key_at);
      if (!seen.insert(key).second)
        throw SemanticError("duplicate typing key '" + key + "'", key_at);
      expect(Tok::Eq, "'='");
      if (key == "structure") {
        d.structure = type();
        check_type(d.structure, key_at);
        has_structure = true;
      } else if (key == "elt") {
        d.elt = type();
        check_type(d.elt, key_at);
        has_elt = true;
      } else {
        d.accumulator = ident("the accumulator name");
      }
    } while (accept(Tok::Comma));
    if (wrapped) expect(Tok::SpecClose, "'*)'");

    for (const auto& key : kDeclKeys)
      if (!cs.count(key))
        throw SemanticError("declaration is missing '~" + key + ":'", start);
    d.permitted = cs["permitted"].first;
    d.complete = cs["complete"].first;
    require_lambda(d.permitted, 1, "~permitted:", cs["permitted"].second);
    require_lambda(d.complete, 1, "~complete:", cs["complete"].second);
    if (!has_structure) throw SemanticError("missing 'structure =' typing", with_at);
    if (!has_elt) throw SemanticError("missing 'elt =' typing", with_at);
    if (d.pattern == Pattern::Folds && !d.accumulator)
      throw SemanticError("folds declaration needs 'accumulator ='", with_at);
    if (d.pattern == Pattern::Iters && d.accumulator)
      throw SemanticError("iters declaration cannot name an accumulator", with_at);
    if (d.accumulator &&
        std::find(d.arguments.begin(), d.arguments.end(), *d.accumulator) == d.arguments.end())
      throw SemanticError("accumulator '" + *d.accumulator + "' is not an argument of " +
                              d.function,
                          with_at);
    if (d.collection_argument().empty())
      throw SemanticError("cannot tell which argument of " + d.function +
                              " is the collection",
                          header_at);
    return d;
  }

  CallSpec call() {
    const Location start = location();
    CallSpec c;
    const bool wrapped = accept(Tok::SpecOpen);
    c.pattern = pattern_keyword();
    Clauses cs = clauses(kCallKeys, "a call site");
    if (wrapped) expect(Tok::SpecClose, "'*)'");
    for (const auto& key : kCallKeys)
      if (!cs.count(key)) throw SemanticError("call is missing '~" + key + ":'", start);
    c.inv = cs["inv"].first;
    c.collection = cs["collection"].first;
    c.convergence = cs["convergence"].first;
    require_lambda(c.convergence, 2, "~convergence:", cs["convergence"].second);
    return c;
  }

  // ---- scenarios ---------------------------------------------------------

  long long signed_int() {
    const bool negative = accept(Tok::Minus);
    const Token& tok = expect(Tok::Int, "an integer");
    const long long v = std::stoll(tok.text);
    return negative ? -v : v;
  }

  Value tree_literal() {
    if (accept_word("leaf")) return Value::tree(nullptr);
    expect(Tok::LParen, "'(' or 'leaf'");
    expect_word("node");
    Value l = tree_literal();
    Value v = Value::integer(signed_int());
    Value r = tree_literal();
    expect(Tok::RParen, "')'");
    auto n = std::make_shared<TreeNode>(TreeNode{l.as_tree(), std::move(v), r.as_tree()});
    return Value::tree(std::move(n));
  }

  CollectionItem collection() {
    CollectionItem c;
    c.at = location();
    next();
    c.name = ident("a collection name");
    expect(Tok::Eq, "'='");
    using K = CollectionItem::Kind;
    if (at_word("graph") && peek(1).kind == Tok::LBrace) {
      next();
      next();
      c.kind = K::Graph;
      while (!accept(Tok::RBrace)) {
        if (accept_word("vertices")) {
          expect(Tok::Colon, "':'");
          while (at(Tok::Int) || at(Tok::Minus)) c.vertices.push_back(signed_int());
        } else if (accept_word("edge")) {
          expect(Tok::Colon, "':'");
          const long long u = signed_int();
          const long long v = signed_int();
          c.edges.emplace_back(u, v);
        } else {
          fail("expected 'vertices:', 'edge:' or '}'");
        }
      }
    } else if (accept_word("tree")) {
      c.kind = K::Tree;
      c.tree = tree_literal();
    } else if (accept_word("stack")) {
      c.kind = K::Stack;
    } else if (accept_word("queue")) {
      c.kind = K::Queue;
    } else if (accept_word("ref")) {
      c.kind = K::Ref;
      c.term = term();
    } else if (accept_word("random_seq")) {
      c.kind = K::RandomSeq;
      for (int i = 0; i < 3; ++i) c.params.push_back(signed_int());
    } else if (accept_word("random_graph")) {
      c.kind = K::RandomGraph;
      for (int i = 0; i < 2; ++i) c.params.push_back(signed_int());
    } else if (accept_word("random_tree")) {
      c.kind = K::RandomTree;
      for (int i = 0; i < 3; ++i) c.params.push_back(signed_int());
    } else {
      c.kind = K::Term;
      c.term = term();
    }
    accept(Tok::Semi);
    return c;
  }

  PredicateItem predicate(bool wrapped) {
    PredicateItem p;
    p.at = location();
    expect_word("predicate");
    p.name = ident("a predicate name");
    while (!at(Tok::Eq)) {
      if (accept(Tok::LParen)) {
        std::vector<std::string> names;
        while (at(Tok::Ident)) names.push_back(ident("a parameter"));
        if (names.empty()) fail("expected parameter names");
        if (accept(Tok::Colon)) type();
        expect(Tok::RParen, "')'");
        for (auto& n : names) p.params.push_back(Param::name(std::move(n)));
      } else if (at(Tok::Ident)) {
        p.params.push_back(Param::name(ident("a parameter")));
      } else {
        fail("expected predicate parameters or '='");
      }
    }
    next();
    p.body = term();
    if (wrapped) expect(Tok::SpecClose, "'*)'");
    accept(Tok::Semi);
    return p;
  }

  ConsumerSpec consumer() {
    ConsumerSpec c;
    if (at_word("fun")) {
      const std::size_t save = pos_;
      next();
      std::vector<Param> ps = params();
      if (accept(Tok::Arrow) && accept_word("run")) {
        c.kind = ConsumerSpec::Kind::Nested;
        c.params = std::move(ps);
        c.name = ident("a call name");
        return c;
      }
      pos_ = save;
    }
    const auto& builtins = builtin_consumers();
    if (at(Tok::Ident) &&
        std::find(builtins.begin(), builtins.end(), peek().text) != builtins.end() &&
        !(peek().text == "add" && peek(1).kind != Tok::Semi && peek(1).kind != Tok::RBrace)) {
      c.kind = ConsumerSpec::Kind::Builtin;
      c.name = next().text;
      while (starts_argument()) c.args.push_back(argument());
      return c;
    }
    c.kind = ConsumerSpec::Kind::Lambda;
    c.lambda = term();
    return c;
  }

  CallItem call_item() {
    CallItem c;
    c.at = location();
    next();
    c.name = ident("a call name");
    expect_word("uses");
    c.decl = function_name();
    expect(Tok::LBrace, "'{'");
    bool has_spec = false, has_consumer = false;
    std::set<std::string> keys;
    while (!accept(Tok::RBrace)) {
      const Location key_at = location();
      if (at(Tok::SpecOpen) || (at(Tok::Ident) && pattern_from_keyword(peek().text))) {
        if (has_spec) throw SemanticError("call '" + c.name + "' has two specifications", key_at);
        in_call_block_ = true;
        c.spec = call();
        in_call_block_ = false;
        has_spec = true;
        continue;
      }
      if (!at(Tok::Ident)) fail("expected a call entry");
      const std::string key = next().text;
      if (!is_call_entry(key))
        throw ParseError("unknown call entry '" + key +
                             "'; valid entries are consumer, init, expect, result, ensures",
                         key_at);
      if (!keys.insert(key).second)
        throw SemanticError("duplicate entry '" + key + "' in call '" + c.name + "'", key_at);
      expect(Tok::Eq, "'='");
      if (key == "consumer") {
        c.consumer = consumer();
        has_consumer = true;
      } else if (key == "init") {
        c.init = term();
      } else if (key == "expect") {
        c.expect = term();
      } else if (key == "result") {
        c.result = term();
      } else {
        c.ensures = term();
      }
      if (!accept(Tok::Semi) && !at(Tok::RBrace)) fail("expected ';'");
    }
    if (!has_spec) throw SemanticError("call '" + c.name + "' has no specification", c.at);
    if (!has_consumer) throw SemanticError("call '" + c.name + "' has no consumer", c.at);
    return c;
  }

  Scenario scenario() {
    Scenario s;
    using K = Scenario::Item::Kind;
    while (!at(Tok::End)) {
      if (at_word("collection")) {
        s.collections.push_back(collection());
        s.order.push_back({K::Collection, s.collections.size() - 1});
      } else if (at_word("predicate")) {
        s.predicates.push_back(predicate(false));
        s.order.push_back({K::Predicate, s.predicates.size() - 1});
      } else if (at(Tok::SpecOpen) && peek(1).text == "predicate") {
        next();
        s.predicates.push_back(predicate(true));
        s.order.push_back({K::Predicate, s.predicates.size() - 1});
      } else if (at_word("decl")) {
        DeclItem d;
        d.at = location();
        next();
        d.name = function_name();
        expect(Tok::LBrace, "'{'");
        d.spec = decl();
        expect(Tok::RBrace, "'}'");
        s.decls.push_back(std::move(d));
        s.order.push_back({K::Decl, s.decls.size() - 1});
      } else if (at_word("call")) {
        s.calls.push_back(call_item());
        s.order.push_back({K::Call, s.calls.size() - 1});
      } else {
        fail("expected collection, predicate, decl or call");
      }
    }
    return s;
  }

 private:
  static bool is_call_entry(std::string_view word) {
    return word == "consumer" || word == "init" || word == "expect" || word == "result" ||
           word == "ensures";
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  // Bare call specifications end where the `name = ...` entries begin.
  bool in_call_block_ = false;
};

// ---- validation ----------------------------------------------------------

using Scope = std::set<std::string>;

void require_bound(const Term& x, const Scope& scope, const std::string& where,
                   Location at) {
  if (!x.valid()) return;
  for (const auto& name : free_variables(x))
    if (!scope.count(name))
      throw SemanticError("unbound name '" + name + "' in " + where, at);
}

const std::vector<std::string>& fold_builtins() {
  static const std::vector<std::string> v = {"add", "count", "collect"};
  return v;
}
const std::vector<std::string>& iter_builtins() {
  static const std::vector<std::string> v = {"push_stack", "push_queue", "incr", "count_gt",
                                             "path_step"};
  return v;
}
const std::vector<std::string>& element_builtins() {
  static const std::vector<std::string> v = {"counted"};
  return v;
}

std::size_t builtin_arity(std::string_view name) {
  if (name == "push_stack" || name == "push_queue" || name == "incr") return 1;
  if (name == "count_gt" || name == "counted") return 2;
  if (name == "path_step") return 3;
  return 0;
}

bool contains(const std::vector<std::string>& v, std::string_view x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void check_call(const Scenario& s, const CallItem& c, const Scope& scope,
                std::size_t defined_before, std::set<std::string>& visiting) {
  const std::string where = "call '" + c.name + "'";
  if (!visiting.insert(c.name).second)
    throw SemanticError(where + " runs itself", c.at);
  const DeclItem* d = s.find_decl(c.decl);
  if (!d) throw SemanticError(where + " uses unknown declaration '" + c.decl + "'", c.at);
  if (d->spec.pattern != c.spec.pattern)
    throw SemanticError(where + " is '" + std::string(pattern_keyword(c.spec.pattern)) +
                            "' but declaration '" + c.decl + "' is '" +
                            std::string(pattern_keyword(d->spec.pattern)) + "'",
                        c.at);
  const bool folds = c.spec.pattern == Pattern::Folds;
  if (folds && !c.init) throw SemanticError(where + " needs 'init ='", c.at);
  if (!folds && c.init)
    throw SemanticError(where + " has no accumulator; remove 'init ='", c.at);

  require_bound(c.spec.inv, scope, where, c.at);
  require_bound(c.spec.collection, scope, where, c.at);
  require_bound(c.spec.convergence, scope, where, c.at);
  if (c.init) require_bound(*c.init, scope, where, c.at);
  Scope after = scope;
  after.insert(c.name);
  if (c.expect) require_bound(*c.expect, after, where, c.at);
  if (c.result) require_bound(*c.result, after, where, c.at);
  if (c.ensures) require_bound(*c.ensures, after, where, c.at);

  const ConsumerSpec& k = c.consumer;
  switch (k.kind) {
    case ConsumerSpec::Kind::Lambda:
      require_bound(k.lambda, scope, where, c.at);
      break;
    case ConsumerSpec::Kind::Builtin: {
      const auto& allowed = folds ? fold_builtins()
                            : c.spec.pattern == Pattern::Iters ? iter_builtins()
                                                               : element_builtins();
      if (!contains(allowed, k.name))
        throw SemanticError("consumer '" + k.name + "' cannot be used with " +
                                std::string(pattern_keyword(c.spec.pattern)),
                            c.at);
      if (k.args.size() != builtin_arity(k.name))
        throw SemanticError("consumer '" + k.name + "' takes " +
                                std::to_string(builtin_arity(k.name)) + " argument(s)",
                            c.at);
      for (const auto& a : k.args) require_bound(a, scope, where, c.at);
      break;
    }
    case ConsumerSpec::Kind::Nested: {
      const CallItem* inner = s.find_call(k.name);
      if (!inner) throw SemanticError(where + " runs unknown call '" + k.name + "'", c.at);
      if (static_cast<std::size_t>(inner - s.calls.data()) >= defined_before)
        throw SemanticError("call '" + k.name + "' must be defined before " + where, c.at);
      const std::size_t expected = folds ? 2 : 1;
      if (k.params.size() != expected)
        throw SemanticError(where + " consumer must take " + std::to_string(expected) +
                                " parameter(s)",
                            c.at);
      Scope inner_scope = scope;
      for (const auto& p : k.params)
        for (const auto& n : p.names) inner_scope.insert(n);
      check_call(s, *inner, inner_scope, defined_before, visiting);
      break;
    }
  }
  visiting.erase(c.name);
}

}  // namespace

bool is_reserved(std::string_view word) { return keywords().count(word) > 0; }

const std::vector<std::string>& builtin_consumers() {
  static const std::vector<std::string> all = [] {
    std::vector<std::string> v = fold_builtins();
    for (const auto& x : iter_builtins()) v.push_back(x);
    for (const auto& x : element_builtins()) v.push_back(x);
    return v;
  }();
  return all;
}

void validate(const Scenario& s) {
  Scope scope;
  std::set<std::string> decl_names;
  std::set<std::string> nested;
  for (const auto& c : s.calls)
    if (c.consumer.kind == ConsumerSpec::Kind::Nested) nested.insert(c.consumer.name);

  auto define = [&](const std::string& name, Location at) {
    if (!scope.insert(name).second) throw SemanticError("'" + name + "' is defined twice", at);
  };

  for (const auto& item : s.order) {
    using K = Scenario::Item::Kind;
    switch (item.kind) {
      case K::Collection: {
        const auto& c = s.collections[item.index];
        if (c.term.valid()) require_bound(c.term, scope, "collection '" + c.name + "'", c.at);
        define(c.name, c.at);
        break;
      }
      case K::Predicate: {
        const auto& p = s.predicates[item.index];
        Scope local = scope;
        local.insert(p.name);
        for (const auto& prm : p.params) local.insert(prm.names[0]);
        require_bound(p.body, local, "predicate '" + p.name + "'", p.at);
        define(p.name, p.at);
        break;
      }
      case K::Decl: {
        const auto& d = s.decls[item.index];
        if (!decl_names.insert(d.name).second)
          throw SemanticError("declaration '" + d.name + "' is defined twice", d.at);
        Scope local = scope;
        local.insert("collection");
        require_bound(d.spec.permitted, local, "declaration '" + d.name + "'", d.at);
        require_bound(d.spec.complete, local, "declaration '" + d.name + "'", d.at);
        break;
      }
      case K::Call: {
        const auto& c = s.calls[item.index];
        if (s.find_call(c.name) != &c)
          throw SemanticError("call '" + c.name + "' is defined twice", c.at);
        if (!nested.count(c.name)) {
          std::set<std::string> visiting;
          check_call(s, c, scope, item.index, visiting);
          define(c.name, c.at);
        }
        break;
      }
    }
  }
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term out = p.term();
  p.expect_end();
  return out;
}

TypeExpr parse_type(std::string_view text) {
  Parser p(text);
  TypeExpr out = p.type();
  p.expect_end();
  return out;
}

DeclSpec parse_decl(std::string_view text) {
  Parser p(text);
  DeclSpec out = p.decl();
  p.expect_end();
  return out;
}

CallSpec parse_call(std::string_view text) {
  Parser p(text);
  CallSpec out = p.call();
  p.expect_end();
  return out;
}

Scenario parse_scenario(std::string_view text) {
  Parser p(text);
  Scenario s = p.scenario();
  validate(s);
  return s;
}

}  // namespace unfold::dsl

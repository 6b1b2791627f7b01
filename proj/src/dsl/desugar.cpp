#include "unfold/dsl/desugar.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "unfold/dsl/render.hpp"

namespace unfold::dsl {

namespace {

std::string primes(std::size_t depth) { return std::string(depth, '\''); }

bool has_accumulator(Pattern p) { return p != Pattern::Iters; }

// Argument text of one level: its accumulator (if any) and visited
// sequence, in the level's own order.
std::string level_arguments(Pattern p, ArgOrder order, std::size_t depth) {
  const std::string visited = "cursor" + primes(depth) + ".visited";
  if (!has_accumulator(p)) return visited;
  const std::string acc = "!acc" + primes(depth);
  return order == ArgOrder::AccumulatorFirst ? acc + " " + visited : visited + " " + acc;
}

ArgOrder own_order(const DeclSpec& d) {
  return d.pattern == Pattern::Folds ? d.order() : ArgOrder::AccumulatorFirst;
}

std::string applied(const Term& f) {
  return f.op() == Op::Var ? render_term(f) : "(" + render_term(f) + ")";
}

void check_arity(const CallSpec& call, const std::vector<Enclosing>& nesting,
                 const PredicateArities& predicates, const std::string& where) {
  const std::size_t want = invariant_arity(call.pattern, nesting);
  if (auto have = term_arity(call.inv, predicates); have && *have != want)
    throw SemanticError("invariant of " + where + " takes " + std::to_string(*have) +
                            " argument(s) but receives " + std::to_string(want) +
                            " at nesting depth " + std::to_string(nesting.size()),
                        kNoLocation);
}

using Lines = std::vector<std::string>;

void loop_lines(const ClientLoop& loop, std::vector<Enclosing>& nesting,
                const PredicateArities& predicates, Lines& out) {
  const std::size_t d = nesting.size();
  const std::string p = primes(d);
  const std::string acc = "acc" + p, cursor = "cursor" + p, x = "x" + p;
  const std::string scope = scope_name(loop.decl);
  const Pattern pattern = loop.call.pattern;
  const std::string consumer = loop.consumer.empty() ? "func" : loop.consumer;

  check_arity(loop.call, nesting, predicates,
              loop.name.empty() ? std::string("the call") : "'" + loop.name + "'");
  const Annotations notes = annotations(loop.decl, loop.call, nesting);

  if (pattern == Pattern::Folds)
    out.push_back("let " + acc + " = ref " + (loop.init ? render_atom(*loop.init) : "x0") + " in");
  else if (pattern != Pattern::Iters)
    out.push_back("let " + acc + " = ref empty in");
  out.push_back("let " + cursor + " = " + scope + ".create " + render_atom(loop.call.collection) +
                " in");
  out.push_back("while " + scope + ".has_next " + cursor + " do");
  out.push_back("  variant { " + notes.variant + " }");
  out.push_back("  invariant { " + notes.invariant + " }");
  out.push_back("  let " + x + " = " + scope + ".next " + cursor + " in");

  // Arguments the consumer is applied to, in signature order.
  std::string args;
  switch (pattern) {
    case Pattern::Folds:
      args = own_order(loop.decl) == ArgOrder::AccumulatorFirst ? "!" + acc + " " + x
                                                                : x + " !" + acc;
      break;
    default:
      args = x;
      break;
  }

  auto wrap = [&](const std::string& before, const std::string& f, const std::string& after) {
    out.push_back("  " + before + f + " " + args + after);
  };

  std::string before, after;
  switch (pattern) {
    case Pattern::Folds: before = acc + " := "; after = ";"; break;
    case Pattern::Iters: after = ";"; break;
    case Pattern::Maps: before = acc + " := snoc !" + acc + " ("; after = ");"; break;
    case Pattern::Filters: before = "if "; after = " then " + acc + " := snoc !" + acc + " " + x + ";"; break;
  }

  if (loop.inner) {
    std::string params;
    for (const auto& prm : loop.params) {
      if (!params.empty()) params += " ";
      if (prm.tuple) {
        params += "(";
        for (std::size_t i = 0; i < prm.names.size(); ++i)
          params += (i ? ", " : "") + prm.names[i];
        params += ")";
      } else {
        params += prm.names[0];
      }
    }
    out.push_back("  " + before + "(fun " + params + " ->");
    nesting.push_back({pattern, own_order(loop.decl)});
    Lines inner;
    loop_lines(*loop.inner, nesting, predicates, inner);
    nesting.pop_back();
    for (auto& line : inner) out.push_back("    " + line);
    out.back() += ") " + args + after;
  } else {
    wrap(before, consumer, after);
  }

  out.push_back("done;");
  out.push_back(pattern == Pattern::Iters ? "()" : "!" + acc);
}

std::string join(const Lines& lines, const std::string& indent) {
  std::string out;
  for (const auto& l : lines) out += indent + l + "\n";
  return out;
}

std::string type_atom(const TypeExpr& t) {
  const bool atomic = t.kind == TypeExpr::Kind::Var ||
                      (t.kind == TypeExpr::Kind::Con && t.args.empty());
  return atomic ? render_type(t) : "(" + render_type(t) + ")";
}

std::string consumer_text(const ConsumerSpec& c) {
  switch (c.kind) {
    case ConsumerSpec::Kind::Lambda:
      return render_atom(c.lambda);
    case ConsumerSpec::Kind::Builtin: {
      if (c.args.empty()) return c.name;
      std::string out = "(" + c.name;
      for (const auto& a : c.args) out += " " + render_atom(a);
      return out + ")";
    }
    case ConsumerSpec::Kind::Nested:
      return {};
  }
  return {};
}

}  // namespace

Enclosing enclosing(const DeclSpec& d) { return {d.pattern, own_order(d)}; }

std::size_t invariant_arity(Pattern p, const std::vector<Enclosing>& nesting) {
  std::size_t n = has_accumulator(p) ? 2 : 1;
  for (const auto& e : nesting) n += has_accumulator(e.pattern) ? 2 : 1;
  return n;
}

std::optional<std::size_t> term_arity(const Term& t, const PredicateArities& predicates) {
  switch (t.op()) {
    case Op::Lambda:
      return t.node().params.size();
    case Op::Var: {
      auto it = predicates.find(t.node().name);
      if (it == predicates.end()) return std::nullopt;
      return it->second;
    }
    case Op::App: {
      auto head = term_arity(t.node().kids[0], predicates);
      const std::size_t supplied = t.node().kids.size() - 1;
      if (!head) return std::nullopt;
      if (supplied > *head)
        throw SemanticError("'" + render_term(t) + "' applies too many arguments", kNoLocation);
      return *head - supplied;
    }
    default:
      return std::nullopt;
  }
}

Annotations annotations(const DeclSpec& decl, const CallSpec& call,
                        const std::vector<Enclosing>& nesting) {
  const std::size_t d = nesting.size();
  Annotations a;
  a.variant = render_atom(call.convergence) + " " + render_atom(call.collection) + " cursor" +
              primes(d) + ".visited";
  a.invariant = applied(call.inv) + " " + level_arguments(call.pattern, own_order(decl), d);
  for (std::size_t k = 0; k < d; ++k)
    a.invariant += " " + level_arguments(nesting[k].pattern, nesting[k].order, k);
  return a;
}

std::string scope_name(const DeclSpec& d) {
  std::string name = d.function;
  if (!name.empty()) name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  return name;
}

std::string render_scope(const DeclSpec& d) {
  std::ostringstream out;
  out << "scope " << scope_name(d) << "\n"
      << "  use seq.Seq\n"
      << "  clone export cursor.CursorLib\n"
      << "  val create (collection: " << render_type(d.structure) << ") : cursor "
      << type_atom(d.elt) << "\n"
      << "    ensures { result.visited = empty }\n"
      << "    ensures { result.permitted = " << render_atom(d.permitted) << " }\n"
      << "    ensures { result.complete = " << render_atom(d.complete) << " }\n"
      << "end\n";
  return out.str();
}

std::string desugar(const DeclSpec& decl, const CallSpec& call,
                    const std::vector<Enclosing>& nesting, const PredicateArities& predicates) {
  if (decl.pattern != call.pattern)
    throw SemanticError("call is '" + std::string(pattern_keyword(call.pattern)) +
                            "' but the declaration is '" +
                            std::string(pattern_keyword(decl.pattern)) + "'",
                        kNoLocation);
  ClientLoop loop;
  loop.decl = decl;
  loop.call = call;
  std::vector<Enclosing> stack = nesting;
  Lines lines;
  loop_lines(loop, stack, predicates, lines);
  return render_scope(decl) + "\n" + join(lines, "");
}

std::string desugar(const ClientLoop& loop, const PredicateArities& predicates) {
  std::vector<Enclosing> nesting;
  Lines lines;
  loop_lines(loop, nesting, predicates, lines);
  return "let " + loop.name + " () =\n" + join(lines, "  ");
}

PredicateArities predicate_arities(const Scenario& s) {
  PredicateArities out;
  for (const auto& p : s.predicates) out[p.name] = p.params.size();
  return out;
}

ClientLoop client_loop(const Scenario& s, const CallItem& call) {
  const DeclItem* d = s.find_decl(call.decl);
  if (!d) throw SemanticError("call '" + call.name + "' uses unknown declaration '" + call.decl + "'", call.at);
  ClientLoop loop;
  loop.name = call.name;
  loop.decl = d->spec;
  loop.call = call.spec;
  loop.init = call.init;
  loop.consumer = consumer_text(call.consumer);
  if (call.consumer.kind == ConsumerSpec::Kind::Nested) {
    const CallItem* inner = s.find_call(call.consumer.name);
    if (!inner) throw SemanticError("call '" + call.name + "' runs unknown call '" + call.consumer.name + "'", call.at);
    loop.params = call.consumer.params;
    loop.inner = std::make_shared<const ClientLoop>(client_loop(s, *inner));
  }
  return loop;
}

std::string desugar_scenario(const Scenario& s) {
  const PredicateArities arities = predicate_arities(s);
  std::string out;
  std::set<std::string> scopes;
  for (const auto& d : s.decls) {
    const std::string name = scope_name(d.spec);
    if (!scopes.insert(name).second)
      throw SemanticError("two declarations define scope " + name, d.at);
    if (!out.empty()) out += "\n";
    out += render_scope(d.spec);
  }
  for (const CallItem* c : s.top_level_calls()) {
    if (!out.empty()) out += "\n";
    try {
      out += desugar(client_loop(s, *c), arities);
    } catch (const SemanticError& e) {
      if (e.where().line != 0) throw;
      throw SemanticError(e.message(), c->at);
    }
  }
  return out;
}

}  // namespace unfold::dsl

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "unfold/dsl/syntax.hpp"

namespace unfold::dsl {

/// What an enclosing iteration contributes to the invariants below it.
struct Enclosing {
  Pattern pattern = Pattern::Folds;
  ArgOrder order = ArgOrder::AccumulatorFirst;
};

Enclosing enclosing(const DeclSpec& d);

/// Arity of named predicates, used to check invariant applications.
using PredicateArities = std::map<std::string, std::size_t, std::less<>>;

/// One client loop. `init` and `consumer` fall back to `x0` and `func`.
struct ClientLoop {
  std::string name;
  DeclSpec decl;
  CallSpec call;
  std::optional<Term> init;
  std::string consumer;
  std::vector<Param> params;
  std::shared_ptr<const ClientLoop> inner;
};

/// Contents of the `variant { }` and `invariant { }` annotations of a loop
/// at depth `nesting.size()`.
struct Annotations {
  std::string variant;
  std::string invariant;
};

Annotations annotations(const DeclSpec& decl, const CallSpec& call,
                        const std::vector<Enclosing>& nesting);

std::string scope_name(const DeclSpec& d);
std::string render_scope(const DeclSpec& d);

/// Number of arguments the invariant of a call receives at this depth.
std::size_t invariant_arity(Pattern p, const std::vector<Enclosing>& nesting);

/// Arity of an invariant term when it can be read off: a lambda, a named
/// predicate, or either partially applied.
std::optional<std::size_t> term_arity(const Term& t, const PredicateArities& predicates);

/// Scope block followed by the bare client loop. Throws SemanticError when
/// the invariant cannot take the arguments supplied at this depth.
std::string desugar(const DeclSpec& decl, const CallSpec& call,
                    const std::vector<Enclosing>& nesting = {},
                    const PredicateArities& predicates = {});

/// `let name () =` wrapping the loop and any loops nested in its consumer.
std::string desugar(const ClientLoop& loop, const PredicateArities& predicates = {});

ClientLoop client_loop(const Scenario& s, const CallItem& call);
PredicateArities predicate_arities(const Scenario& s);

/// Scopes for every declaration, then one function per top-level call.
std::string desugar_scenario(const Scenario& s);

}  // namespace unfold::dsl

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "unfold/dsl/syntax.hpp"

namespace unfold::dsl {

Term parse_term(std::string_view text);
TypeExpr parse_type(std::string_view text);

/// `[val name : type] [(*@] r = f args folds ~permitted:.. ~complete:..
/// with structure = .., elt = .. [, accumulator = a] [*)]`
DeclSpec parse_decl(std::string_view text);

/// `[(*@] folds ~inv:.. ~collection:.. ~convergence:.. [*)]`
CallSpec parse_call(std::string_view text);

/// Whole scenario / spec file; validated before it is returned.
Scenario parse_scenario(std::string_view text);

/// Name resolution and consistency checks; throws SemanticError.
void validate(const Scenario& s);

bool is_reserved(std::string_view word);

/// Built-in consumer names accepted by `consumer = ...`.
const std::vector<std::string>& builtin_consumers();

}  // namespace unfold::dsl

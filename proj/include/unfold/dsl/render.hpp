#pragma once

#include <string>

#include "unfold/dsl/syntax.hpp"

namespace unfold::dsl {

/// Concrete syntax accepted by the parser, with the fewest parentheses
/// that still parse back to the same tree.
std::string render_term(const Term& t);
std::string render_type(const TypeExpr& t);

/// A term in argument position: bare when atomic, parenthesized otherwise.
std::string render_atom(const Term& t);

/// Multi-line declaration block, wrapped in `(*@ ... *)` and preceded by a
/// `val` line when the signature is known.
std::string render_decl(const DeclSpec& d);
std::string render_call(const CallSpec& c);

}  // namespace unfold::dsl

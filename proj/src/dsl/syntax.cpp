#include "unfold/dsl/syntax.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace unfold::dsl {

std::string_view pattern_keyword(Pattern p) {
  switch (p) {
    case Pattern::Folds: return "folds";
    case Pattern::Iters: return "iters";
    case Pattern::Maps: return "maps";
    case Pattern::Filters: return "filters";
  }
  return "?";
}

std::optional<Pattern> pattern_from_keyword(std::string_view w) {
  if (w == "folds") return Pattern::Folds;
  if (w == "iters") return Pattern::Iters;
  if (w == "maps") return Pattern::Maps;
  if (w == "filters") return Pattern::Filters;
  return std::nullopt;
}

std::string DeclSpec::collection_argument() const {
  std::vector<std::string> rest;
  for (std::size_t i = 1; i < arguments.size(); ++i)
    if (!accumulator || arguments[i] != *accumulator) rest.push_back(arguments[i]);
  return rest.size() == 1 ? rest.front() : std::string();
}

ArgOrder DeclSpec::order() const {
  if (!signature || signature->kind != TypeExpr::Kind::Arrow) return ArgOrder::AccumulatorFirst;
  const TypeExpr& consumer = signature->args[0];
  if (consumer.kind != TypeExpr::Kind::Arrow) return ArgOrder::AccumulatorFirst;
  const TypeExpr& first = consumer.args[0];
  const TypeExpr& rest = consumer.args[1];
  if (rest.kind != TypeExpr::Kind::Arrow) return ArgOrder::AccumulatorFirst;
  const TypeExpr& second = rest.args[0];
  const TypeExpr& ret = rest.args[1];
  if (ret == first) return ArgOrder::AccumulatorFirst;
  if (ret == second) return ArgOrder::VisitedFirst;
  return ArgOrder::AccumulatorFirst;
}

Traversal DeclSpec::traversal() const {
  static const std::map<std::string, Traversal, std::less<>> by_name = {
      {"fold_vertex", Traversal::Vertices}, {"iter_vertex", Traversal::Vertices},
      {"fold_succ", Traversal::Successors}, {"iter_succ", Traversal::Successors},
      {"fold_tree", Traversal::InOrder},    {"iter_tree", Traversal::InOrder},
      {"map_tree", Traversal::InOrder},     {"filter_tree", Traversal::InOrder},
      {"fold_level", Traversal::LevelOrder}, {"iter_level", Traversal::LevelOrder},
      {"fold_set", Traversal::Set},         {"iter_set", Traversal::Set}};
  if (auto it = by_name.find(function); it != by_name.end()) return it->second;
  if (structure.kind == TypeExpr::Kind::Tuple) return Traversal::Successors;
  if (structure.kind == TypeExpr::Kind::Con) {
    const std::string& n = structure.name;
    if (n == "fset" || n == "set") return Traversal::Set;
    if (n == "gt") return Traversal::Vertices;
    if (n == "tree") return Traversal::InOrder;
  }
  return Traversal::Sequence;
}

const DeclItem* Scenario::find_decl(std::string_view name) const {
  for (const auto& d : decls)
    if (d.name == name) return &d;
  return nullptr;
}

const CallItem* Scenario::find_call(std::string_view name) const {
  for (const auto& c : calls)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<const CallItem*> Scenario::top_level_calls() const {
  std::set<std::string> nested;
  for (const auto& c : calls)
    if (c.consumer.kind == ConsumerSpec::Kind::Nested) nested.insert(c.consumer.name);
  std::vector<const CallItem*> out;
  for (const auto& c : calls)
    if (!nested.count(c.name)) out.push_back(&c);
  return out;
}

}  // namespace unfold::dsl

#include "unfold/graph_model.hpp"

#include <sstream>

namespace unfold {

GraphModel::GraphModel() : dom_(Value::set_from_sorted({})) {}

Value GraphModel::suc(const Value& v) const {
  auto it = suc_.find(v);
  return it == suc_.end() ? Value::set_from_sorted({}) : it->second;
}

std::size_t GraphModel::edge_count() const {
  std::size_t n = 0;
  for (const auto& [_, s] : suc_) n += s.items().size();
  return n;
}

GraphModel GraphModel::with_vertex(const Value& v) const {
  GraphModel g = *this;
  g.dom_ = set_insert(dom_, v);
  return g;
}

GraphModel GraphModel::with_edge(const Value& from, const Value& to) const {
  if (!contains(from))
    throw PreconditionError("add_edge: source " + from.to_string() +
                            " is not a vertex");
  GraphModel g = *this;
  g.suc_[from] = set_insert(suc(from), to);
  return g;
}

bool GraphModel::is_closed() const {
  for (const auto& [v, succ] : suc_) {
    if (!contains(v)) return false;
    for (const auto& w : succ.items())
      if (!contains(w)) return false;
  }
  return true;
}

void GraphModel::require_closed(const std::string& context) const {
  if (!is_closed())
    throw PreconditionError(context + ": graph is not closed under suc: " +
                            to_text());
}

std::string GraphModel::to_text() const {
  std::ostringstream os;
  os << "vertices:";
  for (const auto& v : dom_.items()) os << ' ' << v;
  for (const auto& [v, succ] : suc_)
    for (const auto& w : succ.items()) os << " edge: " << v << ' ' << w;
  return os.str();
}

bool operator==(const GraphModel& a, const GraphModel& b) {
  return a.dom_ == b.dom_ && a.suc_ == b.suc_;
}

std::strong_ordering operator<=>(const GraphModel& a, const GraphModel& b) {
  if (auto c = a.dom_ <=> b.dom_; c != 0) return c;
  return std::lexicographical_compare_three_way(
      a.suc_.begin(), a.suc_.end(), b.suc_.begin(), b.suc_.end());
}

GraphModel add_vertex(const GraphModel& g, const Value& v) {
  return g.with_vertex(v);
}

GraphModel add_edge(const GraphModel& g, const Value& from, const Value& to) {
  if (!g.contains(from) || !g.contains(to))
    throw PreconditionError("add_edge: endpoints " + from.to_string() + ", " +
                            to.to_string() + " must both be in dom");
  return g.with_edge(from, to);
}

GraphModel copy(const GraphModel& g) { return g; }

GraphModel make_graph(
    const std::vector<long long>& vertices,
    const std::vector<std::pair<long long, long long>>& edges) {
  GraphModel g;
  for (long long v : vertices) g = add_vertex(g, Value::integer(v));
  for (auto [u, w] : edges) g = add_edge(g, Value::integer(u), Value::integer(w));
  return g;
}

}  // namespace unfold

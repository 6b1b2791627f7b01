#pragma once

// Plain C++ reference implementations and random generators shared by the
// unit, property and acceptance tests. Nothing here goes through the term
// evaluator or the checked engines.

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "unfold/graph_model.hpp"
#include "unfold/tree.hpp"
#include "unfold/value.hpp"

namespace oracle {

using unfold::BinaryTree;
using unfold::GraphModel;
using unfold::Value;

inline std::vector<Value> ints(const std::vector<long long>& xs) {
  std::vector<Value> out;
  out.reserve(xs.size());
  for (long long x : xs) out.push_back(Value::integer(x));
  return out;
}

inline long long to_ll(const Value& v) { return v.as_int().convert_to<long long>(); }

inline std::vector<long long> to_lls(const std::vector<Value>& xs) {
  std::vector<long long> out;
  for (const auto& x : xs) out.push_back(to_ll(x));
  return out;
}

// sum_recursive s i n = if i >= n then 0 else s[i] + sum_recursive s (i+1) n
inline long long sum_recursive(const std::vector<long long>& s, std::size_t i,
                               std::size_t n) {
  return i >= n ? 0 : s[i] + sum_recursive(s, i + 1, n);
}

inline bool is_prefix(const std::vector<long long>& v, const std::vector<long long>& s) {
  if (v.size() > s.size()) return false;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != s[i]) return false;
  return true;
}

// --- graphs -------------------------------------------------------------

struct Graph {
  std::set<long long> dom;
  std::map<long long, std::set<long long>> suc;

  std::set<long long> succ(long long v) const {
    auto it = suc.find(v);
    return it == suc.end() ? std::set<long long>{} : it->second;
  }
};

inline Graph from_model(const GraphModel& g) {
  Graph out;
  for (const auto& v : g.dom().items()) out.dom.insert(to_ll(v));
  for (long long v : out.dom) {
    std::set<long long> s;
    for (const auto& w : g.suc(Value::integer(v)).items()) s.insert(to_ll(w));
    if (!s.empty()) out.suc[v] = s;
  }
  return out;
}

inline GraphModel to_model(const Graph& g) {
  std::vector<long long> vs(g.dom.begin(), g.dom.end());
  std::vector<std::pair<long long, long long>> es;
  for (const auto& [u, s] : g.suc)
    for (long long w : s) es.emplace_back(u, w);
  return unfold::make_graph(vs, es);
}

inline bool same(const Graph& a, const Graph& b) {
  if (a.dom != b.dom) return false;
  std::set<long long> keys = a.dom;
  for (const auto& [k, _] : a.suc) keys.insert(k);
  for (const auto& [k, _] : b.suc) keys.insert(k);
  for (long long k : keys)
    if (a.succ(k) != b.succ(k)) return false;
  return true;
}

inline void normalize(Graph& g) {
  for (auto it = g.suc.begin(); it != g.suc.end();)
    it = it->second.empty() ? g.suc.erase(it) : std::next(it);
}

inline Graph graph_union(const Graph& a, const Graph& b) {
  Graph r;
  std::set_union(a.dom.begin(), a.dom.end(), b.dom.begin(), b.dom.end(),
                 std::inserter(r.dom, r.dom.end()));
  for (long long v : r.dom) {
    std::set<long long> s = a.succ(v);
    for (long long w : b.succ(v)) s.insert(w);
    r.suc[v] = s;
  }
  normalize(r);
  return r;
}

inline Graph graph_intersect(const Graph& a, const Graph& b) {
  Graph r;
  for (long long v : a.dom)
    if (b.dom.count(v)) r.dom.insert(v);
  for (long long v : r.dom)
    for (long long w : a.succ(v))
      if (b.succ(v).count(w) && r.dom.count(w)) r.suc[v].insert(w);
  normalize(r);
  return r;
}

inline Graph graph_complement(const Graph& g) {
  Graph r;
  r.dom = g.dom;
  for (long long v : g.dom)
    for (long long w : g.dom)
      if (!g.succ(v).count(w)) r.suc[v].insert(w);
  normalize(r);
  return r;
}

inline Graph graph_mirror(const Graph& g) {
  Graph r;
  r.dom = g.dom;
  for (const auto& [u, s] : g.suc)
    for (long long w : s) r.suc[w].insert(u);
  normalize(r);
  return r;
}

inline Graph copy_vertices(const Graph& g) {
  Graph r;
  r.dom = g.dom;
  return r;
}

inline bool walk_path(const Graph& g, const std::vector<long long>& path) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!g.dom.count(path[i])) return false;
    if (i > 0 && !g.succ(path[i - 1]).count(path[i])) return false;
  }
  return true;
}

// --- trees --------------------------------------------------------------

inline void in_order(const unfold::TreeNode* n, std::vector<long long>& out) {
  if (!n) return;
  in_order(n->left.get(), out);
  out.push_back(to_ll(n->value));
  in_order(n->right.get(), out);
}

inline std::vector<long long> tree_values(const BinaryTree& t) {
  std::vector<long long> out;
  in_order(t.root().get(), out);
  return out;
}

inline std::size_t tree_height(const unfold::TreeNode* n) {
  if (!n) return 0;
  return 1 + std::max(tree_height(n->left.get()), tree_height(n->right.get()));
}

// Breadth-first grouping with an explicit queue of (node, depth).
inline std::vector<std::vector<long long>> bfs_levels(const BinaryTree& t) {
  std::vector<std::vector<long long>> out;
  std::vector<std::pair<const unfold::TreeNode*, std::size_t>> queue;
  if (t.root()) queue.emplace_back(t.root().get(), 0);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [n, d] = queue[head];
    if (out.size() <= d) out.emplace_back();
    out[d].push_back(to_ll(n->value));
    if (n->left) queue.emplace_back(n->left.get(), d + 1);
    if (n->right) queue.emplace_back(n->right.get(), d + 1);
  }
  return out;
}

// --- random instances ---------------------------------------------------

using Rng = std::mt19937_64;

inline long long uniform(Rng& rng, long long lo, long long hi) {
  return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline std::vector<long long> random_seq(Rng& rng, std::size_t max_len, long long lo,
                                         long long hi) {
  std::vector<long long> s(static_cast<std::size_t>(uniform(rng, 0, max_len)));
  for (auto& x : s) x = uniform(rng, lo, hi);
  return s;
}

/// Vertices drawn from [0, 2*max_vertices) so that pairs of graphs overlap
/// partially.
inline Graph random_graph(Rng& rng, std::size_t max_vertices) {
  Graph g;
  const auto n = uniform(rng, 0, static_cast<long long>(max_vertices));
  while (static_cast<long long>(g.dom.size()) < n)
    g.dom.insert(uniform(rng, 0, 2 * static_cast<long long>(max_vertices) - 1));
  const double density = std::uniform_real_distribution<double>(0, 1)(rng);
  std::bernoulli_distribution edge(density);
  for (long long u : g.dom)
    for (long long w : g.dom)
      if (edge(rng)) g.suc[u].insert(w);
  return g;
}

inline BinaryTree random_tree(Rng& rng, std::size_t size, long long lo, long long hi) {
  if (size == 0) return BinaryTree::leaf();
  const auto left = static_cast<std::size_t>(uniform(rng, 0, size - 1));
  BinaryTree l = random_tree(rng, left, lo, hi);
  Value v = Value::integer(uniform(rng, lo, hi));
  BinaryTree r = random_tree(rng, size - 1 - left, lo, hi);
  return BinaryTree::node(l, std::move(v), r);
}

}  // namespace oracle

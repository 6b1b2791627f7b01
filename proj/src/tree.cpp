#include "unfold/tree.hpp"

#include <algorithm>

namespace unfold {

namespace {

void flatten_into(const std::shared_ptr<const TreeNode>& n,
                  std::vector<Value>& out) {
  if (!n) return;
  flatten_into(n->left, out);
  out.push_back(n->value);
  flatten_into(n->right, out);
}

void levels_into(const std::shared_ptr<const TreeNode>& n, std::size_t depth,
                 std::vector<std::vector<Value>>& out) {
  if (!n) return;
  if (out.size() <= depth) out.resize(depth + 1);
  out[depth].push_back(n->value);
  levels_into(n->left, depth + 1, out);
  levels_into(n->right, depth + 1, out);
}

std::size_t size_of(const std::shared_ptr<const TreeNode>& n) {
  return n ? 1 + size_of(n->left) + size_of(n->right) : 0;
}

std::size_t height_of(const std::shared_ptr<const TreeNode>& n) {
  return n ? 1 + std::max(height_of(n->left), height_of(n->right)) : 0;
}

}  // namespace

BinaryTree BinaryTree::node(const BinaryTree& left, Value value,
                            const BinaryTree& right) {
  return BinaryTree(std::make_shared<const TreeNode>(
      TreeNode{left.root_, std::move(value), right.root_}));
}

std::size_t BinaryTree::size() const { return size_of(root_); }

std::size_t BinaryTree::height() const { return height_of(root_); }

std::vector<Value> flatten(const BinaryTree& t) {
  std::vector<Value> out;
  flatten_into(t.root(), out);
  return out;
}

std::vector<std::vector<Value>> levels(const BinaryTree& t) {
  std::vector<std::vector<Value>> out;
  levels_into(t.root(), 0, out);
  return out;
}

}  // namespace unfold

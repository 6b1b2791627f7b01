#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "unfold/value.hpp"

namespace unfold {

struct TreeNode {
  std::shared_ptr<const TreeNode> left;
  Value value;
  std::shared_ptr<const TreeNode> right;
};

/// Immutable binary tree; a null root is a Leaf.
class BinaryTree {
 public:
  BinaryTree() = default;
  explicit BinaryTree(std::shared_ptr<const TreeNode> root)
      : root_(std::move(root)) {}

  static BinaryTree leaf() { return BinaryTree(); }
  static BinaryTree node(const BinaryTree& left, Value value,
                         const BinaryTree& right);

  bool is_leaf() const { return root_ == nullptr; }
  const Value& value() const { return root_->value; }
  BinaryTree left() const { return BinaryTree(root_->left); }
  BinaryTree right() const { return BinaryTree(root_->right); }
  const std::shared_ptr<const TreeNode>& root() const { return root_; }

  std::size_t size() const;
  /// Number of levels; 0 for a Leaf.
  std::size_t height() const;

  Value to_value() const { return Value::tree(root_); }
  static BinaryTree from_value(const Value& v) { return BinaryTree(v.as_tree()); }

 private:
  std::shared_ptr<const TreeNode> root_;
};

/// In-order flattening, computed recursively.
std::vector<Value> flatten(const BinaryTree& t);

/// Values grouped by depth (root = level 0), left to right, computed by a
/// depth-indexed recursive walk.
std::vector<std::vector<Value>> levels(const BinaryTree& t);

}  // namespace unfold

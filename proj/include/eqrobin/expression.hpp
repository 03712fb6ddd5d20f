#pragma once

// Immutable binary AST for boolean decisions built from identifiers, !, && and ||.

#include <cctype>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eqrobin/error.hpp"

namespace eqrobin {

enum class NodeKind { Variable, Not, And, Or };

inline bool is_binary(NodeKind kind) noexcept {
  return kind == NodeKind::And || kind == NodeKind::Or;
}

/// A node of the expression tree. Copies share structure; nodes are never
/// mutated after construction, so values can be handed across threads freely.
class Expression {
 public:
  static Expression variable(std::string name);
  static Expression negation(Expression operand);
  static Expression conjunction(Expression left, Expression right);
  static Expression disjunction(Expression left, Expression right);
  static Expression binary(NodeKind kind, Expression left, Expression right);

  NodeKind kind() const noexcept;
  bool is_variable() const noexcept { return kind() == NodeKind::Variable; }

  const std::string& name() const;        // Variable only
  const Expression& operand() const;      // Not only
  const Expression& left() const;         // And / Or only
  const Expression& right() const;        // And / Or only

  /// Number of Variable leaves below (and including) this node.
  std::size_t leaf_count() const noexcept;
  /// Number of And/Or nodes below (and including) this node.
  std::size_t binary_count() const noexcept;

  /// Node-for-node structural identity.
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  struct Node;
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Expression::Node {
  NodeKind kind;
  std::string name;
  std::vector<Expression> children;
  std::size_t leaves = 0;
  std::size_t binaries = 0;
};

inline Expression Expression::variable(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Variable;
  node->name = std::move(name);
  node->leaves = 1;
  return Expression(std::move(node));
}

inline Expression Expression::negation(Expression operand) {
  auto node = std::make_shared<Node>();
  node->kind = NodeKind::Not;
  node->leaves = operand.leaf_count();
  node->binaries = operand.binary_count();
  node->children.push_back(std::move(operand));
  return Expression(std::move(node));
}

inline Expression Expression::binary(NodeKind kind, Expression left, Expression right) {
  if (!is_binary(kind)) throw InvalidArgument("binary node must be And or Or");
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->leaves = left.leaf_count() + right.leaf_count();
  node->binaries = left.binary_count() + right.binary_count() + 1;
  node->children.push_back(std::move(left));
  node->children.push_back(std::move(right));
  return Expression(std::move(node));
}

inline Expression Expression::conjunction(Expression left, Expression right) {
  return binary(NodeKind::And, std::move(left), std::move(right));
}

inline Expression Expression::disjunction(Expression left, Expression right) {
  return binary(NodeKind::Or, std::move(left), std::move(right));
}

inline NodeKind Expression::kind() const noexcept { return node_->kind; }

inline const std::string& Expression::name() const {
  if (kind() != NodeKind::Variable) throw InvalidArgument("name() on a non-variable node");
  return node_->name;
}

inline const Expression& Expression::operand() const {
  if (kind() != NodeKind::Not) throw InvalidArgument("operand() on a non-negation node");
  return node_->children[0];
}

inline const Expression& Expression::left() const {
  if (!is_binary(kind())) throw InvalidArgument("left() on a non-binary node");
  return node_->children[0];
}

inline const Expression& Expression::right() const {
  if (!is_binary(kind())) throw InvalidArgument("right() on a non-binary node");
  return node_->children[1];
}

inline std::size_t Expression::leaf_count() const noexcept { return node_->leaves; }
inline std::size_t Expression::binary_count() const noexcept { return node_->binaries; }

inline bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.leaf_count() != b.leaf_count()) return false;
  if (a.kind() == NodeKind::Variable) return a.node_->name == b.node_->name;
  const auto& ac = a.node_->children;
  const auto& bc = b.node_->children;
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (!(ac[i] == bc[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parsing
//
//   expr    := or
//   or      := and ( "||" and )*
//   and     := unary ( "&&" unary )*
//   unary   := "!" unary | primary
//   primary := IDENT | "(" expr ")"
// ---------------------------------------------------------------------------

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expression run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Expression e = parse_or();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Expression parse_or() {
    Expression lhs = parse_and();
    while (accept("||")) lhs = Expression::disjunction(std::move(lhs), parse_and());
    return lhs;
  }

  Expression parse_and() {
    Expression lhs = parse_unary();
    while (accept("&&")) lhs = Expression::conjunction(std::move(lhs), parse_unary());
    return lhs;
  }

  Expression parse_unary() {
    if (accept("!")) return Expression::negation(parse_unary());
    return parse_primary();
  }

  Expression parse_primary() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    const std::size_t start = pos_;
    if (accept("(")) {
      Expression inner = parse_or();
      if (!accept(")")) {
        skip_space();
        throw ParseError("expected ')' to close '(' at position " + std::to_string(start), pos_);
      }
      return inner;
    }
    const auto ident_start = [](char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    };
    const auto ident_char = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    };
    if (!ident_start(text_[pos_])) {
      throw ParseError("expected identifier, '!' or '(' but found '" + std::string(1, text_[pos_]) + "'",
                       pos_);
    }
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return Expression::variable(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline void serialize_into(const Expression& e, std::string& out) {
  switch (e.kind()) {
    case NodeKind::Variable:
      out += e.name();
      return;
    case NodeKind::Not:
      out += "(!";
      serialize_into(e.operand(), out);
      out += ')';
      return;
    case NodeKind::And:
    case NodeKind::Or:
      out += '(';
      serialize_into(e.left(), out);
      out += e.kind() == NodeKind::And ? " && " : " || ";
      serialize_into(e.right(), out);
      out += ')';
      return;
  }
}

}  // namespace detail

/// Parses `text` with precedence ! > && > || and left-associative binary
/// operators. Parentheses are kept exactly as written. Throws ParseError.
inline Expression parse(std::string_view text) { return detail::Parser(text).run(); }

/// Fully parenthesized text, e.g. "((a && d) && ((!b) || (!c)))".
inline std::string serialize(const Expression& e) {
  std::string out;
  detail::serialize_into(e, out);
  return out;
}

/// Identity key for structural dedup. Two expressions share a key iff they are
/// node-for-node identical; commuted operands give different keys.
inline std::string structural_key(const Expression& e) { return serialize(e); }

}  // namespace eqrobin

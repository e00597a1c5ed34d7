#pragma once

// A small arithmetic expression language for curve and germ definitions.
//
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' unary)?          (right-associative)
//   atom  := number | ident | ident '(' expr ')' | '(' expr ')'
//
// Functions: sin cos tan exp log sqrt atan. Constants: pi, e.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "frontal/numkit.hpp"

namespace frontal::expr {

enum class NodeKind { number, ident, neg, add, sub, mul, div, pow, call };
enum class Func { sin, cos, tan, exp, log, sqrt, atan };

const char* func_name(Func f);

struct Node {
  NodeKind kind = NodeKind::number;
  double number = 0.0;
  std::string name;  // identifier name
  Func func = Func::sin;
  std::shared_ptr<const Node> lhs;  // also the operand of neg and call
  std::shared_ptr<const Node> rhs;
  std::size_t offset = 0;  // byte offset of the node in its source text
};

using NodePtr = std::shared_ptr<const Node>;

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::vector<std::string> expected);
  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// An identifier is neither a variable, a bound parameter, nor a constant.
class ResolveError : public Error {
 public:
  using Error::Error;
};

/// Immutable expression tree; cheap to copy and share across threads.
class Expr {
 public:
  Expr() = default;
  explicit Expr(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  const NodePtr& ptr() const { return root_; }
  bool empty() const { return !root_; }

  std::set<std::string> identifiers() const;
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  NodePtr root_;
};

Expr parse(std::string_view text);
std::string print(const Expr& e);
std::string print(const Node& n);

/// Forward-mode evaluation. Differentiation variables are u, v when either is
/// bound, otherwise t or x; all other bindings act as constants.
Jet evaluate(const Expr& e, const std::map<std::string, double>& bindings, int order);

/// Evaluate with an explicit list of differentiation variables (at most two).
Jet evaluate(const Expr& e, const std::map<std::string, double>& bindings, int order,
             const std::vector<std::string>& diff_vars);

/// Flattened, resolved form of an expression. Variables are slots 0..n-1;
/// parameters and constants are folded into literals.
class Program {
 public:
  Program(const Expr& e, const std::vector<std::string>& variables,
          const std::map<std::string, double>& parameters);

  double eval(std::span<const double> vars) const;
  Taylor eval(std::span<const double> vars, int order) const;

 private:
  enum class Op { constant, variable, neg, add, sub, mul, div, pow, call };
  struct Instr {
    Op op;
    double value = 0.0;
    int slot = 0;
    Func func = Func::sin;
    const Node* node = nullptr;  // for error messages
  };
  void emit(const NodePtr& n, const std::vector<std::string>& variables,
            const std::map<std::string, double>& parameters);

  Expr source_;
  std::vector<Instr> code_;
  std::size_t max_stack_ = 0;
};

/// A named map whose components are expressions in 1 or 2 variables.
struct MapDef {
  std::string name;
  std::vector<std::string> variables;
  std::map<std::string, double> parameters;
  std::vector<Expr> components;

  /// Every identifier is a variable, a parameter, or a constant.
  void validate() const;
  Map compile() const;
};

MapDef make_mapdef(std::string name, std::vector<std::string> variables,
                   const std::vector<std::string>& component_texts,
                   std::map<std::string, double> parameters = {});

/// A real function of one variable with exact first and second derivatives.
Profile make_profile(std::string_view text, const std::string& var = "u",
                     const std::map<std::string, double>& parameters = {});

/// Split "e1, e2, e3" at top-level commas.
std::vector<std::string> split_components(std::string_view text);

}  // namespace frontal::expr

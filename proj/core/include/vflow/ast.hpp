#pragma once

// Surface AST of the toy call-by-value language.
//
//   Program   := Function+
//   Function  := f(v1, v2, ...) { S; }
//   Statement := v = l | v = v | v = v (+|-|*|/) v | v.a = v | v = v.a
//              | v = *v | *v = v | S; S | if (v cmp v) { S } else { S }
//              | v = f(v, ...) | return v
//
// `while` is accepted as surface syntax and removed by unroll_loops().

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vflow {

enum class CmpOp { Eq, Ne, Gt, Lt };
enum class ArithOp { Add, Sub, Mul, Div };

std::string_view to_string(CmpOp op);
std::string_view to_string(ArithOp op);

struct Literal {
  bool is_null = false;
  std::int64_t value = 0;

  static Literal null() { return {true, 0}; }
  static Literal integer(std::int64_t v) { return {false, v}; }
  std::string text() const;
  friend bool operator==(const Literal&, const Literal&) = default;
};

// A variable name or a literal.
struct Operand {
  std::variant<std::string, Literal> value;

  bool is_var() const { return std::holds_alternative<std::string>(value); }
  const std::string& var() const { return std::get<std::string>(value); }
  const Literal& lit() const { return std::get<Literal>(value); }
  std::string text() const;
  friend bool operator==(const Operand&, const Operand&) = default;
};

struct Condition {
  Operand lhs;
  CmpOp op = CmpOp::Eq;
  Operand rhs;
  friend bool operator==(const Condition&, const Condition&) = default;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct AssignLit {
  std::string dst;
  Literal lit;
  friend bool operator==(const AssignLit&, const AssignLit&) = default;
};
struct Copy {
  std::string dst, src;
  friend bool operator==(const Copy&, const Copy&) = default;
};
struct Arith {
  std::string dst;
  Operand lhs;
  ArithOp op = ArithOp::Add;
  Operand rhs;
  friend bool operator==(const Arith&, const Arith&) = default;
};
struct FieldStore {
  std::string base, field, src;
  friend bool operator==(const FieldStore&, const FieldStore&) = default;
};
struct FieldLoad {
  std::string dst, base, field;
  friend bool operator==(const FieldLoad&, const FieldLoad&) = default;
};
struct PtrStore {
  std::string ptr, src;
  friend bool operator==(const PtrStore&, const PtrStore&) = default;
};
struct PtrLoad {
  std::string dst, ptr;
  friend bool operator==(const PtrLoad&, const PtrLoad&) = default;
};
struct If {
  Condition cond;
  Block then_body;
  Block else_body;
};
struct While {
  Condition cond;
  Block body;
};
struct Call {
  std::optional<std::string> dst;
  std::string callee;
  std::vector<std::string> args;
  friend bool operator==(const Call&, const Call&) = default;
};
struct Return {
  std::string value;
  friend bool operator==(const Return&, const Return&) = default;
};

struct Stmt {
  using Node = std::variant<AssignLit, Copy, Arith, FieldStore, FieldLoad, PtrStore,
                            PtrLoad, If, While, Call, Return>;
  Node node;
  int line = 0;
  int column = 0;
};

// Structural equality, ignoring source positions.
bool same_block(const Block& a, const Block& b);

struct Function {
  std::string name;
  std::vector<std::string> params;
  Block body;
  int line = 0;
  // Declared with `extern name(...)`; has no body and is never entered.
  bool is_extern = false;
};

struct Program {
  std::vector<Function> functions;

  const Function* find(std::string_view name) const;
};

bool same_program(const Program& a, const Program& b);

}  // namespace vflow

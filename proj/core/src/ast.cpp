#include "vflow/ast.hpp"

#include <algorithm>

namespace vflow {

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Gt: return ">";
    case CmpOp::Lt: return "<";
  }
  return "?";
}

std::string_view to_string(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
  }
  return "?";
}

std::string Literal::text() const { return is_null ? "NULL" : std::to_string(value); }

std::string Operand::text() const { return is_var() ? var() : lit().text(); }

namespace {

bool same_stmt(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, If>) {
          return x.cond == y.cond && same_block(x.then_body, y.then_body) &&
                 same_block(x.else_body, y.else_body);
        } else if constexpr (std::is_same_v<T, While>) {
          return x.cond == y.cond && same_block(x.body, y.body);
        } else {
          return x == y;
        }
      },
      a.node);
}

}  // namespace

bool same_block(const Block& a, const Block& b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end(), same_stmt);
}

const Function* Program::find(std::string_view name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

bool same_program(const Program& a, const Program& b) {
  return std::equal(a.functions.begin(), a.functions.end(), b.functions.begin(),
                    b.functions.end(), [](const Function& x, const Function& y) {
                      return x.name == y.name && x.params == y.params &&
                             x.is_extern == y.is_extern && same_block(x.body, y.body);
                    });
}

}  // namespace vflow

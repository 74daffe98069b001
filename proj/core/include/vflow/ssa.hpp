#pragma once

// Single-assignment IR produced by to_ssa().
//
// Statements are kept flat, in program order, per function. Structured
// control flow survives as a per-statement branch context: the list of
// (branch, arm) choices that must hold for the statement to execute.
// Branch joins are materialized as Phi statements whose incoming values are
// tagged with the arm they arrive from.

#include "vflow/ast.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace vflow {

struct Arm {
  int branch = 0;  // index into SsaFunction::branches
  bool taken = true;
  friend bool operator==(const Arm&, const Arm&) = default;
  friend auto operator<=>(const Arm&, const Arm&) = default;
};

using Context = std::vector<Arm>;

struct SsaBranch {
  Condition cond;  // operands are SSA names or literals
  Context context;
  int line = 0;
};

namespace ssa {

struct Literal {
  std::string dst;
  vflow::Literal lit;
};
struct Copy {
  std::string dst, src;
};
struct Arith {
  std::string dst;
  Operand lhs;
  ArithOp op = ArithOp::Add;
  Operand rhs;
};
struct PhiIncoming {
  std::string src;
  Arm arm;
};
struct Phi {
  std::string dst;
  std::vector<PhiIncoming> incoming;
};
// `field` is "*" for pointer dereference, otherwise the field name.
struct Store {
  std::string ptr, field, src;
};
struct Load {
  std::string dst, ptr, field;
};
// A load after pointer resolution: `dst` receives every value stored by a
// matching earlier store of the same function.
struct LoadSource {
  std::string src;
  int store_stmt = 0;  // statement id of the store
};
struct ResolvedLoad {
  std::string dst, ptr, field;
  std::vector<LoadSource> sources;
};
// A store after pointer resolution; only the dereference of `ptr` remains.
struct DerefUse {
  std::string ptr, field, src;
};
struct Call {
  std::optional<std::string> dst;
  std::string callee;
  std::vector<std::string> args;
  int site = 0;
};
struct Return {
  std::string value;
};

}  // namespace ssa

struct SsaStmt {
  using Node = std::variant<ssa::Literal, ssa::Copy, ssa::Arith, ssa::Phi, ssa::Store,
                            ssa::Load, ssa::ResolvedLoad, ssa::DerefUse, ssa::Call,
                            ssa::Return>;
  int id = 0;  // unique across the program
  int line = 0;
  Context context;
  Node node;

  // SSA name defined by this statement, if any.
  std::optional<std::string> defined() const;
  // SSA names read by this statement (no literals).
  std::vector<std::string> uses() const;
};

struct SsaFunction {
  std::string name;
  std::vector<std::string> params;  // SSA names
  std::vector<SsaStmt> stmts;       // program order
  std::vector<SsaBranch> branches;
  int entry_id = 0;  // pseudo statement id of the parameters
  int line = 0;
  bool is_extern = false;

  const SsaStmt* stmt(int id) const;
};

struct SsaProgram {
  std::vector<SsaFunction> functions;
  // True once resolve_pointers() has run: no Store/Load statements remain.
  bool direct_flow = false;
  // Dereferences that could not be turned into direct flows.
  std::vector<std::string> notes;

  const SsaFunction* find(std::string_view name) const;
  int function_index(std::string_view name) const;
};

// Original variable of an SSA name ("x.2" -> "x").
std::string base_name(std::string_view ssa_name);

// Branch context of an arm list, rendered for debugging: "b0+ b1-".
std::string render_context(const Context& ctx);

}  // namespace vflow

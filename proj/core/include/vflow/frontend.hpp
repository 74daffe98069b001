#pragma once

#include "vflow/ast.hpp"
#include "vflow/ssa.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vflow {

class FrontendError : public std::runtime_error {
 public:
  FrontendError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class SyntaxError : public FrontendError {
 public:
  SyntaxError(const std::string& msg, int line, int column);
};

class UnknownFunction : public FrontendError {
 public:
  UnknownFunction(const std::string& name, int line);
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UseBeforeDef : public FrontendError {
 public:
  UseBeforeDef(const std::string& variable, int line);
  const std::string& variable() const { return variable_; }

 private:
  std::string variable_;
};

// Parses `.vf` source text. Statement nodes carry 1-based line numbers.
Program parse(std::string_view source);

// Canonical rendering; parse(pretty_print(p)) is structurally equal to p.
std::string pretty_print(const Program& p);

inline constexpr int kDefaultUnroll = 2;

// Replaces every `while (c) { S }` by k nested copies `if (c) { S; if (c) {...} }`.
Program unroll_loops(const Program& p, int k = kDefaultUnroll);

// Requires a loop-free program. Throws UseBeforeDef.
SsaProgram to_ssa(const Program& p);

// Turns pointer and field accesses into direct flows using a flow-insensitive,
// field-name-sensitive inclusion points-to analysis.
SsaProgram resolve_pointers(const SsaProgram& p);

struct CallSite {
  int site = 0;
  std::string callee;
  int line = 0;
};

struct CallGraph {
  // caller -> call sites in source order
  std::map<std::string, std::vector<CallSite>> sites;

  std::vector<std::string> callees(std::string_view caller) const;
  // Functions on a call-graph cycle (including self recursion), sorted.
  std::vector<std::string> recursive_functions() const;
};

// Throws UnknownFunction for calls to undefined, undeclared names.
CallGraph build_call_graph(const SsaProgram& p);

// parse + unroll + ssa + resolve_pointers + call graph.
struct Frontend {
  SsaProgram program;
  CallGraph call_graph;
};
Frontend run_frontend(std::string_view source, int unroll = kDefaultUnroll);

}  // namespace vflow

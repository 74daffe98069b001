#pragma once

// Guarded value-flow graph: nodes are values at the statement defining or
// using them ("v@s"); edges carry a call/return parenthesis label and a guard
// under which the flow happens.

#include "vflow/dyck.hpp"
#include "vflow/frontend.hpp"
#include "vflow/logic.hpp"
#include "vflow/ssa.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace vflow {

enum Role : uint8_t {
  kFormalParam = 1 << 0,
  kFormalRet = 1 << 1,
  kActualParam = 1 << 2,
  kActualRet = 1 << 3,
  kSource = 1 << 4,
  kSink = 1 << 5,
};

std::string render_roles(uint8_t roles);

enum class NodeKind {
  Param,     // formal parameter at the function entry
  Def,       // value defined by a statement (including call receivers)
  Literal,   // literal occurrence, e.g. NULL@2
  ArgUse,    // argument at a call statement
  RetUse,    // returned value at a return statement
  DerefUse,  // pointer operand of *p / p.f
};

std::string_view to_string(NodeKind k);

struct ValueNode {
  int id = 0;
  int function = 0;
  std::string value;  // SSA name or literal text
  int stmt = 0;       // statement id (entry id for parameters)
  int line = 0;
  NodeKind kind = NodeKind::Def;
  uint8_t roles = 0;
  // Calls: callee name and call-site id, for ArgUse nodes and receivers.
  std::string callee;
  int site = 0;
  // Parameter position (Param) or argument positions (ArgUse).
  std::vector<int> positions;

  bool has(Role r) const { return (roles & r) != 0; }
};

struct GvfgEdge {
  int src = 0;
  int dst = 0;
  EdgeLabel label;
  logic::Formula guard;
  // Branch contexts the flow may happen under; the guard is the disjunction
  // of their conjunctions. Empty for call/return edges.
  std::vector<Context> contexts;
};

class Gvfg {
 public:
  std::vector<std::string> functions;
  std::vector<ValueNode> nodes;
  std::vector<GvfgEdge> edges;
  std::vector<std::vector<int>> out;  // node -> edge ids
  std::vector<std::vector<int>> in;
  std::shared_ptr<logic::AtomTable> atoms = std::make_shared<logic::AtomTable>();
  std::vector<std::string> recursive;  // functions on call-graph cycles
  std::vector<std::string> notes;

  int find(int function, std::string_view value, int stmt) const;
  int function_id(std::string_view name) const;
  std::vector<int> function_nodes(int function) const;

  int add_node(ValueNode n);
  // Adds or merges (src, dst); a second context widens the guard.
  int add_edge(int src, int dst, EdgeLabel label, const Context& ctx);

  // "foo:a.1@3"
  std::string node_key(int node) const;
  // "a.1@3", with the line for literals: "NULL@2"
  std::string node_label(int node) const;

 private:
  std::map<std::tuple<int, std::string, int>, int, std::less<>> index_;
  std::map<std::pair<int, int>, int> edge_index_;
};

// Per-function graphs concatenated; calls add Open(k) argument->parameter and
// Close(k) return->receiver edges. Guards are left True.
Gvfg build_gvfg(const SsaProgram& p, const CallGraph& cg);

// Guards each intra-function edge by the conjunction of its enclosing branch
// conditions. Atoms are interned in program order.
void attach_guards(Gvfg& g, const SsaProgram& p);

struct ClientSpec {
  std::string name;
  std::function<bool(const Gvfg&, const ValueNode&)> is_source;
  std::function<bool(const Gvfg&, const ValueNode&)> is_sink;
};

// Resets and sets the Source/Sink role flags.
void mark_sources_sinks(Gvfg& g, const ClientSpec& spec);

// Text form, one record per line:
//   function <name>
//   node <fn> <value> <stmt> [roles] line=<n> kind=<k> callee=<f> site=<k> pos=<i,j>
//   edge <fn:value@stmt> <fn:value@stmt> <eps|(k|)k> <guard-expr>
void write_gvfg(std::ostream& os, const Gvfg& g);
Gvfg read_gvfg(std::istream& is);

}  // namespace vflow

#include "vflow/gvfg.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vflow {

namespace {

constexpr std::pair<Role, std::string_view> kRoleNames[] = {
    {kFormalParam, "FormalParam"}, {kFormalRet, "FormalRet"}, {kActualParam, "ActualParam"},
    {kActualRet, "ActualRet"},     {kSource, "Source"},       {kSink, "Sink"},
};

constexpr std::pair<NodeKind, std::string_view> kKindNames[] = {
    {NodeKind::Param, "param"},   {NodeKind::Def, "def"},       {NodeKind::Literal, "lit"},
    {NodeKind::ArgUse, "arg"},    {NodeKind::RetUse, "ret"},    {NodeKind::DerefUse, "deref"},
};

}  // namespace

std::string render_roles(uint8_t roles) {
  std::string out = "[";
  for (auto [r, name] : kRoleNames) {
    if (!(roles & r)) continue;
    if (out.size() > 1) out += ',';
    out += name;
  }
  return out + "]";
}

std::string_view to_string(NodeKind k) {
  for (auto [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

int Gvfg::find(int function, std::string_view value, int stmt) const {
  auto it = index_.find(std::make_tuple(function, std::string(value), stmt));
  return it == index_.end() ? -1 : it->second;
}

int Gvfg::function_id(std::string_view name) const {
  auto it = std::find(functions.begin(), functions.end(), name);
  return it == functions.end() ? -1 : static_cast<int>(it - functions.begin());
}

std::vector<int> Gvfg::function_nodes(int function) const {
  std::vector<int> r;
  for (const auto& n : nodes)
    if (n.function == function) r.push_back(n.id);
  return r;
}

int Gvfg::add_node(ValueNode n) {
  auto key = std::make_tuple(n.function, n.value, n.stmt);
  if (auto it = index_.find(key); it != index_.end()) {
    ValueNode& old = nodes[it->second];
    old.roles |= n.roles;
    for (int p : n.positions)
      if (std::find(old.positions.begin(), old.positions.end(), p) == old.positions.end())
        old.positions.push_back(p);
    return old.id;
  }
  n.id = static_cast<int>(nodes.size());
  index_.emplace(std::move(key), n.id);
  nodes.push_back(std::move(n));
  out.emplace_back();
  in.emplace_back();
  return nodes.back().id;
}

int Gvfg::add_edge(int src, int dst, EdgeLabel label, const Context& ctx) {
  auto [it, inserted] = edge_index_.try_emplace({src, dst}, static_cast<int>(edges.size()));
  if (inserted) {
    GvfgEdge e;
    e.src = src;
    e.dst = dst;
    e.label = label;
    edges.push_back(std::move(e));
    out[src].push_back(it->second);
    in[dst].push_back(it->second);
  } else if (edges[it->second].label != label) {
    throw std::logic_error("conflicting labels on edge " + node_key(src) + " -> " + node_key(dst));
  }
  GvfgEdge& e = edges[it->second];
  if (label.is_epsilon() && std::find(e.contexts.begin(), e.contexts.end(), ctx) == e.contexts.end())
    e.contexts.push_back(ctx);
  return it->second;
}

std::string Gvfg::node_key(int node) const {
  const ValueNode& n = nodes.at(node);
  return functions.at(n.function) + ":" + n.value + "@" + std::to_string(n.stmt);
}

std::string Gvfg::node_label(int node) const {
  const ValueNode& n = nodes.at(node);
  return n.value + "@" + std::to_string(n.kind == NodeKind::Literal ? n.line : n.stmt);
}

// ---------------------------------------------------------------------------
// Construction

namespace {

Context concat(const Context& a, const Context& b) {
  Context r = a;
  for (const Arm& x : b)
    if (std::find(r.begin(), r.end(), x) == r.end()) r.push_back(x);
  return r;
}

class Builder {
 public:
  Builder(Gvfg& g, const SsaProgram& p) : g_(g), p_(p) {}

  void function(int fi) {
    const SsaFunction& f = p_.functions[fi];
    defs_.clear();
    if (f.is_extern) return;
    for (size_t i = 0; i < f.params.size(); ++i) {
      ValueNode n = make(fi, f.params[i], f.entry_id, f.line, NodeKind::Param);
      n.roles = kFormalParam;
      n.positions = {static_cast<int>(i)};
      defs_[f.params[i]] = g_.add_node(std::move(n));
    }
    for (const SsaStmt& s : f.stmts) std::visit([&](const auto& x) { stmt(fi, s, x); }, s.node);
  }

  // Open/Close edges between call statements and callee bodies.
  void link_calls() {
    for (const auto& [site, c] : calls_) {
      int callee = p_.function_index(c.callee);
      const SsaFunction& fn = p_.functions[callee];
      for (size_t i = 0; i < c.args.size(); ++i) {
        int param = g_.find(callee, fn.params[i], fn.entry_id);
        g_.add_edge(c.args[i], param, EdgeLabel::open(site), {});
      }
      if (c.receiver < 0) continue;
      for (int r : returns_[callee]) g_.add_edge(r, c.receiver, EdgeLabel::close(site), {});
    }
  }

 private:
  struct PendingCall {
    std::string callee;
    std::vector<int> args;
    int receiver = -1;
  };

  ValueNode make(int fi, const std::string& value, int stmt, int line, NodeKind kind) {
    ValueNode n;
    n.function = fi;
    n.value = value;
    n.stmt = stmt;
    n.line = line;
    n.kind = kind;
    return n;
  }

  int def(int fi, const SsaStmt& s, const std::string& dst) {
    int id = g_.add_node(make(fi, dst, s.id, s.line, NodeKind::Def));
    defs_[dst] = id;
    return id;
  }

  int use(const std::string& v, int line) const {
    auto it = defs_.find(v);
    if (it == defs_.end()) throw UseBeforeDef(v, line);
    return it->second;
  }

  int literal(int fi, const SsaStmt& s, const vflow::Literal& lit) {
    return g_.add_node(make(fi, lit.text(), s.id, s.line, NodeKind::Literal));
  }

  void operand(int fi, const SsaStmt& s, const Operand& o, int dst) {
    int src = o.is_var() ? use(o.var(), s.line) : literal(fi, s, o.lit());
    g_.add_edge(src, dst, EdgeLabel::epsilon(), s.context);
  }

  void stmt(int fi, const SsaStmt& s, const ssa::Literal& x) {
    int src = literal(fi, s, x.lit);
    g_.add_edge(src, def(fi, s, x.dst), EdgeLabel::epsilon(), s.context);
  }
  void stmt(int fi, const SsaStmt& s, const ssa::Copy& x) {
    int src = use(x.src, s.line);
    g_.add_edge(src, def(fi, s, x.dst), EdgeLabel::epsilon(), s.context);
  }
  void stmt(int fi, const SsaStmt& s, const ssa::Arith& x) {
    int dst = def(fi, s, x.dst);
    operand(fi, s, x.lhs, dst);
    operand(fi, s, x.rhs, dst);
  }
  void stmt(int fi, const SsaStmt& s, const ssa::Phi& x) {
    std::vector<std::pair<int, Arm>> srcs;
    for (const auto& in : x.incoming) srcs.emplace_back(use(in.src, s.line), in.arm);
    int dst = def(fi, s, x.dst);
    for (auto [src, arm] : srcs) g_.add_edge(src, dst, EdgeLabel::epsilon(), concat(s.context, {arm}));
  }
  void stmt(int, const SsaStmt&, const ssa::Store&) {
    throw std::logic_error("build_gvfg requires a program after resolve_pointers");
  }
  void stmt(int, const SsaStmt&, const ssa::Load&) {
    throw std::logic_error("build_gvfg requires a program after resolve_pointers");
  }
  void stmt(int fi, const SsaStmt& s, const ssa::ResolvedLoad& x) {
    deref(fi, s, x.ptr);
    const SsaFunction& f = p_.functions[fi];
    std::vector<std::pair<int, Context>> srcs;
    for (const auto& src : x.sources) {
      const SsaStmt* store = f.stmt(src.store_stmt);
      srcs.emplace_back(use(src.src, s.line), concat(s.context, store ? store->context : Context{}));
    }
    int dst = def(fi, s, x.dst);
    for (const auto& [src, ctx] : srcs) g_.add_edge(src, dst, EdgeLabel::epsilon(), ctx);
  }
  void stmt(int fi, const SsaStmt& s, const ssa::DerefUse& x) { deref(fi, s, x.ptr); }
  void stmt(int fi, const SsaStmt& s, const ssa::Call& x) {
    int callee = p_.function_index(x.callee);
    bool defined = callee >= 0 && !p_.functions[callee].is_extern;
    PendingCall pc{x.callee, {}, -1};
    for (size_t i = 0; i < x.args.size(); ++i) {
      int src = use(x.args[i], s.line);
      ValueNode n = make(fi, x.args[i], s.id, s.line, NodeKind::ArgUse);
      n.callee = x.callee;
      n.site = x.site;
      n.positions = {static_cast<int>(i)};
      if (defined) n.roles = kActualParam;
      int a = g_.add_node(std::move(n));
      g_.add_edge(src, a, EdgeLabel::epsilon(), s.context);
      pc.args.push_back(a);
    }
    if (x.dst) {
      ValueNode n = make(fi, *x.dst, s.id, s.line, NodeKind::Def);
      n.callee = x.callee;
      n.site = x.site;
      if (defined) n.roles = kActualRet;
      pc.receiver = g_.add_node(std::move(n));
      defs_[*x.dst] = pc.receiver;
    }
    if (defined) calls_.emplace(x.site, std::move(pc));
  }
  void stmt(int fi, const SsaStmt& s, const ssa::Return& x) {
    int src = use(x.value, s.line);
    ValueNode n = make(fi, x.value, s.id, s.line, NodeKind::RetUse);
    n.roles = kFormalRet;
    int r = g_.add_node(std::move(n));
    g_.add_edge(src, r, EdgeLabel::epsilon(), s.context);
    returns_[fi].push_back(r);
  }

  void deref(int fi, const SsaStmt& s, const std::string& ptr) {
    int src = use(ptr, s.line);
    int d = g_.add_node(make(fi, ptr, s.id, s.line, NodeKind::DerefUse));
    g_.add_edge(src, d, EdgeLabel::epsilon(), s.context);
  }

  Gvfg& g_;
  const SsaProgram& p_;
  std::map<std::string, int> defs_;
  std::map<int, PendingCall> calls_;
  std::map<int, std::vector<int>> returns_;
};

}  // namespace

Gvfg build_gvfg(const SsaProgram& p, const CallGraph& cg) {
  if (!p.direct_flow) throw std::logic_error("build_gvfg requires a program after resolve_pointers");
  Gvfg g;
  for (const auto& f : p.functions) g.functions.push_back(f.name);
  Builder b(g, p);
  for (size_t i = 0; i < p.functions.size(); ++i) b.function(static_cast<int>(i));
  b.link_calls();
  g.recursive = cg.recursive_functions();
  for (const auto& f : g.recursive)
    g.notes.push_back("recursive function " + f + ": call contexts bounded by depth");
  g.notes.insert(g.notes.end(), p.notes.begin(), p.notes.end());
  return g;
}

void attach_guards(Gvfg& g, const SsaProgram& p) {
  // Intern every branch condition up front, in program order, so atom ids do
  // not depend on edge order.
  std::vector<std::vector<logic::Formula>> conds(p.functions.size());
  for (size_t fi = 0; fi < p.functions.size(); ++fi) {
    const SsaFunction& f = p.functions[fi];
    auto term = [&](const Operand& o) {
      return o.is_var() ? logic::Term{false, f.name + ":" + o.var()}
                        : logic::Term{true, o.lit().text()};
    };
    for (const auto& br : f.branches)
      conds[fi].push_back(g.atoms->make(term(br.cond.lhs), br.cond.op, term(br.cond.rhs)));
  }
  for (auto& e : g.edges) {
    if (!e.label.is_epsilon()) {
      e.guard = logic::Formula::top();
      continue;
    }
    int fi = g.nodes[e.dst].function;
    std::vector<logic::Formula> alts;
    for (const Context& ctx : e.contexts) {
      std::vector<logic::Formula> conj;
      for (const Arm& a : ctx) {
        const logic::Formula& c = conds[fi].at(a.branch);
        conj.push_back(a.taken ? c : logic::mk_not(c));
      }
      alts.push_back(logic::mk_and(std::move(conj)));
    }
    e.guard = alts.empty() ? logic::Formula::top() : logic::mk_or(std::move(alts));
  }
}

void mark_sources_sinks(Gvfg& g, const ClientSpec& spec) {
  for (auto& n : g.nodes) {
    n.roles &= static_cast<uint8_t>(~(kSource | kSink));
    if (spec.is_source && spec.is_source(g, n)) n.roles |= kSource;
    if (spec.is_sink && spec.is_sink(g, n)) n.roles |= kSink;
  }
}

// ---------------------------------------------------------------------------
// Text form

void write_gvfg(std::ostream& os, const Gvfg& g) {
  for (const auto& f : g.functions) os << "function " << f << '\n';
  for (const auto& n : g.nodes) {
    os << "node " << g.functions[n.function] << ' ' << n.value << ' ' << n.stmt << ' '
       << render_roles(n.roles) << " line=" << n.line << " kind=" << to_string(n.kind);
    if (!n.callee.empty()) os << " callee=" << n.callee << " site=" << n.site;
    if (!n.positions.empty()) {
      os << " pos=";
      for (size_t i = 0; i < n.positions.size(); ++i) os << (i ? "," : "") << n.positions[i];
    }
    os << '\n';
  }
  for (const auto& e : g.edges)
    os << "edge " << g.node_key(e.src) << ' ' << g.node_key(e.dst) << ' ' << e.label.text() << ' '
       << logic::render(e.guard, *g.atoms) << '\n';
}

namespace {

[[noreturn]] void bad_line(int n, const std::string& why) {
  throw std::runtime_error("gvfg line " + std::to_string(n) + ": " + why);
}

uint8_t parse_roles(std::string_view s, int line) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') bad_line(line, "bad role list");
  s = s.substr(1, s.size() - 2);
  uint8_t r = 0;
  while (!s.empty()) {
    size_t comma = s.find(',');
    std::string_view name = s.substr(0, comma);
    bool found = false;
    for (auto [role, rn] : kRoleNames)
      if (rn == name) r |= role, found = true;
    if (!found) bad_line(line, "unknown role '" + std::string(name) + "'");
    s = comma == std::string_view::npos ? std::string_view{} : s.substr(comma + 1);
  }
  return r;
}

}  // namespace

Gvfg read_gvfg(std::istream& is) {
  Gvfg g;
  std::map<std::string, int> by_key;
  std::string text;
  int lineno = 0;
  while (std::getline(is, text)) {
    ++lineno;
    std::istringstream ls(text);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "function") {
      std::string name;
      ls >> name;
      g.functions.push_back(name);
    } else if (tag == "node") {
      std::string fn, roles;
      ValueNode n;
      if (!(ls >> fn >> n.value >> n.stmt >> roles)) bad_line(lineno, "truncated node");
      n.function = g.function_id(fn);
      if (n.function < 0) bad_line(lineno, "unknown function " + fn);
      n.roles = parse_roles(roles, lineno);
      std::string attr;
      while (ls >> attr) {
        size_t eq = attr.find('=');
        if (eq == std::string::npos) bad_line(lineno, "bad attribute " + attr);
        std::string k = attr.substr(0, eq), v = attr.substr(eq + 1);
        if (k == "line") {
          n.line = std::stoi(v);
        } else if (k == "kind") {
          bool ok = false;
          for (auto [kind, name] : kKindNames)
            if (name == v) n.kind = kind, ok = true;
          if (!ok) bad_line(lineno, "unknown kind " + v);
        } else if (k == "callee") {
          n.callee = v;
        } else if (k == "site") {
          n.site = std::stoi(v);
        } else if (k == "pos") {
          std::istringstream ps(v);
          std::string item;
          while (std::getline(ps, item, ',')) n.positions.push_back(std::stoi(item));
        } else {
          bad_line(lineno, "unknown attribute " + k);
        }
      }
      int id = g.add_node(n);
      by_key[g.node_key(id)] = id;
    } else if (tag == "edge") {
      std::string src, dst, label;
      if (!(ls >> src >> dst >> label)) bad_line(lineno, "truncated edge");
      auto s = by_key.find(src), d = by_key.find(dst);
      if (s == by_key.end() || d == by_key.end()) bad_line(lineno, "edge to unknown node");
      std::string guard;
      std::getline(ls, guard);
      int e = g.add_edge(s->second, d->second, parse_label(label), {});
      g.edges[e].contexts.clear();
      g.edges[e].guard = logic::parse_formula(guard, *g.atoms);
    } else {
      bad_line(lineno, "unknown record '" + tag + "'");
    }
  }
  return g;
}

}  // namespace vflow

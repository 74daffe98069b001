// Flow-insensitive, context-insensitive inclusion-based points-to analysis
// over SSA values, field-sensitive by field name ("*" is the pointee of a
// plain dereference). Results are used to replace loads by direct copies
// from the stores that may have written the loaded cell.

#include "vflow/frontend.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace vflow {

namespace {

using ObjSet = std::set<int>;

class PointsTo {
 public:
  explicit PointsTo(const SsaProgram& p) : prog_(p) {
    for (size_t f = 0; f < p.functions.size(); ++f) {
      const auto& fn = p.functions[f];
      for (const auto& prm : fn.params) add_root(value(f, prm));
      for (const auto& s : fn.stmts) {
        std::visit(
            [&](const auto& n) {
              using T = std::decay_t<decltype(n)>;
              if constexpr (std::is_same_v<T, ssa::Literal> || std::is_same_v<T, ssa::Arith>) {
                add_root(value(f, n.dst));
              } else if constexpr (std::is_same_v<T, ssa::Call>) {
                if (n.dst) add_root(value(f, *n.dst));
              }
            },
            s.node);
      }
    }
    solve();
  }

  const ObjSet& pts(size_t f, const std::string& v) { return pts_[value(f, v)]; }

 private:
  int value(size_t f, const std::string& v) {
    auto key = std::make_pair(static_cast<int>(f), v);
    auto [it, inserted] = values_.try_emplace(key, static_cast<int>(values_.size()));
    if (inserted) pts_.emplace_back();
    return it->second;
  }
  int object() { return next_obj_++; }
  // A cell's initial content is a fresh object; cells of such objects share
  // one summary object per field so that chains of loads stay finite.
  int cell(int obj, const std::string& field) {
    auto [it, inserted] = cells_.try_emplace({obj, field}, 0);
    if (inserted) {
      it->second = static_cast<int>(cell_pts_.size());
      cell_pts_.emplace_back();
      int init;
      if (!derived_.count(obj)) {
        init = object();
      } else {
        auto [s, fresh] = summary_.try_emplace(field, 0);
        if (fresh) s->second = object();
        init = s->second;
      }
      derived_.insert(init);
      cell_init_.push_back(init);
    }
    return it->second;
  }
  void add_root(int v) { pts_[v].insert(object()); }

  bool merge(ObjSet& into, const ObjSet& from) {
    size_t before = into.size();
    into.insert(from.begin(), from.end());
    return into.size() != before;
  }

  void solve() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (size_t f = 0; f < prog_.functions.size(); ++f) {
        const auto& fn = prog_.functions[f];
        for (const auto& s : fn.stmts) {
          std::visit(
              [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ssa::Copy>) {
                  changed |= flow(f, n.src, f, n.dst);
                } else if constexpr (std::is_same_v<T, ssa::Phi>) {
                  for (const auto& in : n.incoming) changed |= flow(f, in.src, f, n.dst);
                } else if constexpr (std::is_same_v<T, ssa::Store>) {
                  ObjSet src = pts_[value(f, n.src)];
                  ObjSet targets = pts_[value(f, n.ptr)];
                  for (int o : targets) changed |= merge(cell_pts_[cell(o, n.field)], src);
                } else if constexpr (std::is_same_v<T, ssa::Load>) {
                  ObjSet targets = pts_[value(f, n.ptr)];
                  int d = value(f, n.dst);
                  for (int o : targets) {
                    int c = cell(o, n.field);
                    ObjSet add = cell_pts_[c];
                    add.insert(cell_init_[c]);
                    changed |= merge(pts_[d], add);
                  }
                } else if constexpr (std::is_same_v<T, ssa::Call>) {
                  int g = prog_.function_index(n.callee);
                  if (g < 0 || prog_.functions[g].is_extern) return;
                  const auto& callee = prog_.functions[g];
                  for (size_t i = 0; i < n.args.size() && i < callee.params.size(); ++i)
                    changed |= flow(f, n.args[i], g, callee.params[i]);
                  if (n.dst)
                    for (const auto& cs : callee.stmts)
                      if (const auto* r = std::get_if<ssa::Return>(&cs.node))
                        changed |= flow(g, r->value, f, *n.dst);
                }
              },
              s.node);
        }
      }
    }
  }

  bool flow(size_t from_fn, const std::string& from, size_t to_fn, const std::string& to) {
    int a = value(from_fn, from), b = value(to_fn, to);
    if (a == b) return false;
    ObjSet src = pts_[a];
    return merge(pts_[b], src);
  }

  const SsaProgram& prog_;
  std::map<std::pair<int, std::string>, int> values_;
  std::vector<ObjSet> pts_;
  std::map<std::pair<int, std::string>, int> cells_;
  std::vector<ObjSet> cell_pts_;
  std::vector<int> cell_init_;
  std::set<int> derived_;  // objects standing for initial cell contents
  std::map<std::string, int> summary_;
  int next_obj_ = 0;
};

bool intersects(const ObjSet& a, const ObjSet& b) {
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

// Two statements can never both execute if they sit in opposite arms of one branch.
bool exclusive(const Context& a, const Context& b) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (x.branch == y.branch && x.taken != y.taken) return true;
  return false;
}

std::string where(const SsaFunction& fn, const SsaStmt& s) {
  return fn.name + ":" + std::to_string(s.line);
}

}  // namespace

SsaProgram resolve_pointers(const SsaProgram& p) {
  if (p.direct_flow) return p;
  PointsTo pt(p);
  SsaProgram out = p;
  out.direct_flow = true;
  std::set<std::string> notes(p.notes.begin(), p.notes.end());

  for (size_t f = 0; f < out.functions.size(); ++f) {
    auto& fn = out.functions[f];
    const auto& orig = p.functions[f];
    for (size_t i = 0; i < fn.stmts.size(); ++i) {
      auto& s = fn.stmts[i];
      if (const auto* st = std::get_if<ssa::Store>(&s.node)) {
        ssa::DerefUse u{st->ptr, st->field, st->src};
        s.node = u;
        continue;
      }
      const auto* ld = std::get_if<ssa::Load>(&s.node);
      if (!ld) continue;
      ssa::ResolvedLoad r{ld->dst, ld->ptr, ld->field, {}};
      const ObjSet targets = pt.pts(f, ld->ptr);
      for (size_t j = 0; j < i; ++j) {
        const auto& prev = orig.stmts[j];
        const auto* st = std::get_if<ssa::Store>(&prev.node);
        if (!st || st->field != ld->field) continue;
        if (!intersects(pt.pts(f, st->ptr), targets)) continue;
        if (exclusive(prev.context, s.context)) continue;
        r.sources.push_back({st->src, prev.id});
      }
      // Stores in other functions reach this load only through memory that
      // crosses a call boundary; those flows are not materialized.
      for (size_t g = 0; g < p.functions.size(); ++g) {
        if (g == f) continue;
        for (const auto& other : p.functions[g].stmts) {
          const auto* st = std::get_if<ssa::Store>(&other.node);
          if (st && st->field == ld->field && intersects(pt.pts(g, st->ptr), targets))
            notes.insert("load at " + where(fn, s) + " may read a value stored at " +
                         where(p.functions[g], other) + " (cross-function memory flow not modeled)");
        }
      }
      if (r.sources.empty())
        notes.insert("unresolved dereference at " + where(fn, s) + " (no reaching store)");
      s.node = std::move(r);
    }
  }
  out.notes.assign(notes.begin(), notes.end());
  return out;
}

UnknownFunction::UnknownFunction(const std::string& name, int line)
    : FrontendError("line " + std::to_string(line) + ": call to unknown function '" + name + "'",
                    line, 0),
      name_(name) {}

std::vector<std::string> CallGraph::callees(std::string_view caller) const {
  std::vector<std::string> out;
  auto it = sites.find(std::string(caller));
  if (it == sites.end()) return out;
  for (const auto& cs : it->second) out.push_back(cs.callee);
  return out;
}

std::vector<std::string> CallGraph::recursive_functions() const {
  // Tarjan's SCC over caller -> callee edges.
  std::map<std::string, int> index, low;
  std::set<std::string> on_stack, result;
  std::vector<std::string> stack;
  int counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : callees(v)) {
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> scc;
      std::string w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack.erase(w);
        scc.push_back(w);
      } while (w != v);
      bool self = false;
      for (const auto& c : callees(v)) self |= c == v;
      if (scc.size() > 1 || self) result.insert(scc.begin(), scc.end());
    }
  };
  for (const auto& [caller, _] : sites)
    if (!index.count(caller)) visit(caller);
  return {result.begin(), result.end()};
}

CallGraph build_call_graph(const SsaProgram& p) {
  CallGraph cg;
  std::set<int> seen_sites;
  for (const auto& fn : p.functions) {
    auto& list = cg.sites[fn.name];
    for (const auto& s : fn.stmts) {
      const auto* c = std::get_if<ssa::Call>(&s.node);
      if (!c) continue;
      const SsaFunction* callee = p.find(c->callee);
      if (!callee) throw UnknownFunction(c->callee, s.line);
      if (callee->params.size() != c->args.size())
        throw FrontendError("line " + std::to_string(s.line) + ": '" + c->callee + "' expects " +
                                std::to_string(callee->params.size()) + " argument(s), got " +
                                std::to_string(c->args.size()),
                            s.line, 0);
      if (c->site <= 0 || !seen_sites.insert(c->site).second)
        throw FrontendError("duplicate call-site id " + std::to_string(c->site), s.line, 0);
      list.push_back({c->site, c->callee, s.line});
    }
  }
  return cg;
}

Frontend run_frontend(std::string_view source, int unroll) {
  Program ast = unroll_loops(parse(source), unroll);
  SsaProgram ssa = to_ssa(ast);
  CallGraph cg = build_call_graph(ssa);
  return {resolve_pointers(ssa), std::move(cg)};
}

}  // namespace vflow

#include "vflow/frontend.hpp"
#include "vflow/ssa.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace vflow {

UseBeforeDef::UseBeforeDef(const std::string& variable, int line)
    : FrontendError("line " + std::to_string(line) + ": '" + variable + "' used before definition",
                    line, 0),
      variable_(variable) {}

std::optional<std::string> SsaStmt::defined() const {
  return std::visit(
      [](const auto& n) -> std::optional<std::string> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ssa::Literal> || std::is_same_v<T, ssa::Copy> ||
                      std::is_same_v<T, ssa::Arith> || std::is_same_v<T, ssa::Phi> ||
                      std::is_same_v<T, ssa::Load> || std::is_same_v<T, ssa::ResolvedLoad>) {
          return n.dst;
        } else if constexpr (std::is_same_v<T, ssa::Call>) {
          return n.dst;
        } else {
          return std::nullopt;
        }
      },
      node);
}

std::vector<std::string> SsaStmt::uses() const {
  std::vector<std::string> out;
  auto op = [&](const Operand& o) {
    if (o.is_var()) out.push_back(o.var());
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, ssa::Copy>) {
          out.push_back(n.src);
        } else if constexpr (std::is_same_v<T, ssa::Arith>) {
          op(n.lhs);
          op(n.rhs);
        } else if constexpr (std::is_same_v<T, ssa::Phi>) {
          for (const auto& in : n.incoming) out.push_back(in.src);
        } else if constexpr (std::is_same_v<T, ssa::Store>) {
          out.push_back(n.ptr);
          out.push_back(n.src);
        } else if constexpr (std::is_same_v<T, ssa::Load>) {
          out.push_back(n.ptr);
        } else if constexpr (std::is_same_v<T, ssa::ResolvedLoad>) {
          out.push_back(n.ptr);
          for (const auto& s : n.sources) out.push_back(s.src);
        } else if constexpr (std::is_same_v<T, ssa::DerefUse>) {
          out.push_back(n.ptr);
          out.push_back(n.src);
        } else if constexpr (std::is_same_v<T, ssa::Call>) {
          out.insert(out.end(), n.args.begin(), n.args.end());
        } else if constexpr (std::is_same_v<T, ssa::Return>) {
          out.push_back(n.value);
        }
      },
      node);
  return out;
}

const SsaStmt* SsaFunction::stmt(int id) const {
  auto it = std::lower_bound(stmts.begin(), stmts.end(), id,
                             [](const SsaStmt& s, int v) { return s.id < v; });
  return it != stmts.end() && it->id == id ? &*it : nullptr;
}

const SsaFunction* SsaProgram::find(std::string_view name) const {
  for (const auto& f : functions)
    if (f.name == name) return &f;
  return nullptr;
}

int SsaProgram::function_index(std::string_view name) const {
  for (size_t i = 0; i < functions.size(); ++i)
    if (functions[i].name == name) return static_cast<int>(i);
  return -1;
}

std::string base_name(std::string_view ssa_name) {
  auto dot = ssa_name.rfind('.');
  return std::string(dot == std::string_view::npos ? ssa_name : ssa_name.substr(0, dot));
}

std::string render_context(const Context& ctx) {
  std::string out;
  for (const auto& a : ctx) {
    if (!out.empty()) out += ' ';
    out += "b" + std::to_string(a.branch) + (a.taken ? "+" : "-");
  }
  return out;
}

namespace {

Block unroll_block(const Block& b, int k) {
  Block out;
  for (const auto& s : b) {
    if (const auto* w = std::get_if<While>(&s.node)) {
      Block body = unroll_block(w->body, k);
      Block nested;
      for (int i = 0; i < k; ++i) {
        If node;
        node.cond = w->cond;
        node.then_body = body;
        node.then_body.insert(node.then_body.end(), nested.begin(), nested.end());
        Stmt st;
        st.line = s.line;
        st.column = s.column;
        st.node = std::move(node);
        nested.clear();
        nested.push_back(std::move(st));
      }
      out.insert(out.end(), nested.begin(), nested.end());
      continue;
    }
    Stmt copy = s;
    if (auto* i = std::get_if<If>(&copy.node)) {
      i->then_body = unroll_block(i->then_body, k);
      i->else_body = unroll_block(i->else_body, k);
    }
    out.push_back(std::move(copy));
  }
  return out;
}

bool always_returns(const Block& b) {
  if (b.empty()) return false;
  const Stmt& last = b.back();
  if (std::holds_alternative<Return>(last.node)) return true;
  if (const auto* i = std::get_if<If>(&last.node))
    return always_returns(i->then_body) && always_returns(i->else_body);
  return false;
}

// Drops statements after a return and moves the continuation of a
// partially-returning `if` into its fall-through arm, so that every
// statement's branch context is exactly the condition under which it runs.
Block normalize_returns(Block b) {
  Block out;
  for (size_t i = 0; i < b.size(); ++i) {
    Stmt s = std::move(b[i]);
    if (std::holds_alternative<Return>(s.node)) {
      out.push_back(std::move(s));
      return out;
    }
    if (auto* node = std::get_if<If>(&s.node)) {
      node->then_body = normalize_returns(std::move(node->then_body));
      node->else_body = normalize_returns(std::move(node->else_body));
      bool t = always_returns(node->then_body);
      bool e = always_returns(node->else_body);
      if (t || e) {
        Block rest(std::make_move_iterator(b.begin() + i + 1), std::make_move_iterator(b.end()));
        if (t && !e) {
          node->else_body.insert(node->else_body.end(), rest.begin(), rest.end());
          node->else_body = normalize_returns(std::move(node->else_body));
        } else if (e && !t) {
          node->then_body.insert(node->then_body.end(), rest.begin(), rest.end());
          node->then_body = normalize_returns(std::move(node->then_body));
        }
        out.push_back(std::move(s));
        return out;
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

class SsaBuilder {
 public:
  SsaProgram run(const Program& p) {
    SsaProgram out;
    for (const auto& f : p.functions) out.functions.push_back(function(f));
    return out;
  }

 private:
  using Env = std::map<std::string, std::string>;

  SsaFunction function(const Function& f) {
    fn_ = SsaFunction{};
    versions_.clear();
    fn_.name = f.name;
    fn_.line = f.line;
    fn_.is_extern = f.is_extern;
    fn_.entry_id = next_id_++;
    Env env;
    for (const auto& prm : f.params) {
      std::string v = fresh(prm);
      fn_.params.push_back(v);
      env[prm] = v;
    }
    if (!f.is_extern) walk(normalize_returns(f.body), Context{}, env);
    return std::move(fn_);
  }

  std::string fresh(const std::string& var) { return var + "." + std::to_string(++versions_[var]); }

  static std::string lookup(const Env& env, const std::string& var, int line) {
    auto it = env.find(var);
    if (it == env.end()) throw UseBeforeDef(var, line);
    return it->second;
  }
  static Operand lookup(const Env& env, const Operand& o, int line) {
    if (!o.is_var()) return o;
    return {lookup(env, o.var(), line)};
  }

  void emit(int line, const Context& ctx, SsaStmt::Node node) {
    SsaStmt s;
    s.id = next_id_++;
    s.line = line;
    s.context = ctx;
    s.node = std::move(node);
    fn_.stmts.push_back(std::move(s));
  }

  // Returns false when every path through the block ends in a return.
  bool walk(const Block& b, const Context& ctx, Env& env) {
    for (const auto& s : b) {
      const int line = s.line;
      bool falls_through = std::visit(
          [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AssignLit>) {
              std::string d = fresh(n.dst);
              emit(line, ctx, ssa::Literal{d, n.lit});
              env[n.dst] = d;
            } else if constexpr (std::is_same_v<T, vflow::Copy>) {
              std::string src = lookup(env, n.src, line);
              std::string d = fresh(n.dst);
              emit(line, ctx, ssa::Copy{d, src});
              env[n.dst] = d;
            } else if constexpr (std::is_same_v<T, vflow::Arith>) {
              Operand l = lookup(env, n.lhs, line), r = lookup(env, n.rhs, line);
              std::string d = fresh(n.dst);
              emit(line, ctx, ssa::Arith{d, l, n.op, r});
              env[n.dst] = d;
            } else if constexpr (std::is_same_v<T, FieldStore>) {
              emit(line, ctx,
                   ssa::Store{lookup(env, n.base, line), n.field, lookup(env, n.src, line)});
            } else if constexpr (std::is_same_v<T, PtrStore>) {
              emit(line, ctx, ssa::Store{lookup(env, n.ptr, line), "*", lookup(env, n.src, line)});
            } else if constexpr (std::is_same_v<T, FieldLoad>) {
              std::string base = lookup(env, n.base, line);
              std::string d = fresh(n.dst);
              emit(line, ctx, ssa::Load{d, base, n.field});
              env[n.dst] = d;
            } else if constexpr (std::is_same_v<T, PtrLoad>) {
              std::string ptr = lookup(env, n.ptr, line);
              std::string d = fresh(n.dst);
              emit(line, ctx, ssa::Load{d, ptr, "*"});
              env[n.dst] = d;
            } else if constexpr (std::is_same_v<T, vflow::Call>) {
              ssa::Call c;
              c.callee = n.callee;
              for (const auto& a : n.args) c.args.push_back(lookup(env, a, line));
              c.site = ++site_counter_;
              if (n.dst) {
                c.dst = fresh(*n.dst);
                env[*n.dst] = *c.dst;
              }
              emit(line, ctx, std::move(c));
            } else if constexpr (std::is_same_v<T, vflow::Return>) {
              emit(line, ctx, ssa::Return{lookup(env, n.value, line)});
              return false;
            } else if constexpr (std::is_same_v<T, If>) {
              return branch(n, line, ctx, env);
            } else if constexpr (std::is_same_v<T, While>) {
              throw FrontendError("line " + std::to_string(line) + ": loop left in program passed to to_ssa",
                                  line, 0);
            }
            return true;
          },
          s.node);
      if (!falls_through) return false;
    }
    return true;
  }

  bool branch(const If& n, int line, const Context& ctx, Env& env) {
    SsaBranch br;
    br.cond = Condition{lookup(env, n.cond.lhs, line), n.cond.op, lookup(env, n.cond.rhs, line)};
    br.context = ctx;
    br.line = line;
    const int id = static_cast<int>(fn_.branches.size());
    fn_.branches.push_back(br);

    Context then_ctx = ctx, else_ctx = ctx;
    then_ctx.push_back({id, true});
    else_ctx.push_back({id, false});
    Env then_env = env, else_env = env;
    bool t = walk(n.then_body, then_ctx, then_env);
    bool e = walk(n.else_body, else_ctx, else_env);
    if (t && e) {
      Env joined;
      for (const auto& [var, tv] : then_env) {
        auto it = else_env.find(var);
        if (it == else_env.end()) continue;
        if (tv == it->second) {
          joined[var] = tv;
          continue;
        }
        std::string d = fresh(var);
        emit(line, ctx, ssa::Phi{d, {{tv, {id, true}}, {it->second, {id, false}}}});
        joined[var] = d;
      }
      env = std::move(joined);
      return true;
    }
    if (t) env = std::move(then_env);
    if (e) env = std::move(else_env);
    return t || e;
  }

  SsaFunction fn_;
  std::map<std::string, int> versions_;
  int next_id_ = 1;
  int site_counter_ = 0;
};

}  // namespace

Program unroll_loops(const Program& p, int k) {
  Program out = p;
  for (auto& f : out.functions) f.body = unroll_block(f.body, std::max(k, 0));
  return out;
}

SsaProgram to_ssa(const Program& p) { return SsaBuilder().run(p); }

}  // namespace vflow

#include "oracles.hpp"

#include <functional>
#include <stdexcept>

namespace vflow::oracle {

bool grammar_accepts(std::span<const EdgeLabel> all) {
  std::vector<EdgeLabel> s;
  for (const auto& l : all)
    if (!l.is_epsilon()) s.push_back(l);
  const int n = static_cast<int>(s.size());
  auto open = [&](int i, int k) { return s[i].kind == EdgeLabel::Kind::Open && s[i].site == k; };
  auto is_close = [&](int i) { return s[i].kind == EdgeLabel::Kind::Close; };
  auto is_open = [&](int i) { return s[i].kind == EdgeLabel::Kind::Open; };

  // bal[i][j]: s[i, j) is balanced.
  std::vector<std::vector<char>> bal(n + 1, std::vector<char>(n + 1, 0));
  for (int i = 0; i <= n; ++i) bal[i][i] = 1;
  for (int len = 2; len <= n; len += 2)
    for (int i = 0; i + len <= n; ++i) {
      int j = i + len;
      if (!is_open(i)) continue;
      // s[i] matches some s[m] with m odd distance; Bal = (k Bal )k Bal
      for (int m = i + 1; m < j; m += 2)
        if (is_close(m) && open(i, s[m].site) && bal[i + 1][m] && bal[m + 1][j]) {
          bal[i][j] = 1;
          break;
        }
    }

  // a[j]: s[0, j) in A; b[i]: s[i, n) in B.
  std::vector<char> a(n + 1, 0), b(n + 1, 0);
  a[0] = 1;
  for (int j = 1; j <= n; ++j) {
    if (a[j - 1] && is_close(j - 1)) a[j] = 1;
    for (int i = 0; i < j && !a[j]; ++i)
      if (a[i] && bal[i][j]) a[j] = 1;
  }
  b[n] = 1;
  for (int i = n - 1; i >= 0; --i) {
    if (b[i + 1] && is_open(i)) b[i] = 1;
    for (int j = i + 1; j <= n && !b[i]; ++j)
      if (b[j] && bal[i][j]) b[i] = 1;
  }
  for (int j = 0; j <= n; ++j)
    if (a[j] && b[j]) return true;
  return false;
}

namespace {

bool eval(const logic::Formula& f, const std::map<int, bool>& v) {
  using K = logic::Formula::Kind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return v.at(f.atom_id()) == f.positive();
    case K::Not: return !eval(f.children()[0], v);
    case K::And:
      for (const auto& c : f.children())
        if (!eval(c, v)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children())
        if (eval(c, v)) return true;
      return false;
  }
  return false;
}

void collect_atoms(const logic::Formula& f, std::set<int>& out) {
  if (f.kind() == logic::Formula::Kind::Atom) out.insert(f.atom_id());
  for (const auto& c : f.children()) collect_atoms(c, out);
}

}  // namespace

bool truth_table_sat(const logic::Formula& f, const logic::AtomTable& table) {
  std::set<int> ids;
  collect_atoms(f, ids);
  std::vector<int> atoms(ids.begin(), ids.end());
  if (atoms.size() > 22) throw std::runtime_error("truth table too large");
  for (uint64_t bits = 0; bits < (uint64_t{1} << atoms.size()); ++bits) {
    std::map<int, bool> v;
    // count of true relations per unordered term pair
    std::map<std::pair<std::string, std::string>, int> per_pair;
    bool ok = true;
    for (size_t i = 0; i < atoms.size(); ++i) {
      bool val = (bits >> i) & 1;
      v[atoms[i]] = val;
      if (!val) continue;
      logic::Atom a = table.atom(atoms[i]);
      auto key = std::minmax(a.lhs.text, a.rhs.text);
      if (++per_pair[{key.first, key.second}] > 1) ok = false;
    }
    if (ok && eval(f, v)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Interpreter

namespace {

struct Value {
  std::set<int> lits;
  long origin = 0;
};

class Machine {
 public:
  explicit Machine(const std::vector<bool>& outcomes) : outcomes_(outcomes) {}

  Execution run(const Function& f) {
    for (size_t i = 0; i < f.params.size(); ++i) env_[f.params[i]] = Value{{}, -static_cast<long>(i) - 1};
    exec(f.body);
    return result_;
  }

 private:
  // Static pre-order numbering is reproduced by counting every if, taken or
  // not, in the order it appears.
  bool exec(const Block& b) {
    for (const Stmt& s : b)
      if (!step(s)) return false;
    return true;
  }

  void skip(const Block& b) { next_if_ += count_ifs(b); }

  long fresh_origin(const Stmt& s) { return 1000L * s.line + s.column; }

  Value operand(const Operand& o, int line) {
    if (o.is_var()) return env_.at(o.var());
    return Value{{line}, 0};
  }

  bool step(const Stmt& s) {
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, AssignLit>) {
            env_[n.dst] = Value{{s.line}, fresh_origin(s)};
          } else if constexpr (std::is_same_v<T, vflow::Copy>) {
            env_[n.dst] = env_.at(n.src);
          } else if constexpr (std::is_same_v<T, vflow::Arith>) {
            Value l = operand(n.lhs, s.line), r = operand(n.rhs, s.line);
            l.lits.insert(r.lits.begin(), r.lits.end());
            l.origin = fresh_origin(s);
            env_[n.dst] = l;
          } else if constexpr (std::is_same_v<T, FieldStore>) {
            mem_[{env_.at(n.base).origin, n.field}] = env_.at(n.src);
          } else if constexpr (std::is_same_v<T, FieldLoad>) {
            env_[n.dst] = load(env_.at(n.base).origin, n.field, s);
          } else if constexpr (std::is_same_v<T, PtrStore>) {
            mem_[{env_.at(n.ptr).origin, "*"}] = env_.at(n.src);
          } else if constexpr (std::is_same_v<T, PtrLoad>) {
            env_[n.dst] = load(env_.at(n.ptr).origin, "*", s);
          } else if constexpr (std::is_same_v<T, If>) {
            bool taken = outcomes_.at(next_if_++);
            if (taken) {
              bool ft = exec(n.then_body);
              skip(n.else_body);
              return ft;
            }
            skip(n.then_body);
            return exec(n.else_body);
          } else if constexpr (std::is_same_v<T, Return>) {
            result_.returned = env_.at(n.value).lits;
            result_.returned_any = true;
            return false;
          } else {
            throw std::logic_error("interpreter: unsupported statement");
          }
          return true;
        },
        s.node);
  }

  Value load(long origin, const std::string& field, const Stmt& s) {
    auto it = mem_.find({origin, field});
    if (it != mem_.end()) return it->second;
    return Value{{}, fresh_origin(s)};
  }

  const std::vector<bool>& outcomes_;
  size_t next_if_ = 0;
  std::map<std::string, Value> env_;
  std::map<std::pair<long, std::string>, Value> mem_;
  Execution result_;
};

}  // namespace

int count_ifs(const Block& b) {
  int n = 0;
  for (const Stmt& s : b)
    if (const auto* i = std::get_if<If>(&s.node)) n += 1 + count_ifs(i->then_body) + count_ifs(i->else_body);
  return n;
}

Execution interpret(const Function& f, const std::vector<bool>& outcomes) { return Machine(outcomes).run(f); }

}  // namespace vflow::oracle

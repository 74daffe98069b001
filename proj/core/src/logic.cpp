#include "vflow/logic.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <set>
#include <unordered_map>

namespace vflow::logic {

std::string Atom::text() const {
  return "(" + lhs.text + (rel == Rel::Eq ? " == " : " > ") + rhs.text + ")";
}

// ---------------------------------------------------------------------------
// Formula nodes

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::True, -1, true, {}}));
  return t;
}

Formula Formula::bottom() {
  static const Formula f(std::make_shared<const Node>(Node{Kind::False, -1, true, {}}));
  return f;
}

Formula Formula::atom(int id, bool positive) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, id, positive, {}}));
}

Formula Formula::make(Kind k, std::vector<Formula> children) {
  return Formula(std::make_shared<const Node>(Node{k, -1, true, std::move(children)}));
}

size_t Formula::size() const {
  size_t n = 1;
  for (const auto& c : children()) n += c.size();
  return n;
}

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (a.kind() == Formula::Kind::Atom) {
    if (a.atom_id() != b.atom_id()) return a.atom_id() < b.atom_id() ? -1 : 1;
    if (a.positive() != b.positive()) return a.positive() ? 1 : -1;
    return 0;
  }
  const auto& x = a.children();
  const auto& y = b.children();
  for (size_t i = 0; i < x.size() && i < y.size(); ++i)
    if (int c = compare(x[i], y[i])) return c;
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

// ---------------------------------------------------------------------------
// Atom table

namespace {

bool is_number(const std::string& s) {
  return !s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-');
}

}  // namespace

Formula AtomTable::make(const Term& lhs, CmpOp op, const Term& rhs) {
  Atom a;
  bool positive = true;
  switch (op) {
    case CmpOp::Eq: a = {lhs, Rel::Eq, rhs}; break;
    case CmpOp::Ne: a = {lhs, Rel::Eq, rhs}; positive = false; break;
    case CmpOp::Gt: a = {lhs, Rel::Gt, rhs}; break;
    case CmpOp::Lt: a = {rhs, Rel::Gt, lhs}; break;
  }
  if (a.rel == Rel::Eq && a.rhs < a.lhs) std::swap(a.lhs, a.rhs);

  std::optional<bool> constant;
  if (a.lhs == a.rhs) {
    constant = a.rel == Rel::Eq;
  } else if (a.lhs.literal && a.rhs.literal) {
    if (a.rel == Rel::Eq) {
      constant = false;  // distinct literal texts
    } else if (is_number(a.lhs.text) && is_number(a.rhs.text)) {
      constant = std::stoll(a.lhs.text) > std::stoll(a.rhs.text);
    } else {
      constant = false;  // NULL is unordered
    }
  }
  if (constant) return (*constant == positive) ? Formula::top() : Formula::bottom();
  return Formula::atom(intern(a), positive);
}

int AtomTable::intern(const Atom& a) {
  std::unique_lock lock(mu_);
  auto [it, inserted] = ids_.try_emplace(a, static_cast<int>(atoms_.size()));
  if (inserted) atoms_.push_back(a);
  return it->second;
}

Atom AtomTable::atom(int id) const {
  std::shared_lock lock(mu_);
  return atoms_.at(static_cast<size_t>(id));
}

size_t AtomTable::size() const {
  std::shared_lock lock(mu_);
  return atoms_.size();
}

int AtomTable::find(const Atom& a) const {
  std::shared_lock lock(mu_);
  auto it = ids_.find(a);
  return it == ids_.end() ? -1 : it->second;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

Formula fold(Formula::Kind kind, std::vector<Formula> children) {
  const bool is_and = kind == Formula::Kind::And;
  std::vector<Formula> kept;
  kept.reserve(children.size());
  for (auto& c : children) {
    if (c.is_true()) {
      if (!is_and) return Formula::top();
      continue;
    }
    if (c.is_false()) {
      if (is_and) return Formula::bottom();
      continue;
    }
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return is_and ? Formula::top() : Formula::bottom();
  if (kept.size() == 1) return kept.front();
  return Formula::make(kind, std::move(kept));
}

}  // namespace

Formula mk_and(std::vector<Formula> children) { return fold(Formula::Kind::And, std::move(children)); }
Formula mk_or(std::vector<Formula> children) { return fold(Formula::Kind::Or, std::move(children)); }

Formula mk_not(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True: return Formula::bottom();
    case Formula::Kind::False: return Formula::top();
    case Formula::Kind::Atom: return Formula::atom(f.atom_id(), !f.positive());
    case Formula::Kind::Not: return f.children().front();
    default: return Formula::make(Formula::Kind::Not, {f});
  }
}

namespace {

Formula nnf(const Formula& f, bool negate) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return negate ? Formula::bottom() : Formula::top();
    case K::False: return negate ? Formula::top() : Formula::bottom();
    case K::Atom: return Formula::atom(f.atom_id(), f.positive() != negate);
    case K::Not: return nnf(f.children().front(), !negate);
    case K::And:
    case K::Or: {
      K k = f.kind();
      if (negate) k = k == K::And ? K::Or : K::And;
      std::vector<Formula> kids;
      for (const auto& c : f.children()) kids.push_back(nnf(c, negate));
      return Formula::make(k, std::move(kids));
    }
  }
  return f;
}

Formula canon_nnf(const Formula& f) {
  using K = Formula::Kind;
  if (f.kind() != K::And && f.kind() != K::Or) return f;
  const K k = f.kind();
  std::vector<Formula> flat;
  for (const auto& c : f.children()) {
    Formula cc = canon_nnf(c);
    if (cc.kind() == k) {
      flat.insert(flat.end(), cc.children().begin(), cc.children().end());
    } else {
      flat.push_back(std::move(cc));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  // x && !x, x || !x
  std::set<std::pair<int, bool>> lits;
  for (const auto& c : flat)
    if (c.kind() == K::Atom) {
      if (lits.count({c.atom_id(), !c.positive()})) return k == K::And ? Formula::bottom() : Formula::top();
      lits.insert({c.atom_id(), c.positive()});
    }
  return fold(k, std::move(flat));
}

}  // namespace

Formula canonicalize(const Formula& f) { return canon_nnf(nnf(f, false)); }

std::vector<int> atoms_of(const Formula& f) {
  std::set<int> ids;
  std::vector<const Formula*> stack{&f};
  while (!stack.empty()) {
    const Formula* g = stack.back();
    stack.pop_back();
    if (g->kind() == Formula::Kind::Atom) ids.insert(g->atom_id());
    for (const auto& c : g->children()) stack.push_back(&c);
  }
  return {ids.begin(), ids.end()};
}

// ---------------------------------------------------------------------------
// Text

std::string render(const Formula& f, const AtomTable& table) {
  using K = Formula::Kind;
  auto child = [&](const Formula& c) {
    std::string s = render(c, table);
    return (c.kind() == K::And || c.kind() == K::Or) ? "(" + s + ")" : s;
  };
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return (f.positive() ? "" : "!") + table.atom(f.atom_id()).text();
    case K::Not: return "!(" + render(f.children().front(), table) + ")";
    case K::And:
    case K::Or: {
      std::string out;
      const char* sep = f.kind() == K::And ? " && " : " || ";
      for (size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += sep;
        out += child(f.children()[i]);
      }
      return out;
    }
  }
  return "?";
}

namespace {

class FormulaParser {
 public:
  FormulaParser(std::string_view text, AtomTable& table) : table_(table) { tokenize(text); }

  Formula parse() {
    Formula f = disjunction();
    if (pos_ != toks_.size()) fail("trailing input");
    return f;
  }

 private:
  void tokenize(std::string_view s) {
    size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '(' || c == ')') {
        toks_.emplace_back(1, c);
        ++i;
      } else if (s.substr(i, 2) == "&&" || s.substr(i, 2) == "||" || s.substr(i, 2) == "==") {
        toks_.emplace_back(s.substr(i, 2));
        i += 2;
      } else if (c == '!' || c == '>' || c == '<') {
        toks_.emplace_back(1, c);
        ++i;
      } else {
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '(' &&
               s[j] != ')')
          ++j;
        toks_.emplace_back(s.substr(i, j - i));
        i = j;
      }
    }
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw FormulaParseError("formula parse error at token " + std::to_string(pos_) + ": " + why);
  }
  const std::string* peek(size_t k = 0) const {
    return pos_ + k < toks_.size() ? &toks_[pos_ + k] : nullptr;
  }
  bool at(std::string_view t, size_t k = 0) const { return peek(k) && *peek(k) == t; }
  static bool is_word(const std::string* t) {
    return t && *t != "(" && *t != ")" && *t != "&&" && *t != "||" && *t != "!" && *t != "==" &&
           *t != ">" && *t != "<";
  }

  Formula disjunction() {
    std::vector<Formula> kids{conjunction()};
    while (at("||")) {
      ++pos_;
      kids.push_back(conjunction());
    }
    return kids.size() == 1 ? kids.front() : Formula::make(Formula::Kind::Or, std::move(kids));
  }
  Formula conjunction() {
    std::vector<Formula> kids{factor()};
    while (at("&&")) {
      ++pos_;
      kids.push_back(factor());
    }
    return kids.size() == 1 ? kids.front() : Formula::make(Formula::Kind::And, std::move(kids));
  }
  Formula factor() {
    if (at("!")) {
      ++pos_;
      Formula inner = factor();
      if (inner.kind() == Formula::Kind::Atom) return Formula::atom(inner.atom_id(), !inner.positive());
      return Formula::make(Formula::Kind::Not, {inner});
    }
    if (at("true")) {
      ++pos_;
      return Formula::top();
    }
    if (at("false")) {
      ++pos_;
      return Formula::bottom();
    }
    if (!at("(")) fail("expected '(' or literal");
    if (is_word(peek(1)) && (at("==", 2) || at(">", 2) || at("<", 2)) && is_word(peek(3)) &&
        at(")", 4)) {
      Term l = term(*peek(1)), r = term(*peek(3));
      CmpOp op = at("==", 2) ? CmpOp::Eq : at(">", 2) ? CmpOp::Gt : CmpOp::Lt;
      pos_ += 5;
      Atom a = op == CmpOp::Lt ? Atom{r, Rel::Gt, l} : Atom{l, op == CmpOp::Eq ? Rel::Eq : Rel::Gt, r};
      return Formula::atom(table_.intern(a), true);
    }
    ++pos_;
    Formula f = disjunction();
    if (!at(")")) fail("expected ')'");
    ++pos_;
    return f;
  }
  static Term term(const std::string& t) { return {t == "NULL" || is_number(t), t}; }

  AtomTable& table_;
  std::vector<std::string> toks_;
  size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text, AtomTable& table) {
  return FormulaParser(text, table).parse();
}

// ---------------------------------------------------------------------------
// Semantics

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Sat: return "sat";
    case Verdict::Unsat: return "unsat";
    case Verdict::TimeoutAsUnsat: return "timeout_unsat";
  }
  return "?";
}

namespace {

// Index of atom ids into a dense slot array plus the conflict groups.
struct AtomIndex {
  std::vector<int> ids;                      // slot -> atom id
  std::unordered_map<int, int> slot;         // atom id -> slot
  std::vector<std::vector<int>> conflicts;   // slot -> other slots on the same term pair

  AtomIndex(std::vector<int> atom_ids, const AtomTable& table) : ids(std::move(atom_ids)) {
    std::map<std::pair<Term, Term>, std::vector<int>> groups;
    for (size_t i = 0; i < ids.size(); ++i) {
      slot[ids[i]] = static_cast<int>(i);
      Atom a = table.atom(ids[i]);
      auto key = a.lhs < a.rhs ? std::make_pair(a.lhs, a.rhs) : std::make_pair(a.rhs, a.lhs);
      groups[key].push_back(static_cast<int>(i));
    }
    conflicts.resize(ids.size());
    for (const auto& [_, members] : groups)
      for (int m : members)
        for (int o : members)
          if (m != o) conflicts[m].push_back(o);
  }
};

// -1 unknown, 0 false, 1 true
int eval3(const Formula& f, const AtomIndex& idx, const std::vector<int8_t>& val) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return 1;
    case K::False: return 0;
    case K::Atom: {
      int v = val[idx.slot.at(f.atom_id())];
      if (v < 0) return -1;
      return f.positive() ? v : 1 - v;
    }
    case K::Not: {
      int v = eval3(f.children().front(), idx, val);
      return v < 0 ? -1 : 1 - v;
    }
    case K::And: {
      int r = 1;
      for (const auto& c : f.children()) {
        int v = eval3(c, idx, val);
        if (v == 0) return 0;
        if (v < 0) r = -1;
      }
      return r;
    }
    case K::Or: {
      int r = 0;
      for (const auto& c : f.children()) {
        int v = eval3(c, idx, val);
        if (v == 1) return 1;
        if (v < 0) r = -1;
      }
      return r;
    }
  }
  return -1;
}

class Search {
 public:
  Search(const Formula& f, const AtomTable& table, Budget budget)
      : f_(f), idx_(atoms_of(f), table), val_(idx_.ids.size(), -1), unlimited_(budget == kUnlimited) {
    if (!unlimited_) deadline_ = std::chrono::steady_clock::now() + budget;
  }

  Verdict run() {
    bool sat = dfs(0);
    if (timed_out_) return Verdict::TimeoutAsUnsat;
    return sat ? Verdict::Sat : Verdict::Unsat;
  }

 private:
  bool expired() {
    if (unlimited_) return false;
    if ((++steps_ & 63) != 0) return false;
    if (std::chrono::steady_clock::now() >= deadline_) timed_out_ = true;
    return timed_out_;
  }

  bool dfs(size_t i) {
    if (expired()) return false;
    int v = eval3(f_, idx_, val_);
    if (v == 1) return true;
    if (v == 0 || i == val_.size()) return false;
    for (int8_t b : {int8_t{1}, int8_t{0}}) {
      if (b == 1) {
        bool clash = false;
        for (int o : idx_.conflicts[i]) clash |= val_[o] == 1;
        if (clash) continue;
      }
      val_[i] = b;
      if (dfs(i + 1)) return true;
      if (timed_out_) return false;
    }
    val_[i] = -1;
    return false;
  }

  const Formula& f_;
  AtomIndex idx_;
  std::vector<int8_t> val_;
  bool unlimited_;
  std::chrono::steady_clock::time_point deadline_{};
  bool timed_out_ = false;
  uint64_t steps_ = 0;
};

}  // namespace

bool evaluate(const Formula& f, const std::map<int, bool>& assignment) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return assignment.at(f.atom_id()) == f.positive();
    case K::Not: return !evaluate(f.children().front(), assignment);
    case K::And:
      for (const auto& c : f.children())
        if (!evaluate(c, assignment)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children())
        if (evaluate(c, assignment)) return true;
      return false;
  }
  return false;
}

bool consistent(const std::map<int, bool>& assignment, const AtomTable& table) {
  std::map<std::pair<Term, Term>, int> trues;
  for (const auto& [id, v] : assignment) {
    if (!v) continue;
    Atom a = table.atom(id);
    auto key = a.lhs < a.rhs ? std::make_pair(a.lhs, a.rhs) : std::make_pair(a.rhs, a.lhs);
    if (++trues[key] > 1) return false;
  }
  return true;
}

Verdict is_sat(const Formula& f, const AtomTable& table, Budget budget) {
  if (budget.count() <= 0) return Verdict::TimeoutAsUnsat;
  return Search(canonicalize(f), table, budget).run();
}

bool equiv(const Formula& f, const Formula& g, const AtomTable& table) {
  std::vector<int> ids = atoms_of(f);
  for (int id : atoms_of(g)) ids.push_back(id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > kMaxEquivAtoms)
    throw TooManyAtoms("equiv: " + std::to_string(ids.size()) + " atoms exceeds the limit of " +
                       std::to_string(kMaxEquivAtoms));
  AtomIndex idx(ids, table);
  std::vector<int8_t> val(ids.size(), 0);
  const uint32_t n = static_cast<uint32_t>(ids.size());
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (uint32_t i = 0; i < n && ok; ++i) {
      val[i] = static_cast<int8_t>((mask >> i) & 1u);
      if (val[i])
        for (int o : idx.conflicts[i])
          if (static_cast<uint32_t>(o) < i && val[o]) ok = false;
    }
    if (!ok) continue;
    if (eval3(f, idx, val) != eval3(g, idx, val)) return false;
  }
  return true;
}

bool equiv_by_search(const Formula& f, const Formula& g, const AtomTable& table) {
  Formula differ = mk_or(mk_and(f, mk_not(g)), mk_and(mk_not(f), g));
  return is_sat(differ, table, kUnlimited) == Verdict::Unsat;
}

}  // namespace vflow::logic

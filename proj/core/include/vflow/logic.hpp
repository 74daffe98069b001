#pragma once

// Guards and path conditions: boolean formulas over interned comparison atoms,
// with a budgeted satisfiability check.
//
// Comparisons are normalized when interned so that a comparison and its
// syntactic negation share one atom: `a != b` is the negative literal of
// `a == b`, and `a < b` is stored as `b > a`. Satisfiability is decided over
// the boolean abstraction plus pairwise conflict axioms: for any two terms
// a, b at most one of {a == b, a > b, b > a} holds.

#include "vflow/ast.hpp"

#include <chrono>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace vflow::logic {

struct Term {
  bool literal = false;
  std::string text;  // "fn:x.1" for SSA values, "NULL" / "5" for literals
  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class Rel { Eq, Gt };

struct Atom {
  Term lhs;
  Rel rel = Rel::Eq;
  Term rhs;
  std::string text() const;  // "(lhs == rhs)" / "(lhs > rhs)"
  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

class Formula {
 public:
  enum class Kind { False, True, Atom, Not, And, Or };

  Formula();  // True
  static Formula top();
  static Formula bottom();
  static Formula atom(int id, bool positive = true);
  static Formula make(Kind k, std::vector<Formula> children);

  Kind kind() const { return node_->kind; }
  int atom_id() const { return node_->atom; }
  bool positive() const { return node_->positive; }
  const std::vector<Formula>& children() const { return node_->children; }
  bool is_true() const { return kind() == Kind::True; }
  bool is_false() const { return kind() == Kind::False; }
  size_t size() const;  // node count

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);
  friend int compare(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind = Kind::True;
    int atom = -1;
    bool positive = true;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Total structural order; 0 iff structurally identical.
int compare(const Formula& a, const Formula& b);

class AtomTable {
 public:
  // Interns `lhs op rhs`. Literal-vs-literal and term-vs-itself comparisons
  // fold to constants.
  Formula make(const Term& lhs, CmpOp op, const Term& rhs);
  int intern(const Atom& a);
  Atom atom(int id) const;
  size_t size() const;
  // Atom id or -1.
  int find(const Atom& a) const;

 private:
  mutable std::shared_mutex mu_;
  std::deque<Atom> atoms_;
  std::map<Atom, int> ids_;
};

Formula mk_and(std::vector<Formula> children);
Formula mk_or(std::vector<Formula> children);
Formula mk_not(const Formula& f);
inline Formula mk_and(const Formula& a, const Formula& b) { return mk_and(std::vector{a, b}); }
inline Formula mk_or(const Formula& a, const Formula& b) { return mk_or(std::vector{a, b}); }

// NNF, flattened And/Or, children sorted by compare() and deduplicated,
// constants folded. Idempotent.
Formula canonicalize(const Formula& f);

std::vector<int> atoms_of(const Formula& f);  // sorted, unique

// `(a.1 > b.1) && (!(p.2 == NULL) || ...)`
std::string render(const Formula& f, const AtomTable& table);

class FormulaParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
// Inverse of render(); atoms are interned into `table`.
Formula parse_formula(std::string_view text, AtomTable& table);

enum class Verdict { Sat, Unsat, TimeoutAsUnsat };
std::string_view to_string(Verdict v);

using Budget = std::chrono::milliseconds;
inline constexpr Budget kDefaultBudget{10'000};
inline constexpr Budget kUnlimited = Budget::max();

// Truth value of `f` under a total assignment (bit i = atom ids[i]).
bool evaluate(const Formula& f, const std::map<int, bool>& assignment);

// True iff no pair of terms has more than one of {==, >, <} set true.
bool consistent(const std::map<int, bool>& assignment, const AtomTable& table);

// Backtracking search over atom assignments with theory conflict checks.
// A non-positive budget, or running past it, yields TimeoutAsUnsat.
Verdict is_sat(const Formula& f, const AtomTable& table, Budget budget = kDefaultBudget);

class TooManyAtoms : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr size_t kMaxEquivAtoms = 20;

// Truth-table equivalence over axiom-consistent assignments.
// Throws TooManyAtoms above kMaxEquivAtoms combined atoms.
bool equiv(const Formula& f, const Formula& g, const AtomTable& table);

// Equivalence via unsatisfiability of (f xor g); no atom limit.
bool equiv_by_search(const Formula& f, const Formula& g, const AtomTable& table);

}  // namespace vflow::logic

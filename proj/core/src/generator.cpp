#include "vflow/generator.hpp"

#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace vflow {

std::optional<Shape> parse_shape(std::string_view s) {
  if (s == "chain") return Shape::Chain;
  if (s == "wide") return Shape::Wide;
  if (s == "diamond") return Shape::Diamond;
  return std::nullopt;
}

namespace {

class Rng {
 public:
  explicit Rng(uint64_t seed) : e_(seed) {}
  int below(int n) { return static_cast<int>(e_() % static_cast<uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }
  bool chance(int percent) { return below(100) < percent; }

 private:
  std::mt19937_64 e_;
};

// `t = src;` followed by `branching` guarded self-copies: 2^branching intra
// paths from src to t.
void inflate(std::ostream& os, Rng& rng, const std::string& src, int branching) {
  os << "  s = " << rng.between(0, 99) << ";\n";
  os << "  t = " << src << ";\n";
  for (int j = 0; j < branching; ++j) {
    os << "  if (s > " << rng.between(0, 99) << ") {\n    t = t;\n  }\n";
  }
}

}  // namespace

std::string generate(const ShapeOptions& o) {
  if (o.functions < 1) throw std::invalid_argument("generate: need at least one function");
  if (o.branching < 0) throw std::invalid_argument("generate: branching must be >= 0");
  Rng rng(o.seed);
  std::ostringstream os;
  int n = o.functions;
  switch (o.shape) {
    case Shape::Chain:
      for (int i = 1; i <= n; ++i) {
        os << "f" << i << (i == 1 ? "() {\n  p = NULL;\n" : "(p) {\n");
        inflate(os, rng, "p", o.branching);
        if (i < n) {
          os << "  r = f" << i + 1 << "(t);\n  return r;\n}\n\n";
        } else {
          os << "  u = *t;\n  return u;\n}\n\n";
        }
      }
      break;
    case Shape::Wide:
      os << "main(x) {\n";
      for (int i = 1; i <= n; ++i) os << "  r" << i << " = leaf" << i << "(x);\n";
      os << "  return r" << n << ";\n}\n\n";
      for (int i = 1; i <= n; ++i) {
        os << "leaf" << i << "(p) {\n  a = NULL;\n";
        inflate(os, rng, "a", o.branching);
        os << "  u = *t;\n  return p;\n}\n\n";
      }
      break;
    case Shape::Diamond:
      os << "main() {\n  a = NULL;\n";
      for (int i = 1; i <= n; ++i) os << "  r" << i << " = mid" << i << "(a);\n";
      os << "  return r" << n << ";\n}\n\n";
      for (int i = 1; i <= n; ++i) {
        os << "mid" << i << "(p) {\n";
        inflate(os, rng, "p", o.branching);
        os << "  r = join(t);\n  return r;\n}\n\n";
      }
      os << "join(q) {\n  u = *q;\n  return u;\n}\n";
      break;
  }
  std::string s = os.str();
  while (s.size() > 1 && s[s.size() - 1] == '\n' && s[s.size() - 2] == '\n') s.pop_back();
  return s;
}

// ---------------------------------------------------------------------------
// Random programs

namespace {

class RandomWriter {
 public:
  RandomWriter(uint64_t seed, const RandomOptions& o) : rng_(seed), o_(o) {}

  std::string run() {
    int n = rng_.between(1, o_.max_functions);
    for (int i = 0; i < n; ++i) arity_.push_back(rng_.between(1, 3));
    for (int i = 0; i < n; ++i) function(i);
    return out_.str();
  }

 private:
  struct Budget {
    int calls, branches;
  };

  void function(int fi) {
    self_ = fi;
    fresh_ = 0;
    std::vector<std::string> scope;
    out_ << "f" << fi << "(";
    for (int i = 0; i < arity_[fi]; ++i) {
      scope.push_back("p" + std::to_string(i));
      out_ << (i ? ", " : "") << scope.back();
    }
    out_ << ") {\n";
    Budget b{rng_.between(0, o_.max_calls), rng_.between(0, o_.max_branches)};
    block(scope, b, 1, rng_.between(3, 8));
    out_ << "  return " << pick(scope) << ";\n}\n\n";
  }

  void block(std::vector<std::string> scope, Budget& b, int depth, int count) {
    for (int i = 0; i < count; ++i) statement(scope, b, depth);
  }

  void statement(std::vector<std::string>& scope, Budget& b, int depth) {
    std::string ind(2 * depth, ' ');
    int roll = rng_.below(100);
    if (roll < 12 && b.branches > 0 && depth < 3) {
      --b.branches;
      bool loop = rng_.chance(15);
      out_ << ind << (loop ? "while (" : "if (") << pick(scope) << " " << cmp() << " " << operand(scope)
           << ") {\n";
      block(scope, b, depth + 1, rng_.between(1, 3));
      out_ << ind << "}";
      if (!loop && rng_.chance(50)) {
        out_ << " else {\n";
        block(scope, b, depth + 1, rng_.between(1, 3));
        out_ << ind << "}";
      }
      out_ << "\n";
      return;
    }
    if (roll < 30 && b.calls > 0) {
      int callee = callee_for();
      if (callee >= 0) {
        --b.calls;
        std::string args;
        for (int i = 0; i < arity_[callee]; ++i) args += (i ? ", " : "") + pick(scope);
        if (rng_.chance(85))
          out_ << ind << target(scope) << " = f" << callee << "(" << args << ");\n";
        else
          out_ << ind << "f" << callee << "(" << args << ");\n";
        return;
      }
    }
    if (roll < 45) {
      out_ << ind << target(scope) << " = " << (rng_.chance(55) ? "NULL" : std::to_string(rng_.between(0, 9)))
           << ";\n";
    } else if (roll < 62) {
      std::string src = pick(scope);
      out_ << ind << target(scope) << " = " << src << ";\n";
    } else if (roll < 72) {
      std::string lhs = pick(scope), rhs = rng_.chance(60) ? pick(scope) : std::to_string(rng_.between(0, 9));
      static const char* ops[] = {"+", "-", "*", "/"};
      out_ << ind << target(scope) << " = " << lhs << " " << ops[rng_.below(4)] << " " << rhs << ";\n";
    } else if (roll < 82 && o_.pointers) {
      std::string ptr = pick(scope);
      if (rng_.chance(50))
        out_ << ind << target(scope) << " = *" << ptr << ";\n";
      else
        out_ << ind << target(scope) << " = " << ptr << "." << field() << ";\n";
    } else if (roll < 92 && o_.pointers) {
      std::string ptr = pick(scope), src = pick(scope);
      if (rng_.chance(50))
        out_ << ind << "*" << ptr << " = " << src << ";\n";
      else
        out_ << ind << ptr << "." << field() << " = " << src << ";\n";
    } else {
      std::string src = pick(scope);
      out_ << ind << target(scope) << " = " << src << ";\n";
    }
  }

  int callee_for() {
    int n = static_cast<int>(arity_.size());
    if (o_.recursion) return rng_.below(n);
    if (self_ + 1 >= n) return -1;
    return rng_.between(self_ + 1, n - 1);
  }

  // An existing variable (making a phi later) or a new one in this scope.
  std::string target(std::vector<std::string>& scope) {
    if (rng_.chance(35)) return pick(scope);
    scope.push_back("v" + std::to_string(fresh_++));
    return scope.back();
  }

  std::string pick(const std::vector<std::string>& scope) { return scope[rng_.below(static_cast<int>(scope.size()))]; }
  std::string operand(const std::vector<std::string>& scope) {
    if (rng_.chance(40)) return rng_.chance(30) ? "NULL" : std::to_string(rng_.between(0, 9));
    return pick(scope);
  }
  std::string cmp() {
    static const char* ops[] = {"==", "!=", ">", "<"};
    return ops[rng_.below(4)];
  }
  std::string field() { return rng_.chance(50) ? "f" : "g"; }

  Rng rng_;
  RandomOptions o_;
  std::vector<int> arity_;
  std::ostringstream out_;
  int self_ = 0;
  int fresh_ = 0;
};

}  // namespace

std::string random_program(uint64_t seed, const RandomOptions& opts) {
  return RandomWriter(seed, opts).run();
}

}  // namespace vflow

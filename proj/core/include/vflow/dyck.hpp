#pragma once

// Recognizer for the extended (partially balanced) Dyck language over call
// and return parentheses. A path may start inside a callee, so returns that
// find the stack empty are accepted; calls left open at the end are accepted.
// A return that does not match the innermost open call is rejected.

#include <span>
#include <string>
#include <vector>

namespace vflow {

struct EdgeLabel {
  enum class Kind { Epsilon, Open, Close };
  Kind kind = Kind::Epsilon;
  int site = 0;

  static EdgeLabel epsilon() { return {}; }
  static EdgeLabel open(int k) { return {Kind::Open, k}; }
  static EdgeLabel close(int k) { return {Kind::Close, k}; }
  bool is_epsilon() const { return kind == Kind::Epsilon; }

  // "eps", "(3", ")3"
  std::string text() const;
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
  friend auto operator<=>(const EdgeLabel&, const EdgeLabel&) = default;
};

// Inverse of EdgeLabel::text(). Throws std::invalid_argument.
EdgeLabel parse_label(std::string_view text);

inline constexpr int kDefaultContextDepth = 16;

class DyckState {
 public:
  explicit DyckState(int depth_bound = kDefaultContextDepth) : bound_(depth_bound) {}

  int depth() const { return static_cast<int>(stack_.size()); }
  int bound() const { return bound_; }
  const std::vector<int>& stack() const { return stack_; }

  friend bool operator==(const DyckState& a, const DyckState& b) { return a.stack_ == b.stack_; }
  friend auto operator<=>(const DyckState& a, const DyckState& b) { return a.stack_ <=> b.stack_; }

 private:
  friend struct DyckStep;
  std::vector<int> stack_;
  int bound_;
};

inline DyckState new_state(int depth_bound = kDefaultContextDepth) { return DyckState(depth_bound); }

struct DyckStep {
  enum class Status { Ok, Reject, DepthExceeded };
  Status status = Status::Ok;
  DyckState state;

  bool ok() const { return status == Status::Ok; }
  static DyckStep apply(const DyckState& s, const EdgeLabel& l);
};

inline DyckStep step(const DyckState& s, const EdgeLabel& l) { return DyckStep::apply(s, l); }

// True iff folding step() over the labels never rejects (depth unbounded).
bool accepts(std::span<const EdgeLabel> labels);

// Space-separated label string, epsilons omitted: "(3 )3".
std::string realized_string(std::span<const EdgeLabel> labels);

}  // namespace vflow

#include "vflow/dyck.hpp"

#include <limits>
#include <stdexcept>

namespace vflow {

std::string EdgeLabel::text() const {
  switch (kind) {
    case Kind::Epsilon: return "eps";
    case Kind::Open: return "(" + std::to_string(site);
    case Kind::Close: return ")" + std::to_string(site);
  }
  return "?";
}

EdgeLabel parse_label(std::string_view text) {
  if (text == "eps") return EdgeLabel::epsilon();
  if (text.size() < 2 || (text[0] != '(' && text[0] != ')'))
    throw std::invalid_argument("bad edge label '" + std::string(text) + "'");
  int k = std::stoi(std::string(text.substr(1)));
  return text[0] == '(' ? EdgeLabel::open(k) : EdgeLabel::close(k);
}

DyckStep DyckStep::apply(const DyckState& s, const EdgeLabel& l) {
  DyckStep r{Status::Ok, s};
  switch (l.kind) {
    case EdgeLabel::Kind::Epsilon:
      break;
    case EdgeLabel::Kind::Open:
      if (s.depth() >= s.bound()) {
        r.status = Status::DepthExceeded;
        break;
      }
      r.state.stack_.push_back(l.site);
      break;
    case EdgeLabel::Kind::Close:
      if (s.stack_.empty()) break;  // the path started inside this callee
      if (s.stack_.back() != l.site) {
        r.status = Status::Reject;
        break;
      }
      r.state.stack_.pop_back();
      break;
  }
  return r;
}

bool accepts(std::span<const EdgeLabel> labels) {
  DyckState s(std::numeric_limits<int>::max());
  for (const auto& l : labels) {
    DyckStep r = step(s, l);
    if (!r.ok()) return false;
    s = std::move(r.state);
  }
  return true;
}

std::string realized_string(std::span<const EdgeLabel> labels) {
  std::string out;
  for (const auto& l : labels) {
    if (l.is_epsilon()) continue;
    if (!out.empty()) out += ' ';
    out += l.text();
  }
  return out;
}

}  // namespace vflow

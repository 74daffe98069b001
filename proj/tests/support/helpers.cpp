#include "helpers.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vflow::support {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(VFLOW_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Built build(const std::string& source, const ClientSpec& client, int unroll) {
  Built b;
  b.fe = run_frontend(source, unroll);
  b.g = build_marked_gvfg(b.fe, client);
  return b;
}

logic::Formula random_formula(std::mt19937_64& rng, logic::AtomTable& table, int atoms, int depth) {
  static const char* terms[] = {"t:a", "t:b", "t:c", "0", "NULL"};
  auto pick = [&](uint64_t n) { return static_cast<int>(rng() % n); };
  if (depth == 0 || pick(4) == 0) {
    // Leaves reuse a bounded pool of atoms so formulas share structure.
    int k = pick(static_cast<uint64_t>(atoms));
    const char* l = terms[k % 3];
    const char* r = terms[(k / 3) % 5];
    CmpOp op = static_cast<CmpOp>((k / 15) % 4);
    logic::Term lt{false, l};
    logic::Term rt{r[0] == '0' || r[0] == 'N', r};
    logic::Formula f = table.make(lt, op, rt);
    return pick(2) ? f : logic::mk_not(f);
  }
  std::vector<logic::Formula> kids;
  int n = 2 + pick(2);
  for (int i = 0; i < n; ++i) kids.push_back(random_formula(rng, table, atoms, depth - 1));
  switch (pick(3)) {
    case 0: return logic::mk_and(std::move(kids));
    case 1: return logic::mk_or(std::move(kids));
    default: return logic::mk_not(logic::mk_or(std::move(kids)));
  }
}

int find_node(const Gvfg& g, const std::string& fn, const std::string& value, NodeKind kind) {
  int f = g.function_id(fn);
  for (const auto& n : g.nodes)
    if (n.function == f && n.value == value && n.kind == kind) return n.id;
  return -1;
}

}  // namespace vflow::support

namespace vflow::support {

std::vector<std::vector<int>> expand(const Vfsg& v, const SegmentPath& p) {
  std::vector<std::vector<int>> acc{{}};
  for (int s : p.segments) {
    auto intra = enumerate_intra_paths(*v.gvfg, v.segment(s));
    std::vector<std::vector<int>> next;
    for (const auto& prefix : acc)
      for (const auto& ip : intra) {
        auto q = prefix;
        q.insert(q.end(), ip.nodes.begin(), ip.nodes.end());
        next.push_back(std::move(q));
      }
    acc = std::move(next);
  }
  return acc;
}

std::vector<std::vector<int>> expanded_segment_paths(const Vfsg& v, const ExploreResult& r) {
  std::vector<std::vector<int>> all;
  for (const auto& p : r.paths)
    for (auto& q : expand(v, p)) all.push_back(std::move(q));
  std::sort(all.begin(), all.end());
  return all;
}

std::vector<std::vector<int>> naive_node_paths(const NaiveResult& r) {
  std::vector<std::vector<int>> all;
  for (const auto& p : r.paths) all.push_back(p.nodes);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace vflow::support

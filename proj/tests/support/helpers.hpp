#pragma once

#include "vflow/pipeline.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace vflow::support {

std::string read_fixture(const std::string& name);

// Frontend + guarded, marked GVFG for `source`.
struct Built {
  Frontend fe;
  std::unique_ptr<Gvfg> g;
};
Built build(const std::string& source, const ClientSpec& client = npd_spec(), int unroll = kDefaultUnroll);

// Random formula over `atoms` fresh comparison atoms between a few terms.
logic::Formula random_formula(std::mt19937_64& rng, logic::AtomTable& table, int atoms, int depth);

// Node id by function name, SSA value and kind; -1 when absent.
int find_node(const Gvfg& g, const std::string& fn, const std::string& value, NodeKind kind);

}  // namespace vflow::support

namespace vflow::support {

// Every GVFG node path summarized by a segment path: the product of the
// segments' intra paths, concatenated.
std::vector<std::vector<int>> expand(const Vfsg& v, const SegmentPath& p);

// Node sequences of all paths of a bounded engine, sorted (a multiset).
std::vector<std::vector<int>> expanded_segment_paths(const Vfsg& v, const ExploreResult& r);
std::vector<std::vector<int>> naive_node_paths(const NaiveResult& r);

}  // namespace vflow::support

#pragma once

// Synthetic `.vf` programs: fixed shapes for benchmarking and seeded random
// programs for differential testing. Output is a pure function of the
// options (std::mt19937_64 is fully specified; no std distributions used).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vflow {

enum class Shape { Chain, Wide, Diamond };
std::optional<Shape> parse_shape(std::string_view s);

struct ShapeOptions {
  Shape shape = Shape::Wide;
  int functions = 8;  // chain length, leaves, or diamond width; >= 1
  int branching = 2;  // branch diamonds per value-carrying function
  uint64_t seed = 1;
};

// chain:   f1 -> f2 -> ... -> fn, NULL born in f1, dereferenced in fn
// wide:    main calls n leaves, each with its own NULL source and dereference
// diamond: main fans out to n middles that all call one dereferencing join
std::string generate(const ShapeOptions& opts);

struct RandomOptions {
  int max_functions = 12;
  int max_calls = 4;     // call statements per function
  int max_branches = 3;  // if/while statements per function
  bool recursion = false;
  bool pointers = true;  // emit *p / p.f loads and stores
};

std::string random_program(uint64_t seed, const RandomOptions& opts = {});

}  // namespace vflow

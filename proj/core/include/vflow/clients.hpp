#pragma once

// Source/sink instantiations.

#include "vflow/gvfg.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vflow {

// Null-pointer dereference: NULL literal occurrences flow into the operand of
// `*v` or `v.f`.
ClientSpec npd_spec();

class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(const std::string& msg, int line);
  int line() const { return line_; }

 private:
  int line_;
};

// Taint specification, one directive per line ('#' starts a comment):
//   source <fn>              values returned by calls to <fn>
//   source <fn>:param:<i>    the i-th parameter of <fn>
//   sink <fn>:arg:<i>        the i-th argument at calls to <fn>
ClientSpec taint_spec(std::string_view text);
ClientSpec taint_spec_file(const std::filesystem::path& path);

}  // namespace vflow

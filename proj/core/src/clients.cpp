#include "vflow/clients.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace vflow {

ClientSpec npd_spec() {
  ClientSpec s;
  s.name = "npd";
  s.is_source = [](const Gvfg&, const ValueNode& n) {
    return n.kind == NodeKind::Literal && n.value == "NULL";
  };
  s.is_sink = [](const Gvfg&, const ValueNode& n) { return n.kind == NodeKind::DerefUse; };
  return s;
}

SpecParseError::SpecParseError(const std::string& msg, int line)
    : std::runtime_error("spec line " + std::to_string(line) + ": " + msg), line_(line) {}

namespace {

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// "fn:what:i" -> (fn, i); throws on anything else.
std::pair<std::string, int> positional(const std::string& item, std::string_view what, int line) {
  size_t a = item.find(':');
  size_t b = a == std::string::npos ? a : item.find(':', a + 1);
  if (b == std::string::npos || item.substr(a + 1, b - a - 1) != what)
    throw SpecParseError("expected <fn>:" + std::string(what) + ":<index>, got '" + item + "'", line);
  std::string fn = item.substr(0, a), idx = item.substr(b + 1);
  if (!is_ident(fn)) throw SpecParseError("bad function name '" + fn + "'", line);
  if (idx.empty() || !std::all_of(idx.begin(), idx.end(), ::isdigit))
    throw SpecParseError("bad index '" + idx + "'", line);
  return {fn, std::stoi(idx)};
}

bool has_pos(const ValueNode& n, int i) {
  return std::find(n.positions.begin(), n.positions.end(), i) != n.positions.end();
}

}  // namespace

ClientSpec taint_spec(std::string_view text) {
  std::set<std::string> ret_sources;
  std::set<std::pair<std::string, int>> param_sources, arg_sinks;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string kind, item, extra;
    if (!(ls >> kind)) continue;
    if (!(ls >> item)) throw SpecParseError("missing operand after '" + kind + "'", lineno);
    if (ls >> extra) throw SpecParseError("unexpected '" + extra + "'", lineno);
    if (kind == "source") {
      if (item.find(':') == std::string::npos) {
        if (!is_ident(item)) throw SpecParseError("bad function name '" + item + "'", lineno);
        ret_sources.insert(item);
      } else {
        param_sources.insert(positional(item, "param", lineno));
      }
    } else if (kind == "sink") {
      arg_sinks.insert(positional(item, "arg", lineno));
    } else {
      throw SpecParseError("unknown directive '" + kind + "'", lineno);
    }
  }

  ClientSpec s;
  s.name = "taint";
  s.is_source = [=](const Gvfg& g, const ValueNode& n) {
    if (n.kind == NodeKind::Def && !n.callee.empty() && ret_sources.count(n.callee)) return true;
    if (n.kind == NodeKind::Param)
      for (const auto& [fn, i] : param_sources)
        if (g.functions[n.function] == fn && has_pos(n, i)) return true;
    return false;
  };
  s.is_sink = [=](const Gvfg&, const ValueNode& n) {
    if (n.kind != NodeKind::ArgUse) return false;
    for (const auto& [fn, i] : arg_sinks)
      if (n.callee == fn && has_pos(n, i)) return true;
    return false;
  };
  return s;
}

ClientSpec taint_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read spec file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return taint_spec(ss.str());
}

}  // namespace vflow

#include "vflow/frontend.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace vflow {

SyntaxError::SyntaxError(const std::string& msg, int line, int column)
    : FrontendError(std::to_string(line) + ":" + std::to_string(column) +
                        ": syntax error: " + msg,
                    line, column) {}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 0;
  int column = 0;
};

const std::set<std::string, std::less<>> kKeywords = {"if",   "else",   "while",
                                                      "return", "NULL", "extern"};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    unsigned char c = src[i];
    if (std::isspace(c)) {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(c) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(c)) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      static const char* two[] = {"==", "!="};
      bool matched = false;
      for (const char* p : two) {
        if (src.substr(i, 2) == p) {
          t.kind = Tok::Punct;
          t.text = p;
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        if (std::string_view("(){},;=<>+-*/.").find(static_cast<char>(c)) ==
            std::string_view::npos) {
          std::string shown;
          // Show the whole UTF-8 sequence of the offending character.
          size_t j = i + 1;
          while (j < src.size() && (static_cast<unsigned char>(src[j]) & 0xC0) == 0x80) ++j;
          shown = std::string(src.substr(i, j - i));
          throw SyntaxError("unexpected character '" + shown + "'", line, col);
        }
        t.kind = Tok::Punct;
        t.text = std::string(1, static_cast<char>(c));
        advance(1);
      }
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    std::set<std::string, std::less<>> names;
    while (peek().kind != Tok::End) {
      Function f = is_kw("extern") ? extern_decl() : function();
      if (!names.insert(f.name).second)
        throw SyntaxError("duplicate function '" + f.name + "'", f.line, 1);
      p.functions.push_back(std::move(f));
    }
    if (p.functions.empty()) throw SyntaxError("empty program", peek().line, peek().column);
    return p;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t k = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[k];
  }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is_punct(std::string_view p, size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Punct && peek(ahead).text == p;
  }
  bool is_kw(std::string_view k) const {
    return peek().kind == Tok::Ident && peek().text == k;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(msg + ", got " + got, t.line, t.column);
  }
  void expect(std::string_view p) {
    if (!is_punct(p)) fail("expected '" + std::string(p) + "'");
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text))
      fail(std::string("expected ") + what);
    return next().text;
  }

  std::vector<std::string> name_list() {
    std::vector<std::string> out;
    expect("(");
    if (!is_punct(")")) {
      out.push_back(ident("identifier"));
      while (is_punct(",")) {
        next();
        out.push_back(ident("identifier"));
      }
    }
    expect(")");
    return out;
  }

  Function extern_decl() {
    Function f;
    f.line = peek().line;
    next();
    f.name = ident("function name");
    f.params = name_list();
    expect(";");
    f.is_extern = true;
    return f;
  }

  Function function() {
    Function f;
    f.line = peek().line;
    f.name = ident("function name");
    f.params = name_list();
    std::set<std::string> seen;
    for (const auto& prm : f.params)
      if (!seen.insert(prm).second) throw SyntaxError("duplicate parameter '" + prm + "'", f.line, 1);
    f.body = block();
    return f;
  }

  Block block() {
    expect("{");
    Block b;
    while (!is_punct("}")) {
      if (peek().kind == Tok::End) fail("expected '}'");
      b.push_back(statement());
    }
    next();
    return b;
  }

  Operand operand() {
    const Token& t = peek();
    if (t.kind == Tok::Int) return {Literal::integer(std::stoll(next().text))};
    if (is_kw("NULL")) {
      next();
      return {Literal::null()};
    }
    return {ident("operand")};
  }

  Condition condition() {
    expect("(");
    Condition c;
    c.lhs = operand();
    if (is_punct("==")) c.op = CmpOp::Eq;
    else if (is_punct("!=")) c.op = CmpOp::Ne;
    else if (is_punct(">")) c.op = CmpOp::Gt;
    else if (is_punct("<")) c.op = CmpOp::Lt;
    else fail("expected comparison operator");
    next();
    c.rhs = operand();
    expect(")");
    return c;
  }

  Stmt statement() {
    Stmt s;
    s.line = peek().line;
    s.column = peek().column;
    if (is_kw("if")) {
      next();
      If node;
      node.cond = condition();
      node.then_body = block();
      if (is_kw("else")) {
        next();
        if (is_kw("if")) node.else_body.push_back(statement());
        else node.else_body = block();
      }
      s.node = std::move(node);
      return s;
    }
    if (is_kw("while")) {
      next();
      While node;
      node.cond = condition();
      node.body = block();
      s.node = std::move(node);
      return s;
    }
    if (is_kw("return")) {
      next();
      s.node = Return{ident("return value")};
      expect(";");
      return s;
    }
    if (is_punct("*")) {
      next();
      PtrStore st;
      st.ptr = ident("pointer");
      expect("=");
      st.src = ident("stored value");
      expect(";");
      s.node = st;
      return s;
    }
    std::string first = ident("statement");
    if (is_punct(".")) {
      next();
      FieldStore st;
      st.base = first;
      st.field = ident("field name");
      expect("=");
      st.src = ident("stored value");
      expect(";");
      s.node = st;
      return s;
    }
    if (is_punct("(")) {
      Call c;
      c.callee = first;
      c.args = name_list();
      expect(";");
      s.node = c;
      return s;
    }
    expect("=");
    s.node = rhs(first);
    expect(";");
    return s;
  }

  Stmt::Node rhs(const std::string& dst) {
    if (is_punct("*")) {
      next();
      return PtrLoad{dst, ident("pointer")};
    }
    if (peek().kind == Tok::Ident && !kKeywords.count(peek().text)) {
      if (is_punct(".", 1)) {
        std::string base = next().text;
        next();
        return FieldLoad{dst, base, ident("field name")};
      }
      if (is_punct("(", 1)) {
        Call c;
        c.dst = dst;
        c.callee = next().text;
        c.args = name_list();
        return c;
      }
    }
    const Token at = peek();
    Operand lhs = operand();
    ArithOp op;
    if (is_punct("+")) op = ArithOp::Add;
    else if (is_punct("-")) op = ArithOp::Sub;
    else if (is_punct("*")) op = ArithOp::Mul;
    else if (is_punct("/")) op = ArithOp::Div;
    else if (is_punct(";")) {
      if (lhs.is_var()) return vflow::Copy{dst, lhs.var()};
      return AssignLit{dst, lhs.lit()};
    } else {
      fail("expected arithmetic operator or ';'");
    }
    const Token op_tok = next();
    Operand rhs_op = operand();
    if ((!lhs.is_var() && lhs.lit().is_null)) throw SyntaxError("NULL is not an arithmetic operand", at.line, at.column);
    if ((!rhs_op.is_var() && rhs_op.lit().is_null))
      throw SyntaxError("NULL is not an arithmetic operand", op_tok.line, op_tok.column + 1);
    return Arith{dst, lhs, op, rhs_op};
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

void print_block(std::ostringstream& os, const Block& b, int depth);

void print_stmt(std::ostringstream& os, const Stmt& s, int depth) {
  std::string ind(depth * 2, ' ');
  auto cond = [](const Condition& c) {
    return "(" + c.lhs.text() + " " + std::string(to_string(c.op)) + " " + c.rhs.text() + ")";
  };
  auto args = [](const std::vector<std::string>& a) {
    std::string r;
    for (size_t i = 0; i < a.size(); ++i) r += (i ? ", " : "") + a[i];
    return r;
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, AssignLit>) {
          os << ind << n.dst << " = " << n.lit.text() << ";\n";
        } else if constexpr (std::is_same_v<T, Copy>) {
          os << ind << n.dst << " = " << n.src << ";\n";
        } else if constexpr (std::is_same_v<T, Arith>) {
          os << ind << n.dst << " = " << n.lhs.text() << " " << to_string(n.op) << " "
             << n.rhs.text() << ";\n";
        } else if constexpr (std::is_same_v<T, FieldStore>) {
          os << ind << n.base << "." << n.field << " = " << n.src << ";\n";
        } else if constexpr (std::is_same_v<T, FieldLoad>) {
          os << ind << n.dst << " = " << n.base << "." << n.field << ";\n";
        } else if constexpr (std::is_same_v<T, PtrStore>) {
          os << ind << "*" << n.ptr << " = " << n.src << ";\n";
        } else if constexpr (std::is_same_v<T, PtrLoad>) {
          os << ind << n.dst << " = *" << n.ptr << ";\n";
        } else if constexpr (std::is_same_v<T, If>) {
          os << ind << "if " << cond(n.cond) << " {\n";
          print_block(os, n.then_body, depth + 1);
          if (n.else_body.empty()) {
            os << ind << "}\n";
          } else {
            os << ind << "} else {\n";
            print_block(os, n.else_body, depth + 1);
            os << ind << "}\n";
          }
        } else if constexpr (std::is_same_v<T, While>) {
          os << ind << "while " << cond(n.cond) << " {\n";
          print_block(os, n.body, depth + 1);
          os << ind << "}\n";
        } else if constexpr (std::is_same_v<T, Call>) {
          os << ind << (n.dst ? *n.dst + " = " : "") << n.callee << "(" << args(n.args) << ");\n";
        } else if constexpr (std::is_same_v<T, Return>) {
          os << ind << "return " << n.value << ";\n";
        }
      },
      s.node);
}

void print_block(std::ostringstream& os, const Block& b, int depth) {
  for (const auto& s : b) print_stmt(os, s, depth);
}

}  // namespace

Program parse(std::string_view source) { return Parser(lex(source)).program(); }

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& f : p.functions) {
    if (!first) os << "\n";
    first = false;
    std::string params;
    for (size_t i = 0; i < f.params.size(); ++i) params += (i ? ", " : "") + f.params[i];
    if (f.is_extern) {
      os << "extern " << f.name << "(" << params << ");\n";
      continue;
    }
    os << f.name << "(" << params << ") {\n";
    print_block(os, f.body, 1);
    os << "}\n";
  }
  return os.str();
}

}  // namespace vflow

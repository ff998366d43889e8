#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace imgql::dsl {

struct SourceLoc {
  std::string file;
  int line = 0;
  int col = 0;

  std::string str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(col);
  }
};

// All script-level failures (lexing, parsing, expansion, evaluation)
// carry a source location.
class ScriptError : public std::runtime_error {
public:
  ScriptError(const SourceLoc& loc, const std::string& msg)
      : std::runtime_error(loc.str() + ": " + msg), loc_(loc) {}

  const SourceLoc& where() const { return loc_; }

private:
  SourceLoc loc_;
};

enum class TokKind {
  Ident,
  Number,
  String,
  Operator,
  LParen,
  RParen,
  Comma,
  Equals,
  KwLet,
  KwLoad,
  KwSave,
  KwPrint,
  KwImport,
  End,
};

struct Token {
  TokKind kind = TokKind::End;
  std::string text;
  double num = 0.0;
  SourceLoc loc;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Parenthesised subexpressions are folded away by the parser; infix and
// prefix operator applications are represented as calls on the operator
// symbol ("&", "!", "S", ...).
struct Expr {
  enum class Kind { Number, String, Ident, Call };
  Kind kind = Kind::Number;
  double num = 0.0;
  std::string name;  // identifier, string value, or call target
  std::vector<ExprPtr> args;
  SourceLoc loc;

  static ExprPtr number(double v, SourceLoc loc);
  static ExprPtr string(std::string v, SourceLoc loc);
  static ExprPtr ident(std::string name, SourceLoc loc);
  static ExprPtr call(std::string name, std::vector<ExprPtr> args, SourceLoc loc);
};

struct LetDecl {
  std::string name;
  std::vector<std::string> params;  // empty for constant declarations
  ExprPtr body;
  SourceLoc loc;
};

struct LoadCmd {
  std::string name;
  std::string path;  // literal text, before variable substitution
  SourceLoc loc;
};

struct SaveCmd {
  std::string path;
  ExprPtr expr;
  SourceLoc loc;
};

struct PrintCmd {
  std::string label;
  ExprPtr expr;
  SourceLoc loc;
};

struct ImportCmd {
  std::string path;
  SourceLoc loc;
};

using Command = std::variant<LetDecl, LoadCmd, SaveCmd, PrintCmd, ImportCmd>;

}  // namespace imgql::dsl

#include "imgql/dsl/parser.hpp"

#include <algorithm>
#include <unordered_set>

#include "imgql/dsl/lexer.hpp"

namespace imgql::dsl {

ExprPtr Expr::number(double v, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Number;
  e->num = v;
  e->loc = std::move(loc);
  return e;
}

ExprPtr Expr::string(std::string v, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::String;
  e->name = std::move(v);
  e->loc = std::move(loc);
  return e;
}

ExprPtr Expr::ident(std::string name, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Ident;
  e->name = std::move(name);
  e->loc = std::move(loc);
  return e;
}

ExprPtr Expr::call(std::string name, std::vector<ExprPtr> args, SourceLoc loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Call;
  e->name = std::move(name);
  e->args = std::move(args);
  e->loc = std::move(loc);
  return e;
}

namespace {

class Parser {
public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  std::vector<Command> run() {
    std::vector<Command> out;
    while (peek().kind != TokKind::End) out.push_back(command());
    return out;
  }

private:
  const Token& peek(int ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  const Token& expect(TokKind k, const char* what) {
    const Token& t = next();
    if (t.kind != k) {
      throw ScriptError(t.loc, std::string("expected ") + what + ", got '" +
                                   (t.kind == TokKind::End ? "end of file" : t.text) + "'");
    }
    return t;
  }

  Command command() {
    const Token& t = next();
    switch (t.kind) {
      case TokKind::KwLet: return let_decl(t.loc);
      case TokKind::KwLoad: {
        const Token& name = expect(TokKind::Ident, "identifier");
        expect(TokKind::Equals, "'='");
        const Token& path = expect(TokKind::String, "string literal");
        return LoadCmd{name.text, path.text, t.loc};
      }
      case TokKind::KwSave: {
        const Token& path = expect(TokKind::String, "string literal");
        return SaveCmd{path.text, expression(), t.loc};
      }
      case TokKind::KwPrint: {
        const Token& label = expect(TokKind::String, "string literal");
        return PrintCmd{label.text, expression(), t.loc};
      }
      case TokKind::KwImport: {
        const Token& path = expect(TokKind::String, "string literal");
        return ImportCmd{path.text, t.loc};
      }
      default:
        throw ScriptError(t.loc, "expected a command (let, load, save, print, import), got '" +
                                     t.text + "'");
    }
  }

  Command let_decl(SourceLoc loc) {
    const Token& name = expect(TokKind::Ident, "identifier");
    std::vector<std::string> params;
    if (peek().kind == TokKind::LParen) {
      next();
      while (true) {
        const Token& p = expect(TokKind::Ident, "parameter name");
        params.push_back(p.text);
        if (peek().kind == TokKind::Comma) {
          next();
          continue;
        }
        expect(TokKind::RParen, "')'");
        break;
      }
      std::unordered_set<std::string> seen;
      for (const auto& p : params) {
        if (!seen.insert(p).second) {
          throw ScriptError(loc, "duplicate parameter name '" + p + "' in let " + name.text);
        }
      }
    }
    expect(TokKind::Equals, "'='");
    return LetDecl{name.text, std::move(params), expression(), loc};
  }

  // Precedence climbing; level 0 is the loosest.
  ExprPtr expression() { return infix_level(0); }

  static int op_level(const Token& t) {
    if (t.kind == TokKind::Ident && t.text == "S") return 0;
    if (t.kind != TokKind::Operator) return -1;
    const std::string& s = t.text;
    if (s == "|") return 1;
    if (s == "&") return 2;
    if (s == ">" || s == "<" || s == ">." || s == "<." || s == ".<." || s == ".>.") return 3;
    if (s == "+." || s == "-." || s == ".+." || s == ".-.") return 4;
    if (s == "*." || s == "/." || s == ".*." || s == "./.") return 5;
    return -1;
  }

  ExprPtr infix_level(int level) {
    if (level > 5) return prefix();
    ExprPtr lhs = infix_level(level + 1);
    while (op_level(peek()) == level) {
      const Token op = next();
      ExprPtr rhs = infix_level(level + 1);
      lhs = Expr::call(op.text, {lhs, rhs}, op.loc);
    }
    return lhs;
  }

  ExprPtr prefix() {
    if (peek().kind == TokKind::Operator && peek().text == "!") {
      const Token op = next();
      return Expr::call("!", {prefix()}, op.loc);
    }
    return primary();
  }

  ExprPtr primary() {
    const Token& t = next();
    switch (t.kind) {
      case TokKind::Number: return Expr::number(t.num, t.loc);
      case TokKind::String: return Expr::string(t.text, t.loc);
      case TokKind::LParen: {
        ExprPtr inner = expression();
        expect(TokKind::RParen, "')'");
        return inner;
      }
      case TokKind::Ident: {
        if (peek().kind != TokKind::LParen) return Expr::ident(t.text, t.loc);
        next();
        std::vector<ExprPtr> args;
        if (peek().kind != TokKind::RParen) {
          while (true) {
            args.push_back(expression());
            if (peek().kind == TokKind::Comma) {
              next();
              continue;
            }
            break;
          }
        }
        expect(TokKind::RParen, "')'");
        return Expr::call(t.text, std::move(args), t.loc);
      }
      default:
        throw ScriptError(t.loc, "expected an expression, got '" +
                                     (t.kind == TokKind::End ? "end of file" : t.text) + "'");
    }
  }

  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Command> parse(const std::vector<Token>& tokens) {
  return Parser(tokens).run();
}

std::vector<Command> parse_source(const std::string& source, const std::string& file) {
  return parse(tokenize(source, file));
}

}  // namespace imgql::dsl

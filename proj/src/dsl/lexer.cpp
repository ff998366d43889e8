#include "imgql/dsl/lexer.hpp"

#include <array>
#include <cctype>
#include <cstdlib>

namespace imgql::dsl {

namespace {

// Longest match first; every entry is a complete operator spelling.
constexpr std::array<const char*, 17> kOperators = {
    ".*.", ".+.", "./.", ".-.", ".<.", ".>.",         // Number x Number
    ">.", "<.", "+.", "-.", "*.", "/.",               // image x number
    ">", "<", "&", "|", "!",                          // image x image, logic
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

TokKind keyword_kind(const std::string& s) {
  if (s == "let") return TokKind::KwLet;
  if (s == "load") return TokKind::KwLoad;
  if (s == "save") return TokKind::KwSave;
  if (s == "print") return TokKind::KwPrint;
  if (s == "import") return TokKind::KwImport;
  return TokKind::Ident;
}

}  // namespace

std::vector<Token> tokenize(const std::string& source, const std::string& file) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1, col = 1;

  auto loc_here = [&] { return SourceLoc{file, line, col}; };
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      if (source[i + j] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };

  while (i < source.size()) {
    const char c = source[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '/' && i + 1 < source.size() && source[i + 1] == '/') {
      while (i < source.size() && source[i] != '\n') advance(1);
      continue;
    }
    const SourceLoc loc = loc_here();
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < source.size() && ident_cont(source[j])) ++j;
      std::string text = source.substr(i, j - i);
      out.push_back({keyword_kind(text), std::move(text), 0.0, loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < source.size() && std::isdigit(static_cast<unsigned char>(source[j]))) ++j;
      if (j < source.size() && source[j] == '.' && j + 1 < source.size() &&
          std::isdigit(static_cast<unsigned char>(source[j + 1]))) {
        ++j;
        while (j < source.size() && std::isdigit(static_cast<unsigned char>(source[j]))) ++j;
      }
      std::string text = source.substr(i, j - i);
      out.push_back({TokKind::Number, text, std::strtod(text.c_str(), nullptr), loc});
      advance(j - i);
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < source.size() && source[j] != '"' && source[j] != '\n') ++j;
      if (j >= source.size() || source[j] != '"') {
        throw ScriptError(loc, "unterminated string literal");
      }
      out.push_back({TokKind::String, source.substr(i + 1, j - i - 1), 0.0, loc});
      advance(j - i + 1);
      continue;
    }
    if (c == '(') { out.push_back({TokKind::LParen, "(", 0.0, loc}); advance(1); continue; }
    if (c == ')') { out.push_back({TokKind::RParen, ")", 0.0, loc}); advance(1); continue; }
    if (c == ',') { out.push_back({TokKind::Comma, ",", 0.0, loc}); advance(1); continue; }
    if (c == '=') { out.push_back({TokKind::Equals, "=", 0.0, loc}); advance(1); continue; }

    bool matched = false;
    for (const char* op : kOperators) {
      const std::size_t n = std::char_traits<char>::length(op);
      if (source.compare(i, n, op) == 0) {
        out.push_back({TokKind::Operator, op, 0.0, loc});
        advance(n);
        matched = true;
        break;
      }
    }
    if (matched) continue;

    throw ScriptError(loc, std::string("unknown character '") + c + "'");
  }
  out.push_back({TokKind::End, "", 0.0, loc_here()});
  return out;
}

}  // namespace imgql::dsl

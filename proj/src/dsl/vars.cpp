#include "imgql/dsl/vars.hpp"

#include <cctype>
#include <cstdlib>

namespace imgql::dsl {

void Bindings::define(const std::string& name, const std::string& value) {
  defines_[name] = value;
}

bool Bindings::defined(const std::string& name) const {
  return lookup(name) != nullptr;
}

const std::string* Bindings::lookup(const std::string& name) const {
  auto it = defines_.find(name);
  if (it != defines_.end()) return &it->second;
  auto cached = env_cache_.find(name);
  if (cached != env_cache_.end()) return &cached->second;
  if (const char* env = std::getenv(name.c_str())) {
    return &env_cache_.emplace(name, env).first->second;
  }
  return nullptr;
}

namespace {

bool var_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool var_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

std::string substitute_vars(const std::string& literal, const Bindings& b,
                            const SourceLoc& loc) {
  std::string out;
  out.reserve(literal.size());
  std::size_t i = 0;
  while (i < literal.size()) {
    if (literal[i] != '$') {
      out += literal[i++];
      continue;
    }
    std::string name;
    std::size_t end;
    if (i + 1 < literal.size() && literal[i + 1] == '{') {
      end = literal.find('}', i + 2);
      if (end == std::string::npos) {
        throw ScriptError(loc, "unterminated ${...} in \"" + literal + "\"");
      }
      name = literal.substr(i + 2, end - i - 2);
      ++end;  // past '}'
    } else {
      end = i + 1;
      if (end < literal.size() && var_start(literal[end])) {
        ++end;
        while (end < literal.size() && var_cont(literal[end])) ++end;
      }
      name = literal.substr(i + 1, end - i - 1);
    }
    if (name.empty()) {
      throw ScriptError(loc, "stray '$' in \"" + literal + "\"");
    }
    const std::string* value = b.lookup(name);
    if (!value) {
      throw ScriptError(loc, "unbound variable $" + name + " in \"" + literal + "\"");
    }
    out += *value;
    i = end;
  }
  return out;
}

}  // namespace imgql::dsl

#pragma once

#include <map>
#include <string>

#include "imgql/dsl/ast.hpp"

namespace imgql::dsl {

// Variable bindings for $NAME / ${NAME} substitution in path literals.
// CLI definitions win over process environment variables.
class Bindings {
public:
  void define(const std::string& name, const std::string& value);
  bool defined(const std::string& name) const;

  // Defined value, else the process environment, else empty optional.
  const std::string* lookup(const std::string& name) const;

  const std::map<std::string, std::string>& defines() const { return defines_; }

private:
  std::map<std::string, std::string> defines_;
  mutable std::map<std::string, std::string> env_cache_;
};

// Replaces each $IDENT (longest identifier match after '$') or ${IDENT}
// with its binding. An unbound variable is an error naming it.
std::string substitute_vars(const std::string& literal, const Bindings& b,
                            const SourceLoc& loc);

}  // namespace imgql::dsl

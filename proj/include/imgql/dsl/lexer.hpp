#pragma once

#include <string>
#include <vector>

#include "imgql/dsl/ast.hpp"

namespace imgql::dsl {

// Splits UTF-8 source text into tokens. Identifiers start with a letter
// and continue with letters, digits or underscores; `//` comments run to
// end of line; string literals are double-quoted and opaque.
std::vector<Token> tokenize(const std::string& source, const std::string& file);

}  // namespace imgql::dsl

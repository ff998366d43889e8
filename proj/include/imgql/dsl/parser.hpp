#pragma once

#include <vector>

#include "imgql/dsl/ast.hpp"

namespace imgql::dsl {

// Parses a token stream into commands, in file order.
//
// Infix precedence, loosest to tightest, all left-associative:
//   S  |  &  comparisons (> < >. <. .<. .>.)  additive (+. -. .+. .-.)
//   multiplicative (*. /. .*. ./.)  prefix !
std::vector<Command> parse(const std::vector<Token>& tokens);

std::vector<Command> parse_source(const std::string& source, const std::string& file);

}  // namespace imgql::dsl

#pragma once

#include <string>
#include <vector>

#include "imgql/dsl/graph.hpp"

namespace imgql::dsl {

struct OpSig {
  std::vector<TypeTag> params;
  TypeTag result;
};

// A builtin operator: its spelling in scripts and the signatures it
// accepts (a few accept either an image or a number on one side).
struct OpInfo {
  std::string name;
  std::vector<OpSig> overloads;
};

// Table of every registered operator, including the infix spellings.
const std::vector<OpInfo>& builtin_table();

const OpInfo* find_builtin(const std::string& name);

// Selects the overload matching the argument types, or null.
const OpSig* match_overload(const OpInfo& info, const std::vector<TypeTag>& args);

}  // namespace imgql::dsl

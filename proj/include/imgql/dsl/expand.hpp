#pragma once

#include <functional>
#include <string>
#include <vector>

#include "imgql/dsl/ast.hpp"
#include "imgql/dsl/graph.hpp"
#include "imgql/dsl/vars.hpp"

namespace imgql::dsl {

struct LoadedImage {
  std::string name;
  std::string path;  // after variable substitution
  SourceLoc loc;
};

// A script with all imports inlined, in file order.
struct Program {
  std::vector<Command> commands;
};

// Resolves an import target to script text. Returns nullptr when the
// name is not provided (used for the embedded corpus).
using EmbeddedLookup = std::function<const std::string*(const std::string&)>;

// Reads a script and splices imports in place. Imports resolve relative
// to the importing file, then in `stdlib_dir`, then among embedded
// scripts; repeated imports of the same file are dropped, which also
// disarms import cycles. Imported files may only declare (let/import).
Program load_program(const std::string& path, const Bindings& bindings,
                     const std::string& stdlib_dir = "",
                     EmbeddedLookup embedded = nullptr);

Program load_program_text(const std::string& text, const std::string& name,
                          const Bindings& bindings,
                          const std::string& stdlib_dir = "",
                          EmbeddedLookup embedded = nullptr);

struct Expansion {
  ExprGraph graph;
  std::vector<LoadedImage> loads;  // every load command, in file order
};

// Turns the program into a closed, type-checked expression DAG rooted at
// its save/print commands. Let bindings are inlined (no closures survive
// expansion); structurally equal subexpressions share one UID.
//
// Name resolution is lexical: each binding body resolves names against
// the environment at its declaration, so later rebindings shadow without
// creating cycles. Identifiers not bound lexically fall back to the
// program's load commands, letting imported libraries refer to images
// the importing script loads afterwards.
Expansion expand(const Program& program, const Bindings& bindings);

}  // namespace imgql::dsl

#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "imgql/dsl/ast.hpp"

namespace imgql::dsl {

// Run-time types of closed expressions. Valuation(t) is an image whose
// voxels hold values of type t.
enum class TypeTag { Number, Bool, String, Model, ValNum, ValBool };

std::string type_name(TypeTag t);

using Uid = std::uint32_t;

struct Node {
  std::string op;             // builtin name, or "num" / "str" / "load"
  std::vector<Uid> args;
  TypeTag type = TypeTag::Number;
  double num = 0.0;           // payload when op == "num"
  std::string str;            // payload: string literal, or resolved load path
  SourceLoc loc;              // first syntactic origin
};

// What a root's value is for: writing an image or printing a result.
struct RootAction {
  enum class Kind { Save, Print };
  Kind kind = Kind::Print;
  std::string target;  // output path (Save) or label (Print)
  Uid uid = 0;
  SourceLoc loc;
};

// Hash-consed DAG of closed expressions. UIDs are contiguous from 0 and
// arguments always precede their consumers, so ascending UID order is a
// topological order of the dependency graph.
class ExprGraph {
public:
  Uid add_number(double v, const SourceLoc& loc);
  Uid add_string(const std::string& s, const SourceLoc& loc);
  Uid add_load(const std::string& path, const SourceLoc& loc);
  Uid add_op(const std::string& op, std::vector<Uid> args, TypeTag type,
             const SourceLoc& loc);

  const Node& node(Uid uid) const { return nodes_[uid]; }
  std::size_t size() const { return nodes_.size(); }

  std::vector<RootAction>& roots() { return roots_; }
  const std::vector<RootAction>& roots() const { return roots_; }

private:
  Uid intern(Node n, const std::string& key);

  std::vector<Node> nodes_;
  std::unordered_map<std::string, Uid> index_;
  std::vector<RootAction> roots_;
};

}  // namespace imgql::dsl

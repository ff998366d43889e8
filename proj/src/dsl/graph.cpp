#include "imgql/dsl/graph.hpp"

#include <cstring>
#include <stdexcept>

namespace imgql::dsl {

std::string type_name(TypeTag t) {
  switch (t) {
    case TypeTag::Number: return "Number";
    case TypeTag::Bool: return "Bool";
    case TypeTag::String: return "String";
    case TypeTag::Model: return "Model";
    case TypeTag::ValNum: return "Valuation(Number)";
    case TypeTag::ValBool: return "Valuation(Bool)";
  }
  return "?";
}

Uid ExprGraph::intern(Node n, const std::string& key) {
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const Uid uid = static_cast<Uid>(nodes_.size());
  // Arguments are interned before their consumer, which keeps ascending
  // UID order a topological order; check it holds for every new node.
  for (Uid a : n.args) {
    if (a >= uid) throw std::logic_error("expression graph: argument UID not below node UID");
  }
  nodes_.push_back(std::move(n));
  index_.emplace(key, uid);
  return uid;
}

Uid ExprGraph::add_number(double v, const SourceLoc& loc) {
  char bits[sizeof v];
  std::memcpy(bits, &v, sizeof v);
  Node n;
  n.op = "num";
  n.type = TypeTag::Number;
  n.num = v;
  n.loc = loc;
  return intern(std::move(n), "num\x1f" + std::string(bits, sizeof bits));
}

Uid ExprGraph::add_string(const std::string& s, const SourceLoc& loc) {
  Node n;
  n.op = "str";
  n.type = TypeTag::String;
  n.str = s;
  n.loc = loc;
  return intern(std::move(n), "str\x1f" + s);
}

Uid ExprGraph::add_load(const std::string& path, const SourceLoc& loc) {
  Node n;
  n.op = "load";
  n.type = TypeTag::Model;
  n.str = path;
  n.loc = loc;
  return intern(std::move(n), "load\x1f" + path);
}

Uid ExprGraph::add_op(const std::string& op, std::vector<Uid> args, TypeTag type,
                      const SourceLoc& loc) {
  std::string key = op;
  key.push_back('\x1f');
  for (Uid a : args) {
    key.append(reinterpret_cast<const char*>(&a), sizeof a);
  }
  Node n;
  n.op = op;
  n.args = std::move(args);
  n.type = type;
  n.loc = loc;
  return intern(std::move(n), key);
}

}  // namespace imgql::dsl

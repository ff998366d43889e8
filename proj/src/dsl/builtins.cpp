#include "imgql/dsl/builtins.hpp"

#include <unordered_map>

namespace imgql::dsl {

namespace {

constexpr TypeTag N = TypeTag::Number;
constexpr TypeTag B = TypeTag::Bool;
constexpr TypeTag M = TypeTag::Model;
constexpr TypeTag VN = TypeTag::ValNum;
constexpr TypeTag VB = TypeTag::ValBool;

std::vector<OpInfo> make_table() {
  std::vector<OpInfo> t;
  auto op = [&](std::string name, std::vector<OpSig> sigs) {
    t.push_back({std::move(name), std::move(sigs)});
  };

  // Model projections and image statistics.
  op("intensity", {{{M}, VN}});
  op("red", {{{M}, VN}});
  op("green", {{{M}, VN}});
  op("blue", {{{M}, VN}});
  op("min", {{{VN}, N}});
  op("max", {{{VN}, N}});
  op("volume", {{{VB}, N}});

  // Nullary constants of the ambient model.
  op("border", {{{}, VB}});
  op("tt", {{{}, VB}});
  op("ff", {{{}, VB}});

  // Spatial logic.
  op("near", {{{VB}, VB}});
  op("interior", {{{VB}, VB}});
  op("touch", {{{VB, VB}, VB}});
  op("grow", {{{VB, VB}, VB}});
  op("smoothen", {{{VB, N}, VB}});
  op("maxvol", {{{VB}, VB}});
  op("distleq", {{{N, VB}, VB}});
  op("distlt", {{{N, VB}, VB}});
  op("distgeq", {{{N, VB}, VB}});
  op("S", {{{VB, VB}, VB}});
  op("&", {{{VB, VB}, VB}});
  op("|", {{{VB, VB}, VB}});
  op("!", {{{VB}, VB}});

  // Texture analysis: radius, local attribute, sample attribute, sample
  // region, range min/max, bin count.
  op("crossCorrelation", {{{N, VN, VN, VB, N, N, N}, VN}});

  op("ifB", {{{B, VB, VB}, VB}});

  // Image thresholding and arithmetic. The undotted comparisons accept
  // an image or a plain number on the right.
  op(">", {{{VN, VN}, VB}, {{VN, N}, VB}});
  op("<", {{{VN, VN}, VB}, {{VN, N}, VB}});
  op(">.", {{{VN, N}, VB}});
  op("<.", {{{VN, N}, VB}});
  op("+.", {{{VN, N}, VN}, {{VN, VN}, VN}});
  op("-.", {{{VN, N}, VN}, {{VN, VN}, VN}});
  op("*.", {{{VN, N}, VN}, {{VN, VN}, VN}});
  op("/.", {{{VN, N}, VN}, {{VN, VN}, VN}});

  // Number arithmetic and comparisons.
  op(".+.", {{{N, N}, N}});
  op(".-.", {{{N, N}, N}});
  op(".*.", {{{N, N}, N}});
  op("./.", {{{N, N}, N}});
  op(".<.", {{{N, N}, B}});
  op(".>.", {{{N, N}, B}});

  return t;
}

}  // namespace

const std::vector<OpInfo>& builtin_table() {
  static const std::vector<OpInfo> table = make_table();
  return table;
}

const OpInfo* find_builtin(const std::string& name) {
  static const auto index = [] {
    std::unordered_map<std::string, const OpInfo*> m;
    for (const auto& info : builtin_table()) m.emplace(info.name, &info);
    return m;
  }();
  auto it = index.find(name);
  return it == index.end() ? nullptr : it->second;
}

const OpSig* match_overload(const OpInfo& info, const std::vector<TypeTag>& args) {
  for (const auto& sig : info.overloads) {
    if (sig.params == args) return &sig;
  }
  return nullptr;
}

}  // namespace imgql::dsl

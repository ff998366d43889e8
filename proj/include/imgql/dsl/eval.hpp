#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "imgql/dsl/expand.hpp"
#include "imgql/dsl/graph.hpp"
#include "imgql/grid.hpp"
#include "imgql/imaging.hpp"

namespace imgql::dsl {

using Value = std::variant<std::monostate, double, bool, std::string,
                           std::shared_ptr<const ColorImage>,
                           std::shared_ptr<const ScalarImage>,
                           std::shared_ptr<const BoolImage>>;

struct EvalOptions {
  int threads = 1;
  Adjacency adjacency = Adjacency::Orthodiagonal;
  IntensityMode intensity = IntensityMode::Rec601;
  bool oracle_texture = false;  // force the naive cross-correlation path
};

// One save/print side effect, in command order.
struct SideEffect {
  RootAction::Kind kind;
  std::string target;   // path or label
  std::string printed;  // "LABEL=VALUE" line for prints
  double millis = 0.0;  // elapsed since evaluation start
};

struct EvalResult {
  std::vector<Value> values;            // per UID
  std::vector<std::uint32_t> eval_counts;  // evaluations per node (always 1)
  std::vector<SideEffect> effects;
  GridDims dims;
};

// Evaluates every node of the graph exactly once, bottom-up over the
// dependency DAG; independent nodes may run on worker threads. Results
// are deterministic for any thread count. Load commands execute eagerly,
// the first one fixing the model's grid; later loads must match it.
// Side effects (saves, prints) run after evaluation, in command order.
EvalResult evaluate(const ExprGraph& graph, const std::vector<LoadedImage>& loads,
                    const EvalOptions& opts);

// Formats a print value: numbers use up to 6 significant digits,
// booleans print as true/false.
std::string format_print_value(const Value& v);

}  // namespace imgql::dsl

#include "imgql/dsl/eval.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "imgql/metrics.hpp"
#include "imgql/spatial.hpp"
#include "imgql/texture.hpp"

namespace imgql::dsl {

namespace {

double as_num(const Value& v) { return std::get<double>(v); }
bool as_bool(const Value& v) { return std::get<bool>(v); }
const ColorImage& as_model(const Value& v) {
  return *std::get<std::shared_ptr<const ColorImage>>(v);
}
const ScalarImage& as_vnum(const Value& v) {
  return *std::get<std::shared_ptr<const ScalarImage>>(v);
}
const BoolImage& as_vbool(const Value& v) {
  return *std::get<std::shared_ptr<const BoolImage>>(v);
}

Value wrap(BoolImage img) {
  return std::make_shared<const BoolImage>(std::move(img));
}
Value wrap(ScalarImage img) {
  return std::make_shared<const ScalarImage>(std::move(img));
}

int as_bin_count(double v) {
  const double r = std::round(v);
  if (!(r >= 1.0) || std::abs(v - r) > 1e-9) {
    throw std::invalid_argument("bin count must be a positive integer, got " +
                                std::to_string(v));
  }
  return static_cast<int>(r);
}

struct ModelContext {
  GridDims dims;
  std::map<std::string, std::shared_ptr<const ColorImage>> images;  // by path
};

// Applies one operator to already-evaluated arguments.
Value apply_op(const Node& n, const std::vector<Value>& vals,
               const std::vector<Uid>& args, const ModelContext& mc,
               const EvalOptions& o) {
  auto arg = [&](std::size_t i) -> const Value& { return vals[args[i]]; };
  const std::string& op = n.op;

  if (op == "num") return n.num;
  if (op == "str") return n.str;
  if (op == "load") return mc.images.at(n.str);

  if (op == "border") return wrap(border_mask(mc.dims));
  if (op == "tt") return wrap(BoolImage(mc.dims, true));
  if (op == "ff") return wrap(BoolImage(mc.dims, false));

  if (op == "intensity") return wrap(intensity(as_model(arg(0)), o.intensity));
  if (op == "red") return wrap(color_proj(as_model(arg(0)), Channel::Red));
  if (op == "green") return wrap(color_proj(as_model(arg(0)), Channel::Green));
  if (op == "blue") return wrap(color_proj(as_model(arg(0)), Channel::Blue));
  if (op == "min") return min_value(as_vnum(arg(0)));
  if (op == "max") return max_value(as_vnum(arg(0)));
  if (op == "volume") return volume(as_vbool(arg(0)));

  if (op == "near") return wrap(closure(as_vbool(arg(0)), o.adjacency));
  if (op == "interior") return wrap(interior(as_vbool(arg(0)), o.adjacency));
  if (op == "touch") return wrap(touch_op(as_vbool(arg(0)), as_vbool(arg(1)), o.adjacency));
  if (op == "grow") return wrap(grow_op(as_vbool(arg(0)), as_vbool(arg(1)), o.adjacency));
  if (op == "smoothen") return wrap(smoothen_op(as_num(arg(1)), as_vbool(arg(0))));
  if (op == "maxvol") return wrap(maxvol(as_vbool(arg(0)), o.adjacency));
  if (op == "distleq")
    return wrap(dist_predicate(as_vbool(arg(1)), {DistCmp::Leq, as_num(arg(0))}));
  if (op == "distlt")
    return wrap(dist_predicate(as_vbool(arg(1)), {DistCmp::Lt, as_num(arg(0))}));
  if (op == "distgeq")
    return wrap(dist_predicate(as_vbool(arg(1)), {DistCmp::Geq, as_num(arg(0))}));
  if (op == "S")
    return wrap(surrounded(as_vbool(arg(0)), as_vbool(arg(1)), o.adjacency));
  if (op == "&") return wrap(as_vbool(arg(0)) & as_vbool(arg(1)));
  if (op == "|") return wrap(as_vbool(arg(0)) | as_vbool(arg(1)));
  if (op == "!") return wrap(!as_vbool(arg(0)));

  if (op == "crossCorrelation") {
    const WindowSpec w{as_num(arg(0))};
    const ScalarImage& a = as_vnum(arg(1));
    const ScalarImage& b = as_vnum(arg(2));
    const BoolImage& region = as_vbool(arg(3));
    const double m = as_num(arg(4)), M = as_num(arg(5));
    const int k = as_bin_count(as_num(arg(6)));
    if (o.oracle_texture) {
      return wrap(cross_correlation_map_naive(w, a, b, region, m, M, k));
    }
    return wrap(cross_correlation_map(w, a, b, region, m, M, k, o.threads));
  }

  if (op == "ifB")
    return wrap(if_bool(as_bool(arg(0)), as_vbool(arg(1)), as_vbool(arg(2))));

  auto cmp_of = [](const std::string& s) {
    return (s[0] == '>' || s == ".>.") ? CmpOp::Gt : CmpOp::Lt;
  };
  if (op == ">" || op == "<") {
    if (std::holds_alternative<double>(arg(1))) {
      return wrap(voxel_compare(cmp_of(op), as_vnum(arg(0)), as_num(arg(1))));
    }
    return wrap(voxel_compare(cmp_of(op), as_vnum(arg(0)), as_vnum(arg(1))));
  }
  if (op == ">." || op == "<.")
    return wrap(voxel_compare(cmp_of(op), as_vnum(arg(0)), as_num(arg(1))));

  auto arith_of = [](char c) {
    switch (c) {
      case '+': return ArithOp::Add;
      case '-': return ArithOp::Sub;
      case '*': return ArithOp::Mul;
      default: return ArithOp::Div;
    }
  };
  if (op == "+." || op == "-." || op == "*." || op == "/.") {
    if (std::holds_alternative<double>(arg(1))) {
      return wrap(voxel_arith(arith_of(op[0]), as_vnum(arg(0)), as_num(arg(1))));
    }
    return wrap(voxel_arith(arith_of(op[0]), as_vnum(arg(0)), as_vnum(arg(1))));
  }
  if (op == ".+." || op == ".-." || op == ".*." || op == "./.")
    return num_arith(arith_of(op[1]), as_num(arg(0)), as_num(arg(1)));
  if (op == ".<." || op == ".>.")
    return num_compare(cmp_of(op), as_num(arg(0)), as_num(arg(1)));

  throw std::logic_error("no evaluator for operator '" + op + "'");
}

// Dependency-counting scheduler: a node becomes runnable once all its
// argument slots are written; results land in write-once slots.
class Scheduler {
public:
  Scheduler(const ExprGraph& g, const ModelContext& mc, const EvalOptions& o)
      : graph_(g), mc_(mc), opts_(o), values_(g.size()),
        eval_counts_(g.size()), pending_(g.size()), dependents_(g.size()) {}

  void run() {
    const std::size_t n = graph_.size();
    for (Uid u = 0; u < n; ++u) {
      const Node& node = graph_.node(u);
      pending_[u] = static_cast<int>(node.args.size());
      for (Uid a : node.args) dependents_[a].push_back(u);
      if (node.args.empty()) ready_.push_back(u);
    }

    const int workers = std::max(1, opts_.threads);
    if (workers == 1 || n < 2) {
      run_single();
      return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back([this] { worker(); });
    for (auto& t : pool) t.join();
    if (error_) std::rethrow_exception(error_);
  }

  std::vector<Value> take_values() { return std::move(values_); }
  std::vector<std::uint32_t> take_counts() {
    std::vector<std::uint32_t> out(eval_counts_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval_counts_[i];
    return out;
  }

private:
  void run_single() {
    // UID order is a topological sort, so a plain ascending sweep is a
    // valid schedule.
    for (Uid u = 0; u < graph_.size(); ++u) evaluate_node(u);
  }

  void evaluate_node(Uid u) {
    const Node& node = graph_.node(u);
    ++eval_counts_[u];
    try {
      values_[u] = apply_op(node, values_, node.args, mc_, opts_);
    } catch (const ScriptError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScriptError(node.loc, e.what());
    }
  }

  void worker() {
    while (true) {
      Uid u;
      {
        std::unique_lock<std::mutex> lock(mu_);
        cv_.wait(lock, [this] {
          return !ready_.empty() || done_ == graph_.size() || error_;
        });
        if (error_ || done_ == graph_.size()) return;
        u = ready_.back();
        ready_.pop_back();
      }
      try {
        evaluate_node(u);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu_);
        if (!error_) error_ = std::current_exception();
        cv_.notify_all();
        return;
      }
      {
        std::lock_guard<std::mutex> lock(mu_);
        ++done_;
        for (Uid d : dependents_[u]) {
          if (--pending_[d] == 0) ready_.push_back(d);
        }
        cv_.notify_all();
      }
    }
  }

  const ExprGraph& graph_;
  const ModelContext& mc_;
  const EvalOptions& opts_;

  std::vector<Value> values_;
  std::vector<std::atomic<std::uint32_t>> eval_counts_;
  std::vector<int> pending_;
  std::vector<std::vector<Uid>> dependents_;
  std::vector<Uid> ready_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t done_ = 0;
  std::exception_ptr error_;
};

}  // namespace

std::string format_print_value(const Value& v) {
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v) ? "true" : "false";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", std::get<double>(v));
  return buf;
}

EvalResult evaluate(const ExprGraph& graph, const std::vector<LoadedImage>& loads,
                    const EvalOptions& opts) {
  const auto start = std::chrono::steady_clock::now();

  // All load commands execute eagerly; the first fixes the grid and the
  // rest must agree with it.
  ModelContext mc;
  bool have_dims = false;
  for (const auto& l : loads) {
    if (mc.images.count(l.path)) continue;
    std::shared_ptr<const ColorImage> img;
    try {
      img = std::make_shared<const ColorImage>(load_png(l.path));
    } catch (const std::exception& e) {
      throw ScriptError(l.loc, e.what());
    }
    if (!have_dims) {
      mc.dims = img->dims();
      have_dims = true;
    } else if (!(img->dims() == mc.dims)) {
      throw ScriptError(l.loc, "image " + l.path + " is " + img->dims().str() +
                                   " but this run's grid is " + mc.dims.str() +
                                   " (one grid per run)");
    }
    mc.images.emplace(l.path, std::move(img));
  }
  if (!have_dims && graph.size() > 0) {
    // Scripts with no load cannot give tt/ff/border a grid.
    for (Uid u = 0; u < graph.size(); ++u) {
      const std::string& op = graph.node(u).op;
      if (op == "tt" || op == "ff" || op == "border") {
        throw ScriptError(graph.node(u).loc,
                          "'" + op + "' needs a grid; load an image first");
      }
    }
  }

  Scheduler sched(graph, mc, opts);
  sched.run();

  EvalResult result;
  result.values = sched.take_values();
  result.eval_counts = sched.take_counts();
  result.dims = mc.dims;

  // Side effects run after evaluation, in command order.
  for (const auto& root : graph.roots()) {
    SideEffect fx;
    fx.kind = root.kind;
    fx.target = root.target;
    const Value& v = result.values[root.uid];
    if (root.kind == RootAction::Kind::Save) {
      try {
        if (std::holds_alternative<std::shared_ptr<const BoolImage>>(v)) {
          save_png(root.target, as_vbool(v));
        } else {
          save_png(root.target, as_vnum(v));
        }
      } catch (const std::exception& e) {
        throw ScriptError(root.loc, e.what());
      }
    } else {
      fx.printed = root.target + "=" + format_print_value(v);
    }
    fx.millis = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    result.effects.push_back(std::move(fx));
  }
  return result;
}

}  // namespace imgql::dsl

#include "imgql/harness/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "imgql/dsl/parser.hpp"
#include "imgql/harness/corpus.hpp"
#include "imgql/imaging.hpp"

namespace imgql::harness {

namespace fs = std::filesystem;

std::string CaseStatus::str() const {
  switch (kind) {
    case Kind::Ok: return "ok";
    case Kind::Skipped: return "skipped(" + detail + ")";
    case Kind::Error: return "error(" + detail + ")";
  }
  return "?";
}

namespace {

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

BoolImage load_mask(const std::string& path) {
  const ColorImage img = load_png(path);
  const ScalarImage inten = intensity(img);
  return voxel_compare(CmpOp::Gt, inten, 0.0);
}

}  // namespace

dsl::EvalResult run_script(const RunConfig& cfg) {
  dsl::Bindings bindings = cfg.bindings;
  if (!cfg.output_dir.empty()) bindings.define("OUTPUTDIR", cfg.output_dir);

  dsl::Program program =
      dsl::load_program(cfg.spec, bindings, cfg.stdlib_dir, corpus_lookup);

  // Extra saves for requested intermediates, appended after the script's
  // own commands so every declaration is in scope.
  for (const auto& ident : cfg.dump) {
    const std::string path = cfg.output_dir + "/" + ident + ".png";
    dsl::SourceLoc loc{"<dump>", 0, 0};
    program.commands.push_back(
        dsl::SaveCmd{path, dsl::Expr::ident(ident, loc), loc});
  }

  dsl::Expansion ex = dsl::expand(program, bindings);
  dsl::EvalResult result = dsl::evaluate(ex.graph, ex.loads, cfg.eval);
  if (cfg.log) {
    for (const auto& fx : result.effects) {
      std::ostringstream line;
      line << "[" << fmt6(fx.millis) << "ms] ";
      if (fx.kind == dsl::RootAction::Kind::Save) {
        line << "save " << fx.target;
      } else {
        line << "print " << fx.printed;
      }
      cfg.log(line.str());
    }
  }
  return result;
}

CaseResult run_single(const RunConfig& cfg, const std::string& name) {
  CaseResult out;
  out.name = name;

  RunConfig local = cfg;
  local.bindings.define("NAME", name);

  const auto start = std::chrono::steady_clock::now();
  try {
    const dsl::EvalResult result = run_script(local);
    for (const auto& fx : result.effects) {
      if (fx.kind != dsl::RootAction::Kind::Print) continue;
      const auto eq = fx.printed.find('=');
      if (eq != std::string::npos && fx.printed.find("DICE") != std::string::npos) {
        out.printed_dice = std::strtod(fx.printed.c_str() + eq + 1, nullptr);
      }
    }

    // The report metrics come from the saved mask itself, not from the
    // script's log.
    const std::string mask_path = cfg.output_dir + "/" + name + cfg.mask_suffix;
    const std::string* input_dir = local.bindings.lookup("INPUTDIR");
    if (!input_dir) throw std::runtime_error("INPUTDIR is not bound");
    const std::string truth_path = *input_dir + "/" + name + cfg.truth_suffix;
    const BoolImage pred = load_mask(mask_path);
    const BoolImage truth = load_mask(truth_path);
    out.metrics = compute_metrics(pred, truth);
    out.status.kind = CaseStatus::Kind::Ok;
  } catch (const std::exception& e) {
    out.status.kind = CaseStatus::Kind::Error;
    out.status.detail = e.what();
  }
  if (cfg.real_timing) {
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                start)
                      .count();
  }
  return out;
}

BatchResult run_batch(const std::string& dataset_dir, const RunConfig& cfg,
                      const std::vector<std::string>& skip_names) {
  std::vector<std::string> names;
  {
    std::error_code ec;
    if (!fs::is_directory(dataset_dir, ec)) {
      throw std::runtime_error("dataset directory not found: " + dataset_dir);
    }
    for (const auto& entry : fs::directory_iterator(dataset_dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string fname = entry.path().filename().string();
      if (fname.size() <= 4 || fname.substr(fname.size() - 4) != ".png") continue;
      const std::string stem = fname.substr(0, fname.size() - 4);
      const std::string& suffix = cfg.truth_suffix;
      if (fname.size() >= suffix.size() &&
          fname.compare(fname.size() - suffix.size(), suffix.size(), suffix) == 0) {
        continue;  // a ground-truth file, not a case
      }
      if (fs::exists(entry.path().parent_path() / (stem + suffix))) {
        names.push_back(stem);
      }
    }
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) {
    throw std::runtime_error("no <NAME>.png / <NAME>" + cfg.truth_suffix +
                             " pairs in " + dataset_dir);
  }

  const std::set<std::string> skip(skip_names.begin(), skip_names.end());
  RunConfig local = cfg;
  if (!local.bindings.defined("INPUTDIR")) {
    local.bindings.define("INPUTDIR", dataset_dir);
  }

  BatchResult out;
  for (const auto& name : names) {
    if (skip.count(name)) {
      CaseResult r;
      r.name = name;
      r.status = {CaseStatus::Kind::Skipped, "skip-list"};
      out.cases.push_back(std::move(r));
      continue;
    }
    out.cases.push_back(run_single(local, name));
    if (cfg.log) {
      const CaseResult& r = out.cases.back();
      cfg.log("case " + r.name + ": " + r.status.str() +
              (r.status.kind == CaseStatus::Kind::Ok
                   ? " dice=" + fmt6(r.metrics.dice)
                   : ""));
    }
  }
  out.report = aggregate(out.cases);
  return out;
}

std::string format_csv(const std::vector<CaseResult>& cases) {
  std::string out =
      "name,tp,tn,fp,fn,dice,jaccard,sensitivity,specificity,accuracy,seconds,status\n";
  for (const auto& c : cases) {
    out += csv_field(c.name);
    out += ',';
    if (c.status.kind == CaseStatus::Kind::Ok) {
      const MetricsRecord& m = c.metrics;
      out += std::to_string(m.tp) + "," + std::to_string(m.tn) + "," +
             std::to_string(m.fp) + "," + std::to_string(m.fn) + "," +
             fmt6(m.dice) + "," + fmt6(m.jaccard) + "," + fmt6(m.sensitivity) +
             "," + fmt6(m.specificity) + "," + fmt6(m.accuracy);
    } else {
      out += ",,,,,,,,";
    }
    out += "," + fmt6(c.seconds) + "," + csv_field(c.status.str()) + "\n";
  }
  return out;
}

AggregateReport aggregate(const std::vector<CaseResult>& cases) {
  AggregateReport r;
  for (const auto& c : cases) {
    switch (c.status.kind) {
      case CaseStatus::Kind::Skipped: ++r.skipped_cases; continue;
      case CaseStatus::Kind::Error: ++r.error_cases; continue;
      case CaseStatus::Kind::Ok: break;
    }
    ++r.ok_cases;
    const MetricsRecord& m = c.metrics;
    r.mean_dice += m.dice;
    r.mean_jaccard += m.jaccard;
    r.mean_sensitivity += m.sensitivity;
    r.mean_specificity += m.specificity;
    r.mean_accuracy += m.accuracy;
    if (m.dice > 0.9) ++r.dice_gt_09;
    if (m.dice > 0.8) ++r.dice_gt_08;
    if (m.dice > 0.7) ++r.dice_gt_07;
    if (m.dice < 0.5) ++r.dice_lt_05;
    if (m.dice == 0.0) ++r.dice_eq_0;
  }
  if (r.ok_cases > 0) {
    const double n = static_cast<double>(r.ok_cases);
    r.mean_dice /= n;
    r.mean_jaccard /= n;
    r.mean_sensitivity /= n;
    r.mean_specificity /= n;
    r.mean_accuracy /= n;
  }
  return r;
}

std::string format_report(const AggregateReport& r) {
  std::ostringstream out;
  out << "cases: " << r.ok_cases << " ok, " << r.error_cases << " error, "
      << r.skipped_cases << " skipped\n";
  out << "mean accuracy    " << fmt6(r.mean_accuracy) << "\n";
  out << "mean dice        " << fmt6(r.mean_dice) << "\n";
  out << "mean jaccard     " << fmt6(r.mean_jaccard) << "\n";
  out << "mean sensitivity " << fmt6(r.mean_sensitivity) << "\n";
  out << "mean specificity " << fmt6(r.mean_specificity) << "\n";
  const double n = r.ok_cases > 0 ? static_cast<double>(r.ok_cases) : 1.0;
  auto bin = [&](const char* label, std::size_t count) {
    out << label << " " << count << " " << fmt6(static_cast<double>(count) / n)
        << "\n";
  };
  bin("Dice > 0.9", r.dice_gt_09);
  bin("Dice > 0.8", r.dice_gt_08);
  bin("Dice > 0.7", r.dice_gt_07);
  bin("Dice < 0.5", r.dice_lt_05);
  bin("Dice = 0  ", r.dice_eq_0);
  return out.str();
}

std::vector<std::string> read_skip_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open skip-list: " + path);
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t start = 0;
    while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
    if (start > 0) line.erase(0, start);
    if (!line.empty()) names.push_back(line);
  }
  return names;
}

}  // namespace imgql::harness

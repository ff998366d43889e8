#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "imgql/dsl/eval.hpp"
#include "imgql/dsl/vars.hpp"
#include "imgql/metrics.hpp"

namespace imgql::harness {

struct CaseStatus {
  enum class Kind { Ok, Skipped, Error };
  Kind kind = Kind::Ok;
  std::string detail;  // skip reason or error message

  std::string str() const;
};

struct CaseResult {
  std::string name;
  MetricsRecord metrics;  // meaningful only when status is Ok
  std::optional<double> printed_dice;  // the script's own DICE print, if any
  double seconds = 0.0;
  CaseStatus status;
};

// Cumulative Dice bins plus means of the five indexes over ok cases.
struct AggregateReport {
  std::size_t ok_cases = 0;
  std::size_t error_cases = 0;
  std::size_t skipped_cases = 0;
  double mean_dice = 0, mean_jaccard = 0, mean_sensitivity = 0,
         mean_specificity = 0, mean_accuracy = 0;
  std::size_t dice_gt_09 = 0, dice_gt_08 = 0, dice_gt_07 = 0;
  std::size_t dice_lt_05 = 0, dice_eq_0 = 0;
};

struct RunConfig {
  std::string spec = "nevus_v0.imgql";  // path on disk, or an embedded name
  std::string stdlib_dir;
  std::string output_dir = ".";
  dsl::Bindings bindings;
  dsl::EvalOptions eval;
  bool real_timing = true;              // false writes 0 to the seconds column
  std::vector<std::string> dump;        // extra identifiers to save as PNGs
  std::string mask_suffix = "_nevSegV0.png";
  std::string truth_suffix = "_seg_RGB.png";
  std::function<void(const std::string&)> log;  // optional progress sink
};

// Executes the script once; the output directory is exposed to the
// script as $OUTPUTDIR. Returns the side effects (saves and prints).
dsl::EvalResult run_script(const RunConfig& cfg);

// Executes the script for one named case and recomputes the similarity
// indexes from the saved mask against the ground truth (independent of
// the script's own prints). Script failures land in the status instead
// of propagating.
CaseResult run_single(const RunConfig& cfg, const std::string& name);

struct BatchResult {
  std::vector<CaseResult> cases;  // lexicographic by name
  AggregateReport report;
};

// Runs every <NAME>.png / <NAME><truth_suffix> pair in the dataset
// directory. Throws if the directory holds no pairs at all.
BatchResult run_batch(const std::string& dataset_dir, const RunConfig& cfg,
                      const std::vector<std::string>& skip_names = {});

// One line per case: name,tp,tn,fp,fn,dice,jaccard,sensitivity,
// specificity,accuracy,seconds,status. Metrics fields are empty for
// cases that did not finish.
std::string format_csv(const std::vector<CaseResult>& cases);

AggregateReport aggregate(const std::vector<CaseResult>& cases);

std::string format_report(const AggregateReport& r);

// Names parsed from a skip-list file: one name per line, '#' comments.
std::vector<std::string> read_skip_list(const std::string& path);

}  // namespace imgql::harness

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "imgql/harness/runner.hpp"

namespace {

struct CommonFlags {
  std::vector<std::string> defines;
  std::string output = ".";
  std::string stdlib_dir;
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  int adjacency = 8;
  std::string intensity = "rec601";
  bool oracle_texture = false;
  bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--define", f.defines, "Bind a $VARIABLE as KEY=VALUE (repeatable)");
  cmd->add_option("--output", f.output, "Output directory, exposed as $OUTPUTDIR");
  cmd->add_option("--stdlib", f.stdlib_dir, "Extra directory searched by import");
  cmd->add_option("--threads", f.threads,
                  "Worker threads for evaluation (results do not depend on this)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--adjacency", f.adjacency, "Voxel adjacency: 4 or 8")
      ->check(CLI::IsMember({4, 8}));
  cmd->add_option("--intensity", f.intensity, "Luminance formula")
      ->check(CLI::IsMember({"rec601", "mean"}));
  cmd->add_flag("--oracle-texture", f.oracle_texture,
                "Use the naive per-voxel cross-correlation path");
  cmd->add_flag("--no-timing", f.no_timing,
                "Write 0 instead of wall-clock seconds (reproducible output)");
}

imgql::harness::RunConfig make_config(const CommonFlags& f) {
  imgql::harness::RunConfig cfg;
  cfg.output_dir = f.output;
  cfg.stdlib_dir = f.stdlib_dir;
  cfg.eval.threads = f.threads;
  cfg.eval.adjacency = f.adjacency == 4 ? imgql::Adjacency::Orthogonal
                                        : imgql::Adjacency::Orthodiagonal;
  cfg.eval.intensity = f.intensity == "mean" ? imgql::IntensityMode::Mean
                                             : imgql::IntensityMode::Rec601;
  cfg.eval.oracle_texture = f.oracle_texture;
  cfg.real_timing = !f.no_timing;
  cfg.log = [](const std::string& line) { std::cerr << line << "\n"; };
  for (const auto& kv : f.defines) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("--define expects KEY=VALUE, got '" + kv + "'");
    }
    cfg.bindings.define(kv.substr(0, eq), kv.substr(eq + 1));
  }
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spatial model checker for 2D images"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute one script");
  std::string run_spec;
  CommonFlags run_flags;
  std::vector<std::string> dump;
  run->add_option("spec", run_spec, "Script file (or an embedded name like nevus_v0.imgql)")
      ->required();
  add_common(run, run_flags);
  run->add_option("--dump", dump,
                  "Also save this declared identifier as <output>/<name>.png (repeatable)");

  // batch
  auto* batch = app.add_subcommand("batch", "Run a script over a dataset of image pairs");
  std::string dataset;
  std::string batch_spec = "nevus_v0.imgql";
  std::string skip_list;
  CommonFlags batch_flags;
  batch->add_option("dataset", dataset, "Directory of <NAME>.png / <NAME>_seg_RGB.png pairs")
      ->required();
  batch->add_option("--spec", batch_spec, "Script to run per case (default: embedded nevus_v0.imgql)");
  batch->add_option("--skip-list", skip_list, "File of case names to skip, one per line");
  add_common(batch, batch_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      imgql::harness::RunConfig cfg = make_config(run_flags);
      cfg.spec = run_spec;
      cfg.dump = dump;
      const imgql::dsl::EvalResult result = imgql::harness::run_script(cfg);
      for (const auto& fx : result.effects) {
        if (fx.kind == imgql::dsl::RootAction::Kind::Print) {
          std::cout << fx.printed << "\n";
        }
      }
      return 0;
    }

    imgql::harness::RunConfig cfg = make_config(batch_flags);
    cfg.spec = batch_spec;
    std::vector<std::string> skip;
    if (!skip_list.empty()) skip = imgql::harness::read_skip_list(skip_list);
    const imgql::harness::BatchResult result =
        imgql::harness::run_batch(dataset, cfg, skip);

    const std::string csv = imgql::harness::format_csv(result.cases);
    const std::string report = imgql::harness::format_report(result.report);
    {
      std::ofstream out(cfg.output_dir + "/results.csv", std::ios::binary);
      out << csv;
    }
    {
      std::ofstream out(cfg.output_dir + "/report.txt", std::ios::binary);
      out << report;
    }
    std::cout << report;
    return result.report.error_cases == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// lef: simulate label errors in detection/segmentation datasets, render the
// masks and input tensors a label-error detector consumes, and score
// label-error proposals against a label-error ground truth.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lef/pipeline.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string preset;
  std::string dataset_path;
  std::string dataset_format;
  std::string images_dir;
  std::string predictions_path;
  std::string legt_path;
  std::string out_dir;
  std::string style;
  std::string shape_mode;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<double> rate;
  std::optional<int> copies;
  std::optional<double> score_threshold;
  std::optional<double> iou_threshold;
  std::optional<double> min_size;
  std::optional<double> nms_threshold;
  bool real_mode = false;
  bool no_diff = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON run configuration");
  cmd->add_option("--preset", flags.preset,
                  "parameter preset: cityscapes|ade20k|voc|coco|livecell");
  cmd->add_option("--dataset", flags.dataset_path, "annotation file or directory");
  cmd->add_option("--format", flags.dataset_format, "dataset format: coco|voc|cityscapes");
  cmd->add_option("--images-dir", flags.images_dir, "directory with the RGB images");
  cmd->add_option("--predictions", flags.predictions_path,
                  "reference predictions / proposals (COCO results JSON)");
  cmd->add_option("--legt", flags.legt_path, "label error ground truth JSON");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--style", flags.style, "render style: semantic|instance|hsv");
  cmd->add_option("--shape", flags.shape_mode, "spawn shape: rectangle|polygon");
  cmd->add_option("--seed", flags.seed, "perturbation seed");
  cmd->add_option("--workers", flags.workers, "worker thread count");
  cmd->add_option("-q,--rate", flags.rate, "perturbation rate q");
  cmd->add_option("--copies", flags.copies, "number of perturbed dataset copies t");
  cmd->add_option("--score-threshold", flags.score_threshold,
                  "evaluation score threshold");
  cmd->add_option("--iou-threshold", flags.iou_threshold, "evaluation IoU threshold");
  cmd->add_option("--min-size", flags.min_size, "minimum object size in pixels");
  cmd->add_option("--nms-threshold", flags.nms_threshold,
                  "NMS IoU threshold for prediction cleanup");
  cmd->add_flag("--real", flags.real_mode,
                "inspect original labels (gt replaces the perturbed mask)");
  cmd->add_flag("--no-diff", flags.no_diff, "stack without the difference mask");
}

lef::RunConfig build_config(const CommonFlags& flags) {
  lef::RunConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = lef::run_config_from_json(
        lef::parse_json(lef::read_file_bytes(flags.config_path), flags.config_path),
        flags.config_path);
  }
  if (!flags.preset.empty()) lef::apply_preset(cfg, flags.preset);
  if (!flags.dataset_path.empty()) cfg.dataset.path = flags.dataset_path;
  if (!flags.dataset_format.empty()) {
    cfg.dataset.format = lef::dataset_format_from_string(flags.dataset_format);
  }
  if (!flags.images_dir.empty()) cfg.dataset.images_dir = flags.images_dir;
  if (!flags.predictions_path.empty()) cfg.predictions_path = flags.predictions_path;
  if (!flags.legt_path.empty()) cfg.legt_path = flags.legt_path;
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (!flags.style.empty()) cfg.render_style = lef::render_style_from_string(flags.style);
  if (!flags.shape_mode.empty()) {
    cfg.perturbation.spawn_shape = lef::spawn_shape_from_string(flags.shape_mode);
  }
  if (flags.seed) cfg.perturbation.seed = *flags.seed;
  if (flags.workers) {
    if (*flags.workers < 1) throw lef::ConfigError("workers must be >= 1");
    cfg.workers = *flags.workers;
  }
  if (flags.rate) cfg.perturbation.rate = *flags.rate;
  if (flags.copies) cfg.perturbation.copies = *flags.copies;
  if (flags.score_threshold) cfg.eval.score_threshold = *flags.score_threshold;
  if (flags.iou_threshold) cfg.eval.iou_threshold = *flags.iou_threshold;
  if (flags.min_size) cfg.eval.min_size_px = *flags.min_size;
  if (flags.nms_threshold) cfg.prediction_options.nms_iou = *flags.nms_threshold;
  if (flags.real_mode) cfg.real_mode = true;
  if (flags.no_diff) cfg.use_diff = false;
  return cfg;
}

int cmd_perturb(const CommonFlags& flags) {
  const lef::RunConfig cfg = build_config(flags);
  lef::OutputTracker outputs;
  const lef::PerturbSummary summary = lef::run_perturb(cfg, outputs);
  outputs.commit();
  std::printf("images:   %lld\n", static_cast<long long>(summary.images));
  std::printf("objects:  %lld\n", static_cast<long long>(summary.objects));
  std::printf("eligible: %lld\n", static_cast<long long>(summary.eligible));
  for (const auto& [type, count] : summary.errors_by_type) {
    std::printf("%-6s errors: %lld\n", lef::to_string(type),
                static_cast<long long>(count));
  }
  std::printf("total errors: %lld over %d copies -> %s\n",
              static_cast<long long>(summary.total_errors), cfg.perturbation.copies,
              cfg.out_dir.c_str());
  return 0;
}

int cmd_render(const CommonFlags& flags) {
  const lef::RunConfig cfg = build_config(flags);
  lef::OutputTracker outputs;
  const std::size_t count = lef::run_render(cfg, outputs);
  outputs.commit();
  std::printf("wrote %zu %s masks to %s\n", count, lef::to_string(cfg.render_style),
              cfg.out_dir.c_str());
  return 0;
}

int cmd_stack(const CommonFlags& flags) {
  const lef::RunConfig cfg = build_config(flags);
  lef::OutputTracker outputs;
  const std::size_t count = lef::run_stack(cfg, outputs);
  outputs.commit();
  std::printf("wrote %zu input tensors (%d channels) to %s\n", count,
              cfg.use_diff ? 12 : 9, cfg.out_dir.c_str());
  return 0;
}

int cmd_eval(const CommonFlags& flags) {
  const lef::RunConfig cfg = build_config(flags);
  lef::OutputTracker outputs;
  std::string table;
  lef::run_eval(cfg, outputs, &table);
  outputs.commit();
  std::fputs(table.c_str(), stdout);
  return 0;
}

int cmd_baseline(const CommonFlags& flags, const std::string& kind) {
  const lef::RunConfig cfg = build_config(flags);
  lef::OutputTracker outputs;
  std::string table;
  lef::run_baseline(cfg, kind == "score", outputs, &table);
  outputs.commit();
  if (!table.empty()) {
    std::fputs(table.c_str(), stdout);
  } else {
    std::printf("proposals written to %s\n", cfg.out_dir.c_str());
  }
  return 0;
}

int cmd_stats(const CommonFlags& flags) {
  const lef::RunConfig cfg = build_config(flags);
  std::printf("%s\n", lef::run_stats(cfg).dump(2).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"label error simulation and evaluation toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string baseline_kind;

  CLI::App* perturb = app.add_subcommand(
      "perturb", "inject drop/flip/spawn errors and write perturbed copies + LEGT");
  CLI::App* render = app.add_subcommand(
      "render", "rasterize annotations or predictions to color masks");
  CLI::App* stack = app.add_subcommand(
      "stack", "build normalized detector input tensors");
  CLI::App* eval = app.add_subcommand(
      "eval", "score label-error proposals against a LEGT");
  CLI::App* baseline = app.add_subcommand(
      "baseline", "derive naive/score baseline proposals from reference predictions");
  CLI::App* stats = app.add_subcommand("stats", "dataset and eligibility summary");

  for (CLI::App* cmd : {perturb, render, stack, eval, baseline, stats}) {
    add_common_flags(cmd, flags);
  }
  baseline->add_option("kind", baseline_kind, "baseline kind: naive|score")
      ->required()
      ->check(CLI::IsMember({"naive", "score"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (perturb->parsed()) return cmd_perturb(flags);
    if (render->parsed()) return cmd_render(flags);
    if (stack->parsed()) return cmd_stack(flags);
    if (eval->parsed()) return cmd_eval(flags);
    if (baseline->parsed()) return cmd_baseline(flags, baseline_kind);
    if (stats->parsed()) return cmd_stats(flags);
  } catch (const std::exception& e) {
    std::cerr << "lef: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

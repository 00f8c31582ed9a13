#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lef/dataset.hpp"
#include "lef/error.hpp"
#include "lef/eval.hpp"
#include "lef/formats/cityscapes.hpp"
#include "lef/formats/coco.hpp"
#include "lef/formats/image_io.hpp"
#include "lef/formats/json_util.hpp"
#include "lef/formats/legt.hpp"
#include "lef/formats/predictions.hpp"
#include "lef/formats/report.hpp"
#include "lef/formats/tensor_io.hpp"
#include "lef/formats/voc.hpp"
#include "lef/log.hpp"
#include "lef/parallel.hpp"
#include "lef/perturb.hpp"
#include "lef/raster.hpp"
#include "lef/tensor.hpp"

namespace lef {

enum class RenderStyle { semantic, instance, hsv };

inline RenderStyle render_style_from_string(const std::string& s) {
  if (s == "semantic") return RenderStyle::semantic;
  if (s == "instance") return RenderStyle::instance;
  if (s == "hsv") return RenderStyle::hsv;
  throw ConfigError("unknown render style '" + s + "'");
}

inline const char* to_string(RenderStyle s) {
  switch (s) {
    case RenderStyle::semantic: return "semantic";
    case RenderStyle::instance: return "instance";
    case RenderStyle::hsv: return "hsv";
  }
  return "?";
}

struct DatasetConfig {
  DatasetFormat format = DatasetFormat::coco;
  std::string path;        // annotation file (coco) or directory (voc, cityscapes)
  std::string images_dir;  // photos for the stack command
};

struct RunConfig {
  DatasetConfig dataset;
  PerturbationConfig perturbation;
  RenderStyle render_style = RenderStyle::semantic;
  std::uint64_t instance_seed = 0;
  bool use_diff = true;
  bool real_mode = false;  // inspect original labels: gt takes the pert slot
  EvalConfig eval;
  std::string predictions_path;
  PredictionReadOptions prediction_options;
  std::string legt_path;
  std::string out_dir = "out";
  int workers = 1;
};

// Per-dataset parameter sets; flags and config files override preset values.
inline void apply_preset(RunConfig& cfg, const std::string& name) {
  PerturbationConfig& p = cfg.perturbation;
  if (name == "cityscapes") {
    cfg.dataset.format = DatasetFormat::cityscapes;
    p.rate = 0.2;
    p.copies = 10;
    p.bounds = {800.0, 10000.0};
    p.spawn_shape = SpawnShape::polygon;
    p.radius_min = 10;
    p.radius_max = 80;
    p.irregularity = 0.35;
    p.spikeness = 0.2;
    cfg.render_style = RenderStyle::semantic;
    cfg.use_diff = true;
  } else if (name == "ade20k") {
    cfg.dataset.format = DatasetFormat::coco;
    p.rate = 0.2;
    p.copies = 2;
    p.bounds = {200.0, 10000.0};
    p.spawn_shape = SpawnShape::polygon;
    p.radius_min = 10;
    p.radius_max = 30;
    p.irregularity = 0.35;
    p.spikeness = 0.05;
    cfg.render_style = RenderStyle::semantic;
    cfg.use_diff = true;
  } else if (name == "voc") {
    cfg.dataset.format = DatasetFormat::voc;
    p.rate = 0.2;
    p.copies = 10;
    p.bounds = {};  // no size restriction
    p.spawn_shape = SpawnShape::rectangle;
    cfg.render_style = RenderStyle::hsv;
    cfg.use_diff = true;
    cfg.prediction_options.nms_iou = 0.7;
  } else if (name == "coco") {
    cfg.dataset.format = DatasetFormat::coco;
    p.rate = 0.2;
    p.copies = 2;
    p.bounds = {};
    p.spawn_shape = SpawnShape::rectangle;
    cfg.render_style = RenderStyle::hsv;
    cfg.use_diff = true;
    cfg.prediction_options.score_floor = 0.3;
  } else if (name == "livecell") {
    cfg.dataset.format = DatasetFormat::coco;
    p.rate = 0.1;
    p.copies = 1;
    p.bounds = {200.0, 10000.0};
    p.error_types = {ErrorType::drop, ErrorType::spawn};  // single-class dataset
    p.spawn_shape = SpawnShape::polygon;
    p.radius_min = 10;
    p.radius_max = 30;
    p.irregularity = 0.35;
    p.spikeness = 0.05;
    cfg.render_style = RenderStyle::instance;
    cfg.use_diff = false;  // trained without a difference mask
    cfg.prediction_options.score_floor = 0.1;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
}

inline RunConfig run_config_from_json(const Json& root, const std::string& path) {
  RunConfig cfg;
  if (root.contains("preset")) apply_preset(cfg, root["preset"].get<std::string>());
  if (root.contains("dataset")) {
    const Json& d = root["dataset"];
    if (d.contains("format")) {
      cfg.dataset.format = dataset_format_from_string(d["format"].get<std::string>());
    }
    if (d.contains("path")) cfg.dataset.path = d["path"].get<std::string>();
    if (d.contains("images_dir")) cfg.dataset.images_dir = d["images_dir"].get<std::string>();
  }
  if (root.contains("perturbation")) {
    const Json& p = root["perturbation"];
    PerturbationConfig& out = cfg.perturbation;
    if (p.contains("q")) out.rate = p["q"].get<double>();
    if (p.contains("copies")) out.copies = p["copies"].get<int>();
    if (p.contains("seed")) out.seed = p["seed"].get<std::uint64_t>();
    if (p.contains("error_types")) {
      out.error_types.clear();
      for (const auto& t : p["error_types"]) {
        out.error_types.push_back(error_type_from_string(t.get<std::string>()));
      }
    }
    if (p.contains("shape_mode")) {
      out.spawn_shape = spawn_shape_from_string(p["shape_mode"].get<std::string>());
    }
    if (p.contains("area_min")) {
      out.bounds.min_px = p["area_min"].is_null()
                              ? std::nullopt
                              : std::optional<double>(p["area_min"].get<double>());
    }
    if (p.contains("area_max")) {
      out.bounds.max_px = p["area_max"].is_null()
                              ? std::nullopt
                              : std::optional<double>(p["area_max"].get<double>());
    }
    if (p.contains("radius_min")) out.radius_min = p["radius_min"].get<int>();
    if (p.contains("radius_max")) out.radius_max = p["radius_max"].get<int>();
    if (p.contains("irregularity")) out.irregularity = p["irregularity"].get<double>();
    if (p.contains("spikeness")) out.spikeness = p["spikeness"].get<double>();
    if (p.contains("max_vertices")) out.max_vertices = p["max_vertices"].get<int>();
  }
  if (root.contains("render")) {
    const Json& r = root["render"];
    if (r.contains("style")) {
      cfg.render_style = render_style_from_string(r["style"].get<std::string>());
    }
    if (r.contains("instance_seed")) {
      cfg.instance_seed = r["instance_seed"].get<std::uint64_t>();
    }
  }
  if (root.contains("use_diff")) cfg.use_diff = root["use_diff"].get<bool>();
  if (root.contains("real_mode")) cfg.real_mode = root["real_mode"].get<bool>();
  if (root.contains("eval")) {
    const Json& e = root["eval"];
    if (e.contains("iou_threshold")) cfg.eval.iou_threshold = e["iou_threshold"].get<double>();
    if (e.contains("score_threshold")) {
      cfg.eval.score_threshold = e["score_threshold"].get<double>();
    }
    if (e.contains("min_size") && !e["min_size"].is_null()) {
      cfg.eval.min_size_px = e["min_size"].get<double>();
    }
    if (e.contains("max_detections") && !e["max_detections"].is_null()) {
      cfg.eval.max_detections = e["max_detections"].get<int>();
    }
  }
  if (root.contains("predictions")) {
    const Json& p = root["predictions"];
    if (p.contains("path")) cfg.predictions_path = p["path"].get<std::string>();
    if (p.contains("nms_iou") && !p["nms_iou"].is_null()) {
      cfg.prediction_options.nms_iou = p["nms_iou"].get<double>();
    }
    if (p.contains("score_floor") && !p["score_floor"].is_null()) {
      cfg.prediction_options.score_floor = p["score_floor"].get<double>();
    }
  }
  if (root.contains("legt")) cfg.legt_path = root["legt"].get<std::string>();
  if (root.contains("out")) cfg.out_dir = root["out"].get<std::string>();
  if (root.contains("workers")) cfg.workers = root["workers"].get<int>();
  if (cfg.workers < 1) throw ConfigError(path + ": workers must be >= 1");
  return cfg;
}

// ---------------------------------------------------------------------------
// dataset loading

namespace detail {

inline std::vector<std::filesystem::path> sorted_files_with_suffix(
    const std::filesystem::path& dir, const std::string& suffix) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() >= suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace detail

inline DatasetDocument load_dataset(const DatasetConfig& cfg) {
  if (cfg.path.empty()) throw ConfigError("dataset path is not set");
  const std::filesystem::path path(cfg.path);
  if (!std::filesystem::exists(path)) {
    throw IoError(cfg.path, "dataset path does not exist");
  }

  if (cfg.format == DatasetFormat::coco) {
    return parse_coco(read_file_bytes(cfg.path), cfg.path);
  }

  DatasetDocument doc;
  doc.format = cfg.format;
  doc.source_path = cfg.path;
  doc.classes = cfg.format == DatasetFormat::voc ? voc_class_table()
                                                 : cityscapes_class_table();
  const std::string suffix =
      cfg.format == DatasetFormat::voc ? ".xml" : "_polygons.json";
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    files = detail::sorted_files_with_suffix(path, suffix);
  } else {
    files = {path};
  }
  if (files.empty()) {
    throw IoError(cfg.path, "no " + suffix + " files found");
  }
  for (const auto& file : files) {
    GroundTruth truth =
        cfg.format == DatasetFormat::voc
            ? parse_voc_xml(read_file_bytes(file.string()), doc.classes, file.string())
            : parse_cityscapes(read_file_bytes(file.string()), doc.classes,
                               file.string());
    ImageRecord rec;
    rec.id = truth.image_id;
    rec.size = truth.size;
    rec.file_name = std::filesystem::is_directory(path)
                        ? std::filesystem::relative(file, path).string()
                        : file.filename().string();
    doc.images.push_back(std::move(rec));
    doc.truths.push_back(std::move(truth));
  }
  doc.validate();
  return doc;
}

// ---------------------------------------------------------------------------
// output tracking: partial outputs are removed when a command fails

class OutputTracker {
 public:
  ~OutputTracker() {
    if (committed_) return;
    for (const auto& path : paths_) {
      std::error_code ec;
      std::filesystem::remove(path, ec);
    }
  }

  void write(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    {
      std::lock_guard<std::mutex> lock(mu_);
      paths_.push_back(path);
    }
    write_file_bytes(path.string(), bytes);
  }

  void track(const std::filesystem::path& path) {
    std::lock_guard<std::mutex> lock(mu_);
    paths_.push_back(path);
  }

  void commit() { committed_ = true; }

 private:
  std::vector<std::filesystem::path> paths_;
  std::mutex mu_;
  bool committed_ = false;
};

// ---------------------------------------------------------------------------
// perturb

struct PerturbSummary {
  std::int64_t images = 0;
  std::int64_t objects = 0;
  std::int64_t eligible = 0;
  std::map<ErrorType, std::int64_t> errors_by_type;  // over all copies
  std::int64_t total_errors = 0;
};

inline LegtDocument make_legt_document(const DatasetDocument& doc,
                                       std::vector<std::vector<LabelErrorRecord>> per_image,
                                       const PerturbationConfig& cfg, int copy_index) {
  LegtDocument legt;
  for (const ClassInfo& c : doc.classes.classes()) {
    legt.categories.emplace_back(c.source_id, c.name);
  }
  legt.images = doc.images;
  legt.per_image = std::move(per_image);
  legt.config = cfg;
  legt.copy_index = copy_index;
  return legt;
}

inline void write_perturbed_copy(const DatasetDocument& original,
                                 const std::vector<PerturbedImage>& results,
                                 const PerturbationConfig& cfg, int copy_index,
                                 const std::filesystem::path& copy_dir,
                                 OutputTracker& outputs) {
  DatasetDocument pert = original;
  std::vector<std::vector<LabelErrorRecord>> legt_per_image(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    pert.truths[i] = results[i].perturbed;
    legt_per_image[i] = results[i].errors;
  }

  if (original.format == DatasetFormat::coco) {
    outputs.write(copy_dir / "annotations.json", write_coco(pert));
  } else {
    for (std::size_t i = 0; i < pert.truths.size(); ++i) {
      const std::filesystem::path rel = original.images[i].file_name.empty()
                                            ? original.images[i].id + ".out"
                                            : original.images[i].file_name;
      const std::string bytes =
          original.format == DatasetFormat::voc
              ? write_voc_xml(pert.truths[i], pert.classes)
              : write_cityscapes(pert.truths[i], pert.classes);
      outputs.write(copy_dir / rel, bytes);
    }
  }
  outputs.write(copy_dir / "legt.json",
                write_legt(make_legt_document(original, std::move(legt_per_image),
                                              cfg, copy_index)));
}

inline PerturbSummary run_perturb(const RunConfig& cfg, OutputTracker& outputs) {
  const DatasetDocument doc = load_dataset(cfg.dataset);
  const PerturbationConfig& pcfg = cfg.perturbation;
  pcfg.validate(doc.classes);
  for (const ImageRecord& rec : doc.images) {
    pcfg.validate_image_size(rec.size, rec.id);
  }

  PerturbSummary summary;
  summary.images = static_cast<std::int64_t>(doc.images.size());
  for (const GroundTruth& truth : doc.truths) {
    summary.objects += static_cast<std::int64_t>(truth.objects.size());
    for (const AnnotatedObject& obj : truth.objects) {
      if (is_perturbation_candidate(obj, doc.classes, pcfg)) ++summary.eligible;
    }
  }

  for (int copy = 0; copy < pcfg.copies; ++copy) {
    std::vector<PerturbedImage> results(doc.truths.size());
    parallel_for(doc.truths.size(), cfg.workers, [&](std::size_t i) {
      results[i] = perturb_image_copy(doc.truths[i], doc.classes, pcfg, copy);
    });
    char name[32];
    std::snprintf(name, sizeof(name), "copy_%03d", copy);
    write_perturbed_copy(doc, results, pcfg, copy, std::filesystem::path(cfg.out_dir) / name,
                         outputs);
    for (const PerturbedImage& result : results) {
      for (const LabelErrorRecord& rec : result.errors) {
        ++summary.errors_by_type[rec.error_type];
        ++summary.total_errors;
      }
    }
  }
  return summary;
}

// ---------------------------------------------------------------------------
// render

inline RasterMask render_truth(const GroundTruth& truth, const ClassTable& classes,
                               RenderStyle style, std::uint64_t instance_seed) {
  switch (style) {
    case RenderStyle::semantic: return render_semantic(truth, classes);
    case RenderStyle::instance:
      return render_instance(truth,
                             RngStream(instance_seed).derive(truth.image_id).key());
    case RenderStyle::hsv: return render_boxes_hsv(truth, classes);
  }
  throw Error("unreachable render style");
}

inline std::unordered_map<std::string, std::vector<Prediction>> group_predictions(
    const std::vector<Prediction>& preds) {
  std::unordered_map<std::string, std::vector<Prediction>> by_image;
  for (const Prediction& pred : preds) {
    by_image[pred.object.image_id].push_back(pred);
  }
  return by_image;
}

inline GroundTruth predictions_as_truth(const std::string& image_id, ImageSize size,
                                        const std::vector<Prediction>& preds) {
  GroundTruth truth;
  truth.image_id = image_id;
  truth.size = size;
  for (const Prediction& pred : preds) truth.objects.push_back(pred.object);
  return truth;
}

inline PredictionFile load_predictions(const RunConfig& cfg, const DatasetDocument& doc) {
  if (cfg.predictions_path.empty()) {
    throw ConfigError("predictions path is not set");
  }
  std::unordered_map<std::string, ImageSize> sizes;
  for (const ImageRecord& rec : doc.images) sizes[rec.id] = rec.size;
  return read_predictions(
      read_file_bytes(cfg.predictions_path), doc.classes,
      [&sizes](const std::string& id) -> std::optional<ImageSize> {
        const auto it = sizes.find(id);
        if (it == sizes.end()) return std::nullopt;
        return it->second;
      },
      cfg.prediction_options, cfg.predictions_path);
}

// Renders either the loaded annotations or, when a predictions path is set,
// the prediction masks for the same image universe.
inline std::size_t run_render(const RunConfig& cfg, OutputTracker& outputs) {
  const DatasetDocument doc = load_dataset(cfg.dataset);
  std::unordered_map<std::string, std::vector<Prediction>> preds;
  const bool from_predictions = !cfg.predictions_path.empty();
  if (from_predictions) {
    preds = group_predictions(load_predictions(cfg, doc).predictions);
  }
  const std::filesystem::path out(cfg.out_dir);
  std::filesystem::create_directories(out);
  parallel_for(doc.truths.size(), cfg.workers, [&](std::size_t i) {
    const GroundTruth& truth =
        doc.truths[i];
    const GroundTruth source =
        from_predictions
            ? predictions_as_truth(truth.image_id, truth.size,
                                   preds.count(truth.image_id)
                                       ? preds.at(truth.image_id)
                                       : std::vector<Prediction>{})
            : truth;
    const RasterMask mask =
        render_truth(source, doc.classes, cfg.render_style, cfg.instance_seed);
    const std::filesystem::path path = out / (truth.image_id + ".png");
    outputs.track(path);
    write_mask_png(mask, path.string());
  });
  return doc.truths.size();
}

// ---------------------------------------------------------------------------
// stack

namespace detail {

inline std::string find_photo(const std::string& images_dir, const ImageRecord& rec) {
  namespace fs = std::filesystem;
  const fs::path dir(images_dir);
  if (!rec.file_name.empty()) {
    const fs::path by_name = dir / fs::path(rec.file_name).filename();
    if (fs::exists(by_name)) return by_name.string();
  }
  for (const char* ext : {".png", ".jpg", ".jpeg"}) {
    const fs::path candidate = dir / (rec.id + ext);
    if (fs::exists(candidate)) return candidate.string();
  }
  throw IoError(images_dir, "no photo found for image '" + rec.id + "'");
}

}  // namespace detail

inline std::size_t run_stack(const RunConfig& cfg, OutputTracker& outputs) {
  if (cfg.dataset.images_dir.empty()) {
    throw ConfigError("stack needs dataset.images_dir for the photos");
  }
  const DatasetDocument doc = load_dataset(cfg.dataset);
  const auto preds = group_predictions(load_predictions(cfg, doc).predictions);
  const std::filesystem::path out(cfg.out_dir);
  std::filesystem::create_directories(out);
  static const std::vector<Prediction> kNoPredictions;

  parallel_for(doc.truths.size(), cfg.workers, [&](std::size_t i) {
    const GroundTruth& truth = doc.truths[i];
    const RasterMask photo = read_image(detail::find_photo(cfg.dataset.images_dir,
                                                           doc.images[i]));
    if (photo.width != truth.size.width || photo.height != truth.size.height) {
      throw Error("photo for '" + truth.image_id + "' is " +
                  std::to_string(photo.width) + "x" + std::to_string(photo.height) +
                  " but annotations say " + std::to_string(truth.size.width) + "x" +
                  std::to_string(truth.size.height));
    }
    const RasterMask truth_mask =
        render_truth(truth, doc.classes, cfg.render_style, cfg.instance_seed);
    const auto it = preds.find(truth.image_id);
    const RasterMask pred_mask = render_truth(
        predictions_as_truth(truth.image_id, truth.size,
                             it == preds.end() ? kNoPredictions : it->second),
        doc.classes, cfg.render_style, cfg.instance_seed);
    std::optional<RasterMask> diff;
    if (cfg.use_diff) diff = diff_mask(truth_mask, pred_mask);
    InputTensor tensor = stack_and_normalize(
        photo, truth_mask, pred_mask, diff ? &*diff : nullptr,
        cfg.real_mode ? TruthChannel::gt : TruthChannel::pert);
    tensor.image_id = truth.image_id;
    const std::filesystem::path path = out / (truth.image_id + ".f32");
    outputs.track(path);
    outputs.track(path.string() + ".json");
    write_tensor(tensor, path.string());
  });
  return doc.truths.size();
}

// ---------------------------------------------------------------------------
// eval

inline ClassTable class_table_from_legt(const LegtDocument& legt) {
  std::vector<std::string> names;
  std::vector<ClassInfo> classes;
  for (std::size_t i = 0; i < legt.categories.size(); ++i) {
    classes.push_back({static_cast<int>(i), legt.categories[i].second,
                       palette_color_for_class(static_cast<int>(i)),
                       legt.categories[i].first});
  }
  return ClassTable(std::move(classes));
}

inline std::vector<ImageEvalInput> assemble_eval_inputs(
    const LegtDocument& legt,
    const std::unordered_map<std::string, std::vector<Prediction>>& preds) {
  std::vector<ImageEvalInput> images;
  for (std::size_t i = 0; i < legt.images.size(); ++i) {
    ImageEvalInput input;
    input.image_id = legt.images[i].id;
    input.size = legt.images[i].size;
    input.errors = legt.per_image[i];
    const auto it = preds.find(input.image_id);
    if (it != preds.end()) input.predictions = it->second;
    images.push_back(std::move(input));
  }
  return images;
}

inline EvalReport run_eval(const RunConfig& cfg, OutputTracker& outputs,
                           std::string* table_out = nullptr) {
  if (cfg.legt_path.empty()) throw ConfigError("legt path is not set");
  if (cfg.predictions_path.empty()) throw ConfigError("predictions path is not set");
  cfg.eval.validate();

  const LegtDocument legt = read_legt(read_file_bytes(cfg.legt_path), cfg.legt_path);
  const ClassTable classes = class_table_from_legt(legt);
  std::unordered_map<std::string, ImageSize> sizes;
  for (const ImageRecord& rec : legt.images) sizes[rec.id] = rec.size;
  const PredictionFile file = read_predictions(
      read_file_bytes(cfg.predictions_path), classes,
      [&sizes](const std::string& id) -> std::optional<ImageSize> {
        const auto it = sizes.find(id);
        if (it == sizes.end()) return std::nullopt;
        return it->second;
      },
      cfg.prediction_options, cfg.predictions_path);

  const EvalReport report = evaluate_dataset(
      assemble_eval_inputs(legt, group_predictions(file.predictions)), cfg.eval,
      file.has_scores);

  const std::filesystem::path out(cfg.out_dir);
  outputs.write(out / "report.json", report_to_json(report).dump(2) + "\n");
  const std::string table = format_report_table({{"proposals", report}});
  outputs.write(out / "report.txt", table);
  if (table_out) *table_out = table;
  return report;
}

// ---------------------------------------------------------------------------
// baseline

inline EvalReport run_baseline(const RunConfig& cfg, bool scored,
                               OutputTracker& outputs, std::string* table_out = nullptr) {
  const DatasetDocument doc = load_dataset(cfg.dataset);
  const PredictionFile file = load_predictions(cfg, doc);
  if (scored && !file.has_scores) {
    throw ConfigError("score baseline needs scored predictions");
  }
  const auto by_image = group_predictions(file.predictions);

  std::vector<Prediction> proposals;
  for (std::size_t i = 0; i < doc.truths.size(); ++i) {
    const auto it = by_image.find(doc.images[i].id);
    if (it == by_image.end()) continue;
    if (scored) {
      for (Prediction& p : score_baseline(it->second, doc.truths[i])) {
        proposals.push_back(std::move(p));
      }
    } else {
      for (AnnotatedObject& obj : naive_baseline(it->second, doc.truths[i])) {
        proposals.push_back({std::move(obj), 1.0});
      }
    }
  }

  std::unordered_map<std::string, ImageRecord> records;
  for (const ImageRecord& rec : doc.images) records[rec.id] = rec;
  const std::filesystem::path out(cfg.out_dir);
  outputs.write(out / "proposals.json",
                write_predictions(
                    proposals, doc.classes,
                    [&records](const std::string& id) -> std::optional<ImageRecord> {
                      const auto it = records.find(id);
                      if (it == records.end()) return std::nullopt;
                      return it->second;
                    },
                    scored));

  EvalReport report;
  if (!cfg.legt_path.empty()) {
    const LegtDocument legt = read_legt(read_file_bytes(cfg.legt_path), cfg.legt_path);
    report = evaluate_dataset(
        assemble_eval_inputs(legt, group_predictions(proposals)), cfg.eval, scored);
    outputs.write(out / "report.json", report_to_json(report).dump(2) + "\n");
    const std::string table = format_report_table(
        {{scored ? "score baseline" : "naive baseline", report}});
    outputs.write(out / "report.txt", table);
    if (table_out) *table_out = table;
  }
  return report;
}

// ---------------------------------------------------------------------------
// stats

inline Json run_stats(const RunConfig& cfg) {
  const DatasetDocument doc = load_dataset(cfg.dataset);
  const PerturbationConfig& pcfg = cfg.perturbation;

  std::map<std::string, std::int64_t> per_class;
  std::int64_t objects = 0, eligible = 0;
  for (const GroundTruth& truth : doc.truths) {
    for (const AnnotatedObject& obj : truth.objects) {
      ++objects;
      ++per_class[doc.classes.at(obj.class_id).name];
      if (is_perturbation_candidate(obj, doc.classes, pcfg)) ++eligible;
    }
  }

  Json out;
  out["images"] = doc.images.size();
  out["objects"] = objects;
  out["eligible"] = eligible;
  out["objects_per_class"] = per_class;
  out["q"] = pcfg.rate;
  out["copies"] = pcfg.copies;
  out["expected_errors"] =
      pcfg.rate * static_cast<double>(eligible) * static_cast<double>(pcfg.copies);
  return out;
}

}  // namespace lef

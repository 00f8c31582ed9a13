#pragma once

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "lef/eval.hpp"
#include "lef/formats/json_util.hpp"

namespace lef {

inline Json report_to_json(const EvalReport& report) {
  Json root;
  root["counts"] = {{"tp", report.tp}, {"fp", report.fp}, {"fn", report.fn}};
  root["precision"] = report.precision;
  root["recall"] = report.recall;
  root["f1"] = report.f1;
  root["ap"] = report.ap ? Json(*report.ap) : Json(nullptr);
  root["per_type"] = Json::object();
  for (const auto& [type, counts] : report.per_type) {
    root["per_type"][to_string(type)] = {
        {"tp", counts.tp}, {"fn", counts.fn}, {"recall", counts.recall}};
  }
  root["curves"] = Json::array();
  for (const ApCurve& curve : report.curves) {
    root["curves"].push_back({{"iou_threshold", curve.iou_threshold},
                              {"ap", 100.0 * curve.ap},
                              {"precision", curve.sampled_precision}});
  }
  root["images"] = Json::array();
  for (const auto& image : report.images) {
    Json node{{"image_id", image.image_id}};
    node["matches"] = Json::array();
    for (const PredictionOutcome& outcome : image.outcomes) {
      Json entry{{"prediction", outcome.prediction_index},
                 {"iou", outcome.iou},
                 {"tp", outcome.tp}};
      if (outcome.matched_error) entry["error"] = *outcome.matched_error;
      node["matches"].push_back(std::move(entry));
    }
    node["unmatched_errors"] = image.unmatched_errors;
    root["images"].push_back(std::move(node));
  }
  return root;
}

// Plain-text table, one row per labelled report, columns in the order
// AP, TPs, FPs, FNs, Precision, Recall, F1-Score.
inline std::string format_report_table(
    const std::vector<std::pair<std::string, EvalReport>>& rows) {
  const std::vector<std::string> headers = {"AP",  "TPs",       "FPs",    "FNs",
                                            "Precision", "Recall", "F1-Score"};
  std::vector<std::vector<std::string>> cells;
  std::size_t label_width = 0;
  for (const auto& [label, report] : rows) {
    label_width = std::max(label_width, label.size());
    std::ostringstream ap;
    if (report.ap) {
      ap << std::fixed << std::setprecision(2) << *report.ap;
    } else {
      ap << "-";
    }
    auto pct = [](double v) {
      std::ostringstream s;
      s << std::fixed << std::setprecision(2) << v;
      return s.str();
    };
    cells.push_back({ap.str(), std::to_string(report.tp), std::to_string(report.fp),
                     std::to_string(report.fn), pct(report.precision),
                     pct(report.recall), pct(report.f1)});
  }
  std::vector<std::size_t> widths;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    std::size_t w = headers[c].size();
    for (const auto& row : cells) w = std::max(w, row[c].size());
    widths.push_back(w);
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(label_width)) << "" << " ";
  for (std::size_t c = 0; c < headers.size(); ++c) {
    out << " " << std::right << std::setw(static_cast<int>(widths[c])) << headers[c];
  }
  out << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << std::left << std::setw(static_cast<int>(label_width)) << rows[r].first
        << " ";
    for (std::size_t c = 0; c < headers.size(); ++c) {
      out << " " << std::right << std::setw(static_cast<int>(widths[c]))
          << cells[r][c];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace lef

#pragma once

// Randomized document/ground-truth generators shared by the unit and
// acceptance suites.

#include <cmath>
#include <string>
#include <vector>

#include "lef/dataset.hpp"
#include "lef/formats/legt.hpp"
#include "lef/formats/palette.hpp"
#include "lef/rng.hpp"
#include "lef/types.hpp"

namespace gen {

inline lef::DatasetDocument random_coco_document(lef::RngStream& rng) {
  using namespace lef;
  DatasetDocument doc;
  doc.format = DatasetFormat::coco;
  const int class_count = static_cast<int>(rng.uniform_int(1, 6));
  std::vector<ClassInfo> classes;
  for (int i = 0; i < class_count; ++i) {
    classes.push_back({i, "cat_" + std::to_string(i), palette_color_for_class(i),
                       10 + 7 * i});  // non-contiguous source ids
  }
  doc.classes = ClassTable(std::move(classes));
  const int image_count = static_cast<int>(rng.uniform_int(1, 5));
  for (int i = 0; i < image_count; ++i) {
    ImageRecord rec;
    rec.source_id = 100 + i;
    rec.id = std::to_string(rec.source_id);
    rec.file_name = "img_" + std::to_string(i) + ".png";
    rec.size = {static_cast<int>(rng.uniform_int(32, 128)),
                static_cast<int>(rng.uniform_int(32, 128))};
    GroundTruth truth;
    truth.image_id = rec.id;
    truth.size = rec.size;
    const int objects = static_cast<int>(rng.uniform_int(0, 6));
    for (int k = 0; k < objects; ++k) {
      const int class_id =
          static_cast<int>(rng.uniform_index(static_cast<std::size_t>(class_count)));
      if (rng.bernoulli(0.5)) {
        const double w = rng.uniform_real(1, 20);
        const double h = rng.uniform_real(1, 20);
        truth.objects.push_back(
            make_object(rec.id, k,
                        Box{rng.uniform_real(0, rec.size.width - w),
                            rng.uniform_real(0, rec.size.height - h), w, h},
                        class_id, rec.size));
      } else {
        Polygon poly;
        const int n = static_cast<int>(rng.uniform_int(3, 8));
        for (int v = 0; v < n; ++v) {
          poly.vertices.push_back({rng.uniform_real(0, rec.size.width),
                                   rng.uniform_real(0, rec.size.height)});
        }
        truth.objects.push_back(make_object(rec.id, k, poly, class_id, rec.size));
      }
    }
    doc.images.push_back(std::move(rec));
    doc.truths.push_back(std::move(truth));
  }
  return doc;
}

inline lef::GroundTruth random_voc_truth(lef::RngStream& rng, const std::string& id) {
  using namespace lef;
  GroundTruth truth;
  truth.image_id = id;
  truth.size = {static_cast<int>(rng.uniform_int(100, 640)),
                static_cast<int>(rng.uniform_int(100, 480))};
  const int objects = static_cast<int>(rng.uniform_int(0, 8));
  for (int k = 0; k < objects; ++k) {
    const bool integral = rng.bernoulli(0.5);
    double w = rng.uniform_real(1, 50), h = rng.uniform_real(1, 50);
    double x = rng.uniform_real(0, truth.size.width - w);
    double y = rng.uniform_real(0, truth.size.height - h);
    if (integral) {
      w = std::floor(w) + 1;
      h = std::floor(h) + 1;
      x = std::floor(x);
      y = std::floor(y);
    }
    truth.objects.push_back(make_object(truth.image_id, k, Box{x, y, w, h},
                                        static_cast<int>(rng.uniform_index(20)),
                                        truth.size));
  }
  return truth;
}

inline lef::GroundTruth random_cityscapes_truth(lef::RngStream& rng,
                                                const lef::ClassTable& classes,
                                                const std::string& id) {
  using namespace lef;
  GroundTruth truth;
  truth.image_id = id;
  truth.size = {512, 256};
  const int objects = static_cast<int>(rng.uniform_int(1, 10));
  for (int k = 0; k < objects; ++k) {
    Polygon poly;
    const int n = static_cast<int>(rng.uniform_int(3, 9));
    for (int v = 0; v < n; ++v) {
      poly.vertices.push_back(
          {std::floor(rng.uniform_real(0, 512)), std::floor(rng.uniform_real(0, 256))});
    }
    const int class_id =
        static_cast<int>(rng.uniform_index(static_cast<std::size_t>(classes.size())));
    AnnotatedObject obj = make_object(truth.image_id, k, poly, class_id, truth.size);
    obj.perturbable = class_id < classes.perturbable_count();
    truth.objects.push_back(std::move(obj));
  }
  return truth;
}

inline lef::LegtDocument random_legt_document(lef::RngStream& rng) {
  using namespace lef;
  LegtDocument doc;
  const int class_count = static_cast<int>(rng.uniform_int(1, 5));
  for (int c = 0; c < class_count; ++c) {
    doc.categories.emplace_back(c + 1, "cat" + std::to_string(c));
  }
  const int images = static_cast<int>(rng.uniform_int(1, 4));
  for (int i = 0; i < images; ++i) {
    ImageRecord rec;
    rec.source_id = i + 1;
    rec.id = std::to_string(rec.source_id);
    rec.size = {64, 64};
    doc.images.push_back(rec);
    std::vector<LabelErrorRecord> records;
    const int n = static_cast<int>(rng.uniform_int(0, 5));
    for (int k = 0; k < n; ++k) {
      LabelErrorRecord record;
      const int class_id =
          static_cast<int>(rng.uniform_index(static_cast<std::size_t>(class_count)));
      if (rng.bernoulli(0.5)) {
        record.object =
            make_object(doc.images.back().id, k,
                        Box{rng.uniform_real(0, 32), rng.uniform_real(0, 32),
                            rng.uniform_real(1, 30), rng.uniform_real(1, 30)},
                        class_id, doc.images.back().size);
      } else {
        Polygon poly;
        for (int v = 0; v < 5; ++v) {
          poly.vertices.push_back({rng.uniform_real(0, 64), rng.uniform_real(0, 64)});
        }
        record.object = make_object(doc.images.back().id, k, poly, class_id,
                                    doc.images.back().size);
      }
      const int which = static_cast<int>(rng.uniform_index(3));
      record.error_type = which == 0   ? ErrorType::drop
                          : which == 1 ? ErrorType::spawn
                                       : ErrorType::flip;
      if (record.error_type == ErrorType::flip && class_count > 1) {
        record.original_class_id = (class_id + 1) % class_count;
      } else if (record.error_type == ErrorType::flip) {
        record.error_type = ErrorType::drop;
      }
      records.push_back(std::move(record));
    }
    doc.per_image.push_back(std::move(records));
  }
  doc.config.seed = rng.next();
  return doc;
}

// Random axis-aligned boxes fully inside the image, random classes.
inline lef::GroundTruth random_boxes_image(const std::string& id, int object_count,
                                           lef::ImageSize size, int class_count,
                                           lef::RngStream& rng) {
  using namespace lef;
  GroundTruth g;
  g.image_id = id;
  g.size = size;
  for (int i = 0; i < object_count; ++i) {
    const double w = rng.uniform_real(4.0, 40.0);
    const double h = rng.uniform_real(4.0, 40.0);
    const double x = rng.uniform_real(0.0, size.width - w);
    const double y = rng.uniform_real(0.0, size.height - h);
    g.objects.push_back(make_object(
        id, i, Box{x, y, w, h},
        static_cast<int>(rng.uniform_index(static_cast<std::size_t>(class_count))),
        size));
  }
  return g;
}

}  // namespace gen

#pragma once

#include <cmath>
#include <charconv>
#include <sstream>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "lef/formats/common.hpp"
#include "lef/formats/palette.hpp"
#include "lef/types.hpp"

namespace lef {

// Pascal VOC per-image annotation XML. Boxes use the (xmin, ymin, xmax, ymax)
// convention; class names go through the 20-class table.
inline GroundTruth parse_voc_xml(const std::string& bytes, const ClassTable& classes,
                                 const std::string& path = "annotation.xml") {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream stream(bytes);
    pt::read_xml(stream, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(path, std::string("invalid XML: ") + e.what());
  }
  const auto annotation = tree.get_child_optional("annotation");
  if (!annotation) throw ParseError(path, "missing <annotation> root");

  GroundTruth truth;
  truth.image_id =
      detail::path_stem(annotation->get<std::string>("filename", detail::path_stem(path)));
  const auto size = annotation->get_child_optional("size");
  if (!size) throw ParseError(path, "missing <size> element");
  truth.size.width = static_cast<int>(detail::parse_number(
      size->get<std::string>("width", ""), path, "size/width"));
  truth.size.height = static_cast<int>(detail::parse_number(
      size->get<std::string>("height", ""), path, "size/height"));

  for (const auto& [key, node] : *annotation) {
    if (key != "object") continue;
    const std::string name = node.get<std::string>("name", "");
    const auto class_id = classes.find_by_name(name);
    if (!class_id) throw ParseError(path, "unknown class name '" + name + "'");
    const auto bndbox = node.get_child_optional("bndbox");
    if (!bndbox) throw ParseError(path, "object '" + name + "' has no <bndbox>");
    const double xmin =
        detail::parse_number(bndbox->get<std::string>("xmin", ""), path, "bndbox/xmin");
    const double ymin =
        detail::parse_number(bndbox->get<std::string>("ymin", ""), path, "bndbox/ymin");
    const double xmax =
        detail::parse_number(bndbox->get<std::string>("xmax", ""), path, "bndbox/xmax");
    const double ymax =
        detail::parse_number(bndbox->get<std::string>("ymax", ""), path, "bndbox/ymax");
    if (xmax < xmin || ymax < ymin) {
      throw ParseError(path, "degenerate bndbox for '" + name + "': max below min");
    }
    truth.objects.push_back(make_object(
        truth.image_id, static_cast<std::int64_t>(truth.objects.size()),
        Box{xmin, ymin, xmax - xmin, ymax - ymin}, *class_id, truth.size));
  }
  return truth;
}

inline std::string write_voc_xml(const GroundTruth& truth, const ClassTable& classes) {
  std::ostringstream out;
  out << "<annotation>\n";
  out << "  <filename>" << truth.image_id << ".jpg</filename>\n";
  out << "  <size>\n";
  out << "    <width>" << truth.size.width << "</width>\n";
  out << "    <height>" << truth.size.height << "</height>\n";
  out << "    <depth>3</depth>\n";
  out << "  </size>\n";
  for (const AnnotatedObject& obj : truth.objects) {
    if (!is_box(obj.shape)) {
      throw Error("VOC annotations hold boxes only; object " +
                  std::to_string(obj.object_id) + " is a polygon");
    }
    const Box& b = std::get<Box>(obj.shape);
    out << "  <object>\n";
    out << "    <name>" << classes.at(obj.class_id).name << "</name>\n";
    out << "    <bndbox>\n";
    out << "      <xmin>" << detail::format_number(b.x) << "</xmin>\n";
    out << "      <ymin>" << detail::format_number(b.y) << "</ymin>\n";
    out << "      <xmax>" << detail::format_number(b.x + b.width) << "</xmax>\n";
    out << "      <ymax>" << detail::format_number(b.y + b.height) << "</ymax>\n";
    out << "    </bndbox>\n";
    out << "  </object>\n";
  }
  out << "</annotation>\n";
  return out.str();
}

}  // namespace lef

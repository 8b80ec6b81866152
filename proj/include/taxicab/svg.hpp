#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "taxicab/error.hpp"
#include "taxicab/scores.hpp"

namespace taxicab {

struct MapStyle {
  double width = 800.0;
  double height = 600.0;
  std::string row_color = "#1f77b4";
  std::string col_color = "#d62728";
  bool show_row_labels = true;
  bool show_col_labels = true;
  double point_size = 4.0;
  double margin = 0.08;  // fraction of each dimension kept blank per side
};

inline void validate(const MapStyle& style) {
  if (!(style.width > 0.0) || !(style.height > 0.0)) {
    throw Error(ErrorCode::BadConfig, "map dimensions must be positive");
  }
  if (!(style.point_size > 0.0)) {
    throw Error(ErrorCode::BadConfig, "point_size must be positive");
  }
  if (!(style.margin >= 0.0 && style.margin < 0.4)) {
    throw Error(ErrorCode::BadConfig, "margin must lie in [0, 0.4)");
  }
}

namespace detail {

inline std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

inline std::string fmt_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Affine map from data space to pixel space, equal scale on both axes.
struct PixelMap {
  double scale, x0, y0;       // px = x0 + x*scale; py = y0 - y*scale
  double px(double x) const { return x0 + x * scale; }
  double py(double y) const { return y0 - y * scale; }
};

inline PixelMap fit_viewport(double min_x, double max_x, double min_y,
                             double max_y, const MapStyle& style) {
  // Degenerate extent: all points (and the origin) coincide on a dimension.
  // Fall back to a unit span so the document stays well formed.
  if (!(max_x - min_x > 0.0)) { min_x -= 0.5; max_x += 0.5; }
  if (!(max_y - min_y > 0.0)) { min_y -= 0.5; max_y += 0.5; }
  const double avail_w = style.width * (1.0 - 2.0 * style.margin);
  const double avail_h = style.height * (1.0 - 2.0 * style.margin);
  const double scale = std::min(avail_w / (max_x - min_x),
                                avail_h / (max_y - min_y));
  PixelMap m;
  m.scale = scale;
  // center the data rectangle in the viewport
  m.x0 = (style.width - (max_x + min_x) * scale) / 2.0;
  m.y0 = (style.height + (max_y + min_y) * scale) / 2.0;
  return m;
}

// Deterministic radial label placement: the k-th point of a group gets one
// of eight compass directions.
inline void place_label(double px, double py, std::size_t k, double radius,
                        double& lx, double& ly, std::string& anchor) {
  static const double kPi = 3.14159265358979323846;
  const double angle = (static_cast<double>(k % 8)) * (kPi / 4.0);
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  lx = px + dx * radius;
  ly = py + dy * radius + 4.0;  // rough vertical centering of 12px text
  if (dx > 0.01) anchor = "start";
  else if (dx < -0.01) anchor = "end";
  else anchor = "middle";
}

}  // namespace detail

// Standalone SVG 1.1 symmetric map: rows as circles, columns as diamonds,
// crosshair through the data origin, equal aspect ratio.
inline std::string render_map(const MapCoordinates& coords,
                              const std::vector<std::string>& row_labels,
                              const std::vector<std::string>& col_labels,
                              const MapStyle& style = MapStyle{},
                              const std::string& title = "") {
  validate(style);
  const Index nr = coords.row_points.rows();
  const Index nc = coords.col_points.rows();
  if (nr < 1 || nc < 1) {
    throw Error(ErrorCode::TooSmall, "map needs at least one point per mode");
  }
  if (static_cast<Index>(row_labels.size()) != nr ||
      static_cast<Index>(col_labels.size()) != nc) {
    throw Error(ErrorCode::DimensionMismatch, "label count != point count");
  }

  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;  // include origin
  auto grow = [&](const Eigen::MatrixXd& pts) {
    for (Index i = 0; i < pts.rows(); ++i) {
      min_x = std::min(min_x, pts(i, 0));
      max_x = std::max(max_x, pts(i, 0));
      min_y = std::min(min_y, pts(i, 1));
      max_y = std::max(max_y, pts(i, 1));
    }
  };
  grow(coords.row_points);
  grow(coords.col_points);
  const detail::PixelMap map = detail::fit_viewport(min_x, max_x, min_y, max_y, style);

  using detail::escape_xml;
  using detail::fmt_px;
  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt_px(style.width) + "\" height=\"" + fmt_px(style.height) +
         "\" viewBox=\"0 0 " + fmt_px(style.width) + " " + fmt_px(style.height) +
         "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  const std::string ox = fmt_px(map.px(0.0));
  const std::string oy = fmt_px(map.py(0.0));
  svg += "<line x1=\"0\" y1=\"" + oy + "\" x2=\"" + fmt_px(style.width) +
         "\" y2=\"" + oy + "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + ox + "\" y1=\"0\" x2=\"" + ox + "\" y2=\"" +
         fmt_px(style.height) + "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"" + fmt_px(style.width - 8.0) + "\" y=\"" +
         fmt_px(map.py(0.0) - 6.0) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\""
         " fill=\"#444444\">Axis " + std::to_string(coords.axis_a) +
         "</text>\n";
  svg += "<text x=\"" + fmt_px(map.px(0.0) + 6.0) + "\" y=\"14\""
         " font-family=\"sans-serif\" font-size=\"12\" fill=\"#444444\">Axis " +
         std::to_string(coords.axis_b) + "</text>\n";
  if (!title.empty()) {
    svg += "<text x=\"" + fmt_px(style.width / 2.0) +
           "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\""
           " font-size=\"14\" fill=\"#222222\">" + escape_xml(title) +
           "</text>\n";
  }

  const double s = style.point_size;
  for (Index j = 0; j < nc; ++j) {
    const double cx = map.px(coords.col_points(j, 0));
    const double cy = map.py(coords.col_points(j, 1));
    const double d = s * 1.3;
    svg += "<path class=\"col-point\" d=\"M " + fmt_px(cx) + " " +
           fmt_px(cy - d) + " L " + fmt_px(cx + d) + " " + fmt_px(cy) + " L " +
           fmt_px(cx) + " " + fmt_px(cy + d) + " L " + fmt_px(cx - d) + " " +
           fmt_px(cy) + " Z\" fill=\"" + style.col_color + "\"/>\n";
  }
  for (Index i = 0; i < nr; ++i) {
    const double cx = map.px(coords.row_points(i, 0));
    const double cy = map.py(coords.row_points(i, 1));
    svg += "<circle class=\"row-point\" cx=\"" + fmt_px(cx) + "\" cy=\"" +
           fmt_px(cy) + "\" r=\"" + fmt_px(s) + "\" fill=\"" + style.row_color +
           "\"/>\n";
  }

  auto emit_labels = [&](const Eigen::MatrixXd& pts,
                         const std::vector<std::string>& labels,
                         const std::string& color) {
    for (Index k = 0; k < pts.rows(); ++k) {
      double lx = 0.0, ly = 0.0;
      std::string anchor;
      detail::place_label(map.px(pts(k, 0)), map.py(pts(k, 1)),
                          static_cast<std::size_t>(k), s + 7.0, lx, ly, anchor);
      svg += "<text x=\"" + fmt_px(lx) + "\" y=\"" + fmt_px(ly) +
             "\" text-anchor=\"" + anchor +
             "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" + color +
             "\">" + escape_xml(labels[static_cast<std::size_t>(k)]) +
             "</text>\n";
    }
  };
  if (style.show_row_labels) {
    emit_labels(coords.row_points, row_labels, style.row_color);
  }
  if (style.show_col_labels) {
    emit_labels(coords.col_points, col_labels, style.col_color);
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace taxicab

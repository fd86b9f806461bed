#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "cpb/cli_io.hpp"

namespace cpb {

namespace {

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                               "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double axis_value(double v, bool log_scale) {
  return log_scale ? std::log10(v) : v;
}

}  // namespace

std::string render_line_plot(const ResultTable& table, const PlotSpec& spec) {
  if (table.rows.empty())
    throw ColumnMissing("render_line_plot: table has no rows");
  if (spec.y_columns.empty())
    throw ColumnMissing("render_line_plot: no y columns selected");
  const int xi = table.column_index(spec.x_column);
  std::vector<int> yi;
  for (const auto& name : spec.y_columns)
    yi.push_back(table.column_index(name));

  const double ml = 70, mr = 20, mt = 35, mb = 50;
  const double pw = spec.width - ml - mr, ph = spec.height - mt - mb;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& row : table.rows) {
    const double x = row[xi];
    if (spec.log_x && x <= 0) continue;
    xmin = std::min(xmin, axis_value(x, spec.log_x));
    xmax = std::max(xmax, axis_value(x, spec.log_x));
    for (int c : yi) {
      const double y = row[c];
      if (spec.log_y && y <= 0) continue;
      ymin = std::min(ymin, axis_value(y, spec.log_y));
      ymax = std::max(ymax, axis_value(y, spec.log_y));
    }
  }
  if (xmin > xmax || ymin > ymax)
    throw ColumnMissing("render_line_plot: no plottable data");
  if (xmax == xmin) { xmax += 0.5; xmin -= 0.5; }
  if (ymax == ymin) { ymax += 0.5; ymin -= 0.5; }

  auto px = [&](double x) {
    return ml + pw * (axis_value(x, spec.log_x) - xmin) / (xmax - xmin);
  };
  auto py = [&](double y) {
    return mt + ph * (1.0 - (axis_value(y, spec.log_y) - ymin) / (ymax - ymin));
  };

  std::ostringstream s;
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
    << spec.width << "\" height=\"" << spec.height << "\">\n"
    << "<rect width=\"" << spec.width << "\" height=\"" << spec.height
    << "\" fill=\"white\"/>\n";
  if (!spec.title.empty())
    s << "<text x=\"" << spec.width / 2 << "\" y=\"22\" font-size=\"15\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\">" << spec.title
      << "</text>\n";

  // frame
  s << "<rect x=\"" << num(ml) << "\" y=\"" << num(mt) << "\" width=\""
    << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  // ticks
  const int nticks = 6;
  for (int i = 0; i < nticks; ++i) {
    const double fx = xmin + (xmax - xmin) * i / (nticks - 1);
    const double gx = ml + pw * i / (nticks - 1);
    const double label_x = spec.log_x ? std::pow(10.0, fx) : fx;
    s << "<line x1=\"" << num(gx) << "\" y1=\"" << num(mt + ph) << "\" x2=\""
      << num(gx) << "\" y2=\"" << num(mt + ph + 5)
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << num(gx) << "\" y=\"" << num(mt + ph + 18)
      << "\" font-size=\"11\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\">" << num(label_x) << "</text>\n";

    const double fy = ymin + (ymax - ymin) * i / (nticks - 1);
    const double gy = mt + ph * (1.0 - double(i) / (nticks - 1));
    const double label_y = spec.log_y ? std::pow(10.0, fy) : fy;
    s << "<line x1=\"" << num(ml - 5) << "\" y1=\"" << num(gy) << "\" x2=\""
      << num(ml) << "\" y2=\"" << num(gy) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(gy + 4)
      << "\" font-size=\"11\" text-anchor=\"end\" "
      << "font-family=\"sans-serif\">" << num(label_y) << "</text>\n";
  }
  if (!spec.x_label.empty())
    s << "<text x=\"" << num(ml + pw / 2) << "\" y=\""
      << num(spec.height - 12)
      << "\" font-size=\"13\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\">" << spec.x_label << "</text>\n";
  if (!spec.y_label.empty())
    s << "<text x=\"16\" y=\"" << num(mt + ph / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" transform=\"rotate(-90 16 "
      << num(mt + ph / 2) << ")\">" << spec.y_label << "</text>\n";

  // series
  for (size_t k = 0; k < yi.size(); ++k) {
    const char* color = kSeriesColors[k % 6];
    s << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& row : table.rows) {
      const double x = row[xi], y = row[yi[k]];
      if ((spec.log_x && x <= 0) || (spec.log_y && y <= 0)) continue;
      if (!first) s << " ";
      s << num(px(x)) << "," << num(py(y));
      first = false;
    }
    s << "\"/>\n";
    // legend
    const double ly = mt + 14 + 16 * k;
    s << "<line x1=\"" << num(ml + 10) << "\" y1=\"" << num(ly) << "\" x2=\""
      << num(ml + 34) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
      << "\" stroke-width=\"1.5\"/>\n";
    s << "<text x=\"" << num(ml + 40) << "\" y=\"" << num(ly + 4)
      << "\" font-size=\"11\" font-family=\"sans-serif\">"
      << spec.y_columns[k] << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace cpb

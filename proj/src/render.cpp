#include "cev/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cev/csv.hpp"
#include "json.hpp"

namespace cev {

namespace {

std::string fmt2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

bool is_signal(const ChartReport& report, int subgroup) {
  return std::find(report.signals.begin(), report.signals.end(), subgroup) !=
         report.signals.end();
}

const char* kind_name(ChartKind kind) {
  return kind == ChartKind::CevXbar ? "cev_xbar" : "cev_s";
}

const char* kind_label(ChartKind kind) {
  return kind == ChartKind::CevXbar ? "subgroup mean" : "subgroup std dev";
}

std::string render_svg(const ChartReport& report, const RenderOptions& options) {
  const double width = 860, height = 360;
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double y_min = report.ucl, y_max = report.ucl;
  for (const auto& p : report.points) {
    y_min = std::min(y_min, p.statistic);
    y_max = std::max(y_max, p.statistic);
  }
  double pad = 0.1 * (y_max - y_min);
  if (pad <= 0.0) pad = std::max(1.0, std::abs(y_max)) * 0.1;
  y_min -= pad;
  y_max += pad;

  int x_lo = report.points.empty() ? 0 : report.points.front().subgroup;
  int x_hi = x_lo;
  for (const auto& p : report.points) {
    x_lo = std::min(x_lo, p.subgroup);
    x_hi = std::max(x_hi, p.subgroup);
  }
  const double x_span = std::max(1, x_hi - x_lo);

  auto sx = [&](double i) { return left + (i - x_lo) / x_span * plot_w; };
  auto sy = [&](double v) { return top + (y_max - v) / (y_max - y_min) * plot_h; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt2(width) +
         "\" height=\"" + fmt2(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + fmt2(width / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">" +
         std::string(report.chart_kind == ChartKind::CevXbar ? "CEV X-bar chart" : "CEV S chart") +
         "</text>\n";

  // axes
  svg += "<line x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(top) + "\" x2=\"" + fmt2(left) +
         "\" y2=\"" + fmt2(top + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(top + plot_h) + "\" x2=\"" +
         fmt2(left + plot_w) + "\" y2=\"" + fmt2(top + plot_h) + "\" stroke=\"black\"/>\n";

  // y ticks
  for (int t = 0; t <= 4; ++t) {
    const double v = y_min + (y_max - y_min) * t / 4.0;
    svg += "<line x1=\"" + fmt2(left - 4) + "\" y1=\"" + fmt2(sy(v)) + "\" x2=\"" + fmt2(left) +
           "\" y2=\"" + fmt2(sy(v)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt2(left - 8) + "\" y=\"" + fmt2(sy(v) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + fmt2(v) + "</text>\n";
  }

  // x ticks: first, last, and every fifth subgroup in between
  for (const auto& p : report.points) {
    const bool tick = p.subgroup == x_lo || p.subgroup == x_hi || (p.subgroup - x_lo) % 5 == 0;
    if (!tick) continue;
    svg += "<text x=\"" + fmt2(sx(p.subgroup)) + "\" y=\"" + fmt2(top + plot_h + 16) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + std::to_string(p.subgroup) +
           "</text>\n";
  }

  // axis labels
  std::string y_label = kind_label(report.chart_kind);
  if (!options.units.empty()) y_label += " [" + options.units + "]";
  svg += "<text x=\"" + fmt2(width / 2) + "\" y=\"" + fmt2(height - 12) +
         "\" text-anchor=\"middle\" font-size=\"13\">subgroup</text>\n";
  svg += "<text x=\"16\" y=\"" + fmt2(top + plot_h / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " +
         fmt2(top + plot_h / 2) + ")\">" + y_label + "</text>\n";

  // UCL line and label
  svg += "<line class=\"ucl\" x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(sy(report.ucl)) +
         "\" x2=\"" + fmt2(left + plot_w) + "\" y2=\"" + fmt2(sy(report.ucl)) +
         "\" stroke=\"#d62728\" stroke-dasharray=\"6 3\"/>\n";
  svg += "<text x=\"" + fmt2(left + plot_w) + "\" y=\"" + fmt2(sy(report.ucl) - 6) +
         "\" text-anchor=\"end\" font-size=\"11\" fill=\"#d62728\">UCL = " +
         format_double(report.ucl) + "</text>\n";

  // connecting line
  if (report.points.size() > 1) {
    svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < report.points.size(); ++i) {
      if (i) svg += ' ';
      svg += fmt2(sx(report.points[i].subgroup)) + "," + fmt2(sy(report.points[i].statistic));
    }
    svg += "\"/>\n";
  }

  // markers, signals highlighted
  for (const auto& p : report.points) {
    if (is_signal(report, p.subgroup)) {
      svg += "<circle class=\"signal\" cx=\"" + fmt2(sx(p.subgroup)) + "\" cy=\"" +
             fmt2(sy(p.statistic)) + "\" r=\"5\" fill=\"#d62728\"/>\n";
    } else {
      svg += "<circle class=\"point\" cx=\"" + fmt2(sx(p.subgroup)) + "\" cy=\"" +
             fmt2(sy(p.statistic)) + "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
  }

  svg += "</svg>\n";
  return svg;
}

std::string render_csv(const ChartReport& report) {
  std::string out = "subgroup,statistic,ucl,signal\n";
  for (const auto& p : report.points) {
    out += std::to_string(p.subgroup);
    out += ',';
    out += format_double(p.statistic);
    out += ',';
    out += format_double(report.ucl);
    out += ',';
    out += is_signal(report, p.subgroup) ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string render_json(const ChartReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& p : report.points) {
    rows.push_back({{"subgroup", p.subgroup},
                    {"statistic", p.statistic},
                    {"ucl", report.ucl},
                    {"signal", is_signal(report, p.subgroup)}});
  }
  nlohmann::json doc{{"chart_kind", kind_name(report.chart_kind)}, {"rows", rows}};
  return doc.dump(2) + "\n";
}

}  // namespace

std::string render_chart(const ChartReport& report, ChartFormat format,
                         const RenderOptions& options) {
  switch (format) {
    case ChartFormat::Svg: return render_svg(report, options);
    case ChartFormat::Csv: return render_csv(report);
    case ChartFormat::Json: return render_json(report);
  }
  fail(errc::config, "unsupported chart format");
}

ChartFormat chart_format_from_name(const std::string& name) {
  if (name == "svg") return ChartFormat::Svg;
  if (name == "csv") return ChartFormat::Csv;
  if (name == "json") return ChartFormat::Json;
  fail(errc::config, "unsupported chart format '" + name + "'");
}

}  // namespace cev

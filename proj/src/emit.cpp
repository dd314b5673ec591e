#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tdlab/harness.hpp"

namespace tdlab {

const char* const kCsvHeader = "step,delta_e_mean,delta_i_mean,abs_gap,r_bar,episode_return,seed";

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::string format_optional(const std::optional<double>& value) {
  return value.has_value() ? format_double(*value) : std::string();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace

void emit_csv(const std::vector<RunMetrics>& runs, const std::string& path) {
  if (runs.empty()) throw std::invalid_argument("emit_csv: no runs");
  std::string out;
  out.reserve(runs.size() * runs.front().rows.size() * 48 + 64);
  out += kCsvHeader;
  out += '\n';
  for (const RunMetrics& run : runs) {
    for (const MetricRow& row : run.rows) {
      out += std::to_string(row.step);
      out += ',';
      out += format_optional(row.delta_e_mean);
      out += ',';
      out += format_optional(row.delta_i_mean);
      out += ',';
      out += format_optional(row.abs_gap);
      out += ',';
      out += format_optional(row.avg_reward);
      out += ',';
      out += format_optional(row.episode_return);
      out += ',';
      out += std::to_string(run.seed);
      out += '\n';
    }
  }
  write_file(path, out);
}

ParsedCsv parse_metrics_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV " + path);
  if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header in " + path);

  ParsedCsv parsed;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    // A trailing empty field would be dropped by getline; the seed column is
    // always present so rows have exactly 7 fields.
    if (fields.size() != 7) throw std::runtime_error("bad CSV row: " + line);
    MetricRow row;
    row.step = std::stol(fields[0]);
    auto opt = [](const std::string& s) -> std::optional<double> {
      if (s.empty()) return std::nullopt;
      return std::stod(s);
    };
    row.delta_e_mean = opt(fields[1]);
    row.delta_i_mean = opt(fields[2]);
    row.abs_gap = opt(fields[3]);
    row.avg_reward = opt(fields[4]);
    row.episode_return = opt(fields[5]);
    parsed.rows.push_back(row);
    parsed.seeds.push_back(std::stoull(fields[6]));
  }
  return parsed;
}

namespace {

struct Series {
  std::vector<double> x;
  std::vector<double> y;
};

std::string polyline(const Series& s, double x0, double x1, double y0, double y1,
                     const char* style) {
  // Map data coordinates onto the 60..760 x 20..360 plot box (y grows down).
  auto px = [&](double x) { return 60.0 + (x - x0) / (x1 - x0) * 700.0; };
  auto py = [&](double y) { return 360.0 - (y - y0) / (y1 - y0) * 340.0; };
  std::string out = "<polyline fill=\"none\" ";
  out += style;
  out += " points=\"";
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
    out += buf;
  }
  out += "\"/>\n";
  return out;
}

}  // namespace

void emit_svg(const std::vector<RunMetrics>& runs,
              std::optional<double> MetricRow::* field, int window,
              const std::string& title, const std::string& path) {
  if (runs.empty()) throw std::invalid_argument("emit_svg: no runs");

  std::vector<Series> seed_series;
  for (const RunMetrics& run : runs) {
    Series s;
    for (const MetricRow& row : run.rows) {
      if ((row.*field).has_value()) {
        s.x.push_back(static_cast<double>(row.step));
        s.y.push_back(*(row.*field));
      }
    }
    if (!s.y.empty()) s.y = rolling_stats(s.y, window);
    seed_series.push_back(std::move(s));
  }

  // Mean and CI where every seed has the same number of aligned points.
  bool aligned = true;
  for (const Series& s : seed_series) {
    if (s.x.size() != seed_series.front().x.size() || s.x.empty()) aligned = false;
  }
  CiResult ci;
  if (aligned && runs.size() >= 2) {
    std::vector<std::vector<double>> matrix;
    for (const Series& s : seed_series) matrix.push_back(s.y);
    ci = confidence_interval(matrix);
  }

  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool first = true;
  for (const Series& s : seed_series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        x0 = x1 = s.x[i];
        y0 = y1 = s.y[i];
        first = false;
      }
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) y1 = y0 + 1.0;
  double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" "
         "viewBox=\"0 0 800 400\">\n";
  svg += "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
  svg += "<line x1=\"60\" y1=\"360\" x2=\"760\" y2=\"360\" stroke=\"black\"/>\n";
  svg += "<line x1=\"60\" y1=\"20\" x2=\"60\" y2=\"360\" stroke=\"black\"/>\n";
  svg += "<text x=\"400\" y=\"16\" text-anchor=\"middle\" font-size=\"14\">" + title +
         "</text>\n";
  char buf[256];
  char labels[512];
  std::snprintf(labels, sizeof(labels),
                "<text x=\"58\" y=\"370\" text-anchor=\"end\" font-size=\"10\">%g</text>\n"
                "<text x=\"760\" y=\"374\" text-anchor=\"end\" font-size=\"10\">%g</text>\n"
                "<text x=\"56\" y=\"364\" text-anchor=\"end\" font-size=\"10\">%g</text>\n"
                "<text x=\"56\" y=\"28\" text-anchor=\"end\" font-size=\"10\">%g</text>\n",
                x0, x1, y0, y1);
  svg += labels;

  auto px = [&](double x) { return 60.0 + (x - x0) / (x1 - x0) * 700.0; };
  auto py = [&](double y) { return 360.0 - (y - y0) / (y1 - y0) * 340.0; };

  if (!ci.mean.empty()) {
    // CI band as a closed polygon: upper edge forward, lower edge back.
    std::string band = "<polygon fill=\"#9ec9e8\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
    const auto& xs = seed_series.front().x;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(xs[i]),
                    py(ci.mean[i] + ci.half_width[i]));
      band += buf;
    }
    for (std::size_t i = xs.size(); i-- > 0;) {
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", px(xs[i]),
                    py(ci.mean[i] - ci.half_width[i]));
      band += buf;
    }
    band += "\"/>\n";
    svg += band;
    Series mean_series{seed_series.front().x, ci.mean};
    svg += polyline(mean_series, x0, x1, y0, y1, "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
  } else {
    for (const Series& s : seed_series) {
      svg += polyline(s, x0, x1, y0, y1, "stroke=\"#1f77b4\" stroke-width=\"1\" stroke-opacity=\"0.7\"");
    }
  }
  svg += "</svg>\n";
  write_file(path, svg);
}

}  // namespace tdlab

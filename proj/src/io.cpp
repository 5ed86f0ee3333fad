// Copyright 2026 The activeshadow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "asd/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace asd {

namespace {

constexpr double kWindowSlack = 1e-9;
constexpr double kSvgPxPerCm = 4.0;

std::string format_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
}

double parse_double(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::invalid_argument("plan.csv line " + std::to_string(line_no) +
                                ": bad numeric field '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string plan_csv(const PlanResult& plan) {
  const auto& robot = plan.robot.samples();
  const auto& shadow = plan.shadow.samples();
  const auto& lights = plan.lights.samples();
  if (robot.size() != shadow.size() || robot.size() != lights.size()) {
    throw std::invalid_argument("plan components disagree on the sampling grid");
  }

  const auto sample_violated = [&](double t) {
    for (const auto& w : plan.constraint_report) {
      if (w.violated && t >= w.window_start - kWindowSlack && t <= w.window_end + kWindowSlack) {
        return true;
      }
    }
    return false;
  };

  std::string out = "t,robot_x,robot_y,robot_h,shadow_x,shadow_y,alpha_deg,phi_deg,violated\n";
  for (std::size_t i = 0; i < robot.size(); ++i) {
    out += format_double(robot[i].t);
    out += ',';
    out += format_double(robot[i].pose.x);
    out += ',';
    out += format_double(robot[i].pose.y);
    out += ',';
    out += format_double(robot[i].pose.h);
    out += ',';
    out += format_double(shadow[i].point.x);
    out += ',';
    out += format_double(shadow[i].point.y);
    out += ',';
    out += format_double(lights[i].light.elevation_alpha());
    out += ',';
    out += format_double(lights[i].light.azimuth_phi());
    out += ',';
    out += bool_str(sample_violated(robot[i].t));
    out += '\n';
  }
  return out;
}

std::string posterior_csv(const PredictionCurve& curve,
                          const std::vector<std::string>& goal_order) {
  std::string out = "t";
  for (const auto& g : goal_order) {
    out += ',';
    out += g;
  }
  out += '\n';
  for (const auto& point : curve.points()) {
    out += format_double(point.t);
    for (const auto& g : goal_order) {
      const auto it = point.posterior.find(g);
      if (it == point.posterior.end()) {
        throw std::invalid_argument("posterior curve is missing goal '" + g + "'");
      }
      out += ',';
      out += format_double(it->second);
    }
    out += '\n';
  }
  return out;
}

std::string report_csv(const ComparisonReport& report) {
  std::string out = "method,zeta_cm2,path_length_cm,commit_time_s,correct\n";
  for (const auto& row : report.rows) {
    out += row.method;
    out += ',';
    out += format_double(row.zeta_cm2);
    out += ',';
    out += format_double(row.path_length_cm);
    out += ',';
    if (row.commit_time_s) out += format_double(*row.commit_time_s);
    out += ',';
    if (row.correct) out += bool_str(*row.correct);
    out += '\n';
  }
  return out;
}

std::string plan_svg(const PlanResult& plan, const Scene& scene) {
  double min_x = scene.start().x, max_x = scene.start().x;
  double min_y = scene.start().y, max_y = scene.start().y;
  const auto grow = [&](double x, double y) {
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  };
  for (const auto& s : plan.robot.samples()) grow(s.pose.x, s.pose.y);
  for (const auto& s : plan.shadow.samples()) grow(s.point.x, s.point.y);
  for (const auto& g : scene.goals()) grow(g.position.x, g.position.y);

  const double margin = 10.0;  // cm
  min_x -= margin;
  min_y -= margin;
  max_x += margin;
  max_y += margin;
  const double width = (max_x - min_x) * kSvgPxPerCm;
  const double height = (max_y - min_y) * kSvgPxPerCm;
  const auto px = [&](double x) { return (x - min_x) * kSvgPxPerCm; };
  const auto py = [&](double y) { return (max_y - y) * kSvgPxPerCm; };  // +y is up

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_px(width)
      << "\" height=\"" << format_px(height) << "\" viewBox=\"0 0 " << format_px(width) << " "
      << format_px(height) << "\">\n"
      << "  <desc>overhead view; scale: 1 cm = 4 px</desc>\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  const auto polyline = [&](const std::string& points, const char* stroke, const char* dash) {
    svg << "  <polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"2\"";
    if (dash[0] != '\0') svg << " stroke-dasharray=\"" << dash << "\"";
    svg << " points=\"" << points << "\"/>\n";
  };

  std::string shadow_pts;
  for (const auto& s : plan.shadow.samples()) {
    shadow_pts += format_px(px(s.point.x)) + "," + format_px(py(s.point.y)) + " ";
  }
  polyline(shadow_pts, "#555555", "6 4");

  std::string robot_pts;
  for (const auto& s : plan.robot.samples()) {
    robot_pts += format_px(px(s.pose.x)) + "," + format_px(py(s.pose.y)) + " ";
  }
  polyline(robot_pts, "#1f6fc0", "");

  static const char* kPalette[] = {"#c03030", "#2f9e44", "#b8860b", "#8040c0", "#008080"};
  for (std::size_t i = 0; i < scene.goals().size(); ++i) {
    const Goal& g = scene.goals()[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg << "  <circle cx=\"" << format_px(px(g.position.x)) << "\" cy=\""
        << format_px(py(g.position.y)) << "\" r=\"6\" fill=\"" << color << "\"/>\n"
        << "  <text x=\"" << format_px(px(g.position.x) + 9.0) << "\" y=\""
        << format_px(py(g.position.y) + 4.0) << "\" font-size=\"12\" font-family=\"sans-serif\">"
        << xml_escape(g.label) << "</text>\n";
  }

  svg << "  <rect x=\"" << format_px(px(scene.start().x) - 5.0) << "\" y=\""
      << format_px(py(scene.start().y) - 5.0)
      << "\" width=\"10\" height=\"10\" fill=\"#202020\"/>\n"
      << "  <text x=\"8\" y=\"16\" font-size=\"12\" font-family=\"sans-serif\" fill=\"#1f6fc0\">"
         "robot path</text>\n"
      << "  <text x=\"8\" y=\"32\" font-size=\"12\" font-family=\"sans-serif\" fill=\"#555555\">"
         "shadow path</text>\n"
      << "</svg>\n";
  return svg.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path parent = path.parent_path();
  if (!parent.empty()) fs::create_directories(parent);

  static std::atomic<unsigned> counter{0};
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid()) + "." +
                       std::to_string(counter.fetch_add(1));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("failed to move temp file into place at " + path.string());
  }
}

std::vector<PlanCsvRow> parse_plan_csv(std::string_view content) {
  constexpr std::string_view kHeader =
      "t,robot_x,robot_y,robot_h,shadow_x,shadow_y,alpha_deg,phi_deg,violated";

  std::vector<PlanCsvRow> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const std::string_view line = content.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kHeader) throw std::invalid_argument("plan.csv has an unexpected header");
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 9) {
      throw std::invalid_argument("plan.csv line " + std::to_string(line_no) +
                                  ": expected 9 fields, got " + std::to_string(fields.size()));
    }
    PlanCsvRow row;
    row.t = parse_double(fields[0], line_no);
    row.robot_x = parse_double(fields[1], line_no);
    row.robot_y = parse_double(fields[2], line_no);
    row.robot_h = parse_double(fields[3], line_no);
    row.shadow_x = parse_double(fields[4], line_no);
    row.shadow_y = parse_double(fields[5], line_no);
    row.alpha_deg = parse_double(fields[6], line_no);
    row.phi_deg = parse_double(fields[7], line_no);
    if (fields[8] == "true") {
      row.violated = true;
    } else if (fields[8] == "false") {
      row.violated = false;
    } else {
      throw std::invalid_argument("plan.csv line " + std::to_string(line_no) +
                                  ": violated must be true or false");
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw std::invalid_argument("plan.csv contains no data rows");
  return rows;
}

}  // namespace asd

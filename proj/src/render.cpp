#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <string>

#include "corrlab/corrigibility.hpp"
#include "corrlab/sweep.hpp"

namespace corrlab {

namespace {

constexpr int kCell = 10;
constexpr int kMargin = 40;

std::string hex_colour(int r, int g, int b) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02X%02X%02X", r, g, b);
  return buf;
}

// (first direct action, remaining direct actions, omega)
std::array<double, 3> collapse(const std::vector<double>& s) {
  std::array<double, 3> out{s.front(), 0.0, s.back()};
  for (std::size_t k = 1; k + 1 < s.size(); ++k) out[1] += s[k];
  return out;
}

double cell_scalar(const CellRecord& cell) {
  if (cell.aggregate) return *cell.aggregate;
  if (cell.incentive) {
    int best_direct = 0;
    for (int m : cell.incentive->direct) best_direct = std::max(best_direct, m);
    return cell.incentive->omega - best_direct;
  }
  return cell.corrigible ? 1.0 : -1.0;
}

std::string cell_fill(const CellRecord& cell, RenderMode mode, std::size_t agent) {
  switch (mode) {
    case RenderMode::kRgbStrategy: {
      if (cell.strategies.size() <= agent) return "rgb(0,0,0)";
      const auto p = collapse(cell.strategies[agent]);
      return "rgb(" + std::to_string(to_channel(p[0])) + "," + std::to_string(to_channel(p[1])) +
             "," + std::to_string(to_channel(p[2])) + ")";
    }
    case RenderMode::kCorrigibleBinary:
      return cell.corrigible ? "#0000FF" : "#FF0000";
    case RenderMode::kAggregateScalar:
      return aggregate_colour(cell_scalar(cell));
  }
  return "#000000";
}

}  // namespace

std::string aggregate_colour(double value) {
  const double v = std::clamp(value, -1.0, 1.0);
  if (v < 0.0) {
    const int fade = to_channel(1.0 + v);
    return hex_colour(255, fade, fade);
  }
  const int fade = to_channel(1.0 - v);
  return hex_colour(fade, fade, 255);
}

std::string render_heatmap(const PhaseGrid& grid, RenderMode mode) {
  const std::size_t n_r = grid.r_axis.size();
  const std::size_t n_p = grid.p_axis.size();
  const std::size_t panels = mode == RenderMode::kRgbStrategy ? grid.agents : 1;
  const int width = static_cast<int>(n_r) * kCell;
  const int height = static_cast<int>(n_p) * kCell;
  const int total_w = kMargin + static_cast<int>(panels) * (width + kMargin);
  const int total_h = height + 2 * kMargin;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << total_w
      << "\" height=\"" << total_h << "\" viewBox=\"0 0 " << total_w << ' ' << total_h
      << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << total_w << "\" height=\"" << total_h
      << "\" fill=\"white\" class=\"background\"/>\n";

  for (std::size_t panel = 0; panel < panels; ++panel) {
    const int x0 = kMargin + static_cast<int>(panel) * (width + kMargin);
    const int y0 = kMargin;
    std::string title;
    if (mode == RenderMode::kRgbStrategy) {
      title = grid.agents == 1 ? "defender" : "agent " + std::to_string(panel + 1);
    } else {
      title = mode == RenderMode::kCorrigibleBinary ? "corrigible" : "corrigibility";
    }
    svg << "<g class=\"panel\">\n"
        << "<text x=\"" << x0 + width / 2 << "\" y=\"" << y0 - 10
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << title
        << "</text>\n";
    for (std::size_t ip = 0; ip < n_p; ++ip) {
      for (std::size_t ir = 0; ir < n_r; ++ir) {
        const CellRecord& cell = grid.at(ir, ip);
        const int x = x0 + static_cast<int>(ir) * kCell;
        const int y = y0 + static_cast<int>(n_p - 1 - ip) * kCell;
        svg << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << kCell
            << "\" height=\"" << kCell << "\" fill=\"" << cell_fill(cell, mode, panel)
            << "\"/>\n";
        if (mode == RenderMode::kRgbStrategy && cell.n_equilibria > 1) {
          svg << "<line class=\"multiple\" x1=\"" << x << "\" y1=\"" << y + kCell << "\" x2=\""
              << x + kCell << "\" y2=\"" << y << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        }
      }
    }
    svg << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << width << "\" height=\""
        << height << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << x0 << "\" y=\"" << y0 + height + 14
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">0</text>\n"
        << "<text x=\"" << x0 + width << "\" y=\"" << y0 + height + 14
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">1</text>\n"
        << "<text x=\"" << x0 + width / 2 << "\" y=\"" << y0 + height + 28
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">r</text>\n"
        << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 + height
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">0</text>\n"
        << "<text x=\"" << x0 - 6 << "\" y=\"" << y0 + 8
        << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">1</text>\n"
        << "<text x=\"" << x0 - 20 << "\" y=\"" << y0 + height / 2
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">p</text>\n"
        << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace corrlab

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include "plantrace/error.h"
#include "plantrace/phase_flow.h"

namespace plantrace {

std::string lane_color(std::optional<PhaseLetter> lane) {
  if (!lane) return "#bdbdbd";
  switch (*lane) {
    case PhaseLetter::N: return "#ccc7e6";
    case PhaseLetter::R: return "#eec7d4";
    case PhaseLetter::P: return "#ffed99";
    case PhaseLetter::V: return "#d9edcc";
    case PhaseLetter::RG: return "#b3d4f0";
    case PhaseLetter::VG: return "#8fb9e0";
    case PhaseLetter::S: return "#f6c9a0";
    case PhaseLetter::O: return "#bdbdbd";
  }
  return "#bdbdbd";
}

namespace {

constexpr const char* kTerminalColor = "#000000";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Lane slot: index into style.lanes, lanes.size() for "other", lanes.size()+1
// for the terminal sink.
struct Layout {
  std::size_t other;
  std::size_t terminal;
  const StyleConfig& style;

  std::size_t lane_of(PhaseLetter letter) const {
    auto it = std::find(style.lanes.begin(), style.lanes.end(), letter);
    return it == style.lanes.end() ? other : static_cast<std::size_t>(it - style.lanes.begin());
  }
  std::string label(std::size_t slot) const {
    if (slot == terminal) return "terminated";
    if (slot == other) return "other";
    return std::string(to_string(style.lanes[slot]));
  }
  std::string color(std::size_t slot) const {
    if (slot == terminal) return kTerminalColor;
    if (slot == other) return lane_color(std::nullopt);
    return lane_color(style.lanes[slot]);
  }
};

}  // namespace

std::string render_sankey_svg(const FlowTable& table, const StyleConfig& style) {
  const Layout layout{style.lanes.size(), style.lanes.size() + 1, style};
  const std::size_t slots = style.lanes.size() + 2;

  // ribbons[stage][(from_slot, to_slot)] = count
  std::map<std::size_t, std::map<std::pair<std::size_t, std::size_t>, std::size_t>> ribbons;
  std::size_t last_stage = 0;
  for (const auto& [key, c] : table.flows) {
    if (c.count == 0) continue;
    const std::size_t to = key.to ? layout.lane_of(*key.to) : layout.terminal;
    ribbons[key.stage][{layout.lane_of(key.from), to}] += c.count;
    last_stage = std::max(last_stage, key.stage);
  }

  // Column c (1-based) node sizes per slot.
  const std::size_t columns = last_stage + 1;
  std::vector<std::vector<std::size_t>> node(columns + 1, std::vector<std::size_t>(slots, 0));
  for (const auto& [stage, rs] : ribbons) {
    for (const auto& [ft, count] : rs) {
      if (stage == 1) node[1][ft.first] += count;
      node[stage + 1][ft.second] += count;
    }
  }

  const double legend_h = 28.0;
  const double top = style.margin + legend_h;
  const double usable_h = std::max(1.0, style.height - top - style.margin);
  const double gap = 6.0;
  const double scale =
      table.population == 0 ? 0.0
                            : (usable_h - gap * static_cast<double>(slots - 1)) /
                                  static_cast<double>(table.population);
  const double col_step =
      columns > 1 ? (style.width - 2 * style.margin - style.node_width) /
                        static_cast<double>(columns - 1)
                  : 0.0;
  auto col_x = [&](std::size_t c) { return style.margin + col_step * static_cast<double>(c - 1); };

  // Node top positions.
  std::vector<std::vector<double>> node_y(columns + 1, std::vector<double>(slots, top));
  for (std::size_t c = 1; c <= columns && table.population > 0; ++c) {
    double y = top;
    for (std::size_t s = 0; s < slots; ++s) {
      node_y[c][s] = y;
      if (node[c][s] > 0) y += static_cast<double>(node[c][s]) * scale + gap;
    }
  }

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(style.width) +
         "\" height=\"" + fmt(style.height) + "\" viewBox=\"0 0 " + fmt(style.width) + " " +
         fmt(style.height) + "\" data-population=\"" + std::to_string(table.population) +
         "\" data-stages=\"" + std::to_string(table.max_stages) + "\">\n";
  out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + fmt(style.width) +
         "\" height=\"" + fmt(style.height) + "\" fill=\"#ffffff\"/>\n";
  out += "<text class=\"title\" x=\"" + fmt(style.margin) + "\" y=\"" + fmt(style.margin - 16) +
         "\" font-family=\"sans-serif\" font-size=\"14\">" +
         xml_escape(style.title.empty() ? "Phase flow" : style.title) + " (n=" +
         std::to_string(table.population) + ")</text>\n";

  // Legend.
  out += "<g class=\"legend\">\n";
  double lx = style.margin;
  for (std::size_t s = 0; s < slots; ++s) {
    out += "  <rect x=\"" + fmt(lx) + "\" y=\"" + fmt(style.margin) +
           "\" width=\"12\" height=\"12\" fill=\"" + layout.color(s) + "\"/>";
    out += "<text x=\"" + fmt(lx + 16) + "\" y=\"" + fmt(style.margin + 10) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + layout.label(s) + "</text>\n";
    lx += 24.0 + 7.0 * static_cast<double>(layout.label(s).size());
  }
  out += "</g>\n";

  // Ribbons, stacked in slot order at both ends.
  out += "<g class=\"ribbons\">\n";
  std::vector<std::vector<double>> out_off(columns + 1, std::vector<double>(slots, 0.0));
  std::vector<std::vector<double>> in_off(columns + 1, std::vector<double>(slots, 0.0));
  for (const auto& [stage, rs] : ribbons) {
    for (const auto& [ft, count] : rs) {
      const auto [from, to] = ft;
      const double h = static_cast<double>(count) * scale;
      const double x0 = col_x(stage) + style.node_width;
      const double x1 = col_x(stage + 1);
      const double y0 = node_y[stage][from] + out_off[stage][from];
      const double y1 = node_y[stage + 1][to] + in_off[stage + 1][to];
      out_off[stage][from] += h;
      in_off[stage + 1][to] += h;
      const double xm = (x0 + x1) / 2.0;
      const double share = 100.0 * static_cast<double>(count) / static_cast<double>(table.population);
      out += "  <path class=\"ribbon\" data-stage=\"" + std::to_string(stage) + "\" data-from=\"" +
             layout.label(from) + "\" data-to=\"" + layout.label(to) + "\" data-count=\"" +
             std::to_string(count) + "\" d=\"M" + fmt(x0) + "," + fmt(y0) + " C" + fmt(xm) + "," +
             fmt(y0) + " " + fmt(xm) + "," + fmt(y1) + " " + fmt(x1) + "," + fmt(y1) + " L" +
             fmt(x1) + "," + fmt(y1 + h) + " C" + fmt(xm) + "," + fmt(y1 + h) + " " + fmt(xm) +
             "," + fmt(y0 + h) + " " + fmt(x0) + "," + fmt(y0 + h) + " Z\" fill=\"" +
             layout.color(from) + "\" fill-opacity=\"0.6\"><title>stage " + std::to_string(stage) +
             ": " + layout.label(from) + " -> " + layout.label(to) + " " + std::to_string(count) +
             " (" + fmt(share) + "%)</title></path>\n";
    }
  }
  out += "</g>\n";

  // Stage columns.
  out += "<g class=\"nodes\">\n";
  for (std::size_t c = 1; c <= columns && table.population > 0; ++c) {
    for (std::size_t s = 0; s < slots; ++s) {
      if (node[c][s] == 0) continue;
      const bool sink = s == layout.terminal;
      out += "  <rect class=\"" + std::string(sink ? "terminal" : "node") + "\" data-column=\"" +
             std::to_string(c) + "\" data-lane=\"" + layout.label(s) + "\" data-count=\"" +
             std::to_string(node[c][s]) + "\" x=\"" + fmt(col_x(c)) + "\" y=\"" +
             fmt(node_y[c][s]) + "\" width=\"" + fmt(sink ? style.node_width / 2 : style.node_width) +
             "\" height=\"" + fmt(static_cast<double>(node[c][s]) * scale) + "\" fill=\"" +
             layout.color(s) + "\" stroke=\"#555555\" stroke-width=\"0.5\"/>\n";
    }
  }
  out += "</g>\n";
  out += "</svg>\n";
  return out;
}

void emit_sankey(const FlowTable& table, const StyleConfig& style,
                 const std::filesystem::path& data_path, const std::filesystem::path& svg_path) {
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("error while writing " + path.string());
  };
  write(data_path, flow_to_json(table));
  write(svg_path, render_sankey_svg(table, style));
}

}  // namespace plantrace

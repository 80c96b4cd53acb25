#include "pitchmotif/report.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pitchmotif/errors.hpp"
#include "util/format.hpp"

namespace pitchmotif {

namespace {

using util::format_double;
using util::format_fixed;

std::string px(double v) { return format_fixed(v, 2); }

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
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

struct Panel {
  double left = 0.0;
  double top = 0.0;
  double width = 0.0;   // pixels along x
  double height = 0.0;  // pixels along y

  double sx(double x) const { return left + x / 100.0 * width; }
  double sy(double y) const { return top + (100.0 - y) / 100.0 * height; }
};

void draw_pitch(std::ostream& o, const Panel& p, const std::string& title) {
  o << "<g class=\"pitch\">\n";
  o << "<rect x=\"" << px(p.left) << "\" y=\"" << px(p.top) << "\" width=\"" << px(p.width)
    << "\" height=\"" << px(p.height) << "\" fill=\"#ffffff\" stroke=\"#444444\"/>\n";
  o << "<line x1=\"" << px(p.sx(50)) << "\" y1=\"" << px(p.top) << "\" x2=\"" << px(p.sx(50))
    << "\" y2=\"" << px(p.top + p.height) << "\" stroke=\"#444444\"/>\n";
  o << "<line x1=\"" << px(p.sx(kFinalThirdX)) << "\" y1=\"" << px(p.top) << "\" x2=\""
    << px(p.sx(kFinalThirdX)) << "\" y2=\"" << px(p.top + p.height)
    << "\" stroke=\"#999999\" stroke-dasharray=\"4 4\"/>\n";
  o << "<text x=\"" << px(p.left) << "\" y=\"" << px(p.top - 6) << "\" font-size=\"12\">"
    << escape(title) << "</text>\n";
  o << "</g>\n";
}

void draw_marker(std::ostream& o, const Panel& p, const SeqPoint& pt, const char* cls,
                 const std::string& color) {
  const double x = p.sx(pt.x);
  const double y = p.sy(pt.y);
  if (pt.kind == PointKind::Original) {
    const double r = 4.5;
    o << "<polygon class=\"" << cls << "\" points=\"" << px(x) << "," << px(y - r) << " "
      << px(x - r) << "," << px(y + r * 0.8) << " " << px(x + r) << "," << px(y + r * 0.8)
      << "\" fill=\"" << color << "\"/>\n";
  } else {
    o << "<circle class=\"" << cls << "\" cx=\"" << px(x) << "\" cy=\"" << px(y)
      << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }
}

void draw_side(std::ostream& o, const Panel& p, const DensifiedSequence& seq, const Segment& seg,
               const PitchStyle& style) {
  const int n = static_cast<int>(seq.points.size());
  // Extend outward to the closest original endpoint on each side.
  int pre_first = seg.start_idx;
  while (pre_first > 0 && seq.points[pre_first].kind != PointKind::Original) --pre_first;
  int post_last = seg.end_idx;
  while (post_last < n - 1 && seq.points[post_last].kind != PointKind::Original) ++post_last;

  draw_pitch(o, p, seq.seq_id + " [" + std::to_string(seg.start_idx) + ", " +
                       std::to_string(seg.end_idx) + "]");
  if (n > 1) {
    o << "<polyline fill=\"none\" stroke=\"" << style.background_color << "\" points=\"";
    for (int k = 0; k < n; ++k) {
      if (k > 0) o << ' ';
      o << px(p.sx(seq.points[k].x)) << "," << px(p.sy(seq.points[k].y));
    }
    o << "\"/>\n";
  }
  for (int k = 0; k < n; ++k) {
    const auto& pt = seq.points[k];
    if (k >= seg.start_idx && k <= seg.end_idx) {
      draw_marker(o, p, pt, "pattern", style.pattern_color);
    } else if (k >= pre_first && k < seg.start_idx) {
      draw_marker(o, p, pt, "pre", style.pre_color);
    } else if (k > seg.end_idx && k <= post_last) {
      draw_marker(o, p, pt, "post", style.post_color);
    } else {
      draw_marker(o, p, pt, "background", style.background_color);
    }
  }
}

struct Axes {
  double x_min, x_max, y_min, y_max;
  double left = 60, top = 20, width = 520, height = 320;

  double sx(double x) const { return left + (x - x_min) / (x_max - x_min) * width; }
  double sy(double y) const { return top + (y_max - y) / (y_max - y_min) * height; }
};

void draw_axes(std::ostream& o, const Axes& a, const std::string& x_label,
               const std::string& y_label, double x_tick, double y_tick) {
  o << "<rect x=\"" << px(a.left) << "\" y=\"" << px(a.top) << "\" width=\"" << px(a.width)
    << "\" height=\"" << px(a.height) << "\" fill=\"#ffffff\" stroke=\"#444444\"/>\n";
  for (double x = a.x_min; x <= a.x_max + 1e-9; x += x_tick) {
    o << "<text x=\"" << px(a.sx(x)) << "\" y=\"" << px(a.top + a.height + 14)
      << "\" font-size=\"10\" text-anchor=\"middle\">" << format_double(x) << "</text>\n";
  }
  for (double y = a.y_min; y <= a.y_max + 1e-9; y += y_tick) {
    o << "<text x=\"" << px(a.left - 6) << "\" y=\"" << px(a.sy(y) + 3)
      << "\" font-size=\"10\" text-anchor=\"end\">" << format_double(y) << "</text>\n";
  }
  o << "<text x=\"" << px(a.left + a.width / 2) << "\" y=\"" << px(a.top + a.height + 32)
    << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  o << "<text x=\"14\" y=\"" << px(a.top + a.height / 2) << "\" font-size=\"12\" transform=\"rotate(-90 14 "
    << px(a.top + a.height / 2) << ")\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string svg_open(double w, double h) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         px(w) + "\" height=\"" + px(h) + "\" viewBox=\"0 0 " + px(w) + " " + px(h) + "\">\n";
}

}  // namespace

void PitchStyle::validate() const {
  field.validate();
  if (!(pixels_per_meter > 0.0)) throw ConfigError("pixels_per_meter must be positive");
  const std::set<std::string> colors{background_color, pattern_color, pre_color, post_color};
  if (colors.size() != 4) throw ConfigError("pitch colors must be distinct");
}

std::string render_match(const MatchView& m, const PitchStyle& style) {
  style.validate();
  const double w = style.field.length_m * style.pixels_per_meter;
  const double h = style.field.width_m * style.pixels_per_meter;
  const double margin = 24.0;
  const Panel ref{margin, margin, w, h};
  const Panel found{2 * margin + w, margin, w, h};

  std::ostringstream o;
  o << svg_open(3 * margin + 2 * w, 2 * margin + h);
  draw_side(o, ref, m.ref, m.match.reference, style);
  draw_side(o, found, m.found, m.match.found, style);
  o << "</svg>\n";
  return o.str();
}

std::string render_spread_scatter(std::span<const SpreadRow> rows) {
  if (rows.empty()) throw EmptyInput("no spread rows to plot");
  std::set<std::string> teams;
  for (const auto& r : rows) teams.insert(r.team_id);
  std::vector<std::string> team_order(teams.begin(), teams.end());
  auto color_of = [&](const std::string& team) {
    const auto k = std::lower_bound(team_order.begin(), team_order.end(), team) - team_order.begin();
    return kPalette[static_cast<std::size_t>(k) % std::size(kPalette)];
  };

  const Axes a{-100, 100, 0, 100};
  std::ostringstream o;
  o << svg_open(720, 380);
  draw_axes(o, a, "dx (units)", "|dy| (units)", 25, 25);
  for (const auto& r : rows) {
    const double x = std::clamp(r.dx, a.x_min, a.x_max);
    const double y = std::clamp(r.dy, a.y_min, a.y_max);
    o << "<circle class=\"marker\" data-team=\"" << escape(r.team_id) << "\" data-x=\""
      << format_double(r.dx) << "\" data-y=\"" << format_double(r.dy) << "\" cx=\"" << px(a.sx(x))
      << "\" cy=\"" << px(a.sy(y)) << "\" r=\"3\" fill=\"" << color_of(r.team_id)
      << "\" fill-opacity=\"0.7\"/>\n";
  }
  for (std::size_t k = 0; k < team_order.size(); ++k) {
    const double y = a.top + 10 + 14 * static_cast<double>(k);
    o << "<circle cx=\"600\" cy=\"" << px(y) << "\" r=\"4\" fill=\"" << color_of(team_order[k])
      << "\"/>\n<text x=\"610\" y=\"" << px(y + 4) << "\" font-size=\"11\">"
      << escape(team_order[k]) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_overlap_chart(std::span<const PatternCluster> clusters) {
  if (clusters.empty()) throw EmptyInput("no clusters to plot");
  int max_occ = 0;
  for (const auto& c : clusters) max_occ = std::max(max_occ, c.occurrences);
  const Axes a{0, static_cast<double>(std::max(6, max_occ + 1)), 0, 100};

  std::ostringstream o;
  o << svg_open(620, 380);
  draw_axes(o, a, "occurrences", "overlap (%)", 1, 20);
  for (const auto& c : clusters) {
    const double pct = c.overlap_fraction() * 100.0;
    o << "<circle class=\"marker\" data-team=\"" << escape(c.team_id) << "\" data-cluster=\""
      << c.cluster_id << "\" data-x=\"" << c.occurrences << "\" data-y=\"" << format_double(pct)
      << "\" cx=\"" << px(a.sx(c.occurrences)) << "\" cy=\"" << px(a.sy(pct))
      << "\" r=\"4\" fill=\"#1f5fbf\" fill-opacity=\"0.6\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_table1_csv(std::ostream& out, std::span<const TeamSeasonStats> rows) {
  out << "team_id,n_patterns,mean_passes,std_passes,n_fte,n_team_passes,n_clusters,no_patterns\n";
  for (const auto& r : rows) {
    out << r.team_id << ',' << r.n_patterns << ',' << format_double(r.mean_passes) << ','
        << format_double(r.std_passes) << ',' << r.n_fte << ',' << r.n_team_passes << ','
        << r.n_clusters << ',' << (r.no_patterns ? 1 : 0) << '\n';
  }
}

void write_table2_csv(std::ostream& out, const PlayerOverlapTable& table) {
  out << "n_involved,n_overlap,count\n";
  for (const auto& [key, count] : table.counts) {
    out << key.first << ',' << key.second << ',' << count << '\n';
  }
}

void write_spreads_csv(std::ostream& out, std::span<const SpreadRow> rows) {
  out << "team_id,match_id,dx,dy,duration_s,length_m,fte\n";
  for (const auto& r : rows) {
    out << r.team_id << ',' << r.match_id << ',' << format_double(r.dx) << ','
        << format_double(r.dy) << ',' << format_double(r.duration_s) << ','
        << format_double(r.length_m) << ',' << (r.fte ? 1 : 0) << '\n';
  }
}

std::string clusters_to_json(std::span<const PatternCluster> clusters) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& c : clusters) {
    json j;
    j["cluster_id"] = c.cluster_id;
    j["team_id"] = c.team_id;
    j["occurrences"] = c.occurrences;
    j["overlap_fraction"] = c.overlap_fraction();
    json profile = json::object();
    for (const auto& [k, v] : c.overlap_profile) profile[std::to_string(k)] = v;
    j["overlap_profile"] = std::move(profile);
    json segs = json::array();
    for (const auto& s : c.segments) {
      segs.push_back({{"seq_id", s.seq_id}, {"start_idx", s.start_idx}, {"end_idx", s.end_idx}});
    }
    j["segments"] = std::move(segs);
    j["match_indices"] = c.match_indices;
    arr.push_back(std::move(j));
  }
  return arr.dump(1) + "\n";
}

}  // namespace pitchmotif

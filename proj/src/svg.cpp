#include "hieralign/svg.hpp"

#include <cstdio>
#include <string>

#include "hieralign/eval.hpp"

namespace hieralign {

namespace {

// Fixed palette: piece body, disagreement spans, ground-truth transitions,
// jump markers.
constexpr const char* kStripColor = "#c0c0c0";
constexpr const char* kErrorColor = "#d62728";
constexpr const char* kTransitionColor = "#000000";
constexpr const char* kJumpColor = "#1f77b4";

constexpr double kWidth = 800.0;
constexpr double kLabelWidth = 130.0;
constexpr double kRightPad = 12.0;
constexpr double kStripHeight = 22.0;
constexpr double kStripGap = 12.0;
constexpr double kTopPad = 14.0;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void rect(std::string& out, double x, double y, double w, double h, const char* fill) {
  out += "<rect x=\"" + fmt(x) + "\" y=\"" + fmt(y) + "\" width=\"" + fmt(w) +
         "\" height=\"" + fmt(h) + "\" fill=\"" + fill + "\"/>\n";
}

void vline(std::string& out, double x, double y0, double y1, const char* stroke,
           double width) {
  out += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x) +
         "\" y2=\"" + fmt(y1) + "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" +
         fmt(width) + "\"/>\n";
}

void label(std::string& out, double x, double y, const std::string& text) {
  std::string escaped;
  for (const char c : text) {
    switch (c) {
      case '&': escaped += "&amp;"; break;
      case '<': escaped += "&lt;"; break;
      case '>': escaped += "&gt;"; break;
      case '"': escaped += "&quot;"; break;
      default: escaped += c;
    }
  }
  out += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(y) +
         "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#000000\">" + escaped +
         "</text>\n";
}

}  // namespace

std::string render_strips(std::span<const std::pair<std::string, LineTimeline>> preds,
                          const LineTimeline& gt,
                          std::span<const double> jump_times) {
  validate_timeline(gt);
  const LineTimeline g = normalize_timeline(gt);
  if (g.segments.empty()) throw data_error("render_strips: empty ground truth");
  const double t0 = g.segments.front().t_start;
  const double t1 = g.segments.back().t_end;
  const double span = t1 - t0;
  const double plot_w = kWidth - kLabelWidth - kRightPad;
  const auto x_of = [&](double t) { return kLabelWidth + (t - t0) / span * plot_w; };

  const int strip_count = 1 + static_cast<int>(preds.size());
  const double height = kTopPad * 2 + strip_count * kStripHeight +
                        (strip_count - 1) * kStripGap;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         fmt(kWidth) + "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(kWidth) +
         " " + fmt(height) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Topmost strip: the ground truth with its line transitions ticked.
  double y = kTopPad;
  rect(out, kLabelWidth, y, plot_w, kStripHeight, kStripColor);
  label(out, 6, y + kStripHeight - 6, "ground truth");
  for (size_t s = 0; s + 1 < g.segments.size(); ++s) {
    if (g.segments[s].t_end == g.segments[s + 1].t_start) {
      vline(out, x_of(g.segments[s].t_end), y, y + kStripHeight, kTransitionColor, 1.5);
    }
  }

  // One strip per prediction, red where it disagrees with the ground truth.
  for (const auto& [name, pred] : preds) {
    y += kStripHeight + kStripGap;
    rect(out, kLabelWidth, y, plot_w, kStripHeight, kStripColor);
    label(out, 6, y + kStripHeight - 6, name);
    const EvalReport report = accuracy_with_collar(pred, g, 0.0);
    for (const auto& [e0, e1] : report.error_intervals) {
      rect(out, x_of(e0), y, x_of(e1) - x_of(e0), kStripHeight, kErrorColor);
    }
  }

  // Jump markers run across the whole stack.
  for (const double t : jump_times) {
    if (t < t0 || t > t1) continue;
    vline(out, x_of(t), kTopPad - 6, y + kStripHeight + 6, kJumpColor, 1.5);
  }

  out += "</svg>\n";
  return out;
}

}  // namespace hieralign

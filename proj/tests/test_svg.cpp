#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <utility>
#include <vector>

#include "hieralign/svg.hpp"

using namespace hieralign;

namespace {

using Pred = std::pair<std::string, LineTimeline>;

int count_of(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

LineTimeline two_lines() {
  LineTimeline tl;
  tl.segments = {{0, 10, 0}, {10, 20, 1}};
  return tl;
}

}  // namespace

TEST_CASE("rendering is byte-deterministic") {
  const LineTimeline gt = two_lines();
  LineTimeline pred = gt;
  pred.segments[0].t_end = 9.7;
  pred.segments[1].t_start = 9.7;
  const std::vector<Pred> preds{{"engine", pred}};
  const std::vector<double> jumps{10.0};
  const std::string a = render_strips(preds, gt, jumps);
  const std::string b = render_strips(preds, gt, jumps);
  CHECK(a == b);
  CHECK(a.rfind("<svg ", 0) == 0);
  CHECK(a.find("</svg>") != std::string::npos);
}

TEST_CASE("a perfect prediction draws no disagreement") {
  const LineTimeline gt = two_lines();
  const std::vector<Pred> preds{{"engine", gt}};
  const std::string svg = render_strips(preds, gt);
  CHECK(svg.find("#d62728") == std::string::npos);
  // The interior ground-truth transition is ticked.
  CHECK(count_of(svg, "#000000\" stroke-width=") == 1);
}

TEST_CASE("a fully wrong prediction paints the whole strip") {
  LineTimeline gt;
  gt.segments = {{0, 10, 0}};
  LineTimeline wrong;
  wrong.segments = {{0, 10, 1}};
  const std::vector<Pred> preds{{"engine", wrong}};
  const std::string svg = render_strips(preds, gt);
  CHECK(svg.find("<rect x=\"130.000\" y=\"48.000\" width=\"658.000\" height=\"22.000\" "
                 "fill=\"#d62728\"/>") != std::string::npos);
}

TEST_CASE("one strip per prediction plus the reference") {
  const LineTimeline gt = two_lines();
  const std::vector<Pred> preds{{"a", gt}, {"b", gt}};
  const std::string svg = render_strips(preds, gt);
  CHECK(count_of(svg, "fill=\"#c0c0c0\"") == 3);
  CHECK(svg.find("height=\"118.000\"") != std::string::npos);
  CHECK(svg.find(">a</text>") != std::string::npos);
  CHECK(svg.find(">b</text>") != std::string::npos);
  CHECK(svg.find(">ground truth</text>") != std::string::npos);
}

TEST_CASE("jump markers are drawn only inside the plotted range") {
  const LineTimeline gt = two_lines();
  const std::vector<Pred> preds{{"engine", gt}};
  const std::vector<double> jumps{5.0, 15.0, 50.0, -2.0};
  const std::string svg = render_strips(preds, gt, jumps);
  CHECK(count_of(svg, "#1f77b4") == 2);
}

TEST_CASE("labels are XML-escaped") {
  const LineTimeline gt = two_lines();
  const std::vector<Pred> preds{{"a<b&\"c\"", gt}};
  const std::string svg = render_strips(preds, gt);
  CHECK(svg.find("a&lt;b&amp;&quot;c&quot;") != std::string::npos);
  CHECK(svg.find(">a<b") == std::string::npos);
}

TEST_CASE("an empty ground truth cannot be rendered") {
  CHECK_THROWS_AS(render_strips({}, LineTimeline{}), data_error);
}

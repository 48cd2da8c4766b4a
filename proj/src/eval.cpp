#include "hieralign/eval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hieralign {

namespace {

using Interval = std::pair<double, double>;

// Union of possibly overlapping intervals, merged and sorted.
std::vector<Interval> merge_intervals(std::vector<Interval> xs) {
  std::vector<Interval> out;
  std::sort(xs.begin(), xs.end());
  for (const Interval& x : xs) {
    if (x.second <= x.first) continue;
    if (!out.empty() && x.first <= out.back().second) {
      out.back().second = std::max(out.back().second, x.second);
    } else {
      out.push_back(x);
    }
  }
  return out;
}

// Piecewise-constant lookup: line shown at time t, or -1 when undefined.
// Segment ends are exclusive except that nothing follows.
int line_at(const LineTimeline& tl, double t) {
  for (const TimelineSegment& s : tl.segments) {
    if (t >= s.t_start && t < s.t_end) return s.line_id;
  }
  return -1;
}

}  // namespace

LineTimeline normalize_timeline(const LineTimeline& tl) {
  LineTimeline out;
  for (const TimelineSegment& s : tl.segments) {
    if (!out.segments.empty() && out.segments.back().line_id == s.line_id &&
        out.segments.back().t_end == s.t_start) {
      out.segments.back().t_end = s.t_end;
    } else {
      out.segments.push_back(s);
    }
  }
  return out;
}

LineTimeline alignment_to_timeline(const SegmentAlignment& aln, const TimeMap& timemap) {
  validate_timemap(timemap);
  validate_alignment(aln);
  const int m = static_cast<int>(timemap.times.size());

  LineTimeline tl;
  if (aln.matches.empty()) return tl;

  for (size_t k = 0; k < aln.matches.size(); ++k) {
    const LineMatch& match = aln.matches[k];
    if (match.ref_end >= m) {
      throw data_error("alignment_to_timeline: match " + std::to_string(k) +
                       " runs past the timemap");
    }
    // Columns before the first match belong to the first matched line; a gap
    // after a match is absorbed by it (its line stays up until the next
    // match begins).
    const double t0 = k == 0 ? timemap.times[0] : timemap.times[aln.matches[k].ref_start];
    const double t1 = k + 1 < aln.matches.size()
                          ? timemap.times[aln.matches[k + 1].ref_start]
                          : timemap.times[m - 1];
    if (t0 >= t1) continue;  // zero-duration display (timestamp ties): drop
    tl.segments.push_back({t0, t1, match.line_id});
  }
  return normalize_timeline(tl);
}

EvalReport accuracy_with_collar(const LineTimeline& pred, const LineTimeline& gt,
                                double collar) {
  if (collar < 0 || !std::isfinite(collar)) {
    throw std::invalid_argument("accuracy_with_collar: collar must be finite and >= 0");
  }
  validate_timeline(pred);
  validate_timeline(gt);
  const LineTimeline p = normalize_timeline(pred);
  const LineTimeline g = normalize_timeline(gt);
  if (g.segments.empty()) throw data_error("accuracy_with_collar: empty ground truth");

  // Scored time: the ground truth's covered time minus a +-collar window
  // around every interior line-to-line transition. Only boundaries where two
  // segments actually touch count as transitions; the global start and end
  // are never collared.
  std::vector<Interval> collars;
  if (collar > 0) {
    for (size_t s = 0; s + 1 < g.segments.size(); ++s) {
      if (g.segments[s].t_end == g.segments[s + 1].t_start) {
        collars.emplace_back(g.segments[s].t_end - collar, g.segments[s].t_end + collar);
      }
    }
    collars = merge_intervals(collars);
  }

  // Sweep over every boundary of either timeline or a collar window; within
  // one elementary slice both functions are constant.
  std::vector<double> cuts;
  for (const TimelineSegment& s : g.segments) {
    cuts.push_back(s.t_start);
    cuts.push_back(s.t_end);
  }
  for (const TimelineSegment& s : p.segments) {
    cuts.push_back(s.t_start);
    cuts.push_back(s.t_end);
  }
  for (const Interval& c : collars) {
    cuts.push_back(c.first);
    cuts.push_back(c.second);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  EvalReport report;
  report.collar = collar;
  double correct = 0;
  std::vector<Interval> errors;
  for (size_t t = 0; t + 1 < cuts.size(); ++t) {
    const double a = cuts[t], b = cuts[t + 1];
    const double mid = a + (b - a) / 2;
    const int gt_line = line_at(g, mid);
    if (gt_line == -1) continue;  // outside the ground truth: not scored
    bool in_collar = false;
    for (const Interval& c : collars) in_collar = in_collar || (mid >= c.first && mid < c.second);
    if (in_collar) continue;
    report.scored_duration += b - a;
    if (line_at(p, mid) == gt_line) {
      correct += b - a;
    } else {
      errors.emplace_back(a, b);
    }
  }

  if (report.scored_duration <= 0) {
    throw data_error("accuracy_with_collar: collar leaves nothing to score");
  }
  report.accuracy = correct / report.scored_duration;
  report.error_intervals = merge_intervals(std::move(errors));
  return report;
}

}  // namespace hieralign

#pragma once

#include <utility>
#include <vector>

#include "hieralign/bscore.hpp"

namespace hieralign {

struct EvalReport {
  double accuracy = 0;
  double collar = 0;
  double scored_duration = 0;
  std::vector<std::pair<double, double>> error_intervals;
};

// Converts an alignment into the timeline a score follower would display:
// each match's line shows from its first matched column's timestamp until
// the next match's first column (the last match runs to the final
// timestamp). Columns before the first match belong to the first matched
// line; gaps are absorbed by the preceding line. Adjacent matches of the
// same line merge.
LineTimeline alignment_to_timeline(const SegmentAlignment& aln, const TimeMap& timemap);

// Fraction of ground-truth time where pred shows the right line, ignoring a
// +-collar window around every interior gt line transition (overlapping
// windows merge). Time where pred is undefined counts as incorrect. Throws
// data_error when nothing is left to score.
EvalReport accuracy_with_collar(const LineTimeline& pred, const LineTimeline& gt,
                                double collar);

// Merges touching segments that show the same line; used to canonicalize
// timelines before comparing or rendering them.
LineTimeline normalize_timeline(const LineTimeline& tl);

}  // namespace hieralign

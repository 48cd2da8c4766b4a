#pragma once

#include <span>
#include <vector>

#include "hieralign/bscore.hpp"
#include "hieralign/dtw.hpp"

namespace hieralign {

// Sheet fragments stacked into one query sequence, with the row <-> fragment
// bookkeeping both concatenated aligners need.
struct ConcatQuery {
  std::vector<PackedColumn> columns;
  std::vector<int> fragment_of_row;
  std::vector<int> first_row;  // per fragment
  std::vector<int> last_row;   // per fragment
};
ConcatQuery concat_fragments(std::span<const BootlegFragment> fragments);

struct JumpConfig {
  double jump_penalty = 0.0;
};

// Flat DTW over the concatenated query with boundary jumps: in addition to
// the regular steps, the first row of every fragment can be entered from the
// last row of any fragment one reference column earlier, at weight 1 plus
// jump_penalty. The path starts freely along the first query row and must
// reach the final reference column, ending on some fragment's last row.
// The warping path is cut at fragment boundaries into matches.
SegmentAlignment jump_dtw_align(std::span<const BootlegFragment> fragments,
                                const PerformanceSequence& ref,
                                const JumpConfig& cfg);

// Baseline: plain subsequence DTW of the concatenated query, cut at fragment
// boundaries.
SegmentAlignment subsequence_align(std::span<const BootlegFragment> fragments,
                                   const PerformanceSequence& ref);

}  // namespace hieralign

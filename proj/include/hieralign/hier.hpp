#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hieralign/bscore.hpp"
#include "hieralign/dtw.hpp"

namespace hieralign {

// Stage-1 output of the hierarchical aligner: one subsequence-DTW run per
// sheet line against the whole performance, stacked by line.
struct SegmentData {
  Matrix<double> cost;             // best score of line i's path ending at j
  Matrix<std::int32_t> path_start; // where that path begins (kNoStart if none)
  double avg_line_score = 0;       // mean over lines of best score / line length
};

// threads = 0 picks configured_threads(). Lines are independent, so the
// result does not depend on the worker count.
SegmentData build_segment_data(std::span<const BootlegFragment> fragments,
                               const PerformanceSequence& ref, int threads = 0);

// Sentinel for "no line matched yet" in the seen-line range matrices.
inline constexpr int kEmptyRange = -1;

struct TransitionCandidate {
  double weight;
  double penalty;
};

// Applicable transition candidates for moving from source line n (whose path
// has seen lines [seen_lo, seen_hi]; kEmptyRange/kEmptyRange if none) to
// destination line i. At most two apply: one regular move (next line,
// stay, or skip one) and one jump (backward to a seen line, or forward to
// just past the seen range). Regular comes first; the DP evaluates all
// returned candidates and keeps the cheapest. Returns the count written.
int transition_candidates(int n, int i, int seen_lo, int seen_hi,
                          const AlignConfig& cfg, double avg_line_score,
                          TransitionCandidate out[2]);

// Single-winner view of the rule set: the candidate that is cheapest for
// every nonpositive segment cost when one dominates, the regular move when
// neither does. nullopt when the move is disallowed outright.
std::optional<TransitionCandidate> transition_weight(int n, int i, int seen_lo,
                                                     int seen_hi,
                                                     const AlignConfig& cfg,
                                                     double avg_line_score);

enum class SegMove : std::uint8_t { None, Skip, MatchFresh, MatchFrom };
struct SegBack {
  SegMove move = SegMove::None;
  std::int32_t src_line = -1;  // source line for MatchFrom
};

// One reachable (seen-range -> best score) entry at a (line, column) cell,
// with the record of the move that produced it. src_lo/src_hi name the source
// cell's state; for Skip the source cell is (line, column-1), for MatchFrom
// it is (src_line, start-1) where start is the match's path_start.
struct RangeState {
  std::int32_t lo = kEmptyRange;
  std::int32_t hi = kEmptyRange;
  double score = 0;
  SegMove move = SegMove::None;
  std::int32_t src_line = -1;
  std::int32_t src_lo = kEmptyRange;
  std::int32_t src_hi = kEmptyRange;
};

// Stage-2 DP over (line, reference column) with the seen-line range carried
// along each path. Collapsing each cell to one best state can lose the true
// optimum (a slightly worse score with a wider seen range may enable a
// cheaper jump later), so every cell keeps the full list of reachable range
// states, ordered by (lo, hi) with the nothing-seen state first. cum,
// seen_lo, seen_hi, and back are the per-cell argmin projection of that
// list; they satisfy the documented invariants, while the backtrace walks
// the exact state table.
struct SegmentMatrices {
  Matrix<double> cum;
  Matrix<std::int32_t> seen_lo;
  Matrix<std::int32_t> seen_hi;
  Matrix<SegBack> back;
  Matrix<std::vector<RangeState>> states;
};

SegmentMatrices segment_dp(const Matrix<double>& cost,
                           const Matrix<std::int32_t>& path_start,
                           const AlignConfig& cfg, double avg_line_score);

// Argmin over the final column (ties -> smallest line index) followed by the
// backtrace. Match line ids here are line *indices* 0..L-1.
SegmentAlignment backtrace_segment_alignment(const SegmentData& data,
                                             const SegmentMatrices& m);

// The full pipeline: per-line subsequence DTW, segment DP, backtrace.
// Emitted matches carry the fragments' line_id values.
SegmentAlignment hierarchical_align(std::span<const BootlegFragment> fragments,
                                    const PerformanceSequence& ref,
                                    const AlignConfig& cfg, int threads = 0);

}  // namespace hieralign

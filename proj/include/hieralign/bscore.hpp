#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hieralign {

// Thrown for malformed or inconsistent input data (files, preconditions on
// user-supplied structures). The CLI maps it to a dedicated exit code.
class data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One column of a binary bootleg-score feature matrix: bit b is set iff a
// notehead sits at staff position b. Only positions 0..61 are meaningful;
// bits 62 and 63 are always zero.
struct PackedColumn {
  std::uint64_t bits = 0;

  static constexpr int kPositions = 62;
  static constexpr std::uint64_t kMask = (std::uint64_t{1} << kPositions) - 1;

  friend bool operator==(const PackedColumn&, const PackedColumn&) = default;
  int popcount() const;
  bool empty() const { return bits == 0; }
};

// Packs a set of staff positions into a column. Duplicate positions collapse;
// positions outside [0, 61] raise std::invalid_argument.
PackedColumn pack_column(std::span<const int> positions);
PackedColumn pack_column(std::initializer_list<int> positions);

// Sorted ascending list of set positions.
std::vector<int> unpack_column(PackedColumn col);

// One rendered line of sheet music. `page` and `pixel_range` are provenance
// for display tooling only and are never consulted by alignment.
struct BootlegFragment {
  int line_id = 0;
  int page = 0;
  std::pair<int, int> pixel_range{0, 0};
  std::vector<PackedColumn> columns;
};

// Feature sequence extracted from a performance, one column per event frame.
struct PerformanceSequence {
  std::vector<PackedColumn> columns;
};

// Timestamp in seconds of every performance column; nondecreasing, >= 0.
struct TimeMap {
  std::vector<double> times;
};

// Piecewise-constant "which line is being played" function over time.
// Segments are sorted by start, nonoverlapping, each with t_start < t_end.
struct TimelineSegment {
  double t_start = 0;
  double t_end = 0;
  int line_id = 0;
  friend bool operator==(const TimelineSegment&, const TimelineSegment&) = default;
};
struct LineTimeline {
  std::vector<TimelineSegment> segments;
  friend bool operator==(const LineTimeline&, const LineTimeline&) = default;
};

// One matched stretch: line `line_id` aligned to reference columns
// [ref_start, ref_end], inclusive on both ends.
struct LineMatch {
  int line_id = 0;
  int ref_start = 0;
  int ref_end = 0;
  friend bool operator==(const LineMatch&, const LineMatch&) = default;
};

// Alignment output: matched stretches in reference order (spans never
// overlap; gaps between them are allowed) plus the path score.
struct SegmentAlignment {
  std::vector<LineMatch> matches;
  double score = 0;
};

// Knobs of the hierarchical aligner. alpha weights the stay/skip-one line
// transitions, gamma scales the jump penalty; the two flags switch backward
// (repeat-like) and forward (cut-like) jumps on or off.
struct AlignConfig {
  double alpha = 0.5;
  double gamma = 1.0;
  bool allow_backward_jumps = true;
  bool allow_forward_jumps = true;
};

// Structural checks shared by loaders and aligners. All throw data_error
// with a message naming the offending element.
void validate_timemap(const TimeMap& tm);
void validate_timeline(const LineTimeline& tl);
void validate_alignment(const SegmentAlignment& aln);

}  // namespace hieralign

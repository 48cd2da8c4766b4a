#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "hieralign/bscore.hpp"

namespace hieralign {

// Jump structures a performance can follow. The repeatN kinds jump backward
// N times; dsalfine plays a prefix, then returns to an earlier line and ends
// early.
enum class SchemaKind { none, repeat1, repeat2, repeat3, dsalfine };

const char* to_string(SchemaKind k);
std::optional<SchemaKind> schema_from_string(std::string_view s);

// Number of boundary lines each kind samples.
int schema_boundary_count(SchemaKind k);

struct JumpSchema {
  SchemaKind kind = SchemaKind::none;
  std::vector<int> boundaries;                    // sorted, interior lines
  std::vector<std::pair<int, int>> play_order;    // [start, end) line intervals
  std::uint64_t seed = 0;
};

// Line intervals played for the given kind and sorted boundaries:
//   none:     [0, L)
//   repeats:  [0, p2), [p1, p3), ..., [p_{k-1}, L)   (k boundaries)
//   dsalfine: [0, p3), [p1, p2)
std::vector<std::pair<int, int>> derive_play_order(SchemaKind kind,
                                                   std::span<const int> boundaries,
                                                   int line_count);

// Samples the boundaries uniformly without replacement from the interior
// lines {1..L-1} and derives the play order. Deterministic per seed.
JumpSchema sample_schema(int line_count, SchemaKind kind, std::uint64_t seed);

struct SplicedPiece {
  PerformanceSequence perf;
  TimeMap timemap;
  LineTimeline gt;
  std::vector<double> splice_times;  // output times where a new interval begins
};

// Rebuilds the performance as if the player had followed the schema: the
// column ranges of the played intervals are concatenated, timestamps are
// re-accumulated so deltas inside an interval survive and the intervals
// stitch continuously, and the ground truth is rebuilt over the new columns.
SplicedPiece splice_performance(const PerformanceSequence& perf, const TimeMap& timemap,
                                const LineTimeline& gt, const JumpSchema& schema);

struct SynthPiece {
  std::vector<BootlegFragment> fragments;
  PerformanceSequence perf;
  TimeMap timemap;
  LineTimeline gt;
};

// Deterministic synthetic piece: line_count fragments of cols_per_line
// globally distinct nonzero random columns (each bit set with probability
// fill_density), performance = their exact concatenation at 0.5 s per
// column.
SynthPiece synth_piece(std::uint64_t seed, int line_count, int cols_per_line,
                       double fill_density);

// Copy of perf with each column independently replaced, with the given
// probability, by a fresh random nonzero column. Used to stress aligners.
PerformanceSequence corrupt_performance(const PerformanceSequence& perf, double rate,
                                        std::uint64_t seed);

}  // namespace hieralign

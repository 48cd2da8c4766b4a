#include "hieralign/bscore.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace hieralign {

int PackedColumn::popcount() const { return std::popcount(bits); }

PackedColumn pack_column(std::span<const int> positions) {
  PackedColumn col;
  for (const int p : positions) {
    if (p < 0 || p >= PackedColumn::kPositions) {
      throw std::invalid_argument("pack_column: position " + std::to_string(p) +
                                  " outside [0, 61]");
    }
    col.bits |= std::uint64_t{1} << p;
  }
  return col;
}

PackedColumn pack_column(std::initializer_list<int> positions) {
  return pack_column(std::span<const int>(positions.begin(), positions.size()));
}

std::vector<int> unpack_column(PackedColumn col) {
  std::vector<int> out;
  for (int p = 0; p < PackedColumn::kPositions; ++p) {
    if (col.bits >> p & 1) out.push_back(p);
  }
  return out;
}

void validate_timemap(const TimeMap& tm) {
  if (tm.times.empty()) throw data_error("timemap: empty");
  if (!(tm.times.front() >= 0.0)) throw data_error("timemap: times[0] is negative");
  for (size_t i = 0; i < tm.times.size(); ++i) {
    if (!std::isfinite(tm.times[i])) {
      throw data_error("timemap: entry " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && tm.times[i] < tm.times[i - 1]) {
      throw data_error("timemap: entry " + std::to_string(i) + " decreases");
    }
  }
}

void validate_timeline(const LineTimeline& tl) {
  for (size_t i = 0; i < tl.segments.size(); ++i) {
    const TimelineSegment& s = tl.segments[i];
    if (!std::isfinite(s.t_start) || !std::isfinite(s.t_end) || !(s.t_start < s.t_end)) {
      throw data_error("timeline: segment " + std::to_string(i) +
                       " has an empty or invalid time span");
    }
    if (i > 0 && s.t_start < tl.segments[i - 1].t_end) {
      throw data_error("timeline: segment " + std::to_string(i) +
                       " overlaps its predecessor");
    }
  }
}

void validate_alignment(const SegmentAlignment& aln) {
  for (size_t i = 0; i < aln.matches.size(); ++i) {
    const LineMatch& m = aln.matches[i];
    if (m.ref_start < 0 || m.ref_end < m.ref_start) {
      throw data_error("alignment: match " + std::to_string(i) +
                       " has an invalid reference span");
    }
    if (i > 0 && m.ref_start <= aln.matches[i - 1].ref_end) {
      throw data_error("alignment: match " + std::to_string(i) +
                       " overlaps its predecessor");
    }
  }
}

}  // namespace hieralign

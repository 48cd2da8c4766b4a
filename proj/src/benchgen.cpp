#include "hieralign/benchgen.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>

#include "hieralign/rng.hpp"

namespace hieralign {

const char* to_string(SchemaKind k) {
  switch (k) {
    case SchemaKind::none: return "none";
    case SchemaKind::repeat1: return "repeat1";
    case SchemaKind::repeat2: return "repeat2";
    case SchemaKind::repeat3: return "repeat3";
    case SchemaKind::dsalfine: return "dsalfine";
  }
  return "?";
}

std::optional<SchemaKind> schema_from_string(std::string_view s) {
  for (const SchemaKind k : {SchemaKind::none, SchemaKind::repeat1, SchemaKind::repeat2,
                             SchemaKind::repeat3, SchemaKind::dsalfine}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

int schema_boundary_count(SchemaKind k) {
  switch (k) {
    case SchemaKind::none: return 0;
    case SchemaKind::repeat1: return 2;
    case SchemaKind::repeat2: return 3;
    case SchemaKind::repeat3: return 4;
    case SchemaKind::dsalfine: return 3;
  }
  return 0;
}

std::vector<std::pair<int, int>> derive_play_order(SchemaKind kind,
                                                   std::span<const int> boundaries,
                                                   int line_count) {
  const int k = schema_boundary_count(kind);
  if (static_cast<int>(boundaries.size()) != k) {
    throw data_error("schema: expected " + std::to_string(k) + " boundaries, got " +
                     std::to_string(boundaries.size()));
  }
  for (int t = 0; t < k; ++t) {
    if (boundaries[t] < 1 || boundaries[t] >= line_count) {
      throw data_error("schema: boundary " + std::to_string(boundaries[t]) +
                       " outside the interior lines");
    }
    if (t > 0 && boundaries[t] <= boundaries[t - 1]) {
      throw data_error("schema: boundaries must be strictly increasing");
    }
  }

  std::vector<std::pair<int, int>> order;
  if (kind == SchemaKind::none) {
    order.emplace_back(0, line_count);
  } else if (kind == SchemaKind::dsalfine) {
    // Play up to the "fine" mark, then return once to an earlier stretch.
    order.emplace_back(0, boundaries[2]);
    order.emplace_back(boundaries[0], boundaries[1]);
  } else {
    // r repeats from k = r + 1 boundaries: each pass starts at the previous
    // jump-back target and runs one boundary further than the pass before.
    for (int t = 0; t < k; ++t) {
      const int lo = t == 0 ? 0 : boundaries[t - 1];
      const int hi = t == k - 1 ? line_count : boundaries[t + 1];
      order.emplace_back(lo, hi);
    }
  }
  for (const auto& [lo, hi] : order) {
    if (lo >= hi) throw data_error("schema: derived an empty play interval");
  }
  return order;
}

JumpSchema sample_schema(int line_count, SchemaKind kind, std::uint64_t seed) {
  const int k = schema_boundary_count(kind);
  if (line_count < k + 1) {
    throw data_error("sample_schema: piece has " + std::to_string(line_count) +
                     " lines but the schema needs at least " + std::to_string(k + 1));
  }
  JumpSchema schema;
  schema.kind = kind;
  schema.seed = seed;
  if (k > 0) {
    std::mt19937_64 rng(seed);
    schema.boundaries = sample_distinct(rng, 1, line_count - 1, k);
  }
  schema.play_order = derive_play_order(kind, schema.boundaries, line_count);
  return schema;
}

namespace {

// Column span of every gt segment, in segment order. The gt must partition
// the columns: each column's timestamp falls in exactly one segment (the
// final segment also owns its closing timestamp), spans are contiguous and
// cover every column.
std::vector<std::pair<int, int>> column_spans(const TimeMap& tm, const LineTimeline& gt) {
  const int m = static_cast<int>(tm.times.size());
  const int segs = static_cast<int>(gt.segments.size());
  if (segs == 0) throw data_error("splice: ground truth has no segments");

  std::vector<std::pair<int, int>> spans(segs, {m, -1});
  int seg = 0;
  for (int c = 0; c < m; ++c) {
    const double t = tm.times[c];
    while (seg < segs &&
           !(t >= gt.segments[seg].t_start &&
             (t < gt.segments[seg].t_end || (seg == segs - 1 && t <= gt.segments[seg].t_end)))) {
      ++seg;
    }
    if (seg >= segs) {
      throw data_error("splice: column " + std::to_string(c) +
                       " falls outside every ground-truth segment");
    }
    if (spans[seg].first > c) spans[seg].first = c;
    spans[seg].second = c;
  }
  for (int s = 0; s < segs; ++s) {
    if (spans[s].second < spans[s].first) {
      throw data_error("splice: ground-truth segment " + std::to_string(s) +
                       " contains no columns");
    }
  }
  return spans;
}

}  // namespace

SplicedPiece splice_performance(const PerformanceSequence& perf, const TimeMap& timemap,
                                const LineTimeline& gt, const JumpSchema& schema) {
  validate_timemap(timemap);
  validate_timeline(gt);
  if (timemap.times.size() != perf.columns.size()) {
    throw data_error("splice: timemap and performance lengths differ");
  }

  if (schema.kind == SchemaKind::none) {
    return {perf, timemap, gt, {}};
  }

  const std::vector<std::pair<int, int>> spans = column_spans(timemap, gt);
  const int line_count = static_cast<int>(gt.segments.size());

  SplicedPiece out;
  // Order of played line occurrences, and the output column span of each.
  std::vector<int> played;             // gt segment index per occurrence
  std::vector<int> occ_first_col;      // first output column per occurrence

  double acc = 0;  // output time where the current interval begins
  for (size_t q = 0; q < schema.play_order.size(); ++q) {
    const auto [lo, hi] = schema.play_order[q];
    if (lo < 0 || hi > line_count || lo >= hi) {
      throw data_error("splice: play interval outside the piece");
    }
    if (q > 0) out.splice_times.push_back(acc);
    const double interval_t0 = gt.segments[lo].t_start;
    for (int line = lo; line < hi; ++line) {
      played.push_back(line);
      occ_first_col.push_back(static_cast<int>(out.perf.columns.size()));
      for (int c = spans[line].first; c <= spans[line].second; ++c) {
        out.perf.columns.push_back(perf.columns[c]);
        out.timemap.times.push_back(acc + timemap.times[c] - interval_t0);
      }
    }
    // Intervals stitch continuously: the next one starts where this one's
    // audio ends, at the closing line boundary.
    acc += gt.segments[hi - 1].t_end - interval_t0;
  }

  // Rebuild the ground truth over the output columns with the same
  // convention the timeline converter uses: a line runs from its first
  // column's timestamp to the next occurrence's first timestamp, the last
  // one to the final timestamp.
  const int m_out = static_cast<int>(out.perf.columns.size());
  for (size_t o = 0; o < played.size(); ++o) {
    const double t0 = out.timemap.times[occ_first_col[o]];
    const double t1 = o + 1 < played.size() ? out.timemap.times[occ_first_col[o + 1]]
                                            : out.timemap.times[m_out - 1];
    if (!(t0 < t1)) {
      throw data_error("splice: output line occurrence " + std::to_string(o) +
                       " collapses to zero duration");
    }
    out.gt.segments.push_back({t0, t1, gt.segments[played[o]].line_id});
  }
  return out;
}

namespace {

PackedColumn random_column(std::mt19937_64& rng, double density) {
  PackedColumn col;
  for (int b = 0; b < PackedColumn::kPositions; ++b) {
    if (bernoulli(rng, density)) col.bits |= std::uint64_t{1} << b;
  }
  return col;
}

}  // namespace

SynthPiece synth_piece(std::uint64_t seed, int line_count, int cols_per_line,
                       double fill_density) {
  if (line_count < 1) throw std::invalid_argument("synth_piece: need at least one line");
  if (cols_per_line < 1) throw std::invalid_argument("synth_piece: need at least one column");
  if (!(fill_density > 0.0 && fill_density <= 1.0)) {
    throw std::invalid_argument("synth_piece: fill_density must be in (0, 1]");
  }

  std::mt19937_64 rng(seed);
  std::set<std::uint64_t> used;
  SynthPiece piece;
  constexpr double kSecondsPerColumn = 0.5;

  for (int i = 0; i < line_count; ++i) {
    BootlegFragment frag;
    frag.line_id = i;
    frag.page = 1 + i / 4;
    frag.pixel_range = {200 * (i % 4), 200 * (i % 4) + 180};
    for (int c = 0; c < cols_per_line; ++c) {
      // Distinct nonzero columns keep every cross-line cost above -1, which
      // pins the optimal alignment to the planted one.
      PackedColumn col;
      do {
        col = random_column(rng, fill_density);
      } while (col.empty() || !used.insert(col.bits).second);
      frag.columns.push_back(col);
      piece.perf.columns.push_back(col);
      piece.timemap.times.push_back(kSecondsPerColumn * static_cast<double>(piece.perf.columns.size() - 1));
    }
    piece.fragments.push_back(std::move(frag));
  }

  const int m = line_count * cols_per_line;
  for (int i = 0; i < line_count; ++i) {
    const double t0 = kSecondsPerColumn * (i * cols_per_line);
    double t1 = kSecondsPerColumn * ((i + 1) * cols_per_line);
    // The last line ends at the final timestamp, matching what a perfect
    // alignment can express; a single trailing column keeps its nominal
    // duration instead of collapsing.
    if (i == line_count - 1) t1 = std::max(piece.timemap.times[m - 1], t0 + kSecondsPerColumn);
    piece.gt.segments.push_back({t0, t1, i});
  }
  return piece;
}

PerformanceSequence corrupt_performance(const PerformanceSequence& perf, double rate,
                                        std::uint64_t seed) {
  if (rate < 0.0 || rate > 1.0) {
    throw std::invalid_argument("corrupt_performance: rate must be in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  PerformanceSequence out = perf;
  for (PackedColumn& col : out.columns) {
    if (bernoulli(rng, rate)) {
      PackedColumn fresh;
      do {
        fresh = random_column(rng, 0.1);
      } while (fresh.empty());
      col = fresh;
    }
  }
  return out;
}

}  // namespace hieralign

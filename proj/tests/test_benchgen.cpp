#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "hieralign/benchgen.hpp"

using namespace hieralign;

namespace {
using Order = std::vector<std::pair<int, int>>;
}

TEST_CASE("schema kind names round-trip") {
  for (const SchemaKind k : {SchemaKind::none, SchemaKind::repeat1, SchemaKind::repeat2,
                             SchemaKind::repeat3, SchemaKind::dsalfine}) {
    const auto back = schema_from_string(to_string(k));
    REQUIRE(back.has_value());
    CHECK(*back == k);
  }
  CHECK(!schema_from_string("repeat4").has_value());
  CHECK(!schema_from_string("").has_value());
}

TEST_CASE("boundary counts per kind") {
  CHECK(schema_boundary_count(SchemaKind::none) == 0);
  CHECK(schema_boundary_count(SchemaKind::repeat1) == 2);
  CHECK(schema_boundary_count(SchemaKind::repeat2) == 3);
  CHECK(schema_boundary_count(SchemaKind::repeat3) == 4);
  CHECK(schema_boundary_count(SchemaKind::dsalfine) == 3);
}

TEST_CASE("play orders: pinned examples") {
  CHECK(derive_play_order(SchemaKind::none, std::vector<int>{}, 6) == Order{{0, 6}});
  CHECK(derive_play_order(SchemaKind::repeat1, std::vector<int>{1, 3}, 5) ==
        Order{{0, 3}, {1, 5}});
  CHECK(derive_play_order(SchemaKind::repeat2, std::vector<int>{1, 3, 5}, 6) ==
        Order{{0, 3}, {1, 5}, {3, 6}});
  CHECK(derive_play_order(SchemaKind::repeat3, std::vector<int>{1, 2, 4, 6}, 7) ==
        Order{{0, 2}, {1, 4}, {2, 6}, {4, 7}});
  CHECK(derive_play_order(SchemaKind::dsalfine, std::vector<int>{1, 3, 4}, 6) ==
        Order{{0, 4}, {1, 3}});
}

TEST_CASE("play orders: malformed boundaries are rejected") {
  CHECK_THROWS_AS(derive_play_order(SchemaKind::repeat1, std::vector<int>{1}, 5), data_error);
  CHECK_THROWS_AS(derive_play_order(SchemaKind::repeat1, std::vector<int>{0, 3}, 5),
                  data_error);
  CHECK_THROWS_AS(derive_play_order(SchemaKind::repeat1, std::vector<int>{1, 5}, 5),
                  data_error);
  CHECK_THROWS_AS(derive_play_order(SchemaKind::repeat1, std::vector<int>{3, 1}, 5),
                  data_error);
  CHECK_THROWS_AS(derive_play_order(SchemaKind::repeat1, std::vector<int>{2, 2}, 5),
                  data_error);
}

TEST_CASE("sampling schemas is deterministic and valid") {
  for (const SchemaKind kind : {SchemaKind::repeat1, SchemaKind::repeat2,
                                SchemaKind::repeat3, SchemaKind::dsalfine}) {
    const JumpSchema a = sample_schema(9, kind, 42);
    const JumpSchema b = sample_schema(9, kind, 42);
    CHECK(a.boundaries == b.boundaries);
    CHECK(a.play_order == b.play_order);
    CHECK(a.seed == 42);
    CHECK(a.kind == kind);
    REQUIRE(static_cast<int>(a.boundaries.size()) == schema_boundary_count(kind));
    for (size_t t = 0; t < a.boundaries.size(); ++t) {
      CHECK(a.boundaries[t] >= 1);
      CHECK(a.boundaries[t] <= 8);
      if (t > 0) CHECK(a.boundaries[t] > a.boundaries[t - 1]);
    }
  }
  const JumpSchema none = sample_schema(4, SchemaKind::none, 7);
  CHECK(none.boundaries.empty());
  CHECK(none.play_order == Order{{0, 4}});

  // Different seeds eventually sample different boundaries.
  bool any_diff = false;
  const JumpSchema base = sample_schema(9, SchemaKind::repeat1, 0);
  for (std::uint64_t s = 1; s < 12 && !any_diff; ++s) {
    any_diff = sample_schema(9, SchemaKind::repeat1, s).boundaries != base.boundaries;
  }
  CHECK(any_diff);
}

TEST_CASE("sampling rejects pieces with too few lines") {
  CHECK_THROWS_AS(sample_schema(4, SchemaKind::repeat3, 1), data_error);
  CHECK_THROWS_AS(sample_schema(2, SchemaKind::repeat1, 1), data_error);
  CHECK_NOTHROW(sample_schema(5, SchemaKind::repeat3, 1));
  CHECK_NOTHROW(sample_schema(3, SchemaKind::repeat1, 1));
}

TEST_CASE("synthetic pieces are deterministic, distinct, and well-timed") {
  const SynthPiece a = synth_piece(77, 4, 8, 0.1);
  const SynthPiece b = synth_piece(77, 4, 8, 0.1);
  REQUIRE(a.fragments.size() == 4);
  REQUIRE(a.perf.columns.size() == 32);
  REQUIRE(a.timemap.times.size() == 32);

  for (int i = 0; i < 4; ++i) {
    CHECK(a.fragments[i].line_id == i);
    CHECK(a.fragments[i].columns.size() == 8);
    CHECK(a.fragments[i].columns == b.fragments[i].columns);
  }
  CHECK(a.perf.columns == b.perf.columns);

  std::set<std::uint64_t> bits;
  for (const PackedColumn& col : a.perf.columns) {
    CHECK(!col.empty());
    bits.insert(col.bits);
  }
  CHECK(bits.size() == 32);  // globally distinct

  for (int c = 0; c < 32; ++c) CHECK(a.timemap.times[c] == 0.5 * c);

  REQUIRE(a.gt.segments.size() == 4);
  CHECK(a.gt.segments[0] == TimelineSegment{0.0, 4.0, 0});
  CHECK(a.gt.segments[1] == TimelineSegment{4.0, 8.0, 1});
  CHECK(a.gt.segments[2] == TimelineSegment{8.0, 12.0, 2});
  // The closing segment ends at the final timestamp, not one nominal column
  // later, so a perfect alignment can cover the ground truth exactly.
  CHECK(a.gt.segments[3] == TimelineSegment{12.0, 15.5, 3});

  const SynthPiece c = synth_piece(78, 4, 8, 0.1);
  CHECK(a.perf.columns != c.perf.columns);
}

TEST_CASE("a single-column piece keeps a nonzero closing duration") {
  const SynthPiece p = synth_piece(5, 1, 1, 0.2);
  REQUIRE(p.gt.segments.size() == 1);
  CHECK(p.gt.segments[0] == TimelineSegment{0.0, 0.5, 0});
}

TEST_CASE("splicing with no schema is the identity") {
  const SynthPiece piece = synth_piece(11, 5, 8, 0.1);
  JumpSchema schema;
  schema.kind = SchemaKind::none;
  schema.play_order = {{0, 5}};
  const SplicedPiece s = splice_performance(piece.perf, piece.timemap, piece.gt, schema);
  CHECK(s.perf.columns == piece.perf.columns);
  CHECK(s.timemap.times == piece.timemap.times);
  CHECK(s.gt == piece.gt);
  CHECK(s.splice_times.empty());
}

TEST_CASE("splicing a single repeat: pinned example") {
  const SynthPiece piece = synth_piece(12, 5, 8, 0.1);
  JumpSchema schema;
  schema.kind = SchemaKind::repeat1;
  schema.boundaries = {1, 3};
  schema.play_order = derive_play_order(schema.kind, schema.boundaries, 5);
  const SplicedPiece s = splice_performance(piece.perf, piece.timemap, piece.gt, schema);

  // Lines played: 0 1 2 | 1 2 3 4  ->  56 columns.
  REQUIRE(s.perf.columns.size() == 56);
  REQUIRE(s.timemap.times.size() == 56);
  const std::vector<int> played{0, 1, 2, 1, 2, 3, 4};
  for (size_t o = 0; o < played.size(); ++o) {
    for (int c = 0; c < 8; ++c) {
      CHECK(s.perf.columns[8 * o + c] ==
            piece.fragments[played[o]].columns[static_cast<size_t>(c)]);
    }
  }
  // Timestamps stay uniform: deltas inside intervals survive and the second
  // interval stitches on continuously.
  for (int c = 0; c < 56; ++c) CHECK(s.timemap.times[c] == 0.5 * c);
  CHECK(s.splice_times == std::vector<double>{12.0});

  REQUIRE(s.gt.segments.size() == 7);
  for (size_t o = 0; o < played.size(); ++o) {
    CHECK(s.gt.segments[o].line_id == played[o]);
    CHECK(s.gt.segments[o].t_start == 4.0 * o);
    CHECK(s.gt.segments[o].t_end == (o + 1 < played.size() ? 4.0 * (o + 1) : 27.5));
  }
}

TEST_CASE("splicing reuses exact column spans under nonuniform timing") {
  // Two lines of two columns with uneven deltas; the repeat must preserve
  // each interval's internal deltas.
  SynthPiece piece = synth_piece(13, 3, 2, 0.2);
  piece.timemap.times = {0.0, 1.0, 3.0, 3.5, 4.0, 6.0};
  piece.gt.segments = {{0.0, 3.0, 0}, {3.0, 4.0, 1}, {4.0, 6.0, 2}};
  JumpSchema schema;
  schema.kind = SchemaKind::repeat1;
  schema.boundaries = {1, 2};
  schema.play_order = derive_play_order(schema.kind, schema.boundaries, 3);  // [0,2) [1,3)
  const SplicedPiece s = splice_performance(piece.perf, piece.timemap, piece.gt, schema);

  REQUIRE(s.perf.columns.size() == 8);
  CHECK(s.timemap.times ==
        std::vector<double>{0.0, 1.0, 3.0, 3.5, 4.0, 4.5, 5.0, 7.0});
  CHECK(s.splice_times == std::vector<double>{4.0});
  REQUIRE(s.gt.segments.size() == 4);
  CHECK(s.gt.segments[0] == TimelineSegment{0.0, 3.0, 0});
  CHECK(s.gt.segments[1] == TimelineSegment{3.0, 4.0, 1});
  CHECK(s.gt.segments[2] == TimelineSegment{4.0, 5.0, 1});
  CHECK(s.gt.segments[3] == TimelineSegment{5.0, 7.0, 2});
}

TEST_CASE("splicing validates lengths and coverage") {
  const SynthPiece piece = synth_piece(14, 3, 4, 0.1);
  JumpSchema schema;
  schema.kind = SchemaKind::repeat1;
  schema.boundaries = {1, 2};
  schema.play_order = derive_play_order(schema.kind, schema.boundaries, 3);

  TimeMap short_map = piece.timemap;
  short_map.times.pop_back();
  CHECK_THROWS_AS(splice_performance(piece.perf, short_map, piece.gt, schema), data_error);

  LineTimeline gapped = piece.gt;
  gapped.segments[1].t_start = 4.5;  // column at t=4.0 falls in no segment
  CHECK_THROWS_AS(splice_performance(piece.perf, piece.timemap, gapped, schema),
                  data_error);
}

TEST_CASE("corruption: rate zero is the identity, rate one replaces everything") {
  const SynthPiece piece = synth_piece(15, 4, 10, 0.1);
  const PerformanceSequence zero = corrupt_performance(piece.perf, 0.0, 123);
  CHECK(zero.columns == piece.perf.columns);

  const PerformanceSequence one = corrupt_performance(piece.perf, 1.0, 123);
  const PerformanceSequence one_again = corrupt_performance(piece.perf, 1.0, 123);
  CHECK(one.columns == one_again.columns);
  int changed = 0;
  for (size_t c = 0; c < one.columns.size(); ++c) {
    CHECK(!one.columns[c].empty());
    if (!(one.columns[c] == piece.perf.columns[c])) ++changed;
  }
  CHECK(changed >= 38);  // replacements rarely collide with the original

  const PerformanceSequence other = corrupt_performance(piece.perf, 1.0, 124);
  CHECK(other.columns != one.columns);

  CHECK_THROWS_AS(corrupt_performance(piece.perf, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(corrupt_performance(piece.perf, -0.1, 1), std::invalid_argument);
}

TEST_CASE("partial corruption changes roughly the requested fraction") {
  const SynthPiece piece = synth_piece(16, 5, 40, 0.1);  // 200 columns
  const PerformanceSequence half = corrupt_performance(piece.perf, 0.5, 9);
  int changed = 0;
  for (size_t c = 0; c < half.columns.size(); ++c) {
    if (!(half.columns[c] == piece.perf.columns[c])) ++changed;
  }
  CHECK(changed > 60);
  CHECK(changed < 140);
}

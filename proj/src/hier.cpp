#include "hieralign/hier.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "hieralign/threads.hpp"

namespace hieralign {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SegmentData build_segment_data(std::span<const BootlegFragment> fragments,
                               const PerformanceSequence& ref, int threads) {
  const int line_count = static_cast<int>(fragments.size());
  if (line_count == 0) throw std::invalid_argument("build_segment_data: no fragments");
  const int m = static_cast<int>(ref.columns.size());
  if (m == 0) throw std::invalid_argument("build_segment_data: empty reference");

  SegmentData data;
  data.cost = Matrix<double>(line_count, m, kInf);
  data.path_start = Matrix<std::int32_t>(line_count, m, kNoStart);

  // Lines are independent subsequence-DTW runs; fan them out.
  parallel_for(line_count, threads == 0 ? configured_threads() : threads, [&](int i) {
    const SubseqResult r = subsequence_dtw(pairwise_cost(fragments[i], ref));
    for (int j = 0; j < m; ++j) {
      data.cost(i, j) = r.last_row[j];
      data.path_start(i, j) = r.path_start[j];
    }
  });

  // Average of each line's best achievable score, normalized by the line's
  // length so the figure is in per-column units; the jump penalty is priced
  // off this. Normalizing keeps the penalty strictly below one full line's
  // worth of matching: an un-normalized mean makes a backward jump followed
  // by a single re-matched line a wash, and any stray cross-line similarity
  // then beats the genuine jump. Lines that cannot match anywhere (reference
  // shorter than the line needs) are left out rather than poisoning the mean
  // with infinities.
  double sum = 0;
  int finite = 0;
  for (int i = 0; i < line_count; ++i) {
    double best = kInf;
    for (int j = 0; j < m; ++j) best = std::min(best, data.cost(i, j));
    if (best < kInf) {
      sum += best / static_cast<double>(fragments[i].columns.size());
      ++finite;
    }
  }
  data.avg_line_score = finite > 0 ? sum / finite : 0.0;
  return data;
}

int transition_candidates(int n, int i, int seen_lo, int seen_hi,
                          const AlignConfig& cfg, double avg_line_score,
                          TransitionCandidate out[2]) {
  int count = 0;
  // Regular moves: next line, stay (slow down), skip one (speed up). At most
  // one of the three can describe a given (n, i) pair.
  if (i == n + 1) {
    out[count++] = {1.0, 0.0};
  } else if (i == n) {
    out[count++] = {cfg.alpha, 0.0};
  } else if (i == n + 2) {
    out[count++] = {cfg.alpha, 0.0};
  }

  // Jumps need a nonempty seen range: a path that has matched nothing yet
  // has nowhere to jump back to.
  if (seen_lo != kEmptyRange) {
    const double penalty = -cfg.gamma * avg_line_score;
    if (cfg.allow_backward_jumps && i >= seen_lo && i <= seen_hi) {
      // Skip the jump when an equal-weight zero-penalty regular move is
      // already collected; it can never price lower then.
      if (!(count > 0 && out[0].weight == 1.0 && penalty >= 0.0)) {
        out[count++] = {1.0, penalty};
      }
    } else if (cfg.allow_forward_jumps && i == seen_hi + 1 && i != n && i != n + 1 &&
               i != n + 2) {
      out[count++] = {1.0, penalty};
    }
  }
  return count;
}

std::optional<TransitionCandidate> transition_weight(int n, int i, int seen_lo,
                                                     int seen_hi,
                                                     const AlignConfig& cfg,
                                                     double avg_line_score) {
  TransitionCandidate cand[2];
  const int count = transition_candidates(n, i, seen_lo, seen_hi, cfg, avg_line_score, cand);
  if (count == 0) return std::nullopt;
  if (count == 1) return cand[0];
  // Segment costs are nonpositive, so a candidate with at least the weight
  // and at most the penalty of the other always wins; otherwise report the
  // regular move (the DP itself prices both against the actual cost).
  if (cand[1].weight >= cand[0].weight && cand[1].penalty <= cand[0].penalty) return cand[1];
  return cand[0];
}

namespace {

bool state_before(const RangeState& s, std::int32_t lo, std::int32_t hi) {
  return s.lo != lo ? s.lo < lo : s.hi < hi;
}

// First strictly better candidate wins; equal scores keep the incumbent, so
// earlier-generated candidates settle ties. Cells stay sorted by (lo, hi),
// which puts the nothing-seen state (kEmptyRange) first.
void relax_state(std::vector<RangeState>& cell, const RangeState& cand) {
  const auto it = std::lower_bound(
      cell.begin(), cell.end(), cand,
      [](const RangeState& s, const RangeState& c) { return state_before(s, c.lo, c.hi); });
  if (it != cell.end() && it->lo == cand.lo && it->hi == cand.hi) {
    if (cand.score < it->score) *it = cand;
  } else {
    cell.insert(it, cand);
  }
}

// A state known to exist in the cell, addressed by its range key.
const RangeState& state_at(const std::vector<RangeState>& cell, std::int32_t lo,
                           std::int32_t hi) {
  const auto it = std::lower_bound(
      cell.begin(), cell.end(), std::pair{lo, hi},
      [](const RangeState& s, const std::pair<std::int32_t, std::int32_t>& key) {
        return state_before(s, key.first, key.second);
      });
  return *it;
}

}  // namespace

SegmentMatrices segment_dp(const Matrix<double>& cost,
                           const Matrix<std::int32_t>& path_start,
                           const AlignConfig& cfg, double avg_line_score) {
  const int line_count = cost.rows();
  const int m = cost.cols();
  if (line_count == 0 || m == 0) throw std::invalid_argument("segment_dp: empty input");
  if (path_start.rows() != line_count || path_start.cols() != m) {
    throw std::invalid_argument("segment_dp: cost/path_start shape mismatch");
  }

  SegmentMatrices dp;
  dp.cum = Matrix<double>(line_count, m, 0.0);
  dp.seen_lo = Matrix<std::int32_t>(line_count, m, kEmptyRange);
  dp.seen_hi = Matrix<std::int32_t>(line_count, m, kEmptyRange);
  dp.back = Matrix<SegBack>(line_count, m);
  dp.states = Matrix<std::vector<RangeState>>(line_count, m);

  // Column 0 is the virtual start: every line begins at score 0 having seen
  // nothing. Columns advance left to right, so every cell's sources (the held
  // column at j-1, match sources at k-1 < j) are final before it is built.
  for (int i = 0; i < line_count; ++i) dp.states(i, 0).push_back(RangeState{});

  TransitionCandidate cand[2];
  for (int j = 1; j < m; ++j) {
    for (int i = 0; i < line_count; ++i) {
      std::vector<RangeState>& cell = dp.states(i, j);

      // Hold the column without matching: every source state carries over
      // with score and range verbatim.
      for (const RangeState& s : dp.states(i, j - 1)) {
        relax_state(cell, {s.lo, s.hi, s.score, SegMove::Skip, -1, s.lo, s.hi});
      }

      const double c = cost(i, j);
      if (c < kInf) {
        const int k = path_start(i, j);
        if (k == 0) {
          // A path that starts at the first reference column answers to no
          // predecessor: fresh start at full weight, no penalty.
          relax_state(cell, {static_cast<std::int32_t>(i), static_cast<std::int32_t>(i), c,
                             SegMove::MatchFresh, -1, kEmptyRange, kEmptyRange});
        } else {
          for (int src = 0; src < line_count; ++src) {
            for (const RangeState& s : dp.states(src, k - 1)) {
              const int nc =
                  transition_candidates(src, i, s.lo, s.hi, cfg, avg_line_score, cand);
              for (int t = 0; t < nc; ++t) {
                const double v = s.score + cand[t].weight * c + cand[t].penalty;
                const std::int32_t lo =
                    s.lo == kEmptyRange ? i : std::min<std::int32_t>(s.lo, i);
                const std::int32_t hi =
                    s.hi == kEmptyRange ? i : std::max<std::int32_t>(s.hi, i);
                relax_state(cell, {lo, hi, v, SegMove::MatchFrom,
                                   static_cast<std::int32_t>(src), s.lo, s.hi});
              }
            }
          }
        }
      }

      // Per-cell argmin projection; ties keep the earliest state in (lo, hi)
      // order, which puts the nothing-seen state first.
      const RangeState* best = &cell.front();
      for (const RangeState& s : cell) {
        if (s.score < best->score) best = &s;
      }
      dp.cum(i, j) = best->score;
      dp.seen_lo(i, j) = best->lo;
      dp.seen_hi(i, j) = best->hi;
      dp.back(i, j) = {best->move,
                       best->move == SegMove::MatchFrom ? best->src_line : -1};
    }
  }
  return dp;
}

SegmentAlignment backtrace_segment_alignment(const SegmentData& data,
                                             const SegmentMatrices& m) {
  const int line_count = m.cum.rows();
  const int last_col = m.cum.cols() - 1;

  // Argmin over every range state in the final column; ties resolve to the
  // smallest line index, then to the earliest state in (lo, hi) order.
  int best_line = 0;
  const RangeState* best = nullptr;
  for (int i = 0; i < line_count; ++i) {
    for (const RangeState& s : m.states(i, last_col)) {
      if (best == nullptr || s.score < best->score) {
        best = &s;
        best_line = i;
      }
    }
  }

  SegmentAlignment aln;
  aln.score = best->score;

  int i = best_line, j = last_col;
  const RangeState* cur = best;
  for (;;) {
    if (cur->move == SegMove::None) break;  // reached the virtual start column
    if (cur->move == SegMove::Skip) {
      const std::int32_t lo = cur->src_lo, hi = cur->src_hi;
      --j;
      cur = &state_at(m.states(i, j), lo, hi);
      continue;
    }
    const int k = data.path_start(i, j);
    aln.matches.push_back({i, k, j});
    if (cur->move == SegMove::MatchFresh) break;
    const std::int32_t lo = cur->src_lo, hi = cur->src_hi;
    i = cur->src_line;
    j = k - 1;
    cur = &state_at(m.states(i, j), lo, hi);
  }
  std::reverse(aln.matches.begin(), aln.matches.end());
  return aln;
}

SegmentAlignment hierarchical_align(std::span<const BootlegFragment> fragments,
                                    const PerformanceSequence& ref,
                                    const AlignConfig& cfg, int threads) {
  const SegmentData data = build_segment_data(fragments, ref, threads);
  const SegmentMatrices m = segment_dp(data.cost, data.path_start, cfg, data.avg_line_score);
  SegmentAlignment aln = backtrace_segment_alignment(data, m);
  for (LineMatch& match : aln.matches) match.line_id = fragments[match.line_id].line_id;
  return aln;
}

}  // namespace hieralign

#include "hieralign/jump.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hieralign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Arrival moves of the concatenated DP. Values 1..3 index kDtwSteps + 1;
// kMoveStart marks free-start cells, kMoveJump a boundary jump.
constexpr std::uint8_t kMoveStart = 0;
constexpr std::uint8_t kMoveJump = 4;

// Splits a warping path over the concatenated query into per-fragment
// matches. A new match opens whenever the fragment changes or a jump
// re-enters (possibly the same) fragment.
SegmentAlignment cut_path(std::span<const BootlegFragment> fragments,
                          const ConcatQuery& q,
                          const std::vector<std::pair<int, int>>& cells,
                          const std::vector<bool>& jump_arrival, double score) {
  SegmentAlignment aln;
  aln.score = score;
  int open_frag = -1, span_start = 0, span_end = 0;
  for (size_t t = 0; t < cells.size(); ++t) {
    const int frag = q.fragment_of_row[cells[t].first];
    const int col = cells[t].second;
    if (open_frag == -1) {
      open_frag = frag;
      span_start = span_end = col;
      continue;
    }
    if (frag != open_frag || (t < jump_arrival.size() && jump_arrival[t])) {
      aln.matches.push_back({fragments[open_frag].line_id, span_start, span_end});
      open_frag = frag;
      span_start = col;
    }
    span_end = col;
  }
  if (open_frag != -1) {
    aln.matches.push_back({fragments[open_frag].line_id, span_start, span_end});
  }
  return aln;
}

}  // namespace

ConcatQuery concat_fragments(std::span<const BootlegFragment> fragments) {
  ConcatQuery q;
  for (size_t f = 0; f < fragments.size(); ++f) {
    if (fragments[f].columns.empty()) {
      throw std::invalid_argument("concat_fragments: fragment " + std::to_string(f) +
                                  " has no columns");
    }
    q.first_row.push_back(static_cast<int>(q.columns.size()));
    for (const PackedColumn& col : fragments[f].columns) {
      q.columns.push_back(col);
      q.fragment_of_row.push_back(static_cast<int>(f));
    }
    q.last_row.push_back(static_cast<int>(q.columns.size()) - 1);
  }
  return q;
}

SegmentAlignment jump_dtw_align(std::span<const BootlegFragment> fragments,
                                const PerformanceSequence& ref,
                                const JumpConfig& cfg) {
  if (fragments.empty()) throw std::invalid_argument("jump_dtw_align: no fragments");
  const ConcatQuery q = concat_fragments(fragments);
  const int n = static_cast<int>(q.columns.size());
  const int m = static_cast<int>(ref.columns.size());
  if (m == 0) throw std::invalid_argument("jump_dtw_align: empty reference");
  const int frag_count = static_cast<int>(fragments.size());

  BootlegFragment concat;
  concat.columns = q.columns;
  const CostMatrix cost = pairwise_cost(concat, ref);

  // is_first[i]: row i opens a fragment and can be jump-entered.
  std::vector<bool> is_first(n, false);
  for (const int r : q.first_row) is_first[r] = true;

  Matrix<double> cum(n, m, kInf);
  Matrix<std::uint8_t> move(n, m, kMoveStart);
  Matrix<std::int32_t> jump_src(n, m, -1);  // source fragment for kMoveJump

  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      double best = kInf;
      std::uint8_t best_move = kMoveStart;
      std::int32_t best_src = -1;

      // Candidate order pins tie-breaks: free start, the regular steps in
      // their declared order, then jumps by ascending source fragment.
      if (i == 0) best = cost(0, j);

      for (int s = 0; s < 3; ++s) {
        const int pi = i - kDtwSteps[s].di;
        const int pj = j - kDtwSteps[s].dj;
        if (pi < 0 || pj < 0) continue;
        const double prev = cum(pi, pj);
        if (prev == kInf) continue;
        const double cand = prev + kDtwSteps[s].w * cost(i, j);
        if (cand < best) {
          best = cand;
          best_move = static_cast<std::uint8_t>(s + 1);
        }
      }

      if (is_first[i] && j >= 1) {
        for (int g = 0; g < frag_count; ++g) {
          const double prev = cum(q.last_row[g], j - 1);
          if (prev == kInf) continue;
          const double cand = prev + cost(i, j) + cfg.jump_penalty;
          if (cand < best) {
            best = cand;
            best_move = kMoveJump;
            best_src = g;
          }
        }
      }

      cum(i, j) = best;
      move(i, j) = best_move;
      jump_src(i, j) = best_src;
    }
  }

  // The performance must be consumed to its final column; the path may stop
  // on the last row of whichever fragment was being played there.
  int end_row = -1;
  for (int f = 0; f < frag_count; ++f) {
    const int r = q.last_row[f];
    if (cum(r, m - 1) < kInf && (end_row == -1 || cum(r, m - 1) < cum(end_row, m - 1))) {
      end_row = r;
    }
  }
  if (end_row == -1) {
    throw data_error("jump_dtw_align: no feasible path reaches the final column");
  }

  std::vector<std::pair<int, int>> cells;
  int i = end_row, j = m - 1;
  for (;;) {
    cells.emplace_back(i, j);
    const std::uint8_t mv = move(i, j);
    if (mv == kMoveStart) break;
    if (mv == kMoveJump) {
      i = q.last_row[jump_src(i, j)];
      --j;
    } else {
      const DtwStep& s = kDtwSteps[mv - 1];
      i -= s.di;
      j -= s.dj;
    }
  }
  std::reverse(cells.begin(), cells.end());
  // The stored move of a cell describes how it was entered; jumps split the
  // match even when they land in the fragment they left (a line repeated).
  std::vector<bool> entered_by_jump(cells.size(), false);
  for (size_t t = 1; t < cells.size(); ++t) {
    entered_by_jump[t] = move(cells[t].first, cells[t].second) == kMoveJump;
  }

  return cut_path(fragments, q, cells, entered_by_jump, cum(end_row, m - 1));
}

SegmentAlignment subsequence_align(std::span<const BootlegFragment> fragments,
                                   const PerformanceSequence& ref) {
  if (fragments.empty()) throw std::invalid_argument("subsequence_align: no fragments");
  const ConcatQuery q = concat_fragments(fragments);
  if (ref.columns.empty()) throw std::invalid_argument("subsequence_align: empty reference");

  BootlegFragment concat;
  concat.columns = q.columns;
  const SubseqResult r = subsequence_dtw(pairwise_cost(concat, ref));

  int end_col = -1;
  for (int j = 0; j < static_cast<int>(r.last_row.size()); ++j) {
    if (r.last_row[j] < kInf && (end_col == -1 || r.last_row[j] < r.last_row[end_col])) {
      end_col = j;
    }
  }
  if (end_col == -1) {
    throw data_error("subsequence_align: query longer than the reference allows");
  }

  const std::vector<std::pair<int, int>> cells = trace_path(r, end_col);
  return cut_path(fragments, q, cells, std::vector<bool>(cells.size(), false),
                  r.last_row[end_col]);
}

}  // namespace hieralign

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hieralign/bscore.hpp"
#include "hieralign/matrix.hpp"

namespace hieralign {

using CostMatrix = Matrix<double>;

// Normalized negative inner product between every query column and every
// reference column: cost(i, j) = -<x_i, y_j> / (|x_i| |y_j|), which lies in
// [-1, 0]. A pairing involving an all-zero column costs exactly 0.
CostMatrix pairwise_cost(const BootlegFragment& query, const PerformanceSequence& ref);

// Sentinel for "no feasible path reaches this cell".
inline constexpr int kNoStart = -1;

// The fixed step family of the aligner, as (rows advanced, cols advanced,
// weight). The weight multiplies the cost of the arrival cell. Order matters:
// on ties the earlier step wins, which pins down the recovered paths.
struct DtwStep {
  int di;
  int dj;
  double w;
};
inline constexpr DtwStep kDtwSteps[3] = {{1, 1, 1.0}, {1, 2, 1.0}, {2, 1, 2.0}};

// Subsequence DTW: the query must be consumed in full, the path may begin at
// any reference column (the first query row scores its own cost everywhere)
// and end at any reference column.
struct SubseqResult {
  Matrix<double> cum;              // accumulated cost; +inf where unreachable
  std::vector<double> last_row;    // cum's final row: best score per end column
  std::vector<std::int32_t> path_start;  // start column of the optimal path
                                         // ending at (last row, j); kNoStart
                                         // where unreachable
  Matrix<std::uint8_t> step;       // arrival step per cell: 0 = path start,
                                   // 1..3 = index into kDtwSteps plus one
};

SubseqResult subsequence_dtw(const CostMatrix& cost);

// Start columns of the optimal paths, one per end column. Computed by
// carrying the start index forward through the recurrence rather than by
// walking the backtrace, but identical to the walked answer by construction.
const std::vector<std::int32_t>& recover_start_positions(const SubseqResult& r);

// Cells (query row, ref col) of the optimal path ending at end_col, in path
// order. Empty when end_col is unreachable.
std::vector<std::pair<int, int>> trace_path(const SubseqResult& r, int end_col);

}  // namespace hieralign

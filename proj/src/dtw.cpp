#include "hieralign/dtw.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hieralign {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

CostMatrix pairwise_cost(const BootlegFragment& query, const PerformanceSequence& ref) {
  const int n = static_cast<int>(query.columns.size());
  const int m = static_cast<int>(ref.columns.size());
  if (n == 0) throw std::invalid_argument("pairwise_cost: empty query fragment");
  if (m == 0) throw std::invalid_argument("pairwise_cost: empty reference");

  // The denominator is sqrt(|x| * |y|) computed as one square root of the
  // integer product, so identical nonzero columns score exactly -1 (the
  // product is a perfect square and sqrt of a perfect square is exact).
  std::vector<int> qpop(n), rpop(m);
  for (int i = 0; i < n; ++i) qpop[i] = query.columns[i].popcount();
  for (int j = 0; j < m; ++j) rpop[j] = ref.columns[j].popcount();

  CostMatrix c(n, m, 0.0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t qbits = query.columns[i].bits;
    if (qbits == 0) continue;  // all-zero column: whole row stays 0
    for (int j = 0; j < m; ++j) {
      const std::uint64_t rbits = ref.columns[j].bits;
      if (rbits == 0) continue;
      const int inner = std::popcount(qbits & rbits);
      if (inner == 0) continue;
      c(i, j) = -inner / std::sqrt(static_cast<double>(qpop[i] * rpop[j]));
    }
  }
  return c;
}

SubseqResult subsequence_dtw(const CostMatrix& cost) {
  const int n = cost.rows();
  const int m = cost.cols();
  if (n == 0 || m == 0) throw std::invalid_argument("subsequence_dtw: empty cost matrix");

  SubseqResult r;
  r.cum = Matrix<double>(n, m, kInf);
  r.step = Matrix<std::uint8_t>(n, m, 0);
  Matrix<std::int32_t> start(n, m, kNoStart);

  // Free start: the first query row can begin its path at any column.
  for (int j = 0; j < m; ++j) {
    r.cum(0, j) = cost(0, j);
    start(0, j) = j;
  }

  for (int i = 1; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      double best = kInf;
      std::uint8_t best_step = 0;
      std::int32_t best_start = kNoStart;
      // Steps are tried in their declared order; strict < keeps the first
      // winner, which fixes the backtrace on ties.
      for (int s = 0; s < 3; ++s) {
        const int pi = i - kDtwSteps[s].di;
        const int pj = j - kDtwSteps[s].dj;
        if (pi < 0 || pj < 0) continue;
        const double prev = r.cum(pi, pj);
        if (prev == kInf) continue;
        const double cand = prev + kDtwSteps[s].w * cost(i, j);
        if (cand < best) {
          best = cand;
          best_step = static_cast<std::uint8_t>(s + 1);
          best_start = start(pi, pj);
        }
      }
      r.cum(i, j) = best;
      r.step(i, j) = best_step;
      start(i, j) = best_start;
    }
  }

  r.last_row.assign(m, kInf);
  r.path_start.assign(m, kNoStart);
  for (int j = 0; j < m; ++j) {
    r.last_row[j] = r.cum(n - 1, j);
    r.path_start[j] = start(n - 1, j);
  }
  return r;
}

const std::vector<std::int32_t>& recover_start_positions(const SubseqResult& r) {
  return r.path_start;
}

std::vector<std::pair<int, int>> trace_path(const SubseqResult& r, int end_col) {
  const int n = r.cum.rows();
  if (end_col < 0 || end_col >= r.cum.cols()) {
    throw std::invalid_argument("trace_path: end column out of range");
  }
  std::vector<std::pair<int, int>> cells;
  if (r.cum(n - 1, end_col) == kInf) return cells;

  int i = n - 1, j = end_col;
  cells.emplace_back(i, j);
  while (r.step(i, j) != 0) {
    const DtwStep& s = kDtwSteps[r.step(i, j) - 1];
    i -= s.di;
    j -= s.dj;
    cells.emplace_back(i, j);
  }
  std::reverse(cells.begin(), cells.end());
  return cells;
}

}  // namespace hieralign

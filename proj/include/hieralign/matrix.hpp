#pragma once

#include <cassert>
#include <span>
#include <vector>

namespace hieralign {

// Dense row-major matrix. All DP tables in the aligners use this; it is a
// thin wrapper so bounds stay asserted in debug builds without any overhead
// in release ones.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), v_(static_cast<size_t>(rows) * cols, fill) {
    assert(rows >= 0 && cols >= 0);
  }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return v_[static_cast<size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return v_[static_cast<size_t>(r) * cols_ + c];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return v_.empty(); }

  std::span<const T> row(int r) const {
    assert(r >= 0 && r < rows_);
    return {v_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.v_ == b.v_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> v_;
};

}  // namespace hieralign

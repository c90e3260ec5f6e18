#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace nolhd {

// Dense row-major matrix. Small by design: the library never needs
// factorizations, only column sums and products.
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Grid: negative dimensions");
  }

  static Grid from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    Grid g(static_cast<int>(rows.size()),
           rows.size() ? static_cast<int>(rows.begin()->size()) : 0);
    int i = 0;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != g.cols_)
        throw std::invalid_argument("Grid::from_rows: ragged rows");
      int j = 0;
      for (const T& v : r) g(i, j++) = v;
      ++i;
    }
    return g;
  }

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  std::vector<T> column(int j) const {
    std::vector<T> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_column(int j, const std::vector<T>& c) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

using Matrix = Grid<double>;
using IntMatrix = Grid<int>;

}  // namespace nolhd

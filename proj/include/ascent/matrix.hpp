// matrix.hpp -- dense row-major matrix, sized for feature graphs and
// expedition-similarity layers
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ascent/common.hpp"

namespace ascent {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix square(std::size_t n, double fill = 0.0) { return Matrix(n, n, fill); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool is_square() const { return rows_ == cols_; }

  bool is_symmetric(double tol = 1e-12) const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (std::fabs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
  }

  bool is_nonnegative() const {
    for (double v : data_)
      if (v < 0.0) return false;
    return true;
  }

  bool all_zero() const {
    for (double v : data_)
      if (v != 0.0) return false;
    return true;
  }

  double max_entry() const {
    double m = data_.empty() ? 0.0 : data_[0];
    for (double v : data_)
      if (v > m) m = v;
    return m;
  }

  double sum() const {
    double s = 0.0;
    for (double v : data_) s += v;
    return s;
  }

  Matrix& operator*=(double a) {
    for (double& v : data_) v *= a;
    return *this;
  }

  Matrix& operator+=(const Matrix& other) {
    if (!same_shape(other)) throw AnalysisError("matrix shape mismatch in +=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Weighted degree of node i (row sum).
inline double row_sum(const Matrix& m, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
  return s;
}

inline void require_symmetric_nonnegative(const Matrix& m, const char* what,
                                          double tol = 1e-12) {
  if (!m.is_square()) throw AnalysisError(std::string(what) + ": matrix is not square");
  if (!m.is_symmetric(tol))
    throw AnalysisError(std::string(what) + ": matrix is not symmetric");
  if (!m.is_nonnegative())
    throw AnalysisError(std::string(what) + ": matrix has negative entries");
}

}  // namespace ascent

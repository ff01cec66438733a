#ifndef ADKIT_MATRIX_HPP
#define ADKIT_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace adkit {

// Dense row-major matrix of doubles.  Just enough for Hessians and the
// Helmholtz interaction matrix; linear algebra beyond storage is delegated
// to Eigen inside src/optim.cpp.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace adkit

#endif

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gal/common.hpp"

namespace gal {

// Row-major dense matrix of 64-bit floats.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), values_(static_cast<size_t>(rows) * cols, 0.0) {
    GAL_REQUIRE(rows >= 0 && cols >= 0, "matrix dimensions must be nonnegative");
  }
  DenseMatrix(int rows, int cols, std::vector<double> values)
      : rows_(rows), cols_(cols), values_(std::move(values)) {
    GAL_REQUIRE(values_.size() == static_cast<size_t>(rows) * cols,
                "value count must equal rows*cols");
  }

  static DenseMatrix identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  size_t size() const { return values_.size(); }

  double& operator()(int r, int c) { return values_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return values_[static_cast<size_t>(r) * cols_ + c]; }

  double* row(int r) { return values_.data() + static_cast<size_t>(r) * cols_; }
  const double* row(int r) const { return values_.data() + static_cast<size_t>(r) * cols_; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  void fill(double v) { values_.assign(values_.size(), v); }
  void set_zero() { fill(0.0); }

  bool same_shape(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

  bool operator==(const DenseMatrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> values_;
};

// CSR sparse matrix of 64-bit floats.
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_offsets;  // length rows+1, non-decreasing
  std::vector<int> col_indices;  // sorted within each row
  std::vector<double> values;

  int nnz() const { return static_cast<int>(col_indices.size()); }
  int row_nnz(int r) const { return row_offsets[r + 1] - row_offsets[r]; }

  // Throws ContractViolation if the CSR invariants do not hold.
  void validate() const;

  DenseMatrix to_dense() const;
};

// c = a * b
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
// c = a^T * b, without materializing the transpose
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);
// c = a * b^T
DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b);

// Sparse-dense product s * d.
DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& d);
void spmm_into(const SparseMatrix& s, const DenseMatrix& d, DenseMatrix& out);

void matmul_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out);
void matmul_at_b_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out);
void matmul_a_bt_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out);

// a += scale * b
void add_scaled(DenseMatrix& a, const DenseMatrix& b, double scale);

}  // namespace gal

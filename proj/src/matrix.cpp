#include "gal/matrix.hpp"

#include <cmath>
#include <sstream>

namespace gal {

const char* data_code_name(DataCode code) {
  switch (code) {
    case DataCode::Malformed: return "E_MALFORMED";
    case DataCode::SelfLoop: return "E_SELF_LOOP";
    case DataCode::DuplicateEdge: return "E_DUP_EDGE";
    case DataCode::EdgeOrder: return "E_EDGE_ORDER";
    case DataCode::NodeRange: return "E_NODE_RANGE";
    case DataCode::LabelRange: return "E_LABEL_RANGE";
    case DataCode::SplitOverlap: return "E_SPLIT_OVERLAP";
    case DataCode::FeatureDim: return "E_FEATURE_DIM";
    case DataCode::ArchMismatch: return "E_ARCH_MISMATCH";
    case DataCode::VersionMismatch: return "E_VERSION_MISMATCH";
  }
  return "E_UNKNOWN";
}

namespace detail {
void require_failed(const char* expr, const std::string& msg) {
  std::ostringstream os;
  os << msg << " (requirement `" << expr << "` failed)";
  throw ContractViolation(os.str());
}
}  // namespace detail

bool DenseMatrix::all_finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void SparseMatrix::validate() const {
  GAL_REQUIRE(row_offsets.size() == static_cast<size_t>(rows) + 1,
              "row_offsets length must be rows+1");
  GAL_REQUIRE(row_offsets.front() == 0 && row_offsets.back() == nnz(),
              "row_offsets must start at 0 and end at nnz");
  GAL_REQUIRE(col_indices.size() == values.size(), "col_indices/values length mismatch");
  for (int r = 0; r < rows; ++r) {
    GAL_REQUIRE(row_offsets[r] <= row_offsets[r + 1], "row_offsets must be non-decreasing");
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
      GAL_REQUIRE(col_indices[k] >= 0 && col_indices[k] < cols, "column index out of range");
      GAL_REQUIRE(k == row_offsets[r] || col_indices[k - 1] < col_indices[k],
                  "column indices must be strictly increasing within a row");
      GAL_REQUIRE(!std::isnan(values[k]), "sparse values must not be NaN");
    }
  }
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix out(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k) {
      out(r, col_indices[k]) = values[k];
    }
  }
  return out;
}

void matmul_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
  GAL_REQUIRE(a.cols() == b.rows(), "matmul: inner dimensions must match");
  if (out.rows() != a.rows() || out.cols() != b.cols()) {
    out = DenseMatrix(a.rows(), b.cols());
  } else {
    out.set_zero();
  }
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    double* out_row = out.row(i);
    const double* a_row = a.row(i);
    for (int p = 0; p < k; ++p) {
      const double av = a_row[p];
      if (av == 0.0) continue;
      const double* b_row = b.row(p);
      for (int j = 0; j < m; ++j) out_row[j] += av * b_row[j];
    }
  }
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out;
  matmul_into(a, b, out);
  return out;
}

void matmul_at_b_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
  GAL_REQUIRE(a.rows() == b.rows(), "matmul_at_b: row counts must match");
  if (out.rows() != a.cols() || out.cols() != b.cols()) {
    out = DenseMatrix(a.cols(), b.cols());
  } else {
    out.set_zero();
  }
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int p = 0; p < n; ++p) {
    const double* a_row = a.row(p);
    const double* b_row = b.row(p);
    for (int i = 0; i < k; ++i) {
      const double av = a_row[i];
      if (av == 0.0) continue;
      double* out_row = out.row(i);
      for (int j = 0; j < m; ++j) out_row[j] += av * b_row[j];
    }
  }
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out;
  matmul_at_b_into(a, b, out);
  return out;
}

void matmul_a_bt_into(const DenseMatrix& a, const DenseMatrix& b, DenseMatrix& out) {
  GAL_REQUIRE(a.cols() == b.cols(), "matmul_a_bt: column counts must match");
  if (out.rows() != a.rows() || out.cols() != b.rows()) {
    out = DenseMatrix(a.rows(), b.rows());
  }
  const int n = a.rows(), k = a.cols(), m = b.rows();
  for (int i = 0; i < n; ++i) {
    const double* a_row = a.row(i);
    double* out_row = out.row(i);
    for (int j = 0; j < m; ++j) {
      const double* b_row = b.row(j);
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += a_row[p] * b_row[p];
      out_row[j] = acc;
    }
  }
}

DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out;
  matmul_a_bt_into(a, b, out);
  return out;
}

void spmm_into(const SparseMatrix& s, const DenseMatrix& d, DenseMatrix& out) {
  GAL_REQUIRE(s.cols == d.rows(), "spmm: inner dimensions must match");
  if (out.rows() != s.rows || out.cols() != d.cols()) {
    out = DenseMatrix(s.rows, d.cols());
  } else {
    out.set_zero();
  }
  const int m = d.cols();
  for (int r = 0; r < s.rows; ++r) {
    double* out_row = out.row(r);
    for (int k = s.row_offsets[r]; k < s.row_offsets[r + 1]; ++k) {
      const double sv = s.values[k];
      const double* d_row = d.row(s.col_indices[k]);
      for (int j = 0; j < m; ++j) out_row[j] += sv * d_row[j];
    }
  }
}

DenseMatrix spmm(const SparseMatrix& s, const DenseMatrix& d) {
  DenseMatrix out;
  spmm_into(s, d, out);
  return out;
}

void add_scaled(DenseMatrix& a, const DenseMatrix& b, double scale) {
  GAL_REQUIRE(a.same_shape(b), "add_scaled: shape mismatch");
  double* av = a.values().data();
  const double* bv = b.values().data();
  const size_t n = a.size();
  for (size_t i = 0; i < n; ++i) av[i] += scale * bv[i];
}

}  // namespace gal

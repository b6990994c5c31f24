#include "ibaudit/kernels.hpp"

#include "ibaudit/errors.hpp"

namespace ibaudit {

namespace {

void check_spmm(const Csr& a, const Matrix& b, Matrix& c) {
  if (a.cols != b.rows) throw EngineError("spmm: inner dimension mismatch");
  if (c.rows != a.rows || c.cols != b.cols) c = Matrix(a.rows, b.cols);
}

void check_gemm(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.cols != b.rows) throw EngineError("gemm: inner dimension mismatch");
  if (c.rows != a.rows || c.cols != b.cols) c = Matrix(a.rows, b.cols);
}

inline void spmm_row(const Csr& a, const Matrix& b, Matrix& c, int i) {
  const int k = b.cols;
  double* out = c.row(i);
  for (int x = 0; x < k; ++x) out[x] = 0.0;
  for (int p = a.row_ptr[i]; p < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++p) {
    const double v = a.vals[p];
    const double* brow = b.row(a.col_idx[p]);
    for (int x = 0; x < k; ++x) out[x] += v * brow[x];
  }
}

inline void spmm_colscaled_row(const Csr& a, const std::vector<double>& scale, const Matrix& b,
                               Matrix& c, int i) {
  const int k = b.cols;
  double* out = c.row(i);
  for (int x = 0; x < k; ++x) out[x] = 0.0;
  for (int p = a.row_ptr[i]; p < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++p) {
    const int j = a.col_idx[p];
    const double v = a.vals[p] * scale[j];
    const double* brow = b.row(j);
    for (int x = 0; x < k; ++x) out[x] += v * brow[x];
  }
}

inline void gemm_row(const Matrix& a, const Matrix& b, Matrix& c, int i) {
  const int k = b.cols;
  double* out = c.row(i);
  for (int x = 0; x < k; ++x) out[x] = 0.0;
  const double* arow = a.row(i);
  for (int j = 0; j < a.cols; ++j) {
    const double v = arow[j];
    if (v == 0.0) continue;
    const double* brow = b.row(j);
    for (int x = 0; x < k; ++x) out[x] += v * brow[x];
  }
}

inline void gemm_at_b_row(const Matrix& a, const Matrix& b, Matrix& c, int r) {
  const int k = b.cols;
  double* out = c.row(r);
  for (int x = 0; x < k; ++x) out[x] = 0.0;
  for (int i = 0; i < a.rows; ++i) {
    const double v = a(i, r);
    if (v == 0.0) continue;
    const double* brow = b.row(i);
    for (int x = 0; x < k; ++x) out[x] += v * brow[x];
  }
}

inline void gemm_a_bt_row(const Matrix& a, const Matrix& b, Matrix& c, int i) {
  const double* arow = a.row(i);
  double* out = c.row(i);
  for (int r = 0; r < b.rows; ++r) {
    const double* brow = b.row(r);
    double acc = 0.0;
    for (int x = 0; x < a.cols; ++x) acc += arow[x] * brow[x];
    out[r] = acc;
  }
}

}  // namespace

namespace serial {

void spmm(const Csr& a, const Matrix& b, Matrix& c) {
  check_spmm(a, b, c);
  for (int i = 0; i < a.rows; ++i) spmm_row(a, b, c, i);
}

void spmm_colscaled(const Csr& a, const std::vector<double>& scale, const Matrix& b, Matrix& c) {
  if (scale.size() != static_cast<std::size_t>(a.cols)) {
    throw EngineError("spmm_colscaled: scale length mismatch");
  }
  check_spmm(a, b, c);
  for (int i = 0; i < a.rows; ++i) spmm_colscaled_row(a, scale, b, c, i);
}

void gemm(const Matrix& a, const Matrix& b, Matrix& c) {
  check_gemm(a, b, c);
  for (int i = 0; i < a.rows; ++i) gemm_row(a, b, c, i);
}

void gemm_at_b(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.rows != b.rows) throw EngineError("gemm_at_b: row count mismatch");
  if (c.rows != a.cols || c.cols != b.cols) c = Matrix(a.cols, b.cols);
  for (int r = 0; r < a.cols; ++r) gemm_at_b_row(a, b, c, r);
}

void gemm_a_bt(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.cols != b.cols) throw EngineError("gemm_a_bt: inner dimension mismatch");
  if (c.rows != a.rows || c.cols != b.rows) c = Matrix(a.rows, b.rows);
  for (int i = 0; i < a.rows; ++i) gemm_a_bt_row(a, b, c, i);
}

}  // namespace serial

namespace kernels {

void spmm(const Csr& a, const Matrix& b, Matrix& c) {
  check_spmm(a, b, c);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) spmm_row(a, b, c, i);
}

void spmm_colscaled(const Csr& a, const std::vector<double>& scale, const Matrix& b, Matrix& c) {
  if (scale.size() != static_cast<std::size_t>(a.cols)) {
    throw EngineError("spmm_colscaled: scale length mismatch");
  }
  check_spmm(a, b, c);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) spmm_colscaled_row(a, scale, b, c, i);
}

void gemm(const Matrix& a, const Matrix& b, Matrix& c) {
  check_gemm(a, b, c);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) gemm_row(a, b, c, i);
}

void gemm_at_b(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.rows != b.rows) throw EngineError("gemm_at_b: row count mismatch");
  if (c.rows != a.cols || c.cols != b.cols) c = Matrix(a.cols, b.cols);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < a.cols; ++r) gemm_at_b_row(a, b, c, r);
}

void gemm_a_bt(const Matrix& a, const Matrix& b, Matrix& c) {
  if (a.cols != b.cols) throw EngineError("gemm_a_bt: inner dimension mismatch");
  if (c.rows != a.rows || c.cols != b.rows) c = Matrix(a.rows, b.rows);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < a.rows; ++i) gemm_a_bt_row(a, b, c, i);
}

}  // namespace kernels

}  // namespace ibaudit

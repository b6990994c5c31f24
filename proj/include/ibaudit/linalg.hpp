#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ibaudit {

// Dense row-major matrix of doubles. Small and unfancy: the model weights and
// activations here are at most a few hundred rows by a hidden dim of ~64.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  double* row(int r) { return data.data() + static_cast<std::size_t>(r) * cols; }
  const double* row(int r) const { return data.data() + static_cast<std::size_t>(r) * cols; }

  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
};

struct Triplet {
  int row;
  int col;
  double value;
};

// Compressed sparse row matrix. Within a row, column indices are strictly
// ascending; duplicate triplets are summed during assembly.
struct Csr {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr;  // size rows + 1
  std::vector<int> col_idx;
  std::vector<double> vals;

  std::size_t nnz() const { return vals.size(); }

  static Csr from_triplets(int rows, int cols, std::vector<Triplet> triplets);

  std::vector<std::vector<double>> to_dense() const;
};

}  // namespace ibaudit

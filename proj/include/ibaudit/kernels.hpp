#pragma once

#include <vector>

#include "ibaudit/linalg.hpp"

// Matrix-product kernels used by the classifier's forward and backward
// passes. Each kernel comes in two flavours:
//
//   kernels::...  OpenMP-parallel over output rows. Every output row is
//                 written by exactly one thread and accumulated serially in
//                 fixed index order, so results are bitwise identical to the
//                 serial reference regardless of thread count or schedule.
//                 This is the deterministic-reduction mode the training
//                 contract relies on.
//   serial::...   Plain single-threaded reference, kept for tests (bitwise
//                 comparison) and for the bench_kernels target.

namespace ibaudit {

namespace serial {

// C = A * B, sparse A (n x n), dense B (n x k).
void spmm(const Csr& a, const Matrix& b, Matrix& c);

// C = A * diag(scale) * B, i.e. column j of A scaled by scale[j] on the fly.
// Each product rounds as (a_ij * scale_j) * b_jk, matching a materialized
// column-scaled matrix bit for bit.
void spmm_colscaled(const Csr& a, const std::vector<double>& scale, const Matrix& b, Matrix& c);

// C = A * B, dense.
void gemm(const Matrix& a, const Matrix& b, Matrix& c);

// C = A^T * B, dense. A is n x r, B is n x k, C is r x k.
void gemm_at_b(const Matrix& a, const Matrix& b, Matrix& c);

// C = A * B^T, dense. A is n x k, B is r x k, C is n x r.
void gemm_a_bt(const Matrix& a, const Matrix& b, Matrix& c);

}  // namespace serial

namespace kernels {

void spmm(const Csr& a, const Matrix& b, Matrix& c);
void spmm_colscaled(const Csr& a, const std::vector<double>& scale, const Matrix& b, Matrix& c);
void gemm(const Matrix& a, const Matrix& b, Matrix& c);
void gemm_at_b(const Matrix& a, const Matrix& b, Matrix& c);
void gemm_a_bt(const Matrix& a, const Matrix& b, Matrix& c);

}  // namespace kernels

}  // namespace ibaudit

#include "ibaudit/linalg.hpp"

#include <algorithm>

#include "ibaudit/errors.hpp"

namespace ibaudit {

Csr Csr::from_triplets(int rows, int cols, std::vector<Triplet> triplets) {
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw EngineError("sparse triplet index out of range");
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  Csr m;
  m.rows = rows;
  m.cols = cols;
  m.row_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.col_idx.reserve(triplets.size());
  m.vals.reserve(triplets.size());

  std::size_t i = 0;
  for (int r = 0; r < rows; ++r) {
    while (i < triplets.size() && triplets[i].row == r) {
      const int c = triplets[i].col;
      double v = triplets[i].value;
      ++i;
      while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
        v += triplets[i].value;  // merge duplicates
        ++i;
      }
      m.col_idx.push_back(c);
      m.vals.push_back(v);
    }
    m.row_ptr[static_cast<std::size_t>(r) + 1] = static_cast<int>(m.col_idx.size());
  }
  return m;
}

std::vector<std::vector<double>> Csr::to_dense() const {
  std::vector<std::vector<double>> d(static_cast<std::size_t>(rows),
                                     std::vector<double>(static_cast<std::size_t>(cols), 0.0));
  for (int r = 0; r < rows; ++r) {
    for (int k = row_ptr[r]; k < row_ptr[static_cast<std::size_t>(r) + 1]; ++k) {
      d[static_cast<std::size_t>(r)][static_cast<std::size_t>(col_idx[k])] += vals[k];
    }
  }
  return d;
}

}  // namespace ibaudit

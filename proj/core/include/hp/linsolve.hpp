#pragma once

#include <cstddef>
#include <vector>

#include "hp/real.hpp"

namespace hp {

// Row-major dense matrix of big-float entries.
struct matrix {
  size_t rows = 0, cols = 0;
  std::vector<real> a;

  matrix() = default;
  matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

  real& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const real& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
};

struct null_space_result {
  std::vector<real> v;  // null vector; the never-pivoted column carries 1
  real condition;       // |largest pivot| / |smallest pivot|
  bool rank_clear;      // smallest pivot stands out of the elimination noise
};

// One-dimensional null space of an r x (r+1) homogeneous system by Gauss
// elimination with full pivoting.  The column left without a pivot is set
// to 1 and the rest back-substituted.  rank_clear goes false when the last
// pivot has shrunk within 2^-(bits-32) of the first, i.e. when the claimed
// rank could be an artifact of rounding.
null_space_result null_space(matrix m);

// Solve a square system by elimination with partial pivoting.
std::vector<real> solve_square(matrix m, std::vector<real> rhs);

}  // namespace hp

#include "hp/linsolve.hpp"

#include <utility>

#include "hp/errors.hpp"

namespace hp {

null_space_result null_space(matrix m) {
  if (m.cols != m.rows + 1)
    throw validation_error("null_space expects an r x (r+1) system");
  const size_t r = m.rows, c = m.cols;

  std::vector<size_t> col_of(c);  // original index of each working column
  for (size_t j = 0; j < c; ++j) col_of[j] = j;

  real piv_max, piv_min;
  for (size_t step = 0; step < r; ++step) {
    size_t bi = step, bj = step;
    real best = abs(m(step, step));
    for (size_t i = step; i < r; ++i)
      for (size_t j = step; j < c; ++j) {
        real mag = abs(m(i, j));
        if (mag > best) {
          best = std::move(mag);
          bi = i;
          bj = j;
        }
      }
    if (best.is_zero())
      throw numerical_error("system rank collapsed during elimination");
    if (step == 0) {
      piv_max = best;
      piv_min = best;
    } else {
      piv_max = max(piv_max, best);
      piv_min = min(piv_min, best);
    }

    if (bi != step)
      for (size_t j = 0; j < c; ++j)
        std::swap(m.a[bi * c + j], m.a[step * c + j]);
    if (bj != step) {
      for (size_t i = 0; i < r; ++i) std::swap(m.a[i * c + bj], m.a[i * c + step]);
      std::swap(col_of[bj], col_of[step]);
    }

    for (size_t i = step + 1; i < r; ++i) {
      real f = m(i, step) / m(step, step);
      if (f.is_zero()) continue;
      m(i, step) = real(0L);
      for (size_t j = step + 1; j < c; ++j) m(i, j) -= f * m(step, j);
    }
  }

  // column r never hosted a pivot: pin it to 1 and back-substitute
  std::vector<real> xp(c);
  xp[r] = real(1L);
  for (size_t step = r; step-- > 0;) {
    real s = m(step, r);
    for (size_t j = step + 1; j < r; ++j) s += m(step, j) * xp[j];
    xp[step] = -s / m(step, step);
  }

  null_space_result out;
  out.v.resize(c);
  for (size_t j = 0; j < c; ++j) out.v[col_of[j]] = std::move(xp[j]);
  out.condition = piv_max / piv_min;
  out.rank_clear = piv_min > piv_max.mul_2si(-(working_precision() - 32));
  return out;
}

std::vector<real> solve_square(matrix m, std::vector<real> rhs) {
  if (m.rows != m.cols || rhs.size() != m.rows)
    throw validation_error("solve_square expects a square system");
  const size_t n = m.rows;

  for (size_t step = 0; step < n; ++step) {
    size_t bi = step;
    real best = abs(m(step, step));
    for (size_t i = step + 1; i < n; ++i) {
      real mag = abs(m(i, step));
      if (mag > best) {
        best = std::move(mag);
        bi = i;
      }
    }
    if (best.is_zero()) throw numerical_error("singular matrix in solve_square");
    if (bi != step) {
      for (size_t j = step; j < n; ++j)
        std::swap(m.a[bi * n + j], m.a[step * n + j]);
      std::swap(rhs[bi], rhs[step]);
    }
    for (size_t i = step + 1; i < n; ++i) {
      real f = m(i, step) / m(step, step);
      if (f.is_zero()) continue;
      for (size_t j = step + 1; j < n; ++j) m(i, j) -= f * m(step, j);
      rhs[i] -= f * rhs[step];
    }
  }

  std::vector<real> x(n);
  for (size_t step = n; step-- > 0;) {
    real s = rhs[step];
    for (size_t j = step + 1; j < n; ++j) s -= m(step, j) * x[j];
    x[step] = s / m(step, step);
  }
  return x;
}

}  // namespace hp

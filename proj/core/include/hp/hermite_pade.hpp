#pragma once

#include <vector>

#include "hp/complex.hpp"
#include "hp/linsolve.hpp"
#include "hp/measures.hpp"
#include "hp/poly.hpp"
#include "hp/real.hpp"

namespace hp {

// Multi-index n = (n_1,...,n_m) of non-negative integers, not all zero.
struct multi_index {
  std::vector<long> n;

  int m() const { return static_cast<int>(n.size()); }
  long total() const;
  // Partial sum n_1 + ... + n_j (zero for j = 0).
  long eta(int j) const;
  // min{n_j + 1, n_{j+1} + 2, ..., n_k + 2} for 1 <= j <= k <= m.
  long chi(int j, int k) const;
  // Same index with component l (1-based) raised by one.
  multi_index bumped(int l) const;
};

void validate(const multi_index& n);

// Solution of the interpolation problem: polynomials a_0..a_m with a_m
// monic, the linear form at level j being
//   A_j = (-1)^j a_j + sum_{k>j} (-1)^k a_k s^_{j+1,k}.
struct hp_solution {
  multi_index index;
  std::vector<poly> a;
  std::vector<long> residual_orders;  // first nonvanishing z^-t per level
  std::vector<char> normal;           // per-polynomial maximal degree
  real condition_estimate;
  long bits = 0;
};

// Homogeneous system: |n|(m+1) rows by |n|(m+1)+1 columns.  Row block j
// (j = 0..m-1) kills the coefficients of z^s in A_j for s = |n|-1 down to
// -n_{j+1}; unknowns are ordered (a_0 coeffs, ..., a_m coeffs), ascending
// degree inside each block, with deg a_k <= |n|-1 for k < m and
// deg a_m <= |n|.
matrix assemble_system(const moment_table& table, const multi_index& n);

// Null-space solve plus monic normalization.  Rank ambiguity triggers a
// re-solve at escalated working precision (same table) before giving up.
hp_solution solve_hp(const moment_table& table, const multi_index& n,
                     const precision_policy& policy);
// Same, but escalation rebuilds the moment table too.
hp_solution solve_hp(system_context& ctx, const multi_index& n);
// Rationalize every table entry and solve exactly; cross-check path for
// small indices.
hp_solution solve_hp_exact(const moment_table& table, const multi_index& n);

// A_j(z); for j = m this is the plain polynomial (-1)^m a_m(z).
complex evaluate_form(const hp_solution& sol, const moment_table& table, int j,
                      const complex& z);
real evaluate_form(const hp_solution& sol, const moment_table& table, int j,
                   const real& x);
real evaluate_form_deriv(const hp_solution& sol, const moment_table& table,
                         int j, const real& x);

struct residual_report {
  std::vector<long> achieved;      // smallest t with nonvanishing z^-t coeff
  std::vector<real> leading;       // that coefficient
  std::vector<char> order_exact;   // achieved == n_{j+1} + 1
  std::vector<char> vanish_ok;     // all t <= n_{j+1} vanished within noise
};

// Recompute the Laurent tail of each form straight from the moment sums,
// independent of the elimination, and locate its first surviving term.
residual_report residual_orders(const hp_solution& sol,
                                const moment_table& table);

}  // namespace hp

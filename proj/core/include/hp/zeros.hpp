#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hp/hermite_pade.hpp"
#include "hp/measures.hpp"
#include "hp/poly.hpp"
#include "hp/real.hpp"

namespace hp {

// Certified real zeros inside one interval: sorted values plus isolating
// brackets across which a sign change was actually observed.
struct root_list {
  std::vector<real> roots;
  std::vector<std::pair<real, real>> enclosures;
  interval searched;

  static root_list from_points(std::vector<real> pts, interval iv);
  size_t size() const { return roots.size(); }
};

// Zeros of a linear form together with the monic polynomial they span.
struct monic_from_roots {
  root_list zeros;
  poly q;
};

// Locate the zeros of the level-j form inside the interior of Delta_j.
// The count must come out exactly n_1+...+n_j: a shortfall after grid
// escalation or any excess is an error, never a silent result.
monic_from_roots form_zeros(const hp_solution& sol, const moment_table& table,
                            int j);

struct interlace_result {
  bool ok = false;
  // the two same-list neighbours with no strict separator when !ok
  real witness_lo, witness_hi;
};

// Strict interlacing of two sorted simple-root lists.  Throws
// undecidable_error when enclosures from opposite lists overlap.
interlace_result interlace_check(const root_list& r1, const root_list& r2);

// Quadrature value of  integral x^nu q_mid(x) h(x) / (q_lo(x) q_hi(x))
// with respect to sigma_level.  h_weight gives h at the nodes of that
// measure (empty = identically 1).  quad_err, when non-null, receives the
// embedded coarse-vs-fine error estimate.
real orthogonality_residual(const moment_table& table, int sigma_level,
                            const poly& q_mid, const poly& q_lo,
                            const poly& q_hi,
                            const std::vector<real>& h_weight, long nu,
                            real* quad_err = nullptr);

// Lower bound on the number of sign changes over the open interval, from
// uniform grids of geometrically growing size up to `budget` points.
long sign_change_count(const std::function<real(const real&)>& f,
                       const interval& iv, long budget);
long sign_change_count(const poly& p, const interval& iv, long budget);

}  // namespace hp

#pragma once

#include <vector>

#include "hp/complex.hpp"
#include "hp/measures.hpp"
#include "hp/poly.hpp"
#include "hp/real.hpp"

namespace hp {

// The (m+1)-sheeted genus-zero covering: sheet k-1 is glued to sheet k
// along the k-th slit.  `l` selects which normalization of the uniformizing
// coordinate is wanted (it decides which sheet's point over infinity is
// sent to w = 0).
struct surface_spec {
  std::vector<interval> slits;
  int l = 1;
};

// Rational covering z = R(w) = gamma w + delta + sum_k rho_k / (w - w_k)
// from the w-sphere onto the z-sphere.  The finite pole w_k is the point
// over z = infinity belonging to sheet k (k = 0..m-1); w = infinity serves
// sheet m.  After normalization w_{l-1} = 0 and |product of branches| = 1,
// the residue C1 at w_{l-1} has the sign of (-1)^(m-l); the positivity
// convention lives in the ray constants c_k instead.
struct surface_map {
  int m = 0;
  int l = 1;
  real gamma, delta;
  std::vector<real> w;
  std::vector<real> rho;
  std::vector<real> crit_w;  // 2m critical points, matched index-wise ...
  std::vector<real> crit_v;  // ... to these critical values (slit endpoints)
  real C1;                   // residue at w_{l-1}; sign is (-1)^(m-l)
  int e = 1;                 // snapped value of the full branch product
  std::vector<interval> slits;

  // cleared-denominator machinery: D(w) = prod (w - w_k),
  // S(w) = (gamma w + delta) D(w) + sum_k rho_k D(w)/(w - w_k); the branch
  // values over z are the roots of S(w) - z D(w).
  poly D, S;

  complex R(const complex& w) const;
  real R(const real& w) const;
  real R_deriv(const real& w) const;
};

struct branch_values {
  std::vector<complex> psi;  // psi_0 .. psi_m over z
  long steps = 0;            // continuation path length (certificate)
};

surface_map build_surface_map(const surface_spec& spec,
                              const precision_policy& policy);

// All m+1 branch values over z, labeled by sheet via continuation from a
// far real anchor point.  z must stay off the slits.
branch_values branches(const surface_map& map, const complex& z);

// F_k = product of branches k..m (k = 1..m+1; empty product is 1), and the
// variant normalized by its leading behaviour at infinity.
complex F_value(const surface_map& map, int k, const complex& z);
complex F_tilde(const surface_map& map, int k, const complex& z);

// c_k: the value of F_k at infinity when the product stays bounded there
// (k < l), otherwise the coefficient of z in its expansion.  c_0 = c_{m+1}
// = 1.  All are positive for a correctly glued map.
real c_constant(const surface_map& map, int k);
// kappa_k = c_k / sqrt(c_{k-1} c_{k+1}), k = 1..m.
real kappa_limit(const surface_map& map, int k);

struct bvp_report {
  // max |winding/(2 pi)| of F_k around contours enclosing foreign slits
  real winding_dev;
  // max continuation-closure gap around those contours, relative
  real closure_dev;
  bool ray_signs_ok = false;  // positivity of every c_k
  // max | |F_k|^2 / |F_{k-1} F_{k+1}| - 1 | over interior slit samples
  real cond3_dev;
  // max |product of branches - e| over off-slit probe points
  real product_dev;
};

// Samples the boundary-value characterization of the solved map.
bvp_report bvp_residual(const surface_map& map);

}  // namespace hp

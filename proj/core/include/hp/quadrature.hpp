#pragma once

#include <utility>
#include <vector>

#include "hp/complex.hpp"
#include "hp/real.hpp"

namespace hp {

// One abscissa of the tanh-sinh (double-exponential) rule on (-1,1).
// 1-u and 1+u are carried separately because near the endpoints they
// underflow any subtractive formula long before the rule stops mattering;
// endpoint-singular densities need them exactly.
struct ts_node {
  real u;          // abscissa in (-1,1)
  real one_minus;  // 1-u, computed without cancellation
  real one_plus;   // 1+u
  real w;          // h * phi'(t), phi(t) = tanh((pi/2) sinh t)
  bool coarse;     // node also belongs to the next-coarser (half-rate) rule
};

// Symmetric tanh-sinh rule with step h = 2^-level, truncated where the
// weight factor drops below 2^-(bits+64) relative to the peak.  Results are
// cached per (level, bits).
const std::vector<ts_node>& tanh_sinh_rule(int level, long bits);

// A measure discretized on quadrature nodes: integration against it is a
// weighted sum, and its Cauchy transform at any point off the support is a
// rational sum.  Nested Nikishin products are built by multiplying node
// weights with inner transform values, which is exactly the "evaluate the
// inner transform at the outer nodes" scheme.
struct discrete_measure {
  std::vector<real> x;      // nodes, strictly inside the support interval
  std::vector<real> w;      // signed weights (density and Jacobian folded in)
  std::vector<char> coarse; // 1 where the node belongs to the half-rate rule
  int level = 0;
  real a, b;                // support interval hull
  real err_estimate;        // builder's observed level-to-level movement

  size_t size() const { return x.size(); }

  // Integrate f over the measure.  Returns {value, |fine - coarse|}; the
  // second member is the standard tanh-sinh error estimate.
  template <class F>
  std::pair<real, real> integrate(F&& f) const {
    real fine, half;
    for (size_t i = 0; i < x.size(); ++i) {
      real fx = f(x[i]);
      fx *= w[i];
      fine += fx;
      if (coarse[i]) half += fx;
    }
    return {fine, abs(fine - half.mul_2si(1))};
  }

  real moment(long r) const;
  real total_mass() const { return moment(0); }

  // Cauchy transform sum_i w_i / (z - x_i).
  complex cauchy(const complex& z) const;
  real cauchy(const real& t) const;
  // Derivative of the transform: -sum_i w_i / (t - x_i)^2.
  real cauchy_deriv(const real& t) const;
};

// Weight densities a discrete measure can be built from.
struct jacobi_density {
  real alpha, beta;  // (b-x)^alpha (x-a)^beta, both exponents > -1
};

// Jacobi density on [a,b] discretized at the given tanh-sinh level.
discrete_measure discretize_jacobi(const real& a, const real& b,
                                   const jacobi_density& jd, int sign,
                                   int level, long bits);

// Generic density on [a,b] (no endpoint-singularity structure assumed
// beyond tanh-sinh's reach).
template <class F>
discrete_measure discretize_density(const real& a, const real& b, F&& density,
                                    int sign, int level, long bits) {
  const auto& rule = tanh_sinh_rule(level, bits);
  real half = (b - a).mul_2si(-1);
  real mid = (a + b).mul_2si(-1);
  discrete_measure dm;
  dm.level = level;
  dm.a = a;
  dm.b = b;
  dm.x.reserve(rule.size());
  dm.w.reserve(rule.size());
  for (const auto& n : rule) {
    real xi = mid + half * n.u;
    real wi = half * n.w * density(xi);
    if (sign < 0) wi = -wi;
    dm.x.push_back(std::move(xi));
    dm.w.push_back(std::move(wi));
    dm.coarse.push_back(n.coarse);
  }
  return dm;
}

// Half-line rule via the exp-sinh map x = a + exp((pi/2) sinh t); the
// density must decay fast enough to be integrable (checked only through the
// resulting weights).  Used by the moment/Carleman path, not by the
// bounded-interval machinery.
template <class F>
discrete_measure discretize_halfline(const real& a, F&& density, int sign,
                                     int level, long bits) {
  discrete_measure dm;
  dm.level = level;
  dm.a = a;
  dm.b = real::infinity();
  real h = real(1L).mul_2si(-level);
  real pi_half = const_pi().mul_2si(-1);
  long n_max = 7L << level;
  real peak;
  // generate t = i*h outward from 0 in both directions, dropping the tail
  // once weights are negligible relative to the running peak
  for (int dir = 0; dir < 2; ++dir) {
    int below = 0;
    for (long i = (dir == 0 ? 0 : -1); dir == 0 ? i <= n_max : i >= -n_max;
         dir == 0 ? ++i : --i) {
      real t = h * i;
      real v = pi_half * sinh(t);
      real ev = exp(v);
      real xi = a + ev;
      real wi = h * pi_half * cosh(t) * ev * density(xi);
      if (sign < 0) wi = -wi;
      real mag = abs(wi);
      peak = max(peak, mag);
      if (!peak.is_zero() && mag < peak.mul_2si(-(bits + 64))) {
        if (++below >= 4) break;
      } else {
        below = 0;
      }
      dm.x.push_back(std::move(xi));
      dm.w.push_back(std::move(wi));
      dm.coarse.push_back((i & 1) == 0);
    }
  }
  return dm;
}

}  // namespace hp

#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hp/complex.hpp"
#include "hp/quadrature.hpp"
#include "hp/real.hpp"

namespace hp {

struct interval {
  real a, b;
  real length() const { return b - a; }
  real mid() const { return (a + b).mul_2si(-1); }
};

// A weight with constant sign on an interval: either the Jacobi form
// (b-x)^alpha (x-a)^beta or a caller-supplied positive density.
struct measure_spec {
  interval support;
  bool is_jacobi = true;
  real alpha, beta;
  std::function<real(const real&)> density;
  int sign = 1;

  static measure_spec jacobi(interval iv, real alpha, real beta, int sign = 1);
  static measure_spec with_density(interval iv,
                                   std::function<real(const real&)> density,
                                   int sign = 1);
};

// Ordered generating measures (sigma_1, ..., sigma_m).  Consecutive support
// intervals may share at most one point; several experiments additionally
// require strict separation and check it themselves.
struct nikishin_generator {
  std::vector<measure_spec> sigma;
  int m() const { return static_cast<int>(sigma.size()); }
};

struct precision_policy {
  long bits = 256;
  int escalation_factor = 2;
  int max_escalations = 4;
};

void validate(const measure_spec& ms);
void validate(const nikishin_generator& gen);
void validate(const precision_policy& policy);
// Consecutive supports overlap in at most a point / are strictly separated.
void require_adjacency(const nikishin_generator& gen);
void require_disjoint(const nikishin_generator& gen);

struct pair_report {
  int j = 0, k = 0;  // product measure s_{j,k}; j > k means the reversed chain
  size_t nodes = 0;
  real err;  // observed movement of the worst moment on the last level step
};

struct quadrature_report {
  int level = 0;
  std::vector<pair_report> pairs;
  real max_err;
};

// Moments and node discretizations of every product measure s_{j,k} of the
// chain, in both directions.  Key convention for (j,k): j is the index the
// measure lives on (nodes inside Delta_j); j < k walks the chain upward,
// j > k downward, j = k is the bare generator.
struct moment_table {
  int m = 0;
  long degree_budget = 0;
  long bits = 0;
  quadrature_report report;
  std::vector<interval> hulls;
  std::map<std::pair<int, int>, std::vector<real>> entries;
  std::map<std::pair<int, int>, discrete_measure> measures;

  bool has_measures() const { return !measures.empty(); }
  const std::vector<real>& c(int j, int k) const;
  const discrete_measure& measure(int j, int k) const;
  const interval& hull(int j) const;
};

// Moments c_0..c_D of a single measure; closed form for Jacobi weights,
// double-exponential quadrature otherwise (half-line supports included).
std::vector<real> moments(const measure_spec& ms, long D,
                          const precision_policy& policy);

moment_table nikishin_moments(const nikishin_generator& gen, long D,
                              const precision_policy& policy);

// Cauchy transform of s_{j,k} at z, rejected when z sits within eps_dist of
// the support hull.  eps_dist <= 0 selects the default guard
// (1 + hull length) * 2^-(bits/4).
complex cauchy_transform(const moment_table& table, int j, int k,
                         const complex& z, const real& eps_dist = real(0L));

// Partial sums of sum_n |c_n|^(-1/(2n)), n >= 1.  Growth without apparent
// bound suggests the divergence hypothesis holds; no certification.
std::vector<real> carleman_diagnostic(const std::vector<real>& moments);

// A generator plus policy with moment tables cached per precision, so a
// solve that escalates precision rebuilds tables once per level.
struct system_context {
  nikishin_generator gen;
  precision_policy policy;
  long degree_budget = 0;
  std::map<long, moment_table> tables;

  system_context(nikishin_generator g, long D, precision_policy p)
      : gen(std::move(g)), policy(p), degree_budget(D) {}
  const moment_table& table_at(long bits);
  const moment_table& table() { return table_at(policy.bits); }
};

}  // namespace hp

#include "hp/measures.hpp"

#include <gmp.h>

#include <cmath>
#include <utility>

#include "hp/errors.hpp"

namespace hp {

namespace {

real binom(unsigned long n, unsigned long k) {
  mpz_t z;
  mpz_init(z);
  mpz_bin_uiui(z, n, k);
  real r;
  mpfr_set_z(r.raw(), z, MPFR_RNDN);
  mpz_clear(z);
  return r;
}

real beta_fn(const real& p, const real& q) {
  return gamma_fn(p) * gamma_fn(q) / gamma_fn(p + q);
}

// Exact-formula Jacobi moments: with x = a + (b-a)s,
//   c_r = sign (b-a)^(alpha+beta+1) sum_k C(r,k) a^(r-k) (b-a)^k B(beta+k+1, alpha+1).
// The alternating sum loses O(r) bits to cancellation, hence the local guard.
std::vector<real> jacobi_moments_closed(const measure_spec& ms, long D) {
  precision_guard guard(working_precision() + 96);
  const real& a = ms.support.a;
  real len = ms.support.length();
  real lead = pow(len, ms.alpha + ms.beta + 1L);
  std::vector<real> c(D + 1);
  for (long r = 0; r <= D; ++r) {
    real sum;
    for (long k = 0; k <= r; ++k) {
      if (a.is_zero() && k < r) continue;
      real term = binom(r, k) * pow(len, k) * beta_fn(ms.beta + (k + 1L), ms.alpha + 1L);
      if (k < r) term *= pow(a, r - k);
      sum += term;
    }
    c[r] = lead * sum;
    if (ms.sign < 0) c[r] = -c[r];
  }
  return c;
}

// All moments 0..D of a discretized measure, sharing the node powers.
std::vector<real> all_moments(const discrete_measure& dm, long D) {
  std::vector<real> c(D + 1);
  std::vector<real> p(dm.size(), real(1L));
  for (long r = 0; r <= D; ++r) {
    real acc;
    for (size_t i = 0; i < dm.size(); ++i) {
      acc += dm.w[i] * p[i];
      if (r < D) p[i] *= dm.x[i];
    }
    c[r] = std::move(acc);
  }
  return c;
}

real worst_gap(const std::vector<real>& u, const std::vector<real>& v) {
  real g;
  for (size_t i = 0; i < u.size(); ++i) g = max(g, abs(u[i] - v[i]));
  return g;
}

real array_scale(const std::vector<real>& u) {
  real s;
  for (const real& x : u) s = max(s, abs(x));
  return s;
}

int start_level(long bits) {
  int lvl = 6;
  for (long b = 512; b <= bits; b *= 2) ++lvl;
  return lvl;
}

discrete_measure discretize(const measure_spec& ms, int level, long bits) {
  if (ms.is_jacobi)
    return discretize_jacobi(ms.support.a, ms.support.b,
                             jacobi_density{ms.alpha, ms.beta}, ms.sign, level,
                             bits);
  if (ms.support.b.is_inf())
    return discretize_halfline(ms.support.a, ms.density, ms.sign, level, bits);
  return discretize_density(ms.support.a, ms.support.b, ms.density, ms.sign,
                            level, bits);
}

real hull_distance(const interval& iv, const complex& z) {
  real dx;
  if (z.re < iv.a)
    dx = iv.a - z.re;
  else if (z.re > iv.b)
    dx = z.re - iv.b;
  return hypot(dx, z.im);
}

}  // namespace

measure_spec measure_spec::jacobi(interval iv, real alpha, real beta, int sign) {
  measure_spec ms;
  ms.support = std::move(iv);
  ms.is_jacobi = true;
  ms.alpha = std::move(alpha);
  ms.beta = std::move(beta);
  ms.sign = sign;
  return ms;
}

measure_spec measure_spec::with_density(interval iv,
                                        std::function<real(const real&)> density,
                                        int sign) {
  measure_spec ms;
  ms.support = std::move(iv);
  ms.is_jacobi = false;
  ms.density = std::move(density);
  ms.sign = sign;
  return ms;
}

void validate(const measure_spec& ms) {
  if (ms.sign != 1 && ms.sign != -1)
    throw validation_error("measure sign must be +1 or -1");
  if (!ms.support.a.is_finite())
    throw validation_error("left endpoint must be finite");
  if (!(ms.support.a < ms.support.b))
    throw validation_error("interval endpoints must satisfy a < b");
  if (ms.is_jacobi) {
    if (!ms.support.b.is_finite())
      throw validation_error("jacobi weights need a bounded interval");
    if (!(ms.alpha > -1L) || !(ms.beta > -1L))
      throw validation_error("jacobi exponents must exceed -1");
  } else if (!ms.density) {
    throw validation_error("custom measure lacks a density");
  }
}

void validate(const nikishin_generator& gen) {
  if (gen.sigma.empty()) throw validation_error("generator needs at least one measure");
  for (const auto& ms : gen.sigma) {
    validate(ms);
    if (!ms.support.b.is_finite())
      throw validation_error("chain measures need bounded intervals");
  }
  require_adjacency(gen);
}

void validate(const precision_policy& policy) {
  if (policy.bits < 64) throw validation_error("precision must be at least 64 bits");
  if (policy.escalation_factor < 2)
    throw validation_error("escalation factor must be at least 2");
  if (policy.max_escalations < 0)
    throw validation_error("max escalations must be non-negative");
}

void require_adjacency(const nikishin_generator& gen) {
  for (size_t i = 0; i + 1 < gen.sigma.size(); ++i) {
    const interval& u = gen.sigma[i].support;
    const interval& v = gen.sigma[i + 1].support;
    if (!(u.b <= v.a || v.b <= u.a))
      throw validation_error("consecutive supports may share at most one point");
  }
}

void require_disjoint(const nikishin_generator& gen) {
  for (size_t i = 0; i + 1 < gen.sigma.size(); ++i) {
    const interval& u = gen.sigma[i].support;
    const interval& v = gen.sigma[i + 1].support;
    if (!(u.b < v.a || v.b < u.a))
      throw validation_error("this experiment requires strictly separated supports");
  }
}

const std::vector<real>& moment_table::c(int j, int k) const {
  auto it = entries.find({j, k});
  if (it == entries.end()) throw validation_error("moment table has no such pair");
  return it->second;
}

const discrete_measure& moment_table::measure(int j, int k) const {
  auto it = measures.find({j, k});
  if (it == measures.end())
    throw validation_error("table carries no quadrature data for this pair");
  return it->second;
}

const interval& moment_table::hull(int j) const {
  if (j < 1 || j > m) throw validation_error("measure index out of range");
  return hulls[j - 1];
}

std::vector<real> moments(const measure_spec& ms, long D,
                          const precision_policy& policy) {
  validate(ms);
  validate(policy);
  if (D < 0) throw validation_error("degree must be non-negative");
  precision_guard guard(policy.bits + 32);

  if (ms.is_jacobi) return jacobi_moments_closed(ms, D);

  real tol = real(1L).mul_2si(-(policy.bits / 2 + 16));
  int level = start_level(policy.bits);
  std::vector<real> prev = all_moments(discretize(ms, level - 1, policy.bits), D);
  for (int attempt = 0; attempt <= policy.max_escalations; ++attempt) {
    std::vector<real> cur = all_moments(discretize(ms, level, policy.bits), D);
    if (worst_gap(prev, cur) <= array_scale(cur) * tol) return cur;
    prev = std::move(cur);
    ++level;
  }
  throw numerical_error("moment quadrature failed to settle");
}

namespace {

struct cascade {
  std::map<std::pair<int, int>, discrete_measure> meas;
  std::map<std::pair<int, int>, std::vector<real>> mom;
};

cascade build_cascade(const nikishin_generator& gen, long D, int level, long bits) {
  cascade cas;
  const int m = gen.m();
  for (int j = 1; j <= m; ++j)
    cas.meas[{j, j}] = discretize(gen.sigma[j - 1], level, bits);
  for (int d = 1; d < m; ++d) {
    for (int j = 1; j + d <= m; ++j) {
      const int k = j + d;
      const discrete_measure& inner = cas.meas[{j + 1, k}];
      discrete_measure dm = cas.meas[{j, j}];
      for (size_t i = 0; i < dm.size(); ++i) dm.w[i] *= inner.cauchy(dm.x[i]);
      cas.meas[{j, k}] = std::move(dm);
    }
    for (int k = m; k - d >= 1; --k) {
      const int j = k - d;
      const discrete_measure& inner = cas.meas[{k - 1, j}];
      discrete_measure dm = cas.meas[{k, k}];
      for (size_t i = 0; i < dm.size(); ++i) dm.w[i] *= inner.cauchy(dm.x[i]);
      cas.meas[{k, j}] = std::move(dm);
    }
  }
  for (auto& [key, dm] : cas.meas) cas.mom[key] = all_moments(dm, D);
  return cas;
}

}  // namespace

moment_table nikishin_moments(const nikishin_generator& gen, long D,
                              const precision_policy& policy) {
  validate(gen);
  validate(policy);
  if (D < 0) throw validation_error("degree budget must be non-negative");
  precision_guard guard(policy.bits + 32);
  const int m = gen.m();
  real tol = real(1L).mul_2si(-(policy.bits / 2 + 16));

  // closed forms for the bare Jacobi generators; quadrature must agree
  std::map<std::pair<int, int>, std::vector<real>> closed;
  for (int j = 1; j <= m; ++j)
    if (gen.sigma[j - 1].is_jacobi)
      closed[{j, j}] = jacobi_moments_closed(gen.sigma[j - 1], D);

  int level = start_level(policy.bits);
  cascade prev = build_cascade(gen, D, level - 1, policy.bits);
  for (int attempt = 0; attempt <= policy.max_escalations; ++attempt) {
    cascade cur = build_cascade(gen, D, level, policy.bits);

    moment_table table;
    table.m = m;
    table.degree_budget = D;
    table.bits = policy.bits;
    table.report.level = level;
    for (int j = 1; j <= m; ++j) table.hulls.push_back(gen.sigma[j - 1].support);

    bool settled = true;
    for (auto& [key, arr] : cur.mom) {
      auto cl = closed.find(key);
      real err = (cl != closed.end()) ? worst_gap(arr, cl->second)
                                      : worst_gap(arr, prev.mom[key]);
      real scale = array_scale(arr);
      if (err > scale * tol) settled = false;
      if (cl != closed.end()) {
        // entries come from the formula; floor the report at its roundoff
        table.entries[key] = cl->second;
        err = max(err, scale.mul_2si(-(policy.bits + 8)));
      } else {
        table.entries[key] = arr;
      }
      table.report.pairs.push_back(
          {key.first, key.second, cur.meas[key].size(), err});
      table.report.max_err = max(table.report.max_err, err);
    }
    if (settled) {
      table.measures = std::move(cur.meas);
      return table;
    }
    prev = std::move(cur);
    ++level;
  }
  throw numerical_error("nested moment quadrature failed to settle");
}

complex cauchy_transform(const moment_table& table, int j, int k,
                         const complex& z, const real& eps_dist) {
  if (j < 1 || j > table.m || k < 1 || k > table.m)
    throw validation_error("measure indices out of range");
  const discrete_measure& dm = table.measure(j, k);
  const interval& iv = table.hull(j);
  real eps = eps_dist;
  if (!(eps > 0L))
    eps = (1L + iv.length()).mul_2si(-(table.bits / 4));
  if (hull_distance(iv, z) < eps)
    throw validation_error("evaluation point too close to the support");
  return dm.cauchy(z);
}

std::vector<real> carleman_diagnostic(const std::vector<real>& moments) {
  if (moments.size() < 2)
    throw validation_error("diagnostic needs moments beyond c_0");
  std::vector<real> sums;
  real acc;
  for (size_t n = 1; n < moments.size(); ++n) {
    if (moments[n].is_zero())
      throw validation_error("diagnostic requires nonzero moments");
    acc += pow(abs(moments[n]), real(-1L) / (2L * static_cast<long>(n)));
    sums.push_back(acc);
  }
  return sums;
}

const moment_table& system_context::table_at(long bits) {
  auto it = tables.find(bits);
  if (it == tables.end()) {
    precision_policy p = policy;
    p.bits = bits;
    it = tables.emplace(bits, nikishin_moments(gen, degree_budget, p)).first;
  }
  return it->second;
}

}  // namespace hp

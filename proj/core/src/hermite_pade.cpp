#include "hp/hermite_pade.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "hp/errors.hpp"
#include "hp/rational.hpp"

namespace hp {

long multi_index::total() const {
  long s = 0;
  for (long v : n) s += v;
  return s;
}

long multi_index::eta(int j) const {
  if (j < 0 || j > m()) throw validation_error("eta index out of range");
  long s = 0;
  for (int i = 0; i < j; ++i) s += n[i];
  return s;
}

long multi_index::chi(int j, int k) const {
  if (j < 1 || j > k || k > m()) throw validation_error("chi indices out of range");
  long v = n[j - 1] + 1;
  for (int i = j + 1; i <= k; ++i) v = std::min(v, n[i - 1] + 2);
  return v;
}

multi_index multi_index::bumped(int l) const {
  if (l < 1 || l > m()) throw validation_error("component index out of range");
  multi_index out = *this;
  ++out.n[l - 1];
  return out;
}

void validate(const multi_index& n) {
  if (n.n.empty()) throw validation_error("multi-index must be non-empty");
  for (long v : n.n)
    if (v < 0) throw validation_error("multi-index components must be non-negative");
  if (n.total() < 1) throw validation_error("multi-index must not be all zero");
}

namespace {

void check_compatible(const moment_table& table, const multi_index& n) {
  validate(n);
  if (n.m() != table.m)
    throw validation_error("index length does not match the chain length");
  long max_comp = 0;
  for (long v : n.n) max_comp = std::max(max_comp, v);
  if (table.degree_budget < n.total() + max_comp + 4)
    throw validation_error("moment table degree budget too small for this index");
}

}  // namespace

matrix assemble_system(const moment_table& table, const multi_index& n) {
  check_compatible(table, n);
  const long N = n.total();
  const int m = n.m();

  matrix sys(static_cast<size_t>(N) * (m + 1),
             static_cast<size_t>(N) * (m + 1) + 1);
  size_t row = 0;
  for (int j = 0; j < m; ++j) {
    const long nj1 = n.n[j];
    for (long s = N - 1; s >= -nj1; --s, ++row) {
      if (s >= 0) sys(row, static_cast<size_t>(j) * N + s) = real((j % 2) ? -1L : 1L);
      for (int k = j + 1; k <= m; ++k) {
        const std::vector<real>& c = table.c(j + 1, k);
        const long deg = (k < m) ? N - 1 : N;
        const size_t base = static_cast<size_t>(k) * N;
        // z^s coefficient of a_k(z) s^(z): index i pairs with c_{i-s-1}
        for (long i = std::max(s + 1, 0L); i <= deg; ++i) {
          sys(row, base + i) = (k % 2) ? -c[i - s - 1] : c[i - s - 1];
        }
      }
    }
  }
  return sys;
}

namespace {

hp_solution attempt_solve(const moment_table& table, const multi_index& n,
                          long bits) {
  precision_guard guard(bits + 32);
  null_space_result ns = null_space(assemble_system(table, n));

  const long N = n.total();
  const int m = n.m();
  real vec_max;
  for (const real& x : ns.v) vec_max = max(vec_max, abs(x));
  const real& lead = ns.v[static_cast<size_t>(m) * N + N];
  if (!ns.rank_clear || abs(lead) <= vec_max.mul_2si(-(bits / 2)))
    throw numerical_error("null-space direction ambiguous at this precision");

  hp_solution sol;
  sol.index = n;
  sol.bits = bits;
  sol.condition_estimate = ns.condition;
  real inv = real(1L) / lead;
  for (int k = 0; k <= m; ++k) {
    const long deg = (k < m) ? N - 1 : N;
    std::vector<real> cf(deg + 1);
    for (long i = 0; i <= deg; ++i)
      cf[i] = ns.v[static_cast<size_t>(k) * N + i] * inv;
    sol.a.push_back(poly(std::move(cf)));
  }
  sol.a[m].coeffs()[N] = real(1L);
  for (int k = 0; k <= m; ++k) {
    const long want = (k < m) ? N - 1 : N;
    sol.normal.push_back(sol.a[k].degree(-(bits / 2)) == want ? 1 : 0);
  }
  sol.residual_orders = residual_orders(sol, table).achieved;
  return sol;
}

}  // namespace

hp_solution solve_hp(const moment_table& table, const multi_index& n,
                     const precision_policy& policy) {
  validate(policy);
  check_compatible(table, n);
  long bits = policy.bits;
  for (int esc = 0;; ++esc) {
    try {
      return attempt_solve(table, n, bits);
    } catch (const numerical_error&) {
      if (esc >= policy.max_escalations) throw;
      bits *= policy.escalation_factor;
    }
  }
}

hp_solution solve_hp(system_context& ctx, const multi_index& n) {
  validate(ctx.policy);
  long bits = ctx.policy.bits;
  for (int esc = 0;; ++esc) {
    try {
      return attempt_solve(ctx.table_at(bits), n, bits);
    } catch (const numerical_error&) {
      if (esc >= ctx.policy.max_escalations) throw;
      bits *= ctx.policy.escalation_factor;
    }
  }
}

hp_solution solve_hp_exact(const moment_table& table, const multi_index& n) {
  check_compatible(table, n);
  const long N = n.total();
  const int m = n.m();

  std::map<std::pair<int, int>, std::vector<rat>> rc;
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k <= m; ++k) {
      auto key = std::make_pair(j + 1, k);
      if (rc.count(key)) continue;
      const std::vector<real>& c = table.c(j + 1, k);
      std::vector<rat> v(c.size());
      for (size_t r = 0; r < c.size(); ++r) v[r] = rationalize(c[r]);
      rc[key] = std::move(v);
    }

  const size_t cols = static_cast<size_t>(N) * (m + 1) + 1;
  std::vector<std::vector<rat>> sys(cols - 1, std::vector<rat>(cols, rat(0)));
  size_t row = 0;
  for (int j = 0; j < m; ++j) {
    const long nj1 = n.n[j];
    for (long s = N - 1; s >= -nj1; --s, ++row) {
      if (s >= 0) sys[row][static_cast<size_t>(j) * N + s] = rat((j % 2) ? -1 : 1);
      for (int k = j + 1; k <= m; ++k) {
        const std::vector<rat>& c = rc[{j + 1, k}];
        const long deg = (k < m) ? N - 1 : N;
        const size_t base = static_cast<size_t>(k) * N;
        for (long i = std::max(s + 1, 0L); i <= deg; ++i)
          sys[row][base + i] = (k % 2) ? -c[i - s - 1] : c[i - s - 1];
      }
    }
  }

  std::vector<rat> v;
  try {
    v = null_space_rational(std::move(sys));
  } catch (const std::runtime_error& e) {
    throw numerical_error(std::string("exact solve failed: ") + e.what());
  }
  const rat& lead = v[static_cast<size_t>(m) * N + N];
  if (lead.is_zero())
    throw numerical_error("exact solve: leading coefficient vanished");

  hp_solution sol;
  sol.index = n;
  sol.bits = working_precision();
  sol.condition_estimate = real(0L);
  for (int k = 0; k <= m; ++k) {
    const long deg = (k < m) ? N - 1 : N;
    std::vector<real> cf(deg + 1);
    bool top_nonzero = false;
    for (long i = deg; i >= 0; --i) {
      rat q = v[static_cast<size_t>(k) * N + i] / lead;
      if (i == deg) top_nonzero = !q.is_zero();
      cf[i] = q.to_real();
    }
    sol.normal.push_back(top_nonzero ? 1 : 0);
    sol.a.push_back(poly(std::move(cf)));
  }
  sol.residual_orders = residual_orders(sol, table).achieved;
  return sol;
}

complex evaluate_form(const hp_solution& sol, const moment_table& table, int j,
                      const complex& z) {
  const int m = sol.index.m();
  if (j < 0 || j > m) throw validation_error("form level out of range");
  if (j == m) {
    complex v = sol.a[m].eval(z);
    return (m % 2) ? -v : v;
  }
  complex acc = sol.a[j].eval(z);
  if (j % 2) acc = -acc;
  for (int k = j + 1; k <= m; ++k) {
    complex t = sol.a[k].eval(z) * cauchy_transform(table, j + 1, k, z);
    acc = (k % 2) ? acc - t : acc + t;
  }
  return acc;
}

real evaluate_form(const hp_solution& sol, const moment_table& table, int j,
                   const real& x) {
  return evaluate_form(sol, table, j, complex(x)).re;
}

real evaluate_form_deriv(const hp_solution& sol, const moment_table& table,
                         int j, const real& x) {
  const int m = sol.index.m();
  if (j < 0 || j > m) throw validation_error("form level out of range");
  real acc = sol.a[j].derivative().eval(x);
  if (j % 2) acc = -acc;
  if (j == m) return acc;
  for (int k = j + 1; k <= m; ++k) {
    const discrete_measure& dm = table.measure(j + 1, k);
    real t = sol.a[k].derivative().eval(x) * dm.cauchy(x) +
             sol.a[k].eval(x) * dm.cauchy_deriv(x);
    acc = (k % 2) ? acc - t : acc + t;
  }
  return acc;
}

residual_report residual_orders(const hp_solution& sol,
                                const moment_table& table) {
  const multi_index& n = sol.index;
  const int m = n.m();
  residual_report rep;
  for (int j = 0; j < m; ++j) {
    const long claim = n.n[j] + 1;
    const long t_max = claim + 4;

    real scale;
    for (int k = j + 1; k <= m; ++k) {
      const std::vector<real>& c = table.c(j + 1, k);
      const long top = std::min<long>(
          static_cast<long>(sol.a[k].coeffs().size()) + t_max - 2,
          static_cast<long>(c.size()) - 1);
      real cmax;
      for (long r = 0; r <= top; ++r) cmax = max(cmax, abs(c[r]));
      scale += sol.a[k].coeff_norm() * cmax;
    }
    real thresh = scale.mul_2si(-(sol.bits / 2));

    long achieved = 0;
    real lead_coeff;
    bool vanish = true;
    for (long t = 1; t <= t_max; ++t) {
      real d;
      for (int k = j + 1; k <= m; ++k) {
        const std::vector<real>& c = table.c(j + 1, k);
        const std::vector<real>& cf = sol.a[k].coeffs();
        real acc;
        for (size_t i = 0; i < cf.size(); ++i) {
          size_t idx = i + static_cast<size_t>(t) - 1;
          if (idx < c.size()) acc += cf[i] * c[idx];
        }
        d += (k % 2) ? -acc : acc;
      }
      if (t < claim && abs(d) > thresh) vanish = false;
      if (achieved == 0 && abs(d) > thresh) achieved = t;
      if (t == claim) lead_coeff = d;
    }
    rep.achieved.push_back(achieved);
    rep.leading.push_back(lead_coeff);
    rep.order_exact.push_back(achieved == claim ? 1 : 0);
    rep.vanish_ok.push_back(vanish ? 1 : 0);
  }
  return rep;
}

}  // namespace hp

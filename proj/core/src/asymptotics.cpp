#include "hp/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "hp/errors.hpp"
#include "hp/riemann.hpp"

namespace hp {

namespace {

std::string index_str(const std::vector<long>& n) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < n.size(); ++i) {
    if (i) os << ',';
    os << n[i];
  }
  os << ')';
  return os.str();
}

std::string series_name(const char* base, int k) {
  std::ostringstream os;
  os << base << k;
  return os.str();
}

// Ladder entries sorted by total degree, then lexicographically; totals
// must be strictly increasing so per-entry sups line up for rate fits.
std::vector<multi_index> canonical_ladder(const std::vector<multi_index>& in,
                                          int m) {
  if (in.empty()) throw validation_error("experiment ladder is empty");
  std::vector<multi_index> ladder = in;
  for (const auto& n : ladder) {
    validate(n);
    if (n.m() != m)
      throw validation_error("ladder index length does not match the chain");
  }
  std::sort(ladder.begin(), ladder.end(),
            [](const multi_index& a, const multi_index& b) {
              long ta = a.total(), tb = b.total();
              if (ta != tb) return ta < tb;
              return a.n < b.n;
            });
  for (size_t i = 1; i < ladder.size(); ++i)
    if (ladder[i].total() <= ladder[i - 1].total())
      throw validation_error(
          "ladder totals must be strictly increasing across entries");
  return ladder;
}

void require_finite_rows(const std::vector<experiment_row>& rows) {
  for (const auto& row : rows)
    if (!row.deviation.is_finite() || !row.measured.is_finite())
      throw numerical_error("experiment produced a non-finite deviation at " +
                            index_str(row.index) + " in series " + row.series);
}

// Strided worker loop; each worker owns its index stride so merged results
// do not depend on the job count.
template <class Fn>
void for_entries(size_t count, long workers, Fn&& fn) {
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i, size_t{0});
    return;
  }
  long bits = working_precision();
  std::vector<std::exception_ptr> errs(static_cast<size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (long t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      set_working_precision(bits);
      try {
        for (size_t i = static_cast<size_t>(t); i < count;
             i += static_cast<size_t>(workers))
          fn(i, static_cast<size_t>(t));
      } catch (...) {
        errs[static_cast<size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

long worker_count(long jobs, size_t entries) {
  if (jobs < 1) jobs = 1;
  return std::min<long>(jobs, static_cast<long>(entries));
}

// Least-squares slope of log(sup deviation) against |n| over the top half
// of the ladder, plus a monotonicity verdict with a factor-two allowance.
void fit_rates(experiment_report& r) {
  for (const auto& name : r.series_names()) {
    std::vector<double> xs, ys;
    std::vector<real> devs;
    for (const auto& n : r.ladder) {
      bool present = false;
      for (const auto& row : r.rows)
        if (row.series == name && row.index == n) {
          present = true;
          break;
        }
      if (!present) continue;
      real d = r.sup_deviation(name, n);
      devs.push_back(d);
      long total = 0;
      for (long v : n) total += v;
      xs.push_back(static_cast<double>(total));
      double ly = d.is_zero() ? -700.0 : log2_abs(d) * std::log(2.0);
      ys.push_back(std::max(ly, -700.0));
    }
    rate_fit fit;
    fit.series = name;
    fit.decreasing = true;
    for (size_t i = 0; i + 1 < devs.size(); ++i)
      if (devs[i + 1] > devs[i].mul_2si(1)) fit.decreasing = false;
    if (devs.size() >= 2 && devs.back() > devs.front()) fit.decreasing = false;
    size_t lo = xs.size() / 2;
    if (xs.size() - lo >= 2) {
      double xm = 0, ym = 0;
      size_t cnt = xs.size() - lo;
      for (size_t i = lo; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
      }
      xm /= static_cast<double>(cnt);
      ym /= static_cast<double>(cnt);
      double sxx = 0, sxy = 0;
      for (size_t i = lo; i < xs.size(); ++i) {
        sxx += (xs[i] - xm) * (xs[i] - xm);
        sxy += (xs[i] - xm) * (ys[i] - ym);
      }
      if (sxx > 0) {
        fit.slope = sxy / sxx;
        fit.ratio = std::exp(fit.slope);
      }
    }
    r.fits.push_back(std::move(fit));
  }
}

std::vector<interval> slits_of(const nikishin_generator& gen) {
  std::vector<interval> out;
  out.reserve(gen.sigma.size());
  for (const auto& ms : gen.sigma) out.push_back(ms.support);
  return out;
}

}  // namespace

form_family::form_family(const moment_table& table, precision_policy policy)
    : table_(table), policy_(policy) {
  validate(policy);
  if (!table.has_measures())
    throw validation_error(
        "form family needs the node discretizations kept in the moment table");
}

form_family::entry& form_family::at(const multi_index& n) {
  validate(n);
  if (n.m() != table_.m)
    throw validation_error("multi-index length does not match the chain");
  auto it = cache_.find(n.n);
  if (it == cache_.end()) {
    entry e;
    e.sol = std::make_unique<hp_solution>(solve_hp(table_, n, policy_));
    it = cache_.emplace(n.n, std::move(e)).first;
  }
  return it->second;
}

const hp_solution& form_family::solution(const multi_index& n) {
  return *at(n).sol;
}

const monic_from_roots& form_family::factor(const multi_index& n, int j) {
  if (j < 1 || j > table_.m)
    throw validation_error("zero factor level out of range");
  entry& e = at(n);
  auto it = e.factors.find(j);
  if (it == e.factors.end())
    it = e.factors.emplace(j, form_zeros(*e.sol, table_, j)).first;
  return it->second;
}

poly form_family::factor_poly(const multi_index& n, int j) {
  if (j == 0 || j == table_.m + 1) return poly::constant(real(1L));
  return factor(n, j).q;
}

complex form_family::H_quotient(const multi_index& n, int j,
                                const complex& z) {
  if (j < 0 || j > table_.m)
    throw validation_error("weighted quotient level out of range");
  const hp_solution& sol = solution(n);
  complex a = evaluate_form(sol, table_, j, z);
  complex up = factor_poly(n, j + 1).eval(z);
  complex dn = factor_poly(n, j).eval(z);
  return up * a / dn;
}

const std::vector<real>& form_family::phi_weights(const multi_index& n,
                                                  int j) {
  entry& e = at(n);
  auto it = e.phi.find(j);
  if (it != e.phi.end()) return it->second;

  const discrete_measure& mu = table_.measure(j + 1, j + 1);
  poly q_up = factor_poly(n, j + 1);
  poly q_lo = factor_poly(n, j);
  poly q_hi = factor_poly(n, j + 2);
  const std::vector<real>& h_up = H_slit_values(n, j + 1);

  std::vector<real> phi(mu.x.size());
  for (size_t i = 0; i < mu.x.size(); ++i) {
    real qu = q_up.eval(mu.x[i]);
    phi[i] = sqr(qu) * h_up[i] * mu.w[i] / (q_lo.eval(mu.x[i]) * q_hi.eval(mu.x[i]));
  }
  return e.phi.emplace(j, std::move(phi)).first->second;
}

complex form_family::H_integral(const multi_index& n, int j,
                                const complex& z) {
  if (j < 0 || j >= table_.m)
    throw validation_error(
        "integral representation exists below the top level only");
  const std::vector<real>& phi = phi_weights(n, j);
  const discrete_measure& mu = table_.measure(j + 1, j + 1);
  complex acc;
  for (size_t i = 0; i < phi.size(); ++i)
    acc = acc + complex(phi[i]) / (z - complex(mu.x[i]));
  return acc;
}

const std::vector<real>& form_family::H_slit_values(const multi_index& n,
                                                    int j) {
  if (j < 1 || j > table_.m)
    throw validation_error("slit values exist for levels 1..m");
  entry& e = at(n);
  auto it = e.h_nodes.find(j);
  if (it != e.h_nodes.end()) return it->second;

  const discrete_measure& own = table_.measure(j, j);
  std::vector<real> vals(own.x.size());
  if (j == table_.m) {
    real top((table_.m % 2 == 0) ? 1L : -1L);
    for (auto& v : vals) v = top;
  } else {
    const std::vector<real>& phi = phi_weights(n, j);
    const discrete_measure& mu = table_.measure(j + 1, j + 1);
    for (size_t q = 0; q < own.x.size(); ++q) {
      real acc(0L);
      for (size_t i = 0; i < phi.size(); ++i)
        acc += phi[i] / (own.x[q] - mu.x[i]);
      vals[q] = acc;
    }
  }
  return e.h_nodes.emplace(j, std::move(vals)).first->second;
}

const form_family::k_constants& form_family::constants(const multi_index& n) {
  entry& e = at(n);
  if (e.consts) return *e.consts;

  int m = table_.m;
  k_constants kc;
  kc.K.assign(static_cast<size_t>(m) + 1, real(1L));
  kc.kappa.assign(static_cast<size_t>(m) + 1, real(0L));
  for (int k = m; k >= 1; --k) {
    const discrete_measure& mu = table_.measure(k, k);
    const std::vector<real>& h = H_slit_values(n, k);
    poly q_mid = factor_poly(n, k);
    poly q_lo = factor_poly(n, k - 1);
    poly q_hi = factor_poly(n, k + 1);
    real acc(0L);
    for (size_t i = 0; i < mu.x.size(); ++i) {
      real num = sqr(q_mid.eval(mu.x[i])) * abs(h[i]) * abs(mu.w[i]);
      acc += num / abs(q_lo.eval(mu.x[i]) * q_hi.eval(mu.x[i]));
    }
    if (!(acc > 0L))
      throw numerical_error("norm integral collapsed at level " +
                            std::to_string(k));
    kc.K[static_cast<size_t>(k) - 1] = real(1L) / sqrt(acc);
  }
  for (int k = 1; k <= m; ++k)
    kc.kappa[static_cast<size_t>(k)] =
        kc.K[static_cast<size_t>(k) - 1] / kc.K[static_cast<size_t>(k)];
  e.consts = std::make_unique<k_constants>(std::move(kc));
  return *e.consts;
}

std::vector<std::string> experiment_report::series_names() const {
  std::vector<std::string> names;
  for (const auto& row : rows)
    if (std::find(names.begin(), names.end(), row.series) == names.end())
      names.push_back(row.series);
  return names;
}

real experiment_report::sup_deviation(const std::string& series,
                                      const std::vector<long>& n) const {
  real best(0L);
  for (const auto& row : rows)
    if (row.series == series && row.index == n) best = max(best, row.deviation);
  return best;
}

std::vector<multi_index> diagonal_ladder(int m, long from, long to) {
  if (m < 1 || from < 1 || to < from)
    throw validation_error("ladder bounds must satisfy 1 <= from <= to");
  std::vector<multi_index> out;
  for (long k = from; k <= to; ++k)
    out.push_back(multi_index{std::vector<long>(static_cast<size_t>(m), k)});
  return out;
}

std::vector<multi_index> staircase_ladder(int m, long from, long to) {
  if (m < 1 || from < 1 || to < from)
    throw validation_error("ladder bounds must satisfy 1 <= from <= to");
  std::vector<multi_index> out;
  for (long k = from; k <= to; ++k) {
    std::vector<long> n(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) n[static_cast<size_t>(j)] = k + (m - 1 - j);
    out.push_back(multi_index{std::move(n)});
  }
  return out;
}

std::vector<complex> default_probes(const nikishin_generator& gen) {
  validate(gen);
  real lo = gen.sigma.front().support.a;
  real hi = gen.sigma.front().support.b;
  for (const auto& ms : gen.sigma) {
    lo = min(lo, ms.support.a);
    hi = max(hi, ms.support.b);
  }
  real diam = hi - lo;
  real center = (lo + hi).mul_2si(-1);
  real half(0.5);
  // A circle of radius r around the hull's center stays r - diam/2 away
  // from every slit; bump the radius when the system itself is tiny.
  real r2 = max(diam.mul_2si(1), diam.mul_2si(-1) + 2 * half);
  real r4 = max(diam.mul_2si(2), diam.mul_2si(-1) + 4 * half);
  std::vector<complex> probes;
  real pi = const_pi();
  for (int c = 0; c < 2; ++c) {
    const real& r = c == 0 ? r2 : r4;
    for (int i = 0; i < 8; ++i) {
      real ang = pi * real(i) / real(4L);
      probes.push_back(
          complex(center + r * cos(ang), r * sin(ang)));
    }
  }
  probes.push_back(complex(lo - half - diam.mul_2si(-2)));
  probes.push_back(complex(hi + half + diam.mul_2si(-2)));
  probes.push_back(complex(lo - 2 * half - diam));
  probes.push_back(complex(hi + 2 * half + diam));
  return probes;
}

experiment_report run_markov_convergence(system_context& ctx,
                                         const std::vector<multi_index>& ladder,
                                         const std::vector<complex>& probes,
                                         long jobs) {
  int m = ctx.gen.m();
  require_adjacency(ctx.gen);
  std::vector<multi_index> steps = canonical_ladder(ladder, m);
  if (probes.empty()) throw validation_error("probe set is empty");
  const moment_table& table = ctx.table();

  experiment_report r;
  r.experiment = "markov";
  for (const auto& n : steps) r.ladder.push_back(n.n);
  r.probes = probes;

  long workers = worker_count(jobs, steps.size());
  std::vector<std::unique_ptr<form_family>> fams;
  for (long t = 0; t < workers; ++t)
    fams.push_back(std::make_unique<form_family>(table, ctx.policy));
  std::vector<std::vector<experiment_row>> per(steps.size());

  for_entries(steps.size(), workers, [&](size_t i, size_t worker) {
    form_family& fam = *fams[worker];
    const multi_index& n = steps[i];
    const hp_solution& sol = fam.solution(n);
    for (int j = 0; j < m; ++j) {
      std::string name = series_name("j=", j);
      for (const auto& z : probes) {
        complex measured = sol.a[static_cast<size_t>(j)].eval(z) /
                           sol.a[static_cast<size_t>(m)].eval(z);
        complex ref = cauchy_transform(table, m, j + 1, z);
        per[i].push_back(
            {n.n, name, z, measured, ref, abs(measured - ref)});
      }
    }
  });

  for (auto& rows : per)
    for (auto& row : rows) r.rows.push_back(std::move(row));
  require_finite_rows(r.rows);
  fit_rates(r);
  return r;
}

experiment_report run_ratio_asymptotics(system_context& ctx,
                                        const std::vector<multi_index>& ladder,
                                        int l,
                                        const std::vector<complex>& probes,
                                        long jobs) {
  int m = ctx.gen.m();
  if (l < 1 || l > m)
    throw validation_error("raised component must name one of the measures");
  require_disjoint(ctx.gen);
  std::vector<multi_index> steps = canonical_ladder(ladder, m);
  if (probes.empty()) throw validation_error("probe set is empty");
  const moment_table& table = ctx.table();
  surface_map map = build_surface_map({slits_of(ctx.gen), l}, ctx.policy);

  experiment_report r;
  r.experiment = "ratio";
  for (const auto& n : steps) r.ladder.push_back(n.n);
  r.probes = probes;

  // Branch references depend on the probe only; compute them once.
  std::vector<std::vector<complex>> f_ref(static_cast<size_t>(m) + 1);
  std::vector<complex> top_ref;
  for (const auto& z : probes) {
    branch_values bv = branches(map, z);
    for (int k = 1; k <= m; ++k)
      f_ref[static_cast<size_t>(k)].push_back(F_tilde(map, k, z));
    top_ref.push_back(bv.psi[static_cast<size_t>(m)] * map.gamma);
  }

  long workers = worker_count(jobs, steps.size());
  std::vector<std::unique_ptr<form_family>> fams;
  for (long t = 0; t < workers; ++t)
    fams.push_back(std::make_unique<form_family>(table, ctx.policy));
  std::vector<std::vector<experiment_row>> per(steps.size());

  for_entries(steps.size(), workers, [&](size_t i, size_t worker) {
    form_family& fam = *fams[worker];
    const multi_index& n = steps[i];
    multi_index nb = n.bumped(l);
    const hp_solution& sol = fam.solution(n);
    const hp_solution& sol_b = fam.solution(nb);
    for (int k = 1; k <= m; ++k) {
      poly qk = fam.factor_poly(n, k);
      poly qk_b = fam.factor_poly(nb, k);
      std::string name = series_name("Q k=", k);
      for (size_t p = 0; p < probes.size(); ++p) {
        complex measured = qk_b.eval(probes[p]) / qk.eval(probes[p]);
        const complex& ref = f_ref[static_cast<size_t>(k)][p];
        per[i].push_back(
            {n.n, name, probes[p], measured, ref, abs(measured - ref)});
      }
    }
    for (int k = 0; k <= m; ++k) {
      std::string name = series_name("a k=", k);
      for (size_t p = 0; p < probes.size(); ++p) {
        complex measured = sol_b.a[static_cast<size_t>(k)].eval(probes[p]) /
                           sol.a[static_cast<size_t>(k)].eval(probes[p]);
        const complex& ref = top_ref[p];
        per[i].push_back(
            {n.n, name, probes[p], measured, ref, abs(measured - ref)});
      }
    }
  });

  for (auto& rows : per)
    for (auto& row : rows) r.rows.push_back(std::move(row));
  require_finite_rows(r.rows);
  fit_rates(r);
  return r;
}

experiment_report run_kappa(system_context& ctx,
                            const std::vector<multi_index>& ladder, int l,
                            const std::vector<complex>& probes, long jobs) {
  int m = ctx.gen.m();
  if (l < 1 || l > m)
    throw validation_error("raised component must name one of the measures");
  require_disjoint(ctx.gen);
  std::vector<multi_index> steps = canonical_ladder(ladder, m);
  if (probes.empty()) throw validation_error("probe set is empty");
  const moment_table& table = ctx.table();
  surface_map map = build_surface_map({slits_of(ctx.gen), l}, ctx.policy);

  experiment_report r;
  r.experiment = "kappa";
  for (const auto& n : steps) r.ladder.push_back(n.n);
  r.probes = probes;

  std::vector<real> kap_ref(static_cast<size_t>(m) + 1, real(0L));
  for (int k = 1; k <= m; ++k)
    kap_ref[static_cast<size_t>(k)] = kappa_limit(map, k);
  // Squared-constant deflation and slit-function quotient entering the
  // form-ratio modulus, per pole-free level.
  std::vector<std::vector<real>> a_ref(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    real deflate(1L);
    for (int nu = k + 1; nu <= m; ++nu)
      deflate /= sqr(kap_ref[static_cast<size_t>(nu)]);
    for (const auto& z : probes) {
      complex fk = k == 0 ? complex(real(1L)) : F_tilde(map, k, z);
      complex fk1 = F_tilde(map, k + 1, z);
      a_ref[static_cast<size_t>(k)].push_back(deflate * abs(fk) / abs(fk1));
    }
  }

  long workers = worker_count(jobs, steps.size());
  std::vector<std::unique_ptr<form_family>> fams;
  for (long t = 0; t < workers; ++t)
    fams.push_back(std::make_unique<form_family>(table, ctx.policy));
  std::vector<std::vector<experiment_row>> per(steps.size());
  complex no_probe;

  for_entries(steps.size(), workers, [&](size_t i, size_t worker) {
    form_family& fam = *fams[worker];
    const multi_index& n = steps[i];
    multi_index nb = n.bumped(l);
    const form_family::k_constants& kc = fam.constants(n);
    const form_family::k_constants& kb = fam.constants(nb);
    for (int k = 1; k <= m; ++k) {
      real measured =
          kb.kappa[static_cast<size_t>(k)] / kc.kappa[static_cast<size_t>(k)];
      const real& ref = kap_ref[static_cast<size_t>(k)];
      per[i].push_back({n.n, series_name("kappa k=", k), no_probe,
                        complex(measured), complex(ref),
                        abs(measured - ref)});
    }
    for (int k = 1; k <= m; ++k) {
      real lhs = kb.K[static_cast<size_t>(k) - 1] /
                 kc.K[static_cast<size_t>(k) - 1];
      real rhs(1L);
      for (int nu = k; nu <= m; ++nu)
        rhs *= kb.kappa[static_cast<size_t>(nu)] /
               kc.kappa[static_cast<size_t>(nu)];
      per[i].push_back({n.n, series_name("K k=", k), no_probe, complex(lhs),
                        complex(rhs), abs(lhs - rhs)});
    }
    const hp_solution& sol = fam.solution(n);
    const hp_solution& sol_b = fam.solution(nb);
    for (int k = 0; k < m; ++k) {
      std::string name = series_name("A k=", k);
      for (size_t p = 0; p < probes.size(); ++p) {
        complex an = evaluate_form(sol, table, k, probes[p]);
        complex ab = evaluate_form(sol_b, table, k, probes[p]);
        real measured = abs(ab) / abs(an);
        const real& ref = a_ref[static_cast<size_t>(k)][p];
        per[i].push_back({n.n, name, probes[p], complex(measured),
                          complex(ref), abs(measured - ref)});
      }
    }
  });

  for (auto& rows : per)
    for (auto& row : rows) r.rows.push_back(std::move(row));
  require_finite_rows(r.rows);
  fit_rates(r);
  return r;
}

experiment_report zero_structure_report(system_context& ctx,
                                        const std::vector<multi_index>& ladder) {
  int m = ctx.gen.m();
  require_adjacency(ctx.gen);
  std::vector<multi_index> steps = canonical_ladder(ladder, m);
  const moment_table& table = ctx.table();
  form_family fam(table, ctx.policy);

  experiment_report r;
  r.experiment = "zero_structure";
  for (const auto& n : steps) r.ladder.push_back(n.n);
  complex no_probe;

  for (const auto& n : steps) {
    const hp_solution& sol = fam.solution(n);
    for (int j = 1; j <= m; ++j) {
      const monic_from_roots& mf = fam.factor(n, j);
      real count(static_cast<long>(mf.zeros.size()));
      real want(n.eta(j));
      r.rows.push_back({n.n, series_name("count j=", j), no_probe, complex(count),
                        complex(want), abs(count - want)});

      const interval& iv = table.hull(j);
      long budget = 16 * n.eta(j) + 128;
      long changes = sign_change_count(
          [&](const real& x) { return evaluate_form(sol, table, j, x); }, iv,
          budget);
      real got(changes);
      real dev = changes >= n.eta(j) ? real(0L) : want - got;
      r.rows.push_back({n.n, series_name("signchange j=", j), no_probe,
                        complex(got), complex(want), dev});
    }
    for (int l = 1; l <= m; ++l) {
      multi_index nb = n.bumped(l);
      for (int j = 1; j <= m; ++j) {
        if (n.eta(j) == 0) continue;  // nothing to separate yet
        interlace_result res =
            interlace_check(fam.factor(n, j).zeros, fam.factor(nb, j).zeros);
        std::ostringstream name;
        name << "interlace l=" << l << " j=" << j;
        r.rows.push_back({n.n, name.str(), no_probe,
                          complex(real(res.ok ? 1L : 0L)), complex(real(1L)),
                          real(res.ok ? 0L : 1L)});
      }
    }
  }
  require_finite_rows(r.rows);
  fit_rates(r);
  return r;
}

}  // namespace hp

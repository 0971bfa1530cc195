#include "hp/riemann.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "hp/errors.hpp"
#include "hp/linsolve.hpp"

namespace hp {
namespace {

real pow2(long e) { return real(1L).mul_2si(e); }

complex horner(const std::vector<complex>& c, const complex& x) {
  complex acc = c.back();
  for (size_t i = c.size() - 1; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

// Simultaneous (Durand-Kerner) iteration for all roots.  `coeff` is
// ascending with a nonzero leading term; warm starts are used when the
// count matches, which is what keeps the continuation steps cheap.
std::vector<complex> dk_roots(const std::vector<complex>& coeff,
                              std::vector<complex> warm) {
  long deg = static_cast<long>(coeff.size()) - 1;
  if (deg < 1) return {};
  std::vector<complex> c(coeff.size());
  for (size_t i = 0; i < coeff.size(); ++i) c[i] = coeff[i] / coeff.back();

  if (static_cast<long>(warm.size()) != deg) {
    warm.clear();
    real radius(1L);
    for (long i = 0; i < deg; ++i) radius = max(radius, abs(c[i]));
    radius += real(1L);
    complex turn(real(0.4), real(0.9));  // not a root of unity
    complex cur(real(1L));
    warm.reserve(deg);
    for (long i = 0; i < deg; ++i) {
      cur = cur * turn;
      warm.push_back(cur * radius);
    }
  }

  real eps = pow2(-(working_precision() - 24));
  for (int iter = 0; iter < 400; ++iter) {
    real worst(0L), scale(1L);
    for (long i = 0; i < deg; ++i) {
      complex num = horner(c, warm[i]);
      complex den(real(1L));
      for (long j = 0; j < deg; ++j)
        if (j != i) den = den * (warm[i] - warm[j]);
      if (abs(den).is_zero()) {
        warm[i].re += (abs(warm[i]) + real(1L)) * eps;
        continue;
      }
      complex step = num / den;
      warm[i] = warm[i] - step;
      worst = max(worst, abs(step));
      scale = max(scale, abs(warm[i]));
    }
    if (worst <= scale * eps) break;
  }
  return warm;
}

// Aligns `next` with `prev` by nearest neighbour.  Each label may move at
// most 0.45 of the gap to its nearest fellow, which keeps the assignment
// unambiguous while letting a lone far-away root take large steps.
bool match_to(const std::vector<complex>& prev, std::vector<complex>& next) {
  size_t n = prev.size();
  if (next.size() != n) return false;
  std::vector<real> cap(n, real::infinity());
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j)
      if (j != i) cap[i] = min(cap[i], abs(prev[i] - prev[j]));
    cap[i] *= real(0.45);
  }
  std::vector<long> pick(n, -1);
  std::vector<char> used(n, 0);
  for (size_t i = 0; i < n; ++i) {
    long best = -1;
    real bd;
    for (size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      real d = abs(next[j] - prev[i]);
      if (best < 0 || d < bd) {
        bd = d;
        best = static_cast<long>(j);
      }
    }
    if (best < 0 || !(bd <= cap[i])) return false;
    used[static_cast<size_t>(best)] = 1;
    pick[i] = best;
  }
  std::vector<complex> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(next[static_cast<size_t>(pick[i])]);
  next.swap(out);
  return true;
}

// Divides out a known root (exact up to rounding since the root produced
// the polynomial in the first place).
poly deflate(const poly& d, const real& root) {
  const auto& c = d.coeffs();
  long n = static_cast<long>(c.size()) - 1;
  std::vector<real> b(static_cast<size_t>(n));
  real carry = c[static_cast<size_t>(n)];
  for (long i = n - 1; i >= 0; --i) {
    b[static_cast<size_t>(i)] = carry;
    carry = c[static_cast<size_t>(i)] + carry * root;
  }
  return poly(std::move(b));
}

// ---- intermediate state while slits are inserted one at a time ----
//
// The covering is grown in the gauge gamma = 1, delta = 0: the last slit
// gets the two-sheet closed form, then each earlier slit is cut into the
// current lowest sheet by placing a small dipole at the preimage of its
// midpoint and growing the slit to full length along a homotopy.  Sheets
// lo..m-1 have finite poles; the entries of `crit`/`target` are kept in
// insertion order (last slit first, endpoints low/high within a pair).
struct stage_state {
  int m = 0;
  int lo = 0;
  std::vector<real> w, rho;
  std::vector<real> crit;
  std::vector<real> target;
};

real eval_R(const stage_state& st, const real& x) {
  real acc = x;
  for (int k = st.lo; k < st.m; ++k) acc += st.rho[k] / (x - st.w[k]);
  return acc;
}

real eval_R_deriv(const stage_state& st, const real& x) {
  real acc(1L);
  for (int k = st.lo; k < st.m; ++k) acc -= st.rho[k] / sqr(x - st.w[k]);
  return acc;
}

poly active_D(const stage_state& st) {
  std::vector<real> roots(st.w.begin() + st.lo, st.w.end());
  return monic_expand(roots);
}

real pole_scale(const stage_state& st) {
  real s(1L);
  for (int k = st.lo; k < st.m; ++k) s = max(s, abs(st.w[k]));
  return s;
}

bool params_valid(const stage_state& st) {
  real floor = pole_scale(st) * pow2(-(working_precision() / 2));
  for (int i = st.lo; i < st.m; ++i) {
    if (!(abs(st.rho[i]) > floor * floor)) return false;
    for (int j = i + 1; j < st.m; ++j)
      if (!(abs(st.w[i] - st.w[j]) > floor)) return false;
  }
  return true;
}

// Re-solves the critical points (roots of gamma D^2 - sum rho_k D_k^2)
// from the current parameters, warm-started and matched against the stored
// ones.  Fails when a root wanders off the real line or the matching is
// ambiguous; callers treat that as "shrink the step".
bool refresh_crits(stage_state& st) {
  long s = st.m - st.lo;
  poly D = active_D(st);
  poly N = D * D;
  for (int k = st.lo; k < st.m; ++k) {
    poly Dk = deflate(D, st.w[k]);
    N = N - (Dk * Dk) * st.rho[k];
  }
  if (N.degree() != 2 * s) return false;

  std::vector<complex> coeff;
  coeff.reserve(N.coeffs().size());
  for (const auto& v : N.coeffs()) coeff.emplace_back(v);
  std::vector<complex> warm;
  warm.reserve(st.crit.size());
  for (const auto& v : st.crit) warm.emplace_back(v);

  auto roots = dk_roots(coeff, warm);
  real imtol = pole_scale(st) * pow2(-(working_precision() / 2));
  for (const auto& r : roots)
    if (!(abs(r.im) <= imtol)) return false;

  if (!match_to(warm, roots)) return false;

  real polefloor = pole_scale(st) * pow2(-(working_precision() * 3 / 4));
  for (size_t i = 0; i < roots.size(); ++i) {
    st.crit[i] = roots[i].re;
    for (int k = st.lo; k < st.m; ++k)
      if (!(abs(st.crit[i] - st.w[k]) > polefloor)) return false;
  }
  return true;
}

real residual_norm(const stage_state& st) {
  real fn(0L);
  for (size_t i = 0; i < st.crit.size(); ++i)
    fn = max(fn, abs(eval_R(st, st.crit[i]) - st.target[i]));
  return fn;
}

// Damped Newton on (pole, residue) pairs with the critical points re-solved
// every iteration; the derivative of a critical value with respect to a
// parameter is just the partial of R there, since R' vanishes at the point.
bool newton_polish(stage_state& st, const real& tol, int max_iter) {
  long s = st.m - st.lo;
  long dim = 2 * s;
  for (int it = 0; it < max_iter; ++it) {
    if (!refresh_crits(st)) return false;
    real fn = residual_norm(st);
    if (fn <= tol) return true;

    matrix J(static_cast<size_t>(dim), static_cast<size_t>(dim));
    std::vector<real> rhs(static_cast<size_t>(dim));
    for (long i = 0; i < dim; ++i) {
      const real& u = st.crit[static_cast<size_t>(i)];
      for (int k = st.lo; k < st.m; ++k) {
        real d = u - st.w[k];
        J(static_cast<size_t>(i), static_cast<size_t>(k - st.lo)) =
            st.rho[k] / sqr(d);
        J(static_cast<size_t>(i), static_cast<size_t>(s + k - st.lo)) =
            real(1L) / d;
      }
      rhs[static_cast<size_t>(i)] =
          st.target[static_cast<size_t>(i)] - eval_R(st, u);
    }
    std::vector<real> dp;
    try {
      dp = solve_square(J, rhs);
    } catch (const numerical_error&) {
      return false;
    }

    bool accepted = false;
    real sal(1L);
    for (int h = 0; h < 12 && !accepted; ++h, sal = sal.mul_2si(-1)) {
      stage_state trial = st;
      for (int k = st.lo; k < st.m; ++k) {
        trial.w[k] += dp[static_cast<size_t>(k - st.lo)] * sal;
        trial.rho[k] += dp[static_cast<size_t>(s + k - st.lo)] * sal;
      }
      if (!params_valid(trial)) continue;
      if (!refresh_crits(trial)) continue;
      if (residual_norm(trial) < fn) {
        st = std::move(trial);
        accepted = true;
      }
    }
    if (!accepted) return false;
  }
  if (!refresh_crits(st)) return false;
  return residual_norm(st) <= tol;
}

// Cuts `slit` into the current lowest sheet: a dipole goes at the preimage
// of the midpoint, sized so the fresh pair of critical values spans a short
// centered sub-slit, and the sub-slit is then grown to full length.
void insert_slit(stage_state& st, const interval& slit, const real& tol,
                 std::ostringstream& trace) {
  real mid = slit.mid();
  real h = slit.length();

  poly D = active_D(st);
  poly S = poly::identity() * D;
  for (int k = st.lo; k < st.m; ++k)
    S = S + deflate(D, st.w[k]) * st.rho[k];
  poly P = S - D * mid;
  std::vector<complex> pc;
  pc.reserve(P.coeffs().size());
  for (const auto& v : P.coeffs()) pc.emplace_back(v);
  auto roots = dk_roots(pc, {});

  real imtol = pole_scale(st) * pow2(-(working_precision() / 3));
  bool found = false;
  real wstar, bd;
  for (const auto& r : roots) {
    if (!(abs(r.im) <= imtol)) continue;
    real d = abs(r.re - st.w[st.lo]);
    if (!found || d < bd) {
      bd = d;
      wstar = r.re;
      found = true;
    }
  }
  if (!found)
    throw numerical_error("surface: no real midpoint preimage; " + trace.str());
  real A = eval_R_deriv(st, wstar);
  if (!(abs(A) > pow2(-(working_precision() / 4))))
    throw numerical_error("surface: midpoint preimage is degenerate; " +
                          trace.str());

  stage_state saved = st;
  double t0 = 1.0 / 16;
  for (;; t0 /= 2) {
    if (t0 < 1e-7)
      throw numerical_error("surface: dipole insertion failed; " + trace.str());
    st = saved;
    int nj = st.lo - 1;
    st.lo = nj;
    st.w[nj] = wstar;
    real th = h * real(t0);
    st.rho[nj] = sqr(th) / (A * real(16L));
    real off = th / (abs(A) * real(4L));
    st.crit.push_back(wstar - off);
    st.crit.push_back(wstar + off);
    size_t i0 = st.crit.size() - 2;
    if (eval_R(st, st.crit[i0]) > eval_R(st, st.crit[i0 + 1]))
      std::swap(st.crit[i0], st.crit[i0 + 1]);
    st.target.push_back(mid - th.mul_2si(-1));
    st.target.push_back(mid + th.mul_2si(-1));
    if (newton_polish(st, tol, 50)) break;
  }
  trace << " t0=" << t0;

  double t = t0;
  size_t last = st.target.size() - 2;
  while (t < 1.0) {
    double tn = std::min(1.0, 2 * t);
    for (;;) {
      stage_state trial = st;
      real th = h * real(tn);
      trial.target[last] = mid - th.mul_2si(-1);
      trial.target[last + 1] = mid + th.mul_2si(-1);
      if (newton_polish(trial, tol, 50)) {
        st = std::move(trial);
        t = tn;
        break;
      }
      tn = (t + tn) / 2;
      if (tn - t < 1e-9)
        throw numerical_error("surface: homotopy stalled near t=" +
                              std::to_string(t) + "; " + trace.str());
    }
  }
  trace << " done";
}

struct geometry {
  real amin, bmax, span, wscale, sepw;
};

geometry geom_of(const surface_map& mp) {
  geometry g;
  g.amin = mp.slits.front().a;
  g.bmax = mp.slits.front().b;
  for (const auto& iv : mp.slits) {
    g.amin = min(g.amin, iv.a);
    g.bmax = max(g.bmax, iv.b);
  }
  g.span = g.bmax - g.amin;
  g.wscale = real(1L);
  for (const auto& v : mp.w) g.wscale = max(g.wscale, abs(v));
  g.sepw = g.wscale;
  for (size_t i = 0; i < mp.w.size(); ++i)
    for (size_t j = i + 1; j < mp.w.size(); ++j)
      g.sepw = min(g.sepw, abs(mp.w[i] - mp.w[j]));
  return g;
}

std::vector<complex> clear_denominator(const surface_map& mp,
                                       const complex& z) {
  const auto& sc = mp.S.coeffs();
  const auto& dc = mp.D.coeffs();
  std::vector<complex> out;
  out.reserve(sc.size());
  for (const auto& v : sc) out.emplace_back(v);
  for (size_t i = 0; i < dc.size(); ++i) out[i] = out[i] - z * dc[i];
  return out;
}

// Carries a full set of labeled branch values along paths, re-solving the
// cleared-denominator polynomial with warm starts and keeping labels by
// nearest-neighbour matching; steps are halved whenever a match is unsure.
struct walker {
  const surface_map& mp;
  std::vector<complex> cur;
  complex z;
  long steps = 0;

  explicit walker(const surface_map& m) : mp(m) {}

  bool try_step(const complex& zn) {
    auto roots = dk_roots(clear_denominator(mp, zn), cur);
    if (!match_to(cur, roots)) return false;
    cur.swap(roots);
    z = zn;
    ++steps;
    return true;
  }

  void walk_to(const complex& tgt) {
    real scale = abs(tgt - z) + real(1L);
    real floor = scale * pow2(-(working_precision() / 2));
    std::vector<complex> pending{tgt};
    while (!pending.empty()) {
      if (steps > 200000)
        throw numerical_error("surface: continuation step budget exhausted");
      complex t = pending.back();
      if (abs(t - z).is_zero() || try_step(t)) {
        pending.pop_back();
        continue;
      }
      if (!(abs(t - z) > floor))
        throw numerical_error("surface: continuation stalled");
      pending.push_back((z + t) * real(0.5));
    }
  }
};

// Labels the roots far to the right of everything: m of them cling to the
// finite poles, the leftover one is the affine branch for the top sheet.
walker seeded_walker(const surface_map& mp) {
  geometry g = geom_of(mp);
  real xa = g.bmax + real(2L) + g.span;
  for (int attempt = 0; attempt < 8; ++attempt, xa = xa + xa) {
    complex za(xa);
    auto roots = dk_roots(clear_denominator(mp, za), {});
    std::vector<complex> assigned(static_cast<size_t>(mp.m) + 1);
    std::vector<char> used(roots.size(), 0);
    bool ok = true;
    for (int k = 0; k < mp.m && ok; ++k) {
      long best = -1;
      real bd;
      for (size_t j = 0; j < roots.size(); ++j) {
        if (used[j]) continue;
        real d = abs(roots[j] - complex(mp.w[static_cast<size_t>(k)]));
        if (best < 0 || d < bd) {
          bd = d;
          best = static_cast<long>(j);
        }
      }
      if (best < 0 || !(bd < g.sepw * real(0.3))) {
        ok = false;
        break;
      }
      used[static_cast<size_t>(best)] = 1;
      assigned[static_cast<size_t>(k)] = roots[static_cast<size_t>(best)];
    }
    if (ok) {
      complex top;
      int left = 0;
      for (size_t j = 0; j < roots.size(); ++j)
        if (!used[j]) {
          top = roots[j];
          ++left;
        }
      complex expect((xa - mp.delta) / mp.gamma);
      if (left == 1 && abs(top - expect) < abs(expect) * real(0.3)) {
        assigned[static_cast<size_t>(mp.m)] = top;
        walker wk(mp);
        wk.cur = std::move(assigned);
        wk.z = za;
        return wk;
      }
    }
  }
  throw numerical_error("surface: anchor labeling failed");
}

// Route that lifts off the axis, crosses above (or below) the slits, and
// descends onto the target.
void route_to(walker& wk, const complex& tgt) {
  geometry g = geom_of(wk.mp);
  real H = real(1L) + g.span.mul_2si(-1);
  H = max(H, abs(tgt.im));
  if (tgt.im < real(0L)) H = -H;
  wk.walk_to(complex(wk.z.re, H));
  wk.walk_to(complex(tgt.re, H));
  wk.walk_to(tgt);
}

complex branch_product(const walker& wk, int k) {
  complex acc(real(1L));
  for (int v = k; v <= wk.mp.m; ++v)
    acc = acc * wk.cur[static_cast<size_t>(v)];
  return acc;
}

}  // namespace

complex surface_map::R(const complex& wv) const {
  complex acc = wv * gamma + complex(delta);
  for (int k = 0; k < m; ++k)
    acc = acc + complex(rho[static_cast<size_t>(k)]) /
                    (wv - complex(w[static_cast<size_t>(k)]));
  return acc;
}

real surface_map::R(const real& wv) const {
  real acc = wv * gamma + delta;
  for (int k = 0; k < m; ++k)
    acc += rho[static_cast<size_t>(k)] / (wv - w[static_cast<size_t>(k)]);
  return acc;
}

real surface_map::R_deriv(const real& wv) const {
  real acc = gamma;
  for (int k = 0; k < m; ++k)
    acc -= rho[static_cast<size_t>(k)] / sqr(wv - w[static_cast<size_t>(k)]);
  return acc;
}

surface_map build_surface_map(const surface_spec& spec,
                              const precision_policy& policy) {
  int m = static_cast<int>(spec.slits.size());
  if (m < 1 || m > 4)
    throw validation_error("surface: expected between 1 and 4 slits");
  if (spec.l < 1 || spec.l > m)
    throw validation_error("surface: distinguished sheet out of range");
  for (const auto& iv : spec.slits)
    if (!(iv.a < iv.b))
      throw validation_error("surface: slit endpoints out of order");
  {
    std::vector<interval> sorted = spec.slits;
    std::sort(sorted.begin(), sorted.end(),
              [](const interval& x, const interval& y) { return x.a < y.a; });
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
      if (!(sorted[i].b < sorted[i + 1].a))
        throw validation_error("surface: slits must be pairwise disjoint");
  }
  validate(policy);

  precision_guard guard(policy.bits + 32);
  std::ostringstream trace;

  stage_state st;
  st.m = m;
  st.lo = m - 1;
  st.w.resize(static_cast<size_t>(m));
  st.rho.resize(static_cast<size_t>(m));

  const interval& base = spec.slits[static_cast<size_t>(m - 1)];
  real quarter = base.length().mul_2si(-2);
  st.w[static_cast<size_t>(m - 1)] = base.mid();
  st.rho[static_cast<size_t>(m - 1)] = sqr(quarter);
  st.crit = {base.mid() - quarter, base.mid() + quarter};
  st.target = {base.a, base.b};

  real tscale(1L);
  for (const auto& iv : spec.slits) tscale = max(tscale, max(abs(iv.a), abs(iv.b)));
  real tol_loose = tscale * pow2(-(policy.bits / 2));
  real tol_final = tscale * pow2(-(policy.bits - 32));

  for (int j = m - 1; j >= 1; --j) {
    trace << "[slit " << j << "]";
    insert_slit(st, spec.slits[static_cast<size_t>(j - 1)], tol_loose, trace);
  }
  if (!newton_polish(st, tol_final, 60))
    throw numerical_error("surface: final polish failed; " + trace.str());

  // Normalize: the pole of the distinguished sheet goes to the origin and
  // the coordinate is rescaled so the full branch product has modulus one.
  // The scale is taken positive, which keeps the leading coefficient of the
  // top branch positive; the residue at the origin then carries whatever
  // sign the geometry dictates.
  real d = st.w[static_cast<size_t>(spec.l - 1)];
  std::vector<real> wt(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) wt[static_cast<size_t>(k)] = st.w[static_cast<size_t>(k)] - d;
  real e_raw = st.rho[static_cast<size_t>(spec.l - 1)];
  for (int k = 0; k < m; ++k)
    if (k != spec.l - 1) e_raw *= wt[static_cast<size_t>(k)];
  if (e_raw.is_zero())
    throw numerical_error("surface: degenerate normalization product");
  real c = pow(abs(e_raw), real(1L) / real(static_cast<long>(m) + 1L));

  surface_map mp;
  mp.m = m;
  mp.l = spec.l;
  mp.gamma = c;
  mp.delta = d;
  mp.w.resize(static_cast<size_t>(m));
  mp.rho.resize(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k) {
    mp.w[static_cast<size_t>(k)] = wt[static_cast<size_t>(k)] / c;
    mp.rho[static_cast<size_t>(k)] = st.rho[static_cast<size_t>(k)] / c;
  }
  mp.C1 = mp.rho[static_cast<size_t>(spec.l - 1)];
  mp.slits = spec.slits;

  mp.crit_w.resize(2 * static_cast<size_t>(m));
  mp.crit_v.resize(2 * static_cast<size_t>(m));
  for (int p = 0; p < m; ++p) {
    int k = m - p;  // insertion order ran from the last slit down
    for (int q = 0; q < 2; ++q) {
      size_t from = static_cast<size_t>(2 * p + q);
      size_t to = static_cast<size_t>(2 * (k - 1) + q);
      mp.crit_w[to] = (st.crit[from] - d) / c;
      mp.crit_v[to] = eval_R(st, st.crit[from]);
    }
  }

  mp.D = monic_expand(mp.w);
  mp.S = (poly::identity() * mp.gamma + poly::constant(mp.delta)) * mp.D;
  for (int k = 0; k < m; ++k)
    mp.S = mp.S + deflate(mp.D, mp.w[static_cast<size_t>(k)]) *
                      mp.rho[static_cast<size_t>(k)];

  real echk = mp.rho[static_cast<size_t>(spec.l - 1)] / mp.gamma;
  for (int k = 0; k < m; ++k)
    if (k != spec.l - 1) echk *= mp.w[static_cast<size_t>(k)];
  mp.e = echk > real(0L) ? 1 : -1;
  if (!(abs(abs(echk) - real(1L)) <= pow2(-(policy.bits / 4))))
    throw numerical_error("surface: branch product off unit modulus: " +
                          echk.str(8));
  return mp;
}

branch_values branches(const surface_map& map, const complex& z) {
  if (z.im.is_zero())
    for (const auto& iv : map.slits)
      if (iv.a <= z.re && z.re <= iv.b)
        throw validation_error("surface: branch values requested on a slit");
  walker wk = seeded_walker(map);
  route_to(wk, z);
  branch_values bv;
  bv.psi = std::move(wk.cur);
  bv.steps = wk.steps;
  return bv;
}

complex F_value(const surface_map& map, int k, const complex& z) {
  if (k < 1 || k > map.m + 1)
    throw validation_error("surface: branch product index out of range");
  if (k == map.m + 1) return complex(real(1L));
  branch_values bv = branches(map, z);
  complex acc(real(1L));
  for (int v = k; v <= map.m; ++v) acc = acc * bv.psi[static_cast<size_t>(v)];
  return acc;
}

complex F_tilde(const surface_map& map, int k, const complex& z) {
  return F_value(map, k, z) / c_constant(map, k);
}

real c_constant(const surface_map& map, int k) {
  if (k < 0 || k > map.m + 1)
    throw validation_error("surface: coefficient index out of range");
  if (k == 0 || k == map.m + 1) return real(1L);
  real p(1L);
  if (k >= map.l) {
    for (int v = k; v <= map.m - 1; ++v) p *= map.w[static_cast<size_t>(v)];
    return p / map.gamma;
  }
  p = map.rho[static_cast<size_t>(map.l - 1)] / map.gamma;
  for (int v = k; v <= map.m - 1; ++v)
    if (v != map.l - 1) p *= map.w[static_cast<size_t>(v)];
  return p;
}

real kappa_limit(const surface_map& map, int k) {
  if (k < 1 || k > map.m)
    throw validation_error("surface: ladder index out of range");
  real lo = c_constant(map, k - 1) * c_constant(map, k + 1);
  if (!(lo > real(0L)))
    throw numerical_error("surface: nonpositive neighbour coefficients");
  return c_constant(map, k) / sqrt(lo);
}

bvp_report bvp_residual(const surface_map& map) {
  bvp_report rep;
  rep.winding_dev = real(0L);
  rep.closure_dev = real(0L);
  rep.cond3_dev = real(0L);
  rep.product_dev = real(0L);

  rep.ray_signs_ok = true;
  for (int k = 1; k <= map.m; ++k)
    if (!(c_constant(map, k) > real(0L))) rep.ray_signs_ok = false;

  geometry g = geom_of(map);
  real two_pi = const_pi().mul_2si(1);
  real half_pi = const_pi().mul_2si(-1);

  // modulus of the full branch product, away from the slits
  {
    real H = real(1L) + g.span;
    complex probes[4] = {complex(g.bmax + H), complex(g.amin - H),
                         complex((g.amin + g.bmax).mul_2si(-1), H),
                         complex((g.amin + g.bmax).mul_2si(-1), -H)};
    for (const auto& p : probes) {
      walker wk = seeded_walker(map);
      route_to(wk, p);
      rep.product_dev =
          max(rep.product_dev,
              abs(branch_product(wk, 0) - complex(real(static_cast<long>(map.e)))));
    }
  }

  // boundary moduli: on each slit interior the glued pair must be a
  // conjugate pair and |F_k|^2 must cancel against the neighbours
  for (int k = 1; k <= map.m; ++k) {
    const interval& iv = map.slits[static_cast<size_t>(k - 1)];
    real len = iv.length();
    walker wk = seeded_walker(map);
    real x1 = iv.a + len / real(51L);
    wk.walk_to(complex(wk.z.re, real(1L) + g.span.mul_2si(-1)));
    wk.walk_to(complex(x1, real(1L) + g.span.mul_2si(-1)));
    wk.walk_to(complex(x1));
    for (int i = 1; i <= 50; ++i) {
      if (i > 1) wk.walk_to(complex(iv.a + len * real(static_cast<long>(i)) / real(51L)));
      bool pair_ok = true;
      for (int v = 0; v <= map.m; ++v) {
        real imtol =
            (abs(wk.cur[static_cast<size_t>(v)]) + real(1L)) *
            pow2(-(working_precision() / 3));
        bool nonreal = abs(wk.cur[static_cast<size_t>(v)].im) > imtol;
        if (nonreal != (v == k - 1 || v == k)) pair_ok = false;
      }
      if (!pair_ok ||
          !(abs(conj(wk.cur[static_cast<size_t>(k - 1)]) -
                wk.cur[static_cast<size_t>(k)]) <
            (abs(wk.cur[static_cast<size_t>(k)]) + real(1L)) * real(1e-6))) {
        rep.cond3_dev = real(1000000000L);
        break;
      }
      complex fk = branch_product(wk, k);
      complex flo = branch_product(wk, k - 1);
      complex fhi = k == map.m ? complex(real(1L)) : branch_product(wk, k + 1);
      real ratio = norm2(fk) / (abs(flo) * abs(fhi));
      rep.cond3_dev = max(rep.cond3_dev, abs(ratio - real(1L)));
    }
  }

  // winding of each branch product around every foreign slit
  for (int kp = 1; kp <= map.m && map.m >= 2; ++kp) {
    const interval& iv = map.slits[static_cast<size_t>(kp - 1)];
    real gap = real::infinity();
    for (int q = 1; q <= map.m; ++q) {
      if (q == kp) continue;
      const interval& jv = map.slits[static_cast<size_t>(q - 1)];
      gap = min(gap, max(jv.a - iv.b, iv.a - jv.b));
    }
    real rad = iv.length().mul_2si(-1) + gap * real(0.4);
    complex center(iv.mid());

    long N = 16;
    for (; N <= 1024; N *= 2) {
      walker wk = seeded_walker(map);
      route_to(wk, center + complex(rad));
      std::vector<complex> f0, fp;
      std::vector<real> acc;
      for (int k = 1; k <= map.m; ++k) {
        f0.push_back(k == kp ? complex(real(1L)) : branch_product(wk, k));
        acc.emplace_back(0L);
      }
      fp = f0;
      bool fine = true;
      for (long i = 1; i <= N && fine; ++i) {
        real ang = two_pi * real(i) / real(N);
        wk.walk_to(center + complex(rad * cos(ang), rad * sin(ang)));
        for (int k = 1; k <= map.m; ++k) {
          if (k == kp) continue;
          complex f = branch_product(wk, k);
          real da = arg(f / fp[static_cast<size_t>(k - 1)]);
          if (!(abs(da) < half_pi)) fine = false;
          acc[static_cast<size_t>(k - 1)] += da;
          fp[static_cast<size_t>(k - 1)] = f;
        }
      }
      if (!fine) continue;
      for (int k = 1; k <= map.m; ++k) {
        if (k == kp) continue;
        rep.winding_dev =
            max(rep.winding_dev, abs(acc[static_cast<size_t>(k - 1)]) / two_pi);
        real den = max(abs(f0[static_cast<size_t>(k - 1)]),
                       pow2(-(working_precision() / 2)));
        rep.closure_dev =
            max(rep.closure_dev,
                abs(fp[static_cast<size_t>(k - 1)] -
                    f0[static_cast<size_t>(k - 1)]) / den);
      }
      break;
    }
    if (N > 1024) rep.winding_dev = real(1000000000L);
  }
  return rep;
}

}  // namespace hp

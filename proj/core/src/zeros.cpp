#include "hp/zeros.hpp"

#include <algorithm>
#include <utility>

#include "hp/errors.hpp"

namespace hp {

root_list root_list::from_points(std::vector<real> pts, interval iv) {
  std::sort(pts.begin(), pts.end());
  root_list rl;
  rl.searched = std::move(iv);
  for (real& p : pts) {
    rl.enclosures.emplace_back(p, p);
    rl.roots.push_back(std::move(p));
  }
  return rl;
}

namespace {

// Guarded Newton inside a sign-change bracket: the bracket shrinks with
// every evaluation, and any step that leaves it falls back to bisection.
real polish_root(const std::function<real(const real&)>& f,
                 const std::function<real(const real&)>& fp, real lo, real hi,
                 int sign_lo, long bits) {
  real x = (lo + hi).mul_2si(-1);
  real step_floor = max(abs(lo), abs(hi)).mul_2si(-(bits - 16));
  for (int it = 0; it < 60; ++it) {
    real fx = f(x);
    if (fx.is_zero()) return x;
    if (fx.sgn() == sign_lo)
      lo = x;
    else
      hi = x;
    real d = fp(x);
    real next;
    if (!d.is_zero()) {
      next = x - fx / d;
      // a step that rounds away entirely means the residual is at the
      // noise floor; the bracket test below would misread it as failure
      if (next == x) return x;
    }
    if (d.is_zero() || !(next > lo) || !(next < hi))
      next = (lo + hi).mul_2si(-1);
    if (abs(next - x) < step_floor) return next;
    x = std::move(next);
  }
  return x;
}

}  // namespace

monic_from_roots form_zeros(const hp_solution& sol, const moment_table& table,
                            int j) {
  const int m = sol.index.m();
  if (j < 1 || j > m) throw validation_error("zero level must be in 1..m");
  const long bits = sol.bits;
  precision_guard guard(bits + 32);

  const interval& iv = table.hull(j);
  const long expected = sol.index.eta(j);
  const real len = iv.length();

  auto f = [&](const real& x) { return evaluate_form(sol, table, j, x); };
  auto fp = [&](const real& x) {
    return evaluate_form_deriv(sol, table, j, x);
  };

  // sign-sample on uniform interior grids, doubling until the expected
  // count of brackets appears
  std::vector<std::pair<real, real>> brackets;
  std::vector<int> lo_signs;
  long grid = 8 * std::max(expected, 1L);
  for (int attempt = 0;; ++attempt) {
    brackets.clear();
    lo_signs.clear();
    real prev_x;
    int prev_sign = 0;
    for (long i = 1; i <= grid; ++i) {
      real x = iv.a + len * i / (grid + 1);
      int s = f(x).sgn();
      if (s != 0 && prev_sign != 0 && s != prev_sign) {
        brackets.emplace_back(prev_x, x);
        lo_signs.push_back(prev_sign);
      }
      if (s != 0) {
        prev_x = x;
        prev_sign = s;
      }
    }
    if (static_cast<long>(brackets.size()) == expected) break;
    if (static_cast<long>(brackets.size()) > expected)
      throw numerical_error(
          "more sign changes than the zero count allows: precision failure "
          "or broken hypotheses");
    if (attempt >= 6)
      throw numerical_error("failed to isolate the expected zero count");
    grid *= 2;
  }

  monic_from_roots out;
  out.zeros.searched = iv;
  real delta = real(1L).mul_2si(-(bits / 3 + 1));
  for (size_t r = 0; r < brackets.size(); ++r) {
    real x = polish_root(f, fp, brackets[r].first, brackets[r].second,
                         lo_signs[r], bits);
    // certify simplicity: strict sign change across a tight enclosure
    real d = delta;
    bool certified = false;
    for (int widen = 0; widen < 5 && !certified; ++widen, d = d.mul_2si(3)) {
      real lo = max(x - d, brackets[r].first);
      real hi = min(x + d, brackets[r].second);
      if (f(lo).sgn() * f(hi).sgn() < 0) {
        out.zeros.enclosures.emplace_back(std::move(lo), std::move(hi));
        certified = true;
      }
    }
    if (!certified)
      throw numerical_error("could not certify a sign change around a zero");
    out.zeros.roots.push_back(std::move(x));
  }

  for (size_t r = 0; r + 1 < out.zeros.size(); ++r)
    if (!(out.zeros.enclosures[r].second < out.zeros.enclosures[r + 1].first))
      throw numerical_error("zero enclosures merged: precision failure");

  out.q = monic_expand(out.zeros.roots);
  return out;
}

interlace_result interlace_check(const root_list& r1, const root_list& r2) {
  struct tagged {
    const real* x;
    const std::pair<real, real>* enc;
    int tag;
  };
  std::vector<tagged> all;
  for (size_t i = 0; i < r1.size(); ++i)
    all.push_back({&r1.roots[i], &r1.enclosures[i], 1});
  for (size_t i = 0; i < r2.size(); ++i)
    all.push_back({&r2.roots[i], &r2.enclosures[i], 2});
  std::sort(all.begin(), all.end(),
            [](const tagged& a, const tagged& b) { return *a.x < *b.x; });

  for (size_t i = 0; i + 1 < all.size(); ++i) {
    const tagged& a = all[i];
    const tagged& b = all[i + 1];
    if (a.tag != b.tag && !(a.enc->second < b.enc->first))
      throw undecidable_error("root enclosures overlap between the lists");
  }

  interlace_result res;
  for (size_t i = 0; i + 1 < all.size(); ++i) {
    if (all[i].tag == all[i + 1].tag) {
      res.ok = false;
      res.witness_lo = *all[i].x;
      res.witness_hi = *all[i + 1].x;
      return res;
    }
  }
  res.ok = true;
  return res;
}

real orthogonality_residual(const moment_table& table, int sigma_level,
                            const poly& q_mid, const poly& q_lo,
                            const poly& q_hi,
                            const std::vector<real>& h_weight, long nu,
                            real* quad_err) {
  const discrete_measure& dm = table.measure(sigma_level, sigma_level);
  if (!h_weight.empty() && h_weight.size() != dm.size())
    throw validation_error("h-weight length does not match the node count");
  real fine, halfsum;
  for (size_t i = 0; i < dm.size(); ++i) {
    const real& x = dm.x[i];
    real v = q_mid.eval(x) / (q_lo.eval(x) * q_hi.eval(x));
    if (nu > 0) v *= pow(x, nu);
    if (!h_weight.empty()) v *= h_weight[i];
    v *= dm.w[i];
    fine += v;
    if (dm.coarse[i]) halfsum += v;
  }
  if (quad_err) *quad_err = abs(fine - halfsum.mul_2si(1));
  return fine;
}

long sign_change_count(const std::function<real(const real&)>& f,
                       const interval& iv, long budget) {
  if (budget < 2) throw validation_error("sampling budget too small");
  const real len = iv.length();
  long best = 0;
  for (long grid = std::min(32L, budget); grid <= budget; grid *= 2) {
    long count = 0;
    int prev = 0;
    for (long i = 1; i <= grid; ++i) {
      int s = f(iv.a + len * i / (grid + 1)).sgn();
      if (s != 0 && prev != 0 && s != prev) ++count;
      if (s != 0) prev = s;
    }
    best = std::max(best, count);
  }
  return best;
}

long sign_change_count(const poly& p, const interval& iv, long budget) {
  return sign_change_count([&](const real& x) { return p.eval(x); }, iv,
                           budget);
}

}  // namespace hp

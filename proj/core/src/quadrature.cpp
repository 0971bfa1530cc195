#include "hp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "hp/errors.hpp"

namespace hp {

namespace {

std::mutex g_rule_mutex;
std::map<std::pair<int, long>, std::vector<ts_node>> g_rule_cache;

std::vector<ts_node> build_rule(int level, long bits) {
  precision_guard guard(bits + 32);
  real h = real(1L).mul_2si(-level);
  real pi_half = const_pi().mul_2si(-1);
  // Stop once exp(-2v) drops below 2^-(bits+64): with v = (pi/2) sinh t the
  // cut sits at T = asinh((bits+64) ln2 / pi).  A couple of spare nodes
  // cover the rounding of T.
  double t_cut = std::asinh(static_cast<double>(bits + 64) * 0.693147180559945 /
                            3.14159265358979);
  long n_max = static_cast<long>(std::ceil(t_cut * std::ldexp(1.0, level))) + 2;

  std::vector<ts_node> rule;
  rule.reserve(2 * n_max + 1);
  for (long i = 0; i <= n_max; ++i) {
    real t = h * i;
    real v = pi_half * sinh(t);
    // 1-tanh(v) collapses subtractively in the tail; route everything
    // through e = exp(-2v):  1-tanh = 2e/(1+e), 1+tanh = 2/(1+e).
    real e = exp(-(v.mul_2si(1)));
    real d = 1L + e;
    real one_minus = e.mul_2si(1) / d;
    real one_plus = real(2L) / d;
    real u = (1L - e) / d;
    // phi'(t) = (pi/2) cosh t / cosh^2 v  and  1/cosh^2 v = 4e/(1+e)^2
    real w = h * pi_half * cosh(t) * e.mul_2si(2) / sqr(d);
    bool coarse = (i & 1) == 0;
    rule.push_back({u, one_minus, one_plus, w, coarse});
    if (i > 0) rule.push_back({-u, one_plus, one_minus, w, coarse});
  }
  return rule;
}

}  // namespace

const std::vector<ts_node>& tanh_sinh_rule(int level, long bits) {
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto key = std::make_pair(level, bits);
  auto it = g_rule_cache.find(key);
  if (it == g_rule_cache.end())
    it = g_rule_cache.emplace(key, build_rule(level, bits)).first;
  return it->second;
}

discrete_measure discretize_jacobi(const real& a, const real& b,
                                   const jacobi_density& jd, int sign,
                                   int level, long bits) {
  precision_guard guard(bits + 32);
  double amin =
      std::min(jd.alpha.to_double(), std::min(jd.beta.to_double(), 0.0));
  if (amin <= -1.0)
    throw validation_error("jacobi exponents must exceed -1");
  // A singular endpoint factor (1 -/+ u)^alpha slows the tail decay of the
  // transformed integrand from e^-2v to e^-2v(1+alpha); stretch the rule's
  // cut so the folded weights still bottom out near 2^-(bits+64).
  long bits_rule = static_cast<long>(
                       std::ceil(static_cast<double>(bits + 64) / (1.0 + amin))) -
                   64;
  if (bits_rule < bits) bits_rule = bits;
  const auto& rule = tanh_sinh_rule(level, bits_rule);

  real half = (b - a).mul_2si(-1);
  real mid = (a + b).mul_2si(-1);
  // (b-x)^alpha (x-a)^beta = half^(alpha+beta) (1-u)^alpha (1+u)^beta with
  // the endpoint factors taken from the rule, where they are cancellation-free
  real half_ab = pow(half, jd.alpha + jd.beta);
  bool alpha_int = jd.alpha == floor(jd.alpha);
  bool beta_int = jd.beta == floor(jd.beta);

  std::vector<real> mu(rule.size());
  real peak;
  for (size_t i = 0; i < rule.size(); ++i) {
    const ts_node& n = rule[i];
    real density = half_ab;
    density *= alpha_int ? pow(n.one_minus, jd.alpha.to_long())
                         : pow(n.one_minus, jd.alpha);
    density *= beta_int ? pow(n.one_plus, jd.beta.to_long())
                        : pow(n.one_plus, jd.beta);
    mu[i] = half * n.w * density;
    if (sign < 0) mu[i] = -mu[i];
    peak = max(peak, abs(mu[i]));
  }

  discrete_measure dm;
  dm.level = level;
  dm.a = a;
  dm.b = b;
  real cut = peak.mul_2si(-(bits + 80));
  for (size_t i = 0; i < rule.size(); ++i) {
    if (abs(mu[i]) < cut) continue;
    dm.x.push_back(mid + half * rule[i].u);
    dm.w.push_back(std::move(mu[i]));
    dm.coarse.push_back(rule[i].coarse);
  }
  dm.err_estimate = dm.integrate([](const real&) { return real(1L); }).second;
  return dm;
}

real discrete_measure::moment(long r) const {
  real acc;
  for (size_t i = 0; i < x.size(); ++i) acc += w[i] * pow(x[i], r);
  return acc;
}

complex discrete_measure::cauchy(const complex& z) const {
  if (z.im.is_zero()) return complex(cauchy(z.re));
  complex acc;
  for (size_t i = 0; i < x.size(); ++i) {
    complex d{z.re - x[i], z.im};
    real n2 = norm2(d);
    acc.re += w[i] * d.re / n2;
    acc.im -= w[i] * d.im / n2;
  }
  return acc;
}

real discrete_measure::cauchy(const real& t) const {
  real acc;
  for (size_t i = 0; i < x.size(); ++i) acc += w[i] / (t - x[i]);
  return acc;
}

real discrete_measure::cauchy_deriv(const real& t) const {
  real acc;
  for (size_t i = 0; i < x.size(); ++i) acc += w[i] / sqr(t - x[i]);
  return -acc;
}

}  // namespace hp

#include "hp/poly.hpp"

#include <stdexcept>

namespace hp {

bool poly::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

long poly::degree() const {
  for (long i = static_cast<long>(c_.size()) - 1; i >= 0; --i)
    if (!c_[i].is_zero()) return i;
  return -1;
}

long poly::degree(long rel_bits) const {
  double lead = log2_abs(coeff_norm());
  for (long i = static_cast<long>(c_.size()) - 1; i >= 0; --i)
    if (log2_abs(c_[i]) > lead + static_cast<double>(rel_bits)) return i;
  return -1;
}

const real& poly::leading() const {
  long d = degree();
  if (d < 0) throw std::logic_error("leading coefficient of zero polynomial");
  return c_[static_cast<size_t>(d)];
}

real poly::eval(const real& x) const {
  real acc;
  for (size_t i = c_.size(); i-- > 0;) {
    acc *= x;
    acc += c_[i];
  }
  return acc;
}

complex poly::eval(const complex& z) const {
  complex acc;
  for (size_t i = c_.size(); i-- > 0;) {
    acc = acc * z;
    acc.re += c_[i];
  }
  return acc;
}

poly poly::derivative() const {
  if (c_.size() <= 1) return poly();
  std::vector<real> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return poly(std::move(d));
}

poly poly::operator+(const poly& o) const {
  std::vector<real> out(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < out.size(); ++i) {
    if (i < c_.size()) out[i] += c_[i];
    if (i < o.c_.size()) out[i] += o.c_[i];
  }
  return poly(std::move(out));
}

poly poly::operator-(const poly& o) const {
  std::vector<real> out(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < out.size(); ++i) {
    if (i < c_.size()) out[i] += c_[i];
    if (i < o.c_.size()) out[i] -= o.c_[i];
  }
  return poly(std::move(out));
}

poly poly::operator*(const poly& o) const {
  if (c_.empty() || o.c_.empty()) return poly();
  std::vector<real> out(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return poly(std::move(out));
}

poly poly::operator*(const real& s) const {
  std::vector<real> out(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * s;
  return poly(std::move(out));
}

real poly::coeff_norm() const {
  real m;
  for (const auto& c : c_) m = max(m, abs(c));
  return m;
}

poly monic_expand(const std::vector<real>& roots) {
  poly p = poly::constant(real(1L));
  for (const auto& r : roots) p = p * poly({-r, real(1L)});
  return p;
}

}  // namespace hp

#include "dgw/ring.hpp"

#include <stdexcept>

namespace dgw {

std::string to_string(Flavor f) { return f == Flavor::EqualChar ? "eq" : "witt"; }

Flavor flavor_from_string(const std::string& s) {
  if (s == "eq" || s == "equal" || s == "EqualChar") return Flavor::EqualChar;
  if (s == "witt" || s == "mixed" || s == "MixedChar") return Flavor::MixedChar;
  throw std::invalid_argument("unknown ring flavor '" + s + "' (expected eq or witt)");
}

namespace {

// Coefficients of an o_2 element in MixedChar flavor, each in [0, p^2).
std::vector<int> witt_coeffs(re_t x, int p, int f, re_t q) {
  std::vector<int> c(f);
  re_t red = x % q, top = x / q;
  for (int i = 0; i < f; ++i, red /= p, top /= p) c[i] = static_cast<int>(red % p + p * (top % p));
  return c;
}

re_t witt_encode(const std::vector<int>& c, int p, re_t q) {
  re_t red = 0, top = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    const int v = ((c[i] % (p * p)) + p * p) % (p * p);
    red = red * p + static_cast<re_t>(v % p);
    top = top * p + static_cast<re_t>(v / p);
  }
  return red + q * top;
}

std::vector<int> witt_mul(const std::vector<int>& a, const std::vector<int>& b, const std::vector<int>& m,
                          int p) {
  const int f = static_cast<int>(a.size());
  const int pp = p * p;
  std::vector<long long> r(2 * f - 1, 0);
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) r[i + j] = (r[i + j] + 1LL * a[i] * b[j]) % pp;
  for (int d = 2 * f - 2; d >= f; --d) {
    const long long c = r[d];
    if (c == 0) continue;
    for (int i = 0; i <= f; ++i) r[d - f + i] = ((r[d - f + i] - c * m[i]) % pp + pp) % pp;
  }
  std::vector<int> out(f);
  for (int i = 0; i < f; ++i) out[i] = static_cast<int>(r[i]);
  return out;
}

}  // namespace

LocalRing::LocalRing(const Field& field, Flavor flavor)
    : field_(&field), flavor_(flavor), q_(field.size()), n_(field.size() * field.size()) {
  const int p = field.p();
  const int f = field.f();
  const int pp = p * p;
  add_.resize(static_cast<std::size_t>(n_) * n_);
  mul_.resize(static_cast<std::size_t>(n_) * n_);
  neg_.resize(n_);
  psi_exp_.resize(n_);
  if (flavor == Flavor::EqualChar) {
    for (re_t x = 0; x < n_; ++x) {
      const fe_t x0 = x % q_, x1 = x / q_;
      neg_[x] = field.neg(x0) + q_ * field.neg(x1);
      psi_exp_[x] = (p * (field.trace_to_prime(x0) + field.trace_to_prime(x1))) % pp;
      for (re_t y = 0; y < n_; ++y) {
        const fe_t y0 = y % q_, y1 = y / q_;
        add_[x * n_ + y] = field.add(x0, y0) + q_ * field.add(x1, y1);
        mul_[x * n_ + y] = field.mul(x0, y0) + q_ * field.add(field.mul(x0, y1), field.mul(x1, y0));
      }
    }
  } else {
    const std::vector<int>& m = field.params().modulus;
    std::vector<std::vector<int>> cs(n_);
    for (re_t x = 0; x < n_; ++x) cs[x] = witt_coeffs(x, p, f, q_);
    for (re_t x = 0; x < n_; ++x) {
      std::vector<int> c(f);
      for (int i = 0; i < f; ++i) c[i] = (pp - cs[x][i]) % pp;
      neg_[x] = witt_encode(c, p, q_);
      // Regular trace over Z/p^2 in the basis 1, y, ..., y^{f-1}.
      long long tr = 0;
      for (int i = 0; i < f; ++i) {
        std::vector<int> basis(f, 0);
        basis[i] = 1;
        tr += witt_mul(cs[x], basis, m, p)[i];
      }
      psi_exp_[x] = static_cast<int>(tr % pp);
      for (re_t y = 0; y < n_; ++y) {
        for (int i = 0; i < f; ++i) c[i] = (cs[x][i] + cs[y][i]) % pp;
        add_[x * n_ + y] = witt_encode(c, p, q_);
        mul_[x * n_ + y] = witt_encode(witt_mul(cs[x], cs[y], m, p), p, q_);
      }
    }
  }
  inv_.assign(n_, 0);
  for (re_t x = 0; x < n_; ++x) {
    if (!is_unit(x)) continue;
    for (re_t y = 0; y < n_; ++y)
      if (mul(x, y) == 1) {
        inv_[x] = y;
        break;
      }
  }
  roots_.resize(pp);
  for (int k = 0; k < pp; ++k) roots_[k] = unit_root(k, pp);
}

re_t LocalRing::inv(re_t x) const {
  if (!is_unit(x)) throw std::domain_error("inverse of a non-unit in o_2");
  return inv_[x];
}

re_t LocalRing::pow(re_t x, std::uint64_t e) const {
  re_t r = 1;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
  }
  return r;
}

re_t LocalRing::from_int(long long n) const {
  const long long p = field_->p();
  const long long pp = p * p;
  const long long v = ((n % pp) + pp) % pp;
  if (flavor_ == Flavor::EqualChar) return static_cast<re_t>(v % p);
  // Constant coefficient v = d + p e.
  return static_cast<re_t>(v % p) + q_ * static_cast<re_t>(v / p);
}

fe_t LocalRing::div_varpi(re_t x) const {
  if (x % q_ != 0) throw std::domain_error("element is not in the maximal ideal");
  return x / q_;
}

std::string LocalRing::to_string(re_t x) const {
  return "(" + std::to_string(x % q_) + "," + std::to_string(x / q_) + ")";
}

}  // namespace dgw

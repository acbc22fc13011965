#include "dgw/field.hpp"

#include <stdexcept>

namespace dgw {
namespace {

using Poly = std::vector<int>;

int mod(long long x, int p) {
  long long r = x % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a; e > 0; e >>= 1, b = mod(1LL * b * b, p))
    if (e & 1) r = mod(1LL * r * b, p);
  return r;
}

Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const int dm = static_cast<int>(m.size()) - 1;
  const int lead_inv = inv_mod(m.back(), p);
  while (static_cast<int>(a.size()) - 1 >= dm && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - dm;
    const int c = mod(1LL * a.back() * lead_inv, p);
    for (int i = 0; i <= dm; ++i) a[shift + i] = mod(a[shift + i] - 1LL * c * m[i], p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = mod(r[i + j] + 1LL * a[i] * b[j], p);
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, long long e, const Poly& m, int p) {
  Poly r{1};
  r = poly_mod(r, m, p);
  base = poly_mod(base, m, p);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = poly_mulmod(r, base, m, p);
    base = poly_mulmod(base, base, m, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, int p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod m by k successive p-th powers.
Poly frobenius_power(const Poly& m, int p, int k) {
  Poly x{0, 1};
  x = poly_mod(x, m, p);
  for (int i = 0; i < k; ++i) x = poly_powmod(x, p, m, p);
  return x;
}

Poly sub_x(Poly a, int p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = mod(a[1] - 1, p);
  trim(a);
  return a;
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(std::span<const int> poly, int p) {
  Poly m(poly.begin(), poly.end());
  trim(m);
  const int n = static_cast<int>(m.size()) - 1;
  if (n < 1) return false;
  if (n == 1) return true;
  if (!sub_x(frobenius_power(m, p, n), p).empty()) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0 || !is_prime(r)) continue;
    Poly g = poly_gcd(m, sub_x(frobenius_power(m, p, n / r), p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

FieldParams make_field(int p, int f) {
  if (p == 2) throw std::invalid_argument("characteristic 2 is not supported");
  if (!is_prime(p)) throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
  if (f < 1) throw std::invalid_argument("degree must be positive");
  FieldParams fp;
  fp.p = p;
  fp.f = f;
  fp.q = 1;
  for (int i = 0; i < f; ++i) fp.q *= p;
  if (f == 1) {
    fp.modulus = {0, 1};
    return fp;
  }
  for (int idx = 0; idx < fp.q; ++idx) {
    Poly m(f + 1, 0);
    for (int i = 0, v = idx; i < f; ++i, v /= p) m[i] = v % p;
    m[f] = 1;
    if (is_irreducible(m, p)) {
      fp.modulus = m;
      return fp;
    }
  }
  throw std::logic_error("no irreducible polynomial found");
}

Field::Field(FieldParams params) : params_(std::move(params)), q_(static_cast<std::uint32_t>(params_.q)) {
  const int p = params_.p;
  if (params_.modulus.size() != static_cast<std::size_t>(params_.f) + 1 ||
      !is_irreducible(params_.modulus, p))
    throw std::invalid_argument("field modulus is not an irreducible polynomial of degree f");
  std::vector<Poly> polys(q_);
  for (fe_t x = 0; x < q_; ++x) {
    Poly c = coeffs(x);
    trim(c);
    polys[x] = c;
  }
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  for (fe_t x = 0; x < q_; ++x) {
    const auto cx = coeffs(x);
    std::vector<int> cn(cx.size());
    for (std::size_t i = 0; i < cx.size(); ++i) cn[i] = mod(-cx[i], p);
    neg_[x] = from_coeffs(cn);
    for (fe_t y = 0; y < q_; ++y) {
      const auto cy = coeffs(y);
      std::vector<int> cs(cx.size());
      for (std::size_t i = 0; i < cx.size(); ++i) cs[i] = mod(cx[i] + cy[i], p);
      add_[x * q_ + y] = from_coeffs(cs);
      Poly pr = poly_mulmod(polys[x], polys[y], params_.modulus, p);
      pr.resize(params_.f, 0);
      mul_[x * q_ + y] = from_coeffs(pr);
    }
  }
  // Discrete logs: smallest generator by index.
  for (fe_t g = 1; g < q_; ++g) {
    std::vector<fe_t> powers{1};
    fe_t cur = g;
    while (cur != 1) {
      powers.push_back(cur);
      cur = mul(cur, g);
    }
    if (powers.size() == q_ - 1) {
      exp_ = std::move(powers);
      break;
    }
  }
  log_.assign(q_, -1);
  for (std::size_t k = 0; k < exp_.size(); ++k) log_[exp_[k]] = static_cast<int>(k);
  inv_.assign(q_, 0);
  for (fe_t x = 1; x < q_; ++x) inv_[x] = exp((q_ - 1 - log_[x]) % (q_ - 1));
  trace_.assign(q_, 0);
  for (fe_t x = 0; x < q_; ++x) {
    fe_t t = 0, y = x;
    for (int i = 0; i < params_.f; ++i) {
      t = add(t, y);
      y = pow(y, static_cast<std::uint64_t>(p));
    }
    if (t >= static_cast<fe_t>(p)) throw std::logic_error("trace left the prime field");
    trace_[x] = static_cast<int>(t);
  }
}

fe_t Field::inv(fe_t x) const {
  if (x == 0) throw std::domain_error("inverse of zero in F_q");
  return inv_[x];
}

fe_t Field::pow(fe_t x, std::uint64_t e) const {
  fe_t r = 1;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
  }
  return r;
}

fe_t Field::from_int(long long n) const { return static_cast<fe_t>(mod(n, params_.p)); }

int Field::log(fe_t x) const {
  if (x == 0) throw std::domain_error("log of zero");
  return log_[x];
}

fe_t Field::exp(long long k) const {
  const long long n = q_ - 1;
  return exp_[static_cast<std::size_t>(((k % n) + n) % n)];
}

bool Field::is_square(fe_t x) const { return x == 0 || log_[x] % 2 == 0; }

std::vector<int> Field::coeffs(fe_t x) const {
  std::vector<int> c(params_.f);
  for (int i = 0; i < params_.f; ++i, x /= params_.p) c[i] = static_cast<int>(x % params_.p);
  return c;
}

fe_t Field::from_coeffs(std::span<const int> c) const {
  fe_t x = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i)
    x = x * params_.p + static_cast<fe_t>(mod(c[i], params_.p));
  return x;
}

// ---------------------------------------------------------------------------

ExtField::ExtField(const Field& base, int degree, const BasisMul& basis_mul)
    : base_(&base), k_(degree), size_(1) {
  for (int i = 0; i < k_; ++i) size_ *= static_cast<fe_t>(base.q());
  auto mul_raw = [&](fe_t x, fe_t y) { return from_coords(basis_mul(base, coords(x), coords(y))); };
  for (fe_t g = 2; g < size_; ++g) {
    std::vector<fe_t> powers{1};
    fe_t cur = g;
    while (cur != 1 && powers.size() < size_) {
      powers.push_back(cur);
      cur = mul_raw(cur, g);
    }
    if (cur == 1 && powers.size() == size_ - 1) {
      exp_ = std::move(powers);
      break;
    }
  }
  if (exp_.empty()) throw std::logic_error("extension is not a field (no generator)");
  log_.assign(size_, -1);
  for (std::size_t k = 0; k < exp_.size(); ++k) log_[exp_[k]] = static_cast<int>(k);
  for (fe_t x = 1; x < size_; ++x)
    if (log_[x] < 0) throw std::logic_error("extension is not a field (zero divisors)");
  trace_.assign(size_, 0);
  for (fe_t x = 0; x < size_; ++x) {
    fe_t t = 0;
    fe_t e = 1;
    for (int i = 0; i < k_; ++i, e *= static_cast<fe_t>(base.q())) t = base.add(t, coords(mul(x, e))[i]);
    trace_[x] = t;
  }
}

fe_t ExtField::add(fe_t x, fe_t y) const {
  const fe_t q = static_cast<fe_t>(base_->q());
  fe_t r = 0, w = 1;
  for (int i = 0; i < k_; ++i, x /= q, y /= q, w *= q) r += w * base_->add(x % q, y % q);
  return r;
}

fe_t ExtField::neg(fe_t x) const {
  const fe_t q = static_cast<fe_t>(base_->q());
  fe_t r = 0, w = 1;
  for (int i = 0; i < k_; ++i, x /= q, w *= q) r += w * base_->neg(x % q);
  return r;
}

fe_t ExtField::sub(fe_t x, fe_t y) const { return add(x, neg(y)); }

fe_t ExtField::scale(fe_t c, fe_t x) const {
  const fe_t q = static_cast<fe_t>(base_->q());
  fe_t r = 0, w = 1;
  for (int i = 0; i < k_; ++i, x /= q, w *= q) r += w * base_->mul(c, x % q);
  return r;
}

fe_t ExtField::mul(fe_t x, fe_t y) const {
  if (x == 0 || y == 0) return 0;
  return exp_[(static_cast<std::size_t>(log_[x]) + log_[y]) % (size_ - 1)];
}

fe_t ExtField::inv(fe_t x) const {
  if (x == 0) throw std::domain_error("inverse of zero in extension field");
  return exp_[(size_ - 1 - log_[x]) % (size_ - 1)];
}

fe_t ExtField::pow(fe_t x, std::uint64_t e) const {
  if (x == 0) return e == 0 ? 1 : 0;
  return exp_[static_cast<std::size_t>((static_cast<std::uint64_t>(log_[x]) * (e % (size_ - 1))) % (size_ - 1))];
}

int ExtField::log(fe_t x) const {
  if (x == 0) throw std::domain_error("log of zero");
  return log_[x];
}

fe_t ExtField::exp(long long k) const {
  const long long n = size_ - 1;
  return exp_[static_cast<std::size_t>(((k % n) + n) % n)];
}

ExtField::Coords ExtField::coords(fe_t x) const {
  const fe_t q = static_cast<fe_t>(base_->q());
  Coords c(k_);
  for (int i = 0; i < k_; ++i, x /= q) c[i] = x % q;
  return c;
}

fe_t ExtField::from_coords(std::span<const fe_t> c) const {
  const fe_t q = static_cast<fe_t>(base_->q());
  fe_t x = 0;
  for (int i = k_ - 1; i >= 0; --i) x = x * q + c[i];
  return x;
}

fe_t ExtField::norm(fe_t x) const {
  // N(x) = x^{(q^k - 1)/(q - 1)}.
  const std::uint64_t e = (size_ - 1) / (static_cast<std::uint64_t>(base_->q()) - 1);
  const fe_t n = pow(x, e);
  if (!in_base(n)) throw std::logic_error("norm left the base field");
  return n;
}

}  // namespace dgw

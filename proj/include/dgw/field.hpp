#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dgw {

/// Encoded element of a finite field: sum of coordinates c_i * base^i.
using fe_t = std::uint32_t;

/// F_q = F_p[y]/(modulus). Coefficients lowest degree first, modulus monic.
struct FieldParams {
  int p = 0;
  int f = 0;
  int q = 0;
  std::vector<int> modulus;
};

bool is_prime(int n);

/// Rabin's test: monic `poly` of degree f is irreducible over F_p.
bool is_irreducible(std::span<const int> poly, int p);

/// Smallest monic irreducible of degree f, scanning non-leading coefficients
/// as the integer sum c_i p^i in increasing order. f = 1 yields the modulus x.
FieldParams make_field(int p, int f);

/// Table-driven F_q. Element index = sum c_i p^i over the polynomial basis, so
/// 0 and 1 are the additive and multiplicative identities and F_p = [0, p).
class Field {
 public:
  using value_type = fe_t;

  explicit Field(FieldParams params);

  const FieldParams& params() const { return params_; }
  int p() const { return params_.p; }
  int f() const { return params_.f; }
  int q() const { return params_.q; }
  fe_t size() const { return static_cast<fe_t>(params_.q); }

  fe_t zero() const { return 0; }
  fe_t one() const { return 1; }
  fe_t add(fe_t x, fe_t y) const { return add_[x * q_ + y]; }
  fe_t sub(fe_t x, fe_t y) const { return add_[x * q_ + neg_[y]]; }
  fe_t neg(fe_t x) const { return neg_[x]; }
  fe_t mul(fe_t x, fe_t y) const { return mul_[x * q_ + y]; }
  fe_t inv(fe_t x) const;
  fe_t div(fe_t x, fe_t y) const { return mul(x, inv(y)); }
  fe_t pow(fe_t x, std::uint64_t e) const;
  fe_t from_int(long long n) const;

  /// Fixed generator of F_q^x (smallest index of full order).
  fe_t generator() const { return exp_[1]; }
  int log(fe_t x) const;
  fe_t exp(long long k) const;

  bool is_square(fe_t x) const;
  /// Absolute trace to F_p, as an integer in [0, p).
  int trace_to_prime(fe_t x) const { return trace_[x]; }

  std::vector<int> coeffs(fe_t x) const;
  fe_t from_coeffs(std::span<const int> c) const;

 private:
  FieldParams params_;
  std::uint32_t q_;
  std::vector<fe_t> add_, mul_, neg_, inv_, exp_;
  std::vector<int> log_, trace_;
};

/// F_{q^k} on coordinates over F_q (index = sum c_i q^i), multiplication via
/// discrete log tables. The basis is whatever `basis_mul` encodes.
class ExtField {
 public:
  using value_type = fe_t;
  using Coords = std::vector<fe_t>;
  using BasisMul = std::function<Coords(const Field&, const Coords&, const Coords&)>;

  ExtField(const Field& base, int degree, const BasisMul& basis_mul);

  const Field& base() const { return *base_; }
  int degree() const { return k_; }
  fe_t size() const { return size_; }

  fe_t zero() const { return 0; }
  fe_t one() const { return 1; }
  fe_t add(fe_t x, fe_t y) const;
  fe_t sub(fe_t x, fe_t y) const;
  fe_t neg(fe_t x) const;
  fe_t mul(fe_t x, fe_t y) const;
  fe_t inv(fe_t x) const;
  fe_t pow(fe_t x, std::uint64_t e) const;
  fe_t scale(fe_t c, fe_t x) const;  // c in F_q

  fe_t generator() const { return exp_[1]; }
  int log(fe_t x) const;
  fe_t exp(long long k) const;

  Coords coords(fe_t x) const;
  fe_t from_coords(std::span<const fe_t> c) const;
  /// Embeds F_q as c * 1.
  fe_t from_base(fe_t c) const { return c; }
  bool in_base(fe_t x) const { return x < static_cast<fe_t>(base_->q()); }

  /// Trace and norm down to F_q, computed from the multiplication matrix.
  fe_t trace(fe_t x) const { return trace_[x]; }
  fe_t norm(fe_t x) const;
  fe_t frobenius(fe_t x) const { return pow(x, static_cast<std::uint64_t>(base_->q())); }

 private:
  const Field* base_;
  int k_;
  fe_t size_;
  std::vector<fe_t> exp_;
  std::vector<int> log_;
  std::vector<fe_t> trace_;
};

}  // namespace dgw

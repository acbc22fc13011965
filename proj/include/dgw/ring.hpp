#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "dgw/field.hpp"
#include "dgw/numeric.hpp"

namespace dgw {

/// Encoded element of o_2: red + q * top, both F_q indices.
using re_t = std::uint32_t;

enum class Flavor { EqualChar, MixedChar };

std::string to_string(Flavor f);
Flavor flavor_from_string(const std::string& s);

/// The length-2 local ring o_2 with residue field F_q.
///
/// EqualChar: F_q[t]/(t^2), x0 + x1 t stored as x0 + q x1.
/// MixedChar: (Z/p^2)[y]/(m^), coefficient c_i = d_i + p e_i stored with
/// red = sum d_i p^i and top = sum e_i p^i.
/// In both flavors reduction is x mod q and varpi * lift(a) = q * a, so
/// constant lifts of F_q are the indices below q.
class LocalRing {
 public:
  using value_type = re_t;

  LocalRing(const Field& field, Flavor flavor);

  const Field& field() const { return *field_; }
  Flavor flavor() const { return flavor_; }
  re_t size() const { return n_; }
  int q() const { return static_cast<int>(q_); }

  re_t zero() const { return 0; }
  re_t one() const { return 1; }
  re_t add(re_t x, re_t y) const { return add_[x * n_ + y]; }
  re_t sub(re_t x, re_t y) const { return add_[x * n_ + neg_[y]]; }
  re_t neg(re_t x) const { return neg_[x]; }
  re_t mul(re_t x, re_t y) const { return mul_[x * n_ + y]; }
  bool is_unit(re_t x) const { return x % q_ != 0; }
  re_t inv(re_t x) const;
  re_t pow(re_t x, std::uint64_t e) const;
  re_t from_int(long long n) const;

  fe_t reduce(re_t x) const { return x % q_; }
  re_t lift(fe_t a) const { return a; }
  /// varpi * lift(a).
  re_t varpi(fe_t a) const { return q_ * a; }
  /// For x in varpi o_2, the a with x = varpi * lift(a).
  fe_t div_varpi(re_t x) const;

  /// psi_0(x) = exp(2 pi i k / p^2) with k = psi_exponent(x).
  int psi_exponent(re_t x) const { return psi_exp_[x]; }
  cplx psi0(re_t x) const { return roots_[psi_exp_[x]]; }
  /// psi_0(varpi * lift(a)), a character of F_q.
  cplx psibar(fe_t a) const { return roots_[psi_exp_[q_ * a]]; }
  int p_squared() const { return static_cast<int>(roots_.size()); }
  cplx root(int k) const { return roots_[k]; }

  std::string to_string(re_t x) const;

 private:
  const Field* field_;
  Flavor flavor_;
  re_t q_, n_;
  std::vector<re_t> add_, mul_, neg_, inv_;
  std::vector<int> psi_exp_;
  std::vector<cplx> roots_;
};

}  // namespace dgw

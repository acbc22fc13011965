#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "dgw/groups.hpp"
#include "dgw/numeric.hpp"

namespace dgw {

/// Complex function on the conjugacy classes of GL_2(o_2).
class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(ClassTablePtr table, std::vector<cplx> values);

  static ClassFunction zero(ClassTablePtr table);
  static ClassFunction trivial(ClassTablePtr table);
  /// Evaluates f at each class representative.
  static ClassFunction from_function(ClassTablePtr table, const std::function<cplx(code_t)>& f);

  const ClassTablePtr& table() const { return table_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx operator[](int c) const { return values_[c]; }
  cplx at(code_t g) const { return values_[table_->class_of(g)]; }
  cplx dim() const { return values_[table_->identity_class()]; }

  ClassFunction& operator+=(const ClassFunction& o);
  ClassFunction& operator-=(const ClassFunction& o);
  ClassFunction& operator*=(cplx s);
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
  friend ClassFunction operator*(cplx s, ClassFunction a) { return a *= s; }
  ClassFunction conj() const;
  /// Pointwise product.
  ClassFunction times(const ClassFunction& o) const;

  /// Largest pointwise difference.
  double distance(const ClassFunction& o) const;
  bool approx_equal(const ClassFunction& o, double tol = kTol) const { return distance(o) < tol; }

  /// CSV with columns class_id,re,im.
  void write_csv(std::ostream& os) const;

 private:
  void check_same_table(const ClassFunction& o) const;

  ClassTablePtr table_;
  std::vector<cplx> values_;
};

/// (1/|G|) sum_g f(g) conj(g(g)).
cplx inner_product(const ClassFunction& f, const ClassFunction& g);
/// Inner product that must be a non-negative integer; throws NumericResidual otherwise.
long long multiplicity(const ClassFunction& f, const ClassFunction& g);

/// Ind_H^G chi for H given by its sorted element codes and chi a class
/// function of H. Uses Ind(g) = |G| / (|H| |cl(g)|) * sum_{h in H cap cl(g)} chi(h).
ClassFunction induce(ClassTablePtr table, std::span<const code_t> subgroup, const std::function<cplx(code_t)>& chi);

/// (1/|H|) sum_{h in H} f(h) conj(chi(h)).
cplx restricted_inner_product(const ClassFunction& f, std::span<const code_t> subgroup,
                              const std::function<cplx(code_t)>& chi);

/// Multiplicities of f against `rows`, which must be orthonormal irreducible
/// characters. Throws when a multiplicity is not a non-negative integer or the
/// reconstruction sum m_i chi_i differs from f.
std::vector<long long> decompose(const ClassFunction& f, std::span<const ClassFunction> rows);

}  // namespace dgw

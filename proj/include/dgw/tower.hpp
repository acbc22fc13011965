#pragma once

#include <array>
#include <memory>
#include <string>

#include <json.hpp>

#include "dgw/field.hpp"
#include "dgw/ring.hpp"

namespace dgw {

/// Structure constants: F_{q^2} = F_q(sqrt alpha), beta^2 = a + b sqrt alpha.
struct TowerParams {
  FieldParams field;
  Flavor flavor = Flavor::EqualChar;
  fe_t alpha = 0;
  fe_t a = 0;
  fe_t b = 0;
};

/// First (alpha, a, b) in scan order: alpha ascending by element index, then
/// (a, b) lexicographic, subject to
///   alpha^((q-1)/2) = -1,
///   (a + b sqrt alpha)^((q^2-1)/2) = -1 in F_q(sqrt alpha),
///   a^2 - b^2 alpha a non-square in F_q.
TowerParams find_tower_params(const FieldParams& field, Flavor flavor);

/// Throws std::invalid_argument naming the first violated invariant.
void check_tower_params(const TowerParams& tp);

nlohmann::json to_json(const TowerParams& tp);
TowerParams tower_params_from_json(const nlohmann::json& j);

enum class Level { Base = 1, Quad = 2, Quartic = 4 };

/// Element of o_2 (rank 1), O_2 = o_2[beta^2] (rank 2) or
/// O'_2 = o_2[beta] (rank 4), coordinates in {1}, {1, beta^2}, {1, beta^2, beta, beta^3}.
struct TowerElem {
  Level level = Level::Base;
  std::array<re_t, 4> c{};

  int rank() const { return static_cast<int>(level); }
  friend bool operator==(const TowerElem&, const TowerElem&) = default;
};

class Tower {
 public:
  static std::shared_ptr<const Tower> create(const TowerParams& tp);
  static std::shared_ptr<const Tower> create(int p, int f, Flavor flavor);

  Tower(const Tower&) = delete;
  Tower& operator=(const Tower&) = delete;

  const TowerParams& params() const { return params_; }
  const Field& field() const { return field_; }
  const LocalRing& ring() const { return ring_; }
  /// Residue field of O_2 in basis {1, beta^2}.
  const ExtField& fq2() const { return *fq2_; }
  /// Residue field of O'_2 in basis {1, beta^2, beta, beta^3}.
  const ExtField& fq4() const { return *fq4_; }
  int q() const { return field_.q(); }
  Flavor flavor() const { return params_.flavor; }

  /// a, 2a and N = a^2 - b^2 alpha in F_q.
  fe_t a() const { return params_.a; }
  fe_t two_a() const { return two_a_; }
  fe_t norm_const() const { return norm_; }
  /// Constant lifts to o_2.
  re_t two_a_hat() const { return two_a_hat_; }
  re_t norm_hat() const { return norm_hat_; }

  TowerElem zero(Level l) const { return {l, {}}; }
  TowerElem one(Level l) const { return {l, {1, 0, 0, 0}}; }
  TowerElem make(Level l, std::array<re_t, 4> c) const { return {l, c}; }
  /// Image of x under the inclusion into a higher level.
  TowerElem coerce(const TowerElem& x, Level to) const;

  TowerElem add(const TowerElem& x, const TowerElem& y) const;
  TowerElem sub(const TowerElem& x, const TowerElem& y) const;
  TowerElem neg(const TowerElem& x) const;
  TowerElem mul(const TowerElem& x, const TowerElem& y) const;
  TowerElem scale(re_t s, const TowerElem& x) const;
  bool is_unit(const TowerElem& x) const { return reduce(x) != 0; }
  TowerElem inv(const TowerElem& x) const;
  TowerElem pow(TowerElem x, std::uint64_t e) const;

  /// Reduction mod varpi as an index of F_q, fq2() or fq4().
  fe_t reduce(const TowerElem& x) const;
  /// Constant (coordinatewise) lift of a residue.
  TowerElem lift(Level l, fe_t residue) const;
  /// Residue field order at a level.
  std::uint64_t residue_order(Level l) const;

  /// x^Q, Q the residue field order: the root of unity with the same reduction.
  TowerElem teichmuller(const TowerElem& x) const;
  /// Trace of multiplication by x on the free module `from` over `to`.
  TowerElem rel_trace(const TowerElem& x, Level to) const;
  /// Determinant of multiplication by x from O_2 to o_2.
  re_t norm_quad(const TowerElem& x) const;

  cplx psi0(const TowerElem& x) const;

  std::string to_string(const TowerElem& x) const;

 private:
  explicit Tower(const TowerParams& tp);

  TowerParams params_;
  Field field_;
  LocalRing ring_;
  std::unique_ptr<ExtField> fq2_, fq4_;
  fe_t two_a_, norm_;
  re_t two_a_hat_, norm_hat_;
};

using TowerPtr = std::shared_ptr<const Tower>;

}  // namespace dgw

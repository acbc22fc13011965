#pragma once

#include <array>
#include <compare>
#include <vector>

#include <json.hpp>

#include "dgw/matrix.hpp"

namespace dgw {

/// A_{u,v} = ((I, 0), (U, I)) with U = ((0, u), (0, v)), over F_q. Its constant
/// lift is the same matrix read over o_2.
Mat4 A_uv(fe_t u, fe_t v);
/// A_w: rows (1,0,0,0), (0,0,1,0), (0,1,0,0), (0,w,0,1).
Mat4 A_w(fe_t w);

/// One element of Omega with its residue invariants.
struct CosetRep {
  fe_t u = 0, v = 0;
  Mat2 U;
  Mat2 L;          // X1 U - U X1 + X3 - U X2 U
  fe_t det_L = 0;  // direct 2x2 determinant
  Mat2 calB;       // L (X1 + X2 U) L^{-1} + X1 - U X2, when det_L != 0
  bool is_identity() const { return u == 0 && v == 0; }
  bool nonvanishing() const { return det_L != 0; }
  Mat4 matrix() const { return A_uv(u, v); }
};

/// Double cosets T\G/P for a fixed regular elliptic x.
class CosetGeometry {
 public:
  CosetGeometry(TowerPtr tower, const RegularEllipticElement& x);

  const Tower& tower() const { return *tower_; }
  const RegularEllipticElement& x() const { return x_; }

  CosetRep rep(fe_t u, fe_t v) const;
  /// -u^2 X - uv(2aX + Y) - v^2(2aY + XN) + Y.
  fe_t det_L_closed_form(fe_t u, fe_t v) const;
  /// The polynomial criterion C(delta, delta'); zero iff same double coset.
  fe_t C(const CosetRep& d, const CosetRep& e) const;
  bool same_double_coset(const CosetRep& d, const CosetRep& e) const { return C(d, e) == 0; }
  /// All q^2 elements A_{u,v}, u major.
  std::vector<CosetRep> omega() const;
  /// First-wins representatives of the C classes in (u, v) lexicographic
  /// order. Throws std::logic_error unless there are exactly q + 1.
  std::vector<CosetRep> omega0() const;

 private:
  TowerPtr tower_;
  RegularEllipticElement x_;
};

/// The condition on (u, v, w) under which A_w and A_{u,v} lie in one double coset.
fe_t aw_condition(const Tower& t, fe_t u, fe_t v, fe_t w);

/// A 2-dimensional subspace of F_q^4 as its reduced row echelon 2x4 matrix.
struct GrassmannPoint {
  std::array<fe_t, 8> rows{};
  friend bool operator==(const GrassmannPoint&, const GrassmannPoint&) = default;
  friend auto operator<=>(const GrassmannPoint&, const GrassmannPoint&) = default;
};

/// Span of two column vectors; throws if they are dependent.
GrassmannPoint span_of(const Field& f, const std::array<fe_t, 4>& v, const std::array<fe_t, 4>& w);
/// All (q^2 + 1)(q^2 + q + 1) points.
std::vector<GrassmannPoint> grassmannian(const Field& f);

/// Orbits of the embedded F_{q^4}^x on Gr(4, 2), and where A W0 lands for
/// W0 = Span{1, beta^2} and A in Omega or among the A_w.
struct GrassmannPartition {
  int num_points = 0;
  int num_orbits = 0;
  std::vector<int> orbit_sizes;
  /// Per orbit, the number of y in F_{q^4} \ F_q with Span{1, y} in it.
  std::vector<int> y_counts;
  /// Orbit of the orbit containing Span{1, y} for some y in F_{q^2} \ F_q.
  int quad_orbit = -1;
  std::vector<int> omega_orbit;  // index u * q + v
  std::vector<int> aw_orbit;     // index w
};
GrassmannPartition grassmann_orbit_oracle(const Tower& t);

/// gamma(y, z) = ((1, y), (0, z)).
enum class GammaSystem { All, Zero, One, Two };
struct GammaRep {
  fe_t y = 0, z = 1;
};
/// (y^2 + 2ay(z - 1) + (1 + z^2) N) / z.
fe_t gamma_invariant(const Tower& t, fe_t y, fe_t z);
std::vector<GammaRep> gamma_system(const Tower& t, GammaSystem which);

/// Brute-force double-coset partitions of GL_2(F_q) behind the four systems.
struct GammaCheck {
  int all_count = 0, all_cosets = 0;
  bool all_distinct = false;
  int zero_count = 0, zero_cosets = 0;
  bool invariant_matches = false;  // invariant equality iff same double coset, all pairs of Gamma
  int one_count = 0, one_cosets = 0;
  bool one_distinct = false;
  int two_count = 0, two_cosets = 0;
  bool two_distinct = false;
  bool ok() const;
};
GammaCheck check_gamma_systems(const Tower& t);

/// Summary consumed by the `omega` subcommand.
nlohmann::json omega_summary(const CosetGeometry& g);

}  // namespace dgw

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>

#include "dgw/tower.hpp"

namespace dgw {

/// Square matrix of encoded ring elements, row-major. The ring (F_q or o_2)
/// is supplied to each operation. Constant lifts F_q -> o_2 keep indices, so
/// a residue matrix is also its own constant lift.
template <int N>
struct Mat {
  std::array<std::uint32_t, N * N> e{};

  std::uint32_t& operator()(int i, int j) { return e[i * N + j]; }
  std::uint32_t operator()(int i, int j) const { return e[i * N + j]; }
  friend bool operator==(const Mat&, const Mat&) = default;
  friend auto operator<=>(const Mat&, const Mat&) = default;
};

using Mat2 = Mat<2>;
using Mat4 = Mat<4>;

template <int N>
Mat<N> identity() {
  Mat<N> m;
  for (int i = 0; i < N; ++i) m(i, i) = 1;
  return m;
}

inline Mat2 mat2(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) { return Mat2{{a, b, c, d}}; }

template <class R, int N>
Mat<N> mul(const R& r, const Mat<N>& x, const Mat<N>& y) {
  Mat<N> z;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      std::uint32_t s = 0;
      for (int k = 0; k < N; ++k) s = r.add(s, r.mul(x(i, k), y(k, j)));
      z(i, j) = s;
    }
  return z;
}

template <class R, int N>
Mat<N> add(const R& r, const Mat<N>& x, const Mat<N>& y) {
  Mat<N> z;
  for (int i = 0; i < N * N; ++i) z.e[i] = r.add(x.e[i], y.e[i]);
  return z;
}

template <class R, int N>
Mat<N> sub(const R& r, const Mat<N>& x, const Mat<N>& y) {
  Mat<N> z;
  for (int i = 0; i < N * N; ++i) z.e[i] = r.sub(x.e[i], y.e[i]);
  return z;
}

template <class R, int N>
Mat<N> neg(const R& r, const Mat<N>& x) {
  Mat<N> z;
  for (int i = 0; i < N * N; ++i) z.e[i] = r.neg(x.e[i]);
  return z;
}

template <class R, int N>
Mat<N> scale(const R& r, std::uint32_t s, const Mat<N>& x) {
  Mat<N> z;
  for (int i = 0; i < N * N; ++i) z.e[i] = r.mul(s, x.e[i]);
  return z;
}

template <class R, int N>
std::uint32_t trace(const R& r, const Mat<N>& x) {
  std::uint32_t t = 0;
  for (int i = 0; i < N; ++i) t = r.add(t, x(i, i));
  return t;
}

template <class R>
std::uint32_t det(const R& r, const Mat2& x) {
  return r.sub(r.mul(x(0, 0), x(1, 1)), r.mul(x(0, 1), x(1, 0)));
}

/// Inverse over a commutative ring; throws when the determinant is not a unit.
template <class R>
Mat2 inverse(const R& r, const Mat2& x) {
  const std::uint32_t di = r.inv(det(r, x));
  return mat2(r.mul(di, x(1, 1)), r.mul(di, r.neg(x(0, 1))), r.mul(di, r.neg(x(1, 0))), r.mul(di, x(0, 0)));
}

/// x * y * x^{-1}.
template <class R>
Mat2 conjugate(const R& r, const Mat2& x, const Mat2& y) {
  return mul(r, mul(r, x, y), inverse(r, x));
}

/// Entrywise reduction of an o_2 matrix mod varpi.
template <int N>
Mat<N> reduce(const LocalRing& r, const Mat<N>& x) {
  Mat<N> z;
  for (int i = 0; i < N * N; ++i) z.e[i] = r.reduce(x.e[i]);
  return z;
}

/// varpi * A for a residue matrix A.
template <int N>
Mat<N> varpi(const LocalRing& r, const Mat<N>& a) {
  Mat<N> z;
  for (int i = 0; i < N * N; ++i) z.e[i] = r.varpi(a.e[i]);
  return z;
}

/// For an o_2 matrix congruent to the identity, the residue A with x = I + varpi A.
template <int N>
Mat<N> log_congruence(const LocalRing& r, const Mat<N>& x) {
  Mat<N> z;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) z(i, j) = r.div_varpi(i == j ? r.sub(x(i, j), 1) : x(i, j));
  return z;
}

Mat2 block(const Mat4& m, int bi, int bj);
Mat4 from_blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d);

/// Determinant over F_q by elimination.
fe_t det(const Field& f, const Mat4& m);

std::string to_string(const Mat2& m);

/// Multiplication by x on O'_2 in the basis {1, beta^2, beta, beta^3}.
Mat4 embed_quartic(const Tower& t, const TowerElem& x);
/// Multiplication by x on O_2 in the basis {1, beta^2}.
Mat2 embed_quad(const Tower& t, const TowerElem& x);
/// Residue versions: the embedding F_{q^4} -> M_4(F_q) and F_{q^2} -> M_2(F_q).
Mat4 embed_fq4(const Tower& t, fe_t x);
Mat2 embed_fq2(const Tower& t, fe_t x);

/// x = a0 + a1 beta^2 + a2 beta + a3 beta^3 in F_{q^4} with (a2, a3) != 0, and
/// its embedding ((X1, X2), (X3, X1)).
struct RegularEllipticElement {
  std::array<fe_t, 4> a{};
  fe_t elem = 0;  // index in fq4()
  Mat2 X1, X2, X3;
  Mat4 mat;

  static RegularEllipticElement make(const Tower& t, std::array<fe_t, 4> a);
  /// a1 = 0, i.e. X1 is scalar.
  bool x1_scalar() const { return a[1] == 0; }
};

/// Y = a2^2 + a3^2 N + 2a a2 a3, nonzero for regular elliptic x.
fe_t elliptic_Y(const Tower& t, const RegularEllipticElement& x);
/// X = a1^2 - a2 a3 - 2a a3^2.
fe_t elliptic_X(const Tower& t, const RegularEllipticElement& x);

}  // namespace dgw

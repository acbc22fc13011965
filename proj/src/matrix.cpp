#include "dgw/matrix.hpp"

#include <stdexcept>

namespace dgw {

Mat2 block(const Mat4& m, int bi, int bj) {
  return mat2(m(2 * bi, 2 * bj), m(2 * bi, 2 * bj + 1), m(2 * bi + 1, 2 * bj), m(2 * bi + 1, 2 * bj + 1));
}

Mat4 from_blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
  Mat4 m;
  const Mat2* bl[2][2] = {{&a, &b}, {&c, &d}};
  for (int bi = 0; bi < 2; ++bi)
    for (int bj = 0; bj < 2; ++bj)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(2 * bi + i, 2 * bj + j) = (*bl[bi][bj])(i, j);
  return m;
}

fe_t det(const Field& f, const Mat4& m0) {
  Mat4 m = m0;
  fe_t d = 1;
  for (int c = 0; c < 4; ++c) {
    int piv = -1;
    for (int r = c; r < 4; ++r)
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < 4; ++j) std::swap(m(c, j), m(piv, j));
      d = f.neg(d);
    }
    d = f.mul(d, m(c, c));
    const fe_t inv = f.inv(m(c, c));
    for (int r = c + 1; r < 4; ++r) {
      const fe_t k = f.mul(m(r, c), inv);
      if (k == 0) continue;
      for (int j = c; j < 4; ++j) m(r, j) = f.sub(m(r, j), f.mul(k, m(c, j)));
    }
  }
  return d;
}

std::string to_string(const Mat2& m) {
  return "[[" + std::to_string(m(0, 0)) + "," + std::to_string(m(0, 1)) + "],[" + std::to_string(m(1, 0)) + "," +
         std::to_string(m(1, 1)) + "]]";
}

Mat4 embed_quartic(const Tower& t, const TowerElem& x) {
  if (x.level != Level::Quartic) throw std::invalid_argument("embed_quartic: expected an O'_2 element");
  Mat4 m;
  for (int j = 0; j < 4; ++j) {
    TowerElem e = t.zero(Level::Quartic);
    e.c[j] = 1;
    const TowerElem col = t.mul(x, e);
    for (int i = 0; i < 4; ++i) m(i, j) = col.c[i];
  }
  return m;
}

Mat2 embed_quad(const Tower& t, const TowerElem& x) {
  if (x.level != Level::Quad) throw std::invalid_argument("embed_quad: expected an O_2 element");
  Mat2 m;
  for (int j = 0; j < 2; ++j) {
    TowerElem e = t.zero(Level::Quad);
    e.c[j] = 1;
    const TowerElem col = t.mul(x, e);
    for (int i = 0; i < 2; ++i) m(i, j) = col.c[i];
  }
  return m;
}

Mat4 embed_fq4(const Tower& t, fe_t x) { return reduce(t.ring(), embed_quartic(t, t.lift(Level::Quartic, x))); }

Mat2 embed_fq2(const Tower& t, fe_t x) { return reduce(t.ring(), embed_quad(t, t.lift(Level::Quad, x))); }

RegularEllipticElement RegularEllipticElement::make(const Tower& t, std::array<fe_t, 4> a) {
  const fe_t q = t.field().size();
  for (fe_t v : a)
    if (v >= q) throw std::invalid_argument("coordinate of x out of range");
  if (a[2] == 0 && a[3] == 0)
    throw std::invalid_argument("x lies in F_{q^2} ((a2, a3) = (0, 0)); it is not regular elliptic");
  RegularEllipticElement x;
  x.a = a;
  x.elem = t.fq4().from_coords(a);
  x.mat = embed_fq4(t, x.elem);
  x.X1 = block(x.mat, 0, 0);
  x.X2 = block(x.mat, 0, 1);
  x.X3 = block(x.mat, 1, 0);
  if (block(x.mat, 1, 1) != x.X1) throw std::logic_error("embedding does not have block form ((X1,X2),(X3,X1))");
  return x;
}

fe_t elliptic_Y(const Tower& t, const RegularEllipticElement& x) {
  const Field& F = t.field();
  const fe_t a2 = x.a[2], a3 = x.a[3];
  return F.add(F.add(F.mul(a2, a2), F.mul(F.mul(a3, a3), t.norm_const())), F.mul(t.two_a(), F.mul(a2, a3)));
}

fe_t elliptic_X(const Tower& t, const RegularEllipticElement& x) {
  const Field& F = t.field();
  const fe_t a1 = x.a[1], a2 = x.a[2], a3 = x.a[3];
  return F.sub(F.sub(F.mul(a1, a1), F.mul(a2, a3)), F.mul(t.two_a(), F.mul(a3, a3)));
}

}  // namespace dgw

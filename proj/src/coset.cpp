#include "dgw/coset.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dgw/gl2_table.hpp"

namespace dgw {

Mat4 A_uv(fe_t u, fe_t v) {
  Mat4 m = identity<4>();
  m(2, 1) = u;
  m(3, 1) = v;
  return m;
}

Mat4 A_w(fe_t w) {
  Mat4 m;
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 1) = w;
  m(3, 3) = 1;
  return m;
}

CosetGeometry::CosetGeometry(TowerPtr tower, const RegularEllipticElement& x) : tower_(std::move(tower)), x_(x) {}

CosetRep CosetGeometry::rep(fe_t u, fe_t v) const {
  const Field& F = tower_->field();
  if (u >= F.size() || v >= F.size()) throw std::invalid_argument("coset parameter out of range");
  CosetRep d;
  d.u = u;
  d.v = v;
  d.U = mat2(0, u, 0, v);
  const Mat2& X1 = x_.X1;
  const Mat2& X2 = x_.X2;
  const Mat2& X3 = x_.X3;
  d.L = sub(F, add(F, sub(F, mul(F, X1, d.U), mul(F, d.U, X1)), X3), mul(F, mul(F, d.U, X2), d.U));
  d.det_L = det(F, d.L);
  if (d.det_L != 0) {
    const Mat2 inner = add(F, X1, mul(F, X2, d.U));
    d.calB = sub(F, add(F, conjugate(F, d.L, inner), X1), mul(F, d.U, X2));
  }
  return d;
}

fe_t CosetGeometry::det_L_closed_form(fe_t u, fe_t v) const {
  const Field& F = tower_->field();
  const fe_t X = elliptic_X(*tower_, x_);
  const fe_t Y = elliptic_Y(*tower_, x_);
  const fe_t ta = tower_->two_a();
  const fe_t N = tower_->norm_const();
  fe_t r = Y;
  r = F.sub(r, F.mul(F.mul(u, u), X));
  r = F.sub(r, F.mul(F.mul(u, v), F.add(F.mul(ta, X), Y)));
  r = F.sub(r, F.mul(F.mul(v, v), F.add(F.mul(ta, Y), F.mul(X, N))));
  return r;
}

namespace {

// 3a^2 + b^2 alpha = 4a^2 - N.
fe_t c3(const Tower& t) {
  const Field& F = t.field();
  return F.sub(F.mul(t.two_a(), t.two_a()), t.norm_const());
}

}  // namespace

fe_t CosetGeometry::C(const CosetRep& d, const CosetRep& e) const {
  const Field& F = tower_->field();
  const fe_t u = d.u, v = d.v, u2 = e.u, v2 = e.v;
  auto m = [&](fe_t a, fe_t b) { return F.mul(a, b); };
  const fe_t ta = tower_->two_a();
  fe_t r = F.sub(m(u, u), m(u2, u2));
  r = F.add(r, F.sub(m(m(u, v), m(u2, u2)), m(m(u, u), m(u2, v2))));
  r = F.add(r, m(ta, F.sub(m(m(v, v), m(u2, u2)), m(m(u, u), m(v2, v2)))));
  r = F.add(r, m(ta, F.sub(m(u, v), m(u2, v2))));
  r = F.add(r, m(c3(*tower_), F.sub(m(m(u2, v2), m(v, v)), m(m(u, v), m(v2, v2)))));
  r = F.add(r, m(F.sub(m(v, v), m(v2, v2)), tower_->norm_const()));
  return r;
}

std::vector<CosetRep> CosetGeometry::omega() const {
  std::vector<CosetRep> out;
  const fe_t q = tower_->field().size();
  for (fe_t u = 0; u < q; ++u)
    for (fe_t v = 0; v < q; ++v) out.push_back(rep(u, v));
  return out;
}

std::vector<CosetRep> CosetGeometry::omega0() const {
  std::vector<CosetRep> out;
  for (const CosetRep& d : omega()) {
    const bool seen = std::any_of(out.begin(), out.end(), [&](const CosetRep& e) { return same_double_coset(d, e); });
    if (!seen) out.push_back(d);
  }
  const std::size_t q = tower_->field().size();
  if (out.size() != q + 1)
    throw std::logic_error("Omega_0 has " + std::to_string(out.size()) + " entries, expected q + 1 = " +
                           std::to_string(q + 1));
  return out;
}

fe_t aw_condition(const Tower& t, fe_t u, fe_t v, fe_t w) {
  const Field& F = t.field();
  auto m = [&](fe_t a, fe_t b) { return F.mul(a, b); };
  const fe_t one_2aw = F.add(1, m(t.two_a(), w));
  const fe_t k = c3(t);
  fe_t r = m(m(u, u), m(w, one_2aw));
  r = F.sub(r, m(m(u, v), F.sub(1, m(m(w, w), k))));
  r = F.sub(r, m(m(v, v), F.add(t.two_a(), m(w, k))));
  r = F.add(r, F.add(one_2aw, m(t.norm_const(), m(w, w))));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

using Vec4 = std::array<fe_t, 4>;

GrassmannPoint rref(const Field& f, Vec4 r0, Vec4 r1) {
  std::array<Vec4, 2> r{r0, r1};
  int row = 0;
  for (int c = 0; c < 4 && row < 2; ++c) {
    int piv = -1;
    for (int i = row; i < 2; ++i)
      if (r[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(r[row], r[piv]);
    const fe_t inv = f.inv(r[row][c]);
    for (fe_t& x : r[row]) x = f.mul(x, inv);
    for (int i = 0; i < 2; ++i)
      if (i != row && r[i][c] != 0) {
        const fe_t k = r[i][c];
        for (int j = 0; j < 4; ++j) r[i][j] = f.sub(r[i][j], f.mul(k, r[row][j]));
      }
    ++row;
  }
  if (row < 2) throw std::invalid_argument("span_of: vectors are linearly dependent");
  GrassmannPoint p;
  for (int j = 0; j < 4; ++j) {
    p.rows[j] = r[0][j];
    p.rows[4 + j] = r[1][j];
  }
  return p;
}

Vec4 apply(const Field& f, const Mat4& m, const Vec4& v) {
  Vec4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] = f.add(out[i], f.mul(m(i, j), v[j]));
  return out;
}

Vec4 column(const Mat4& m, int j) { return {m(0, j), m(1, j), m(2, j), m(3, j)}; }

GrassmannPoint act(const Field& f, const Mat4& g, const GrassmannPoint& p) {
  const Vec4 r0{p.rows[0], p.rows[1], p.rows[2], p.rows[3]};
  const Vec4 r1{p.rows[4], p.rows[5], p.rows[6], p.rows[7]};
  return rref(f, apply(f, g, r0), apply(f, g, r1));
}

}  // namespace

GrassmannPoint span_of(const Field& f, const Vec4& v, const Vec4& w) { return rref(f, v, w); }

std::vector<GrassmannPoint> grassmannian(const Field& f) {
  const fe_t q = f.size();
  std::vector<GrassmannPoint> out;
  // Pivot columns (i, j), i < j; free entries sit right of each pivot and off the other pivot column.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      std::vector<std::pair<int, int>> free;
      for (int c = i + 1; c < 4; ++c)
        if (c != j) free.emplace_back(0, c);
      for (int c = j + 1; c < 4; ++c) free.emplace_back(1, c);
      std::uint64_t total = 1;
      for (std::size_t k = 0; k < free.size(); ++k) total *= q;
      for (std::uint64_t code = 0; code < total; ++code) {
        GrassmannPoint p;
        p.rows[i] = 1;
        p.rows[4 + j] = 1;
        std::uint64_t c = code;
        for (auto [r, col] : free) {
          p.rows[4 * r + col] = static_cast<fe_t>(c % q);
          c /= q;
        }
        out.push_back(p);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

GrassmannPartition grassmann_orbit_oracle(const Tower& t) {
  const Field& F = t.field();
  const ExtField& E = t.fq4();
  const fe_t q = F.size();
  const auto points = grassmannian(F);
  std::map<GrassmannPoint, int> index;
  for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i], static_cast<int>(i));

  GrassmannPartition out;
  out.num_points = static_cast<int>(points.size());
  std::vector<int> orbit(points.size(), -1);
  const Mat4 gen = embed_fq4(t, E.generator());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (orbit[i] >= 0) continue;
    const int id = out.num_orbits++;
    int size = 0;
    GrassmannPoint p = points[i];
    // F_{q^4}^x is cyclic: walk the orbit of the generator.
    while (orbit[index.at(p)] < 0) {
      orbit[index.at(p)] = id;
      ++size;
      p = act(F, gen, p);
    }
    out.orbit_sizes.push_back(size);
  }

  auto orbit_of = [&](const Vec4& v, const Vec4& w) { return orbit[index.at(span_of(F, v, w))]; };
  out.y_counts.assign(out.num_orbits, 0);
  const Vec4 one{1, 0, 0, 0};
  for (fe_t y = q; y < E.size(); ++y) {
    const auto c = E.coords(y);
    const int o = orbit_of(one, {c[0], c[1], c[2], c[3]});
    ++out.y_counts[o];
    if (c[2] == 0 && c[3] == 0) out.quad_orbit = o;
  }
  for (fe_t u = 0; u < q; ++u)
    for (fe_t v = 0; v < q; ++v) {
      const Mat4 a = A_uv(u, v);
      out.omega_orbit.push_back(orbit_of(column(a, 0), column(a, 1)));
    }
  for (fe_t w = 0; w < q; ++w) {
    const Mat4 a = A_w(w);
    out.aw_orbit.push_back(orbit_of(column(a, 0), column(a, 1)));
  }
  return out;
}

// ---------------------------------------------------------------------------

fe_t gamma_invariant(const Tower& t, fe_t y, fe_t z) {
  const Field& F = t.field();
  if (z == 0) throw std::invalid_argument("gamma(y, z) needs z != 0");
  fe_t r = F.mul(y, y);
  r = F.add(r, F.mul(F.mul(t.two_a(), y), F.sub(z, 1)));
  r = F.add(r, F.mul(F.add(1, F.mul(z, z)), t.norm_const()));
  return F.div(r, z);
}

std::vector<GammaRep> gamma_system(const Tower& t, GammaSystem which) {
  const fe_t q = t.field().size();
  std::vector<GammaRep> out;
  switch (which) {
    case GammaSystem::All:
      for (fe_t y = 0; y < q; ++y)
        for (fe_t z = 1; z < q; ++z) out.push_back({y, z});
      break;
    case GammaSystem::Zero: {
      std::vector<fe_t> seen;
      for (const GammaRep& g : gamma_system(t, GammaSystem::All)) {
        const fe_t k = gamma_invariant(t, g.y, g.z);
        if (std::find(seen.begin(), seen.end(), k) == seen.end()) {
          seen.push_back(k);
          out.push_back(g);
        }
      }
      break;
    }
    case GammaSystem::One:
      for (fe_t y = 0; y < q; ++y) out.push_back({y, 1});
      break;
    case GammaSystem::Two:
      for (fe_t z = 1; z < q; ++z) out.push_back({0, z});
      break;
  }
  return out;
}

namespace {

// Labels GL_2(F_q) by double cosets <left> \ G / <right>.
class ResidueDoubleCosets {
 public:
  ResidueDoubleCosets(const Field& f, const std::vector<Mat2>& left, const std::vector<Mat2>& right) : f_(f) {
    const fe_t q = f.size();
    label_.assign(q * q * q * q, -2);
    for (std::uint32_t c = 0; c < label_.size(); ++c)
      if (det(f, decode(c)) != 0) label_[c] = -1;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t c = 0; c < label_.size(); ++c) {
      if (label_[c] != -1) continue;
      label_[c] = count_;
      stack.assign(1, c);
      while (!stack.empty()) {
        const Mat2 m = decode(stack.back());
        stack.pop_back();
        auto visit = [&](const Mat2& n) {
          const std::uint32_t k = encode(n);
          if (label_[k] == -1) {
            label_[k] = count_;
            stack.push_back(k);
          }
        };
        for (const Mat2& l : left) visit(mul(f, l, m));
        for (const Mat2& r : right) visit(mul(f, m, r));
      }
      ++count_;
    }
  }
  int count() const { return count_; }
  int label(const Mat2& m) const { return label_[encode(m)]; }

 private:
  std::uint32_t encode(const Mat2& m) const {
    const fe_t q = f_.size();
    return ((m.e[0] * q + m.e[1]) * q + m.e[2]) * q + m.e[3];
  }
  Mat2 decode(std::uint32_t c) const {
    const fe_t q = f_.size();
    Mat2 m;
    for (int i = 3; i >= 0; --i, c /= q) m.e[i] = c % q;
    return m;
  }
  const Field& f_;
  std::vector<int> label_;
  int count_ = 0;
};

bool labels_distinct(const ResidueDoubleCosets& dc, const std::vector<GammaRep>& reps) {
  std::vector<int> seen;
  for (const GammaRep& g : reps) seen.push_back(dc.label(mat2(1, g.y, 0, g.z)));
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

}  // namespace

bool GammaCheck::ok() const {
  return all_distinct && all_count == all_cosets && invariant_matches && zero_count == zero_cosets && one_distinct &&
         one_count == one_cosets && two_distinct && two_count == two_cosets;
}

GammaCheck check_gamma_systems(const Tower& t) {
  const Field& F = t.field();
  const std::vector<Mat2> torus{embed_fq2(t, t.fq2().generator())};
  const fe_t g = F.generator();
  std::vector<Mat2> t2{mat2(g, 0, 0, g)};
  for (fe_t n = 1; n < F.size(); ++n) t2.push_back(mat2(1, n, 0, 1));

  GammaCheck out;
  const auto all = gamma_system(t, GammaSystem::All);
  const ResidueDoubleCosets left(F, torus, {});
  out.all_count = static_cast<int>(all.size());
  out.all_cosets = left.count();
  out.all_distinct = labels_distinct(left, all);

  const ResidueDoubleCosets both(F, torus, torus);
  out.zero_count = static_cast<int>(gamma_system(t, GammaSystem::Zero).size());
  out.zero_cosets = both.count();
  out.invariant_matches = true;
  for (const GammaRep& a : all)
    for (const GammaRep& b : all) {
      const bool same = both.label(mat2(1, a.y, 0, a.z)) == both.label(mat2(1, b.y, 0, b.z));
      const bool inv = gamma_invariant(t, a.y, a.z) == gamma_invariant(t, b.y, b.z);
      if (same != inv) out.invariant_matches = false;
    }

  const ResidueDoubleCosets t1(F, torus, {mat2(g, 0, 0, 1), mat2(1, 0, 0, g)});
  const auto one = gamma_system(t, GammaSystem::One);
  out.one_count = static_cast<int>(one.size());
  out.one_cosets = t1.count();
  out.one_distinct = labels_distinct(t1, one);

  const ResidueDoubleCosets t2c(F, torus, t2);
  const auto two = gamma_system(t, GammaSystem::Two);
  out.two_count = static_cast<int>(two.size());
  out.two_cosets = t2c.count();
  out.two_distinct = labels_distinct(t2c, two);
  return out;
}

nlohmann::json omega_summary(const CosetGeometry& g) {
  const Field& F = g.tower().field();
  nlohmann::json rows = nlohmann::json::array();
  for (const CosetRep& d : g.omega0()) {
    nlohmann::json r{{"u", d.u}, {"v", d.v}, {"det_L", d.det_L}, {"L", d.L.e}};
    if (d.nonvanishing()) {
      r["calB"] = d.calB.e;
      r["calB_type"] = to_string(classify(F, d.calB));
    } else {
      r["calB"] = nullptr;
      r["calB_type"] = nullptr;
    }
    rows.push_back(r);
  }
  return {{"x", g.x().a}, {"omega0", rows}};
}

}  // namespace dgw

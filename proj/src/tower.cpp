#include "dgw/tower.hpp"

#include <stdexcept>

namespace dgw {
namespace {

// Products in R[s]/(s^2 - 2a s + N) and R[s][beta]/(beta^2 - s), generic over
// the coefficient ring so the same code serves o_2 and the residue fields.
template <class R>
struct QuadArith {
  const R& r;
  typename R::value_type two_a, nrm;

  using V = typename R::value_type;

  std::array<V, 2> mul(V x0, V x1, V y0, V y1) const {
    const V x1y1 = r.mul(x1, y1);
    return {r.sub(r.mul(x0, y0), r.mul(x1y1, nrm)), r.add(r.add(r.mul(x0, y1), r.mul(x1, y0)), r.mul(x1y1, two_a))};
  }
  // (c0 + c1 s) * s.
  std::array<V, 2> times_s(V c0, V c1) const { return {r.neg(r.mul(c1, nrm)), r.add(c0, r.mul(c1, two_a))}; }

  std::array<V, 4> mul4(const std::array<V, 4>& x, const std::array<V, 4>& y) const {
    const auto ee = mul(x[0], x[1], y[0], y[1]);
    const auto oo = mul(x[2], x[3], y[2], y[3]);
    const auto oos = times_s(oo[0], oo[1]);
    const auto eo = mul(x[0], x[1], y[2], y[3]);
    const auto oe = mul(x[2], x[3], y[0], y[1]);
    return {r.add(ee[0], oos[0]), r.add(ee[1], oos[1]), r.add(eo[0], oe[0]), r.add(eo[1], oe[1])};
  }
};

ExtField::Coords to_vec(const std::array<fe_t, 2>& a) { return {a[0], a[1]}; }

}  // namespace

TowerParams find_tower_params(const FieldParams& fp, Flavor flavor) {
  const Field F(fp);
  const fe_t q = F.size();
  const fe_t minus_one = F.neg(1);
  TowerParams tp;
  tp.field = fp;
  tp.flavor = flavor;
  for (fe_t alpha = 1; alpha < q; ++alpha) {
    if (F.pow(alpha, (q - 1) / 2) != minus_one) continue;
    // F_q(sqrt alpha) in basis {1, r}, r^2 = alpha.
    ExtField F2(F, 2, [alpha](const Field& f, const ExtField::Coords& x, const ExtField::Coords& y) {
      return ExtField::Coords{f.add(f.mul(x[0], y[0]), f.mul(alpha, f.mul(x[1], y[1]))),
                              f.add(f.mul(x[0], y[1]), f.mul(x[1], y[0]))};
    });
    const std::uint64_t half = (static_cast<std::uint64_t>(q) * q - 1) / 2;
    const fe_t minus_one2 = F2.from_base(minus_one);
    for (fe_t a = 0; a < q; ++a)
      for (fe_t b = 0; b < q; ++b) {
        const fe_t ab[2] = {a, b};
        const fe_t z = F2.from_coords(ab);
        if (z == 0 || F2.pow(z, half) != minus_one2) continue;
        const fe_t n = F.sub(F.mul(a, a), F.mul(F.mul(b, b), alpha));
        if (n == 0 || F.is_square(n)) continue;
        tp.alpha = alpha;
        tp.a = a;
        tp.b = b;
        return tp;
      }
  }
  throw std::logic_error("no admissible tower parameters (cannot happen for odd q)");
}

void check_tower_params(const TowerParams& tp) {
  const Field F(tp.field);
  const fe_t q = F.size();
  if (tp.alpha == 0 || tp.alpha >= q || F.pow(tp.alpha, (q - 1) / 2) != F.neg(1))
    throw std::invalid_argument("alpha is not a non-square in F_q");
  if (tp.a >= q || tp.b >= q) throw std::invalid_argument("a, b out of range");
  const fe_t alpha = tp.alpha;
  ExtField F2(F, 2, [alpha](const Field& f, const ExtField::Coords& x, const ExtField::Coords& y) {
    return ExtField::Coords{f.add(f.mul(x[0], y[0]), f.mul(alpha, f.mul(x[1], y[1]))),
                            f.add(f.mul(x[0], y[1]), f.mul(x[1], y[0]))};
  });
  const fe_t ab[2] = {tp.a, tp.b};
  const fe_t z = F2.from_coords(ab);
  if (z == 0 || F2.pow(z, (static_cast<std::uint64_t>(q) * q - 1) / 2) != F2.from_base(F.neg(1)))
    throw std::invalid_argument("a + b sqrt(alpha) is not a non-square in F_{q^2}");
  const fe_t n = F.sub(F.mul(tp.a, tp.a), F.mul(F.mul(tp.b, tp.b), alpha));
  if (n == 0 || F.is_square(n)) throw std::invalid_argument("a^2 - b^2 alpha is not a non-square in F_q");
}

nlohmann::json to_json(const TowerParams& tp) {
  const Field F(tp.field);
  return {{"p", tp.field.p},
          {"f", tp.field.f},
          {"modulus", tp.field.modulus},
          {"flavor", to_string(tp.flavor)},
          {"alpha", F.coeffs(tp.alpha)},
          {"a", F.coeffs(tp.a)},
          {"b", F.coeffs(tp.b)}};
}

TowerParams tower_params_from_json(const nlohmann::json& j) {
  TowerParams tp;
  tp.field.p = j.at("p").get<int>();
  tp.field.f = j.at("f").get<int>();
  tp.field.modulus = j.at("modulus").get<std::vector<int>>();
  tp.field.q = 1;
  for (int i = 0; i < tp.field.f; ++i) tp.field.q *= tp.field.p;
  tp.flavor = flavor_from_string(j.at("flavor").get<std::string>());
  const Field F(tp.field);
  tp.alpha = F.from_coeffs(j.at("alpha").get<std::vector<int>>());
  tp.a = F.from_coeffs(j.at("a").get<std::vector<int>>());
  tp.b = F.from_coeffs(j.at("b").get<std::vector<int>>());
  check_tower_params(tp);
  return tp;
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Tower> Tower::create(const TowerParams& tp) {
  check_tower_params(tp);
  return std::shared_ptr<const Tower>(new Tower(tp));
}

std::shared_ptr<const Tower> Tower::create(int p, int f, Flavor flavor) {
  return create(find_tower_params(make_field(p, f), flavor));
}

Tower::Tower(const TowerParams& tp) : params_(tp), field_(tp.field), ring_(field_, tp.flavor) {
  const Field& F = field_;
  two_a_ = F.add(tp.a, tp.a);
  norm_ = F.sub(F.mul(tp.a, tp.a), F.mul(F.mul(tp.b, tp.b), tp.alpha));
  two_a_hat_ = ring_.add(ring_.lift(tp.a), ring_.lift(tp.a));
  const re_t ah = ring_.lift(tp.a), bh = ring_.lift(tp.b), alh = ring_.lift(tp.alpha);
  norm_hat_ = ring_.sub(ring_.mul(ah, ah), ring_.mul(ring_.mul(bh, bh), alh));
  const fe_t ta = two_a_, nm = norm_;
  fq2_ = std::make_unique<ExtField>(F, 2, [ta, nm](const Field& f, const ExtField::Coords& x, const ExtField::Coords& y) {
    return to_vec(QuadArith<Field>{f, ta, nm}.mul(x[0], x[1], y[0], y[1]));
  });
  fq4_ = std::make_unique<ExtField>(F, 4, [ta, nm](const Field& f, const ExtField::Coords& x, const ExtField::Coords& y) {
    const auto r = QuadArith<Field>{f, ta, nm}.mul4({x[0], x[1], x[2], x[3]}, {y[0], y[1], y[2], y[3]});
    return ExtField::Coords(r.begin(), r.end());
  });
}

TowerElem Tower::coerce(const TowerElem& x, Level to) const {
  if (static_cast<int>(to) < x.rank()) throw std::invalid_argument("coerce: target level is below source");
  TowerElem r = x;
  r.level = to;
  return r;
}

TowerElem Tower::add(const TowerElem& x, const TowerElem& y) const {
  if (x.level != y.level) throw std::invalid_argument("add: level mismatch");
  TowerElem r{x.level, {}};
  for (int i = 0; i < x.rank(); ++i) r.c[i] = ring_.add(x.c[i], y.c[i]);
  return r;
}

TowerElem Tower::sub(const TowerElem& x, const TowerElem& y) const { return add(x, neg(y)); }

TowerElem Tower::neg(const TowerElem& x) const {
  TowerElem r{x.level, {}};
  for (int i = 0; i < x.rank(); ++i) r.c[i] = ring_.neg(x.c[i]);
  return r;
}

TowerElem Tower::scale(re_t s, const TowerElem& x) const {
  TowerElem r{x.level, {}};
  for (int i = 0; i < x.rank(); ++i) r.c[i] = ring_.mul(s, x.c[i]);
  return r;
}

TowerElem Tower::mul(const TowerElem& x, const TowerElem& y) const {
  if (x.level != y.level) throw std::invalid_argument("mul: level mismatch");
  const QuadArith<LocalRing> qa{ring_, two_a_hat_, norm_hat_};
  switch (x.level) {
    case Level::Base:
      return {Level::Base, {ring_.mul(x.c[0], y.c[0]), 0, 0, 0}};
    case Level::Quad: {
      const auto r = qa.mul(x.c[0], x.c[1], y.c[0], y.c[1]);
      return {Level::Quad, {r[0], r[1], 0, 0}};
    }
    case Level::Quartic:
      return {Level::Quartic, qa.mul4(x.c, y.c)};
  }
  throw std::logic_error("bad level");
}

fe_t Tower::reduce(const TowerElem& x) const {
  const fe_t q = field_.size();
  fe_t r = 0;
  for (int i = x.rank() - 1; i >= 0; --i) r = r * q + ring_.reduce(x.c[i]);
  return r;
}

TowerElem Tower::lift(Level l, fe_t residue) const {
  const fe_t q = field_.size();
  TowerElem r{l, {}};
  for (int i = 0; i < static_cast<int>(l); ++i, residue /= q) r.c[i] = ring_.lift(residue % q);
  return r;
}

std::uint64_t Tower::residue_order(Level l) const {
  std::uint64_t n = 1;
  for (int i = 0; i < static_cast<int>(l); ++i) n *= static_cast<std::uint64_t>(q());
  return n;
}

TowerElem Tower::inv(const TowerElem& x) const {
  const fe_t r = reduce(x);
  if (r == 0) throw std::domain_error("inverse of a non-unit tower element");
  fe_t rinv = 0;
  switch (x.level) {
    case Level::Base: rinv = field_.inv(r); break;
    case Level::Quad: rinv = fq2_->inv(r); break;
    case Level::Quartic: rinv = fq4_->inv(r); break;
  }
  // One Newton step is exact in length 2: y = y0 (2 - x y0).
  const TowerElem y0 = lift(x.level, rinv);
  const TowerElem two = add(one(x.level), one(x.level));
  return mul(y0, sub(two, mul(x, y0)));
}

TowerElem Tower::pow(TowerElem x, std::uint64_t e) const {
  TowerElem r = one(x.level);
  for (; e > 0; e >>= 1) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
  }
  return r;
}

TowerElem Tower::teichmuller(const TowerElem& x) const {
  if (!is_unit(x)) throw std::domain_error("teichmuller of a non-unit");
  return pow(x, residue_order(x.level));
}

TowerElem Tower::rel_trace(const TowerElem& x, Level to) const {
  if (static_cast<int>(to) >= x.rank()) throw std::invalid_argument("rel_trace: levels are not nested");
  if (x.level == Level::Quartic && to == Level::Quad) {
    // O'_2 = O_2 + O_2 beta; multiplication by x_e + x_o beta has trace 2 x_e.
    return {Level::Quad, {ring_.add(x.c[0], x.c[0]), ring_.add(x.c[1], x.c[1]), 0, 0}};
  }
  // Trace over o_2 of the multiplication matrix in the coordinate basis.
  re_t t = 0;
  for (int i = 0; i < x.rank(); ++i) {
    TowerElem e{x.level, {}};
    e.c[i] = 1;
    t = ring_.add(t, mul(x, e).c[i]);
  }
  return {Level::Base, {t, 0, 0, 0}};
}

re_t Tower::norm_quad(const TowerElem& x) const {
  if (x.level != Level::Quad) throw std::invalid_argument("norm_quad: expected an O_2 element");
  // det of ((x0, -x1 N), (x1, x0 + 2a x1)).
  const re_t d0 = ring_.mul(x.c[0], ring_.add(x.c[0], ring_.mul(two_a_hat_, x.c[1])));
  return ring_.add(d0, ring_.mul(ring_.mul(x.c[1], x.c[1]), norm_hat_));
}

cplx Tower::psi0(const TowerElem& x) const {
  if (x.level != Level::Base) throw std::invalid_argument("psi0: expected an o_2 element");
  return ring_.psi0(x.c[0]);
}

std::string Tower::to_string(const TowerElem& x) const {
  std::string s = "[";
  for (int i = 0; i < x.rank(); ++i) s += (i ? " " : "") + ring_.to_string(x.c[i]);
  return s + "]";
}

}  // namespace dgw

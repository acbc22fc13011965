#include <gtest/gtest.h>

#include <random>
#include <set>

#include "dgw/groups.hpp"

using namespace dgw;

namespace {

// Characteristic polynomial coefficients of a 4x4 matrix over F_p, p prime,
// via Faddeev-LeVerrier is fragile mod p; instead test irreducibility by
// checking that no nonzero vector spans an invariant subspace of dim 1 or 2.
bool has_invariant_small_subspace(const Field& F, const Mat4& m) {
  const fe_t q = F.size();
  const fe_t total = q * q * q * q;
  auto apply = [&](fe_t v) {
    fe_t c[4], out = 0;
    for (int i = 0; i < 4; ++i, v /= q) c[i] = v % q;
    for (int i = 3; i >= 0; --i) {
      fe_t s = 0;
      for (int j = 0; j < 4; ++j) s = F.add(s, F.mul(m(i, j), c[j]));
      out = out * q + s;
    }
    return out;
  };
  auto span_contains = [&](fe_t v, fe_t w, fe_t x) {
    for (fe_t a = 0; a < q; ++a)
      for (fe_t b = 0; b < q; ++b) {
        fe_t cv[4], cw[4], cx[4];
        fe_t vv = v, ww = w, xx = x;
        for (int i = 0; i < 4; ++i, vv /= q, ww /= q, xx /= q) {
          cv[i] = vv % q;
          cw[i] = ww % q;
          cx[i] = xx % q;
        }
        bool ok = true;
        for (int i = 0; i < 4; ++i) ok = ok && F.add(F.mul(a, cv[i]), F.mul(b, cw[i])) == cx[i];
        if (ok) return true;
      }
    return false;
  };
  for (fe_t v = 1; v < total; ++v) {
    const fe_t w = apply(v);
    if (span_contains(v, w, apply(w))) return true;
  }
  return false;
}

}  // namespace

TEST(Embeddings, QuarticBlocks) {
  const auto t = Tower::create(3, 1, Flavor::EqualChar);
  const LocalRing& R = t->ring();
  EXPECT_EQ(embed_quartic(*t, t->one(Level::Quartic)), identity<4>());
  std::mt19937 rng(3);
  auto rnd = [&](Level l) {
    TowerElem e = t->zero(l);
    for (int i = 0; i < e.rank(); ++i) e.c[i] = rng() % R.size();
    return e;
  };
  for (int it = 0; it < 100; ++it) {
    const auto x = rnd(Level::Quartic), y = rnd(Level::Quartic);
    EXPECT_EQ(mul(R, embed_quartic(*t, x), embed_quartic(*t, y)), embed_quartic(*t, t->mul(x, y)));
    const Mat4 m = embed_quartic(*t, x);
    EXPECT_EQ(block(m, 0, 0), block(m, 1, 1));
    const auto z = rnd(Level::Quad);
    const Mat2 mz = embed_quad(*t, z);
    EXPECT_EQ(embed_quartic(*t, t->coerce(z, Level::Quartic)), from_blocks(mz, Mat2{}, Mat2{}, mz));
    EXPECT_EQ(det(R, mz), t->norm_quad(z));
    // Closed form ((a0, -a1 N), (a1, a0 + 2a a1)).
    EXPECT_EQ(mz, mat2(z.c[0], R.neg(R.mul(z.c[1], t->norm_hat())), z.c[1],
                       R.add(z.c[0], R.mul(t->two_a_hat(), z.c[1]))));
  }
  const Mat2 s = embed_quad(*t, t->make(Level::Quad, {0, 1, 0, 0}));
  EXPECT_EQ(trace(R, s), t->two_a_hat());
  EXPECT_EQ(det(R, s), t->norm_hat());
}

TEST(Embeddings, RegularEllipticIrreducible) {
  const auto t = Tower::create(3, 1, Flavor::EqualChar);
  const Field& F = t->field();
  int checked = 0;
  for (fe_t a0 = 0; a0 < 3; ++a0)
    for (fe_t a1 = 0; a1 < 3; ++a1)
      for (fe_t a2 = 0; a2 < 3; ++a2)
        for (fe_t a3 = 0; a3 < 3; ++a3) {
          if (a2 == 0 && a3 == 0) {
            EXPECT_THROW(RegularEllipticElement::make(*t, {a0, a1, a2, a3}), std::invalid_argument);
            continue;
          }
          const auto x = RegularEllipticElement::make(*t, {a0, a1, a2, a3});
          EXPECT_NE(elliptic_Y(*t, x), 0u);
          EXPECT_FALSE(has_invariant_small_subspace(F, x.mat));
          ++checked;
        }
  EXPECT_EQ(checked, 72);
}

TEST(Embeddings, TorusReducesOntoFq4) {
  const auto t = Tower::create(3, 1, Flavor::MixedChar);
  std::set<Mat4> images;
  for (re_t c0 = 0; c0 < 9; c0 += 4)
    for (re_t c1 = 0; c1 < 9; ++c1)
      for (re_t c2 = 0; c2 < 9; ++c2)
        for (re_t c3 = 0; c3 < 9; ++c3) {
          const auto u = t->make(Level::Quartic, {c0, c1, c2, c3});
          if (!t->is_unit(u)) continue;
          const Mat4 r = reduce(t->ring(), embed_quartic(*t, u));
          EXPECT_TRUE(contains(*t, {SubgroupTag::T, {}}, r));
          EXPECT_EQ(r, embed_fq4(*t, t->reduce(u)));
        }
}

class ClassTables : public ::testing::TestWithParam<Flavor> {};

TEST_P(ClassTables, Q3) {
  const auto t = Tower::create(3, 1, GetParam());
  const auto ct = ClassTable::build(t);
  EXPECT_EQ(ct->order(), 3888u);
  EXPECT_EQ(Gl2::order_formula(3), 3888u);
  std::uint64_t total = 0;
  int central = 0;
  for (int c = 0; c < ct->num_classes(); ++c) {
    total += ct->size(c);
    EXPECT_EQ(3888 % ct->size(c), 0u);
    if (ct->size(c) == 1) ++central;
    EXPECT_EQ(ct->class_of(ct->rep(c)), c);
    if (c > 0) EXPECT_LT(ct->rep(c - 1), ct->rep(c));
  }
  EXPECT_EQ(total, 3888u);
  EXPECT_EQ(central, 6);
  EXPECT_EQ(ct->num_classes(), 78);
  const Gl2& G = ct->group();
  std::mt19937 rng(11);
  for (int it = 0; it < 500; ++it) {
    const code_t g = ct->elements()[rng() % ct->order()];
    const code_t h = ct->elements()[rng() % ct->order()];
    EXPECT_EQ(ct->class_of(G.conj(g, h)), ct->class_of(h));
  }
  EXPECT_THROW(ct->class_of(0), std::invalid_argument);
}

INSTANTIATE_TEST_SUITE_P(Flavors, ClassTables, ::testing::Values(Flavor::EqualChar, Flavor::MixedChar));

TEST(ClassTable, Budget) {
  const auto t = Tower::create(5, 1, Flavor::EqualChar);
  EXPECT_THROW(ClassTable::build(t, {3}), BudgetExceeded);
}

TEST(Subgroups, PredicateMatchesEnumeration) {
  const auto t = Tower::create(3, 1, Flavor::EqualChar);
  const auto ct = ClassTable::build(t);
  const Gl2& G = ct->group();
  const Mat2 B = mat2(0, 1, 1, 0);  // split semisimple, regular
  const std::pair<SubgroupDescriptor, std::size_t> cases[] = {
      {{SubgroupTag::Z, {}}, 6},
      {{SubgroupTag::J1, {}}, 81},
      {{SubgroupTag::O2quadUnits, {}}, 72},
      {{SubgroupTag::O2quadTimesJ1, {}}, 648},
      {{SubgroupTag::InertiaOfB, B}, 4 * 81},
  };
  for (const auto& [d, n] : cases) {
    const auto members = subgroup_members(G, d);
    EXPECT_EQ(members.size(), n);
    std::size_t by_pred = 0;
    for (code_t g : ct->elements()) by_pred += contains(G, d, g);
    EXPECT_EQ(by_pred, n);
    for (code_t g : members) EXPECT_TRUE(contains(G, d, g));
  }
  EXPECT_THROW(subgroup_members(G, {SubgroupTag::P, {}}), std::invalid_argument);
}

TEST(Subgroups, NAndP) {
  const auto t = Tower::create(3, 1, Flavor::EqualChar);
  std::size_t n = 0;
  for_each_N(*t, [&](const Mat4& m) {
    EXPECT_TRUE(contains(*t, {SubgroupTag::N, {}}, m));
    EXPECT_TRUE(contains(*t, {SubgroupTag::P, {}}, m));
    ++n;
  });
  EXPECT_EQ(n, 6561u);
}

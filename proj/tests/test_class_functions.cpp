#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dgw/abelian.hpp"
#include "dgw/class_function.hpp"
#include "dgw/gl2_table.hpp"

using namespace dgw;

namespace {

struct Fixture {
  TowerPtr t = Tower::create(3, 1, Flavor::EqualChar);
  ClassTablePtr ct = ClassTable::build(t);
};

// Induced character straight from the definition (1/|H|) sum_{y in G, y^-1 g y in H} chi(y^-1 g y).
cplx naive_induced(const ClassTable& ct, const std::vector<code_t>& H, const std::function<cplx(code_t)>& chi,
                   code_t g) {
  const Gl2& G = ct.group();
  cplx s = 0;
  for (code_t y : ct.elements()) {
    const code_t h = G.conj(G.inv(y), g);
    if (std::binary_search(H.begin(), H.end(), h)) s += chi(h);
  }
  return s / static_cast<double>(H.size());
}

}  // namespace

TEST(Abelian, CyclicCharacters) {
  const AbelianGroup c12{12, [](int a, int b) { return (a + b) % 12; }};
  const auto all = all_characters(c12);
  ASSERT_EQ(all.size(), 12u);
  for (const auto& chi : all)
    for (int a = 0; a < 12; ++a)
      for (int b = 0; b < 12; ++b) EXPECT_EQ((chi[a] + chi[b]) % 12, chi[(a + b) % 12]);
  // Extensions of the order-2 character on the subgroup {0, 6}.
  std::vector<std::int64_t> sub(12, -1);
  sub[0] = 0;
  sub[6] = 6;
  const auto ext = extend_characters(c12, sub);
  EXPECT_EQ(ext.size(), 6u);
  for (const auto& chi : ext) EXPECT_EQ(chi[6], 6);
}

TEST(Abelian, NonCyclic) {
  // Z/6 x Z/2 encoded as a + 6 b.
  const AbelianGroup g{12, [](int x, int y) { return (x % 6 + y % 6) % 6 + 6 * ((x / 6 + y / 6) % 2); }};
  const auto all = all_characters(g);
  ASSERT_EQ(all.size(), 12u);
  std::set<std::vector<std::int64_t>> distinct(all.begin(), all.end());
  EXPECT_EQ(distinct.size(), 12u);
}

TEST(ClassFunctions, TrivialAndRegular) {
  Fixture f;
  const auto triv = ClassFunction::trivial(f.ct);
  EXPECT_EQ(multiplicity(triv, triv), 1);
  // Induction from G itself.
  const auto same = induce(f.ct, f.ct->elements(), [](code_t) { return cplx(1.0); });
  EXPECT_TRUE(same.approx_equal(triv));
  // Regular character = Ind from {1}.
  const std::vector<code_t> one{f.ct->group().identity()};
  const auto reg = induce(f.ct, one, [](code_t) { return cplx(1.0); });
  EXPECT_NEAR(reg.dim().real(), 3888.0, kTol);
  EXPECT_EQ(multiplicity(reg, triv), 1);
}

TEST(ClassFunctions, InduceMatchesDefinition) {
  Fixture f;
  const Gl2& G = f.ct->group();
  const auto H = subgroup_members(G, {SubgroupTag::O2quadTimesJ1, {}});
  const LocalRing& R = G.ring();
  // A linear character of O_2^x J^1 through the residue of det.
  auto chi = [&](code_t h) { return unit_root(R.field().log(R.reduce(G.det_of(h))), 2); };
  const auto ind = induce(f.ct, H, chi);
  EXPECT_NEAR(ind.dim().real(), 6.0, kTol);
  for (int c = 0; c < f.ct->num_classes(); c += 7)
    EXPECT_TRUE(near(ind[c], naive_induced(*f.ct, H, chi, f.ct->rep(c))));
}

TEST(ClassFunctions, FrobeniusReciprocity) {
  Fixture f;
  const auto tab = build_table(f.ct);
  const Gl2& G = f.ct->group();
  const auto H = subgroup_members(G, {SubgroupTag::O2quadUnits, {}});
  const Tower& t = G.tower();
  std::mt19937 rng(5);
  for (int it = 0; it < 5; ++it) {
    // Characters of the cyclic-by-p group O_2^x via the residue log and psi.
    const int c = static_cast<int>(rng() % 8);
    const int b = static_cast<int>(rng() % 3);
    auto chi = [&](code_t h) {
      const Mat2 m = G.decode(h);
      const auto u = t.make(Level::Quad, {m(0, 0), m(1, 0), 0, 0});
      const auto tu = t.teichmuller(u);
      const auto k = t.mul(t.inv(tu), u);
      const fe_t a = t.ring().div_varpi(t.ring().sub(k.c[0], 1));
      return unit_root(static_cast<long long>(c) * t.fq2().log(t.reduce(u)), 8) *
             t.ring().psibar(t.field().mul(b, a));
    };
    const auto ind = induce(f.ct, H, chi);
    const auto& sigma = tab.rows[rng() % tab.size()];
    EXPECT_TRUE(near(inner_product(ind, sigma), restricted_inner_product(sigma, H, chi)));
  }
}

TEST(ClassFunctions, DecomposeRegular) {
  Fixture f;
  const auto tab = build_table(f.ct);
  const std::vector<code_t> one{f.ct->group().identity()};
  const auto reg = induce(f.ct, one, [](code_t) { return cplx(1.0); });
  const auto m = decompose(reg, tab.rows);
  for (std::size_t i = 0; i < tab.size(); ++i) EXPECT_EQ(m[i], tab.info[i].dim);
  const auto unit = decompose(tab.rows[3], tab.rows);
  for (std::size_t i = 0; i < tab.size(); ++i) EXPECT_EQ(unit[i], i == 3 ? 1 : 0);
  // Linearity of induction.
  const auto H = subgroup_members(f.ct->group(), {SubgroupTag::J1, {}});
  const auto a = induce(f.ct, H, [](code_t) { return cplx(1.0); });
  const auto b = induce(f.ct, H, [](code_t) { return cplx(2.0); });
  EXPECT_TRUE((a + a).approx_equal(b));
}

TEST(ClassFunctions, ClassConstancySpotCheck) {
  Fixture f;
  const Gl2& G = f.ct->group();
  const auto tab = build_table(f.ct);
  std::mt19937 rng(9);
  const FiniteGl2Characters fin(G.tower());
  for (int it = 0; it < 200; ++it) {
    const code_t g = f.ct->elements()[rng() % f.ct->order()];
    const code_t y = f.ct->elements()[rng() % f.ct->order()];
    const int s = static_cast<int>(rng() % fin.count());
    EXPECT_TRUE(near(fin.value(s, G.reduce(g)), fin.value(s, G.reduce(G.conj(y, g)))));
  }
}

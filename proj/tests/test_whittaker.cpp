#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dgw/gl2_table.hpp"
#include "dgw/whittaker.hpp"

using namespace dgw;

namespace {

struct Case {
  int p;
  Flavor flavor;
};

// One table per tower, shared across tests.
struct Fixture {
  TowerPtr tower;
  ClassTablePtr table;
  CharacterTable chars;
};

const Fixture& fixture(const Case& c) {
  static std::map<std::pair<int, int>, Fixture> cache;
  const auto key = std::make_pair(c.p, static_cast<int>(c.flavor));
  auto it = cache.find(key);
  if (it == cache.end()) {
    Fixture f;
    f.tower = Tower::create(c.p, 1, c.flavor);
    f.table = ClassTable::build(f.tower);
    f.chars = build_table(f.table);
    it = cache.emplace(key, std::move(f)).first;
  }
  return it->second;
}

TowerElem random_unit(const Tower& t, std::mt19937& rng, Level level = Level::Quartic) {
  std::uniform_int_distribution<re_t> d(0, t.ring().size() - 1);
  for (;;) {
    TowerElem u{level, {}};
    const int k = level == Level::Quartic ? 4 : level == Level::Quad ? 2 : 1;
    for (int i = 0; i < k; ++i) u.c[i] = d(rng);
    if (t.is_unit(u)) return u;
  }
}

template <int N>
Mat<N> random_residue(const Field& F, std::mt19937& rng) {
  std::uniform_int_distribution<fe_t> d(0, F.size() - 1);
  Mat<N> m;
  for (auto& e : m.e) e = d(rng);
  return m;
}

Mat2 random_gl2(const LocalRing& R, std::mt19937& rng) {
  std::uniform_int_distribution<re_t> d(0, R.size() - 1);
  for (;;) {
    Mat2 m;
    for (auto& e : m.e) e = d(rng);
    if (R.is_unit(det(R, m))) return m;
  }
}

// Random element of T = E(O'_2^x)(I + varpi M_4).
Mat4 random_T(const Tower& t, std::mt19937& rng) {
  const LocalRing& R = t.ring();
  const Mat4 a = random_residue<4>(t.field(), rng);
  return mul(R, embed_quartic(t, random_unit(t, rng)), add(R, identity<4>(), varpi(R, a)));
}

const RegularEllipticElement& sample_x(const Tower& t) {
  static std::map<const Tower*, RegularEllipticElement> cache;
  auto it = cache.find(&t);
  if (it == cache.end()) it = cache.emplace(&t, RegularEllipticElement::make(t, {1, 0, 1, 1})).first;
  return it->second;
}

class WhittakerTest : public ::testing::TestWithParam<Case> {
 protected:
  void SetUp() override {
    const Fixture& f = fixture(GetParam());
    tower = f.tower;
    table = f.table;
    chars = &f.chars;
  }
  TowerPtr tower;
  ClassTablePtr table;
  const CharacterTable* chars = nullptr;
};

}  // namespace

TEST_P(WhittakerTest, ThetaIsACharacter) {
  std::mt19937 rng(11);
  const PrimitiveCharacter chi(tower, sample_x(*tower), 2);
  for (int i = 0; i < 40; ++i) {
    const TowerElem u = random_unit(*tower, rng), v = random_unit(*tower, rng);
    ASSERT_TRUE(near(chi.theta(tower->mul(u, v)), chi.theta(u) * chi.theta(v)));
  }
  for (re_t z = 0; z < tower->ring().size(); ++z)
    if (tower->ring().is_unit(z))
      EXPECT_TRUE(near(chi.omega(z), chi.theta(tower->make(Level::Quartic, {z, 0, 0, 0}))));
}

TEST_P(WhittakerTest, PhiTildeExtendsPhiX) {
  std::mt19937 rng(12);
  const LocalRing& R = tower->ring();
  const PrimitiveCharacter chi(tower, sample_x(*tower), 1);
  for (int i = 0; i < 40; ++i) {
    const Mat4 a = random_T(*tower, rng), b = random_T(*tower, rng);
    ASSERT_TRUE(chi.in_T(a));
    ASSERT_TRUE(near(chi.phi_tilde(mul(R, a, b)), chi.phi_tilde(a) * chi.phi_tilde(b)));
    const Mat4 k = random_residue<4>(tower->field(), rng);
    ASSERT_TRUE(near(chi.phi_tilde(add(R, identity<4>(), varpi(R, k))), chi.phi_x(k)));
  }
  const TowerElem u = random_unit(*tower, rng);
  EXPECT_TRUE(near(chi.phi_tilde(embed_quartic(*tower, u)), chi.theta(u)));
  Mat4 off = identity<4>();
  off(0, 3) = 1;
  EXPECT_FALSE(chi.in_T(off));
  EXPECT_THROW(chi.phi_tilde(off), std::domain_error);
}

TEST_P(WhittakerTest, DimensionsAndIntersections) {
  const int q = tower->q();
  const CosetGeometry geo(tower, sample_x(*tower));
  const WhittakerEngine eng(table, geo, 1);
  long long total = 0;
  for (const CosetRep& d : geo.omega0()) {
    EXPECT_EQ(eng.dim_pi_delta(d), eng.dim_by_count(d));
    total += eng.dim_pi_delta(d);
    if (d.nonvanishing()) EXPECT_EQ(eng.residue_intersection_order(d), d.is_identity() ? q * q - 1 : q - 1);
  }
  EXPECT_EQ(total, 1LL * q * q * q * (q - 1));
}

TEST_P(WhittakerTest, PiecesAreCharactersWithOneJ1Class) {
  const Field& F = tower->field();
  const auto reps = all_class_reps(F);
  const CosetGeometry geo(tower, sample_x(*tower));
  const WhittakerEngine eng(table, geo, 1);
  const auto report = eng.assemble();
  std::vector<std::vector<long long>> profiles;
  for (const auto& p : report.pieces) {
    if (!p.delta.nonvanishing()) {
      EXPECT_LT(p.chi.distance(ClassFunction::zero(table)), kTol);
      continue;
    }
    EXPECT_TRUE(near(p.chi.dim(), static_cast<double>(p.dim)));
    EXPECT_NO_THROW(decompose(p.chi, chars->rows));
    const auto prof = j1_profile(p.chi);
    const long long want = static_cast<long long>(centralizer_order(tower->q(), classify(F, p.delta.calB))) /
                           p.residue_intersection;
    for (std::size_t b = 0; b < reps.size(); ++b)
      EXPECT_EQ(prof[b], residue_conjugate(F, reps[b], p.delta.calB) ? want : 0) << to_string(reps[b]);
    profiles.push_back(prof);
  }
  // Distinct pieces share no phi_B.
  for (std::size_t i = 0; i < profiles.size(); ++i)
    for (std::size_t j = i + 1; j < profiles.size(); ++j)
      for (std::size_t b = 0; b < reps.size(); ++b) EXPECT_FALSE(profiles[i][b] > 0 && profiles[j][b] > 0);
  // Central values.
  const Gl2& G = table->group();
  const LocalRing& R = tower->ring();
  const double dim = report.total.dim().real();
  for (re_t z = 1; z < R.size(); ++z)
    if (R.is_unit(z))
      EXPECT_TRUE(near(report.total.at(G.encode(mat2(z, 0, 0, z))), eng.character().omega(z) * dim));
}

TEST_P(WhittakerTest, IdentityPieceInducedMatchesCases) {
  const CosetGeometry geo(tower, sample_x(*tower));
  const WhittakerEngine eng(table, geo, 2);
  const int q = tower->q();
  EXPECT_EQ(eng.normalizer().size(), static_cast<std::size_t>(2 * (q * q - 1) * q * q * q * q));
  EXPECT_LT(eng.identity_piece_induced().distance(eng.identity_piece_by_cases()), kTol);
}

TEST_P(WhittakerTest, ProjectionSubSums) {
  std::mt19937 rng(13);
  const Field& F = tower->field();
  const LocalRing& R = tower->ring();
  const int q = tower->q();
  const double q4 = std::pow(q, 4), q8 = q4 * q4;
  const CosetGeometry geo(tower, sample_x(*tower));
  const PrimitiveCharacter chi(tower, sample_x(*tower), 1);
  for (const CosetRep& d : geo.omega0()) {
    if (!d.nonvanishing()) continue;
    for (int i = 0; i < 20; ++i) {
      const Mat2 Rm = random_gl2(R, rng);
      const Mat2 S_good = mul(R, Rm, d.L);
      // x_sum: q^4 exactly on S = R L mod varpi.
      EXPECT_TRUE(near(SubSums::x_sum(chi, d, S_good, Rm), q4));
      const Mat2 S_other = random_gl2(R, rng);
      const bool aligned = reduce(R, S_other) == reduce(R, S_good);
      EXPECT_TRUE(near(SubSums::x_sum(chi, d, S_other, Rm), aligned ? q4 : 0.0));
      if (i < 4) {
        const Mat2 A = random_residue<2>(F, rng);
        EXPECT_TRUE(near(SubSums::q_sum(chi, d, S_good, Rm, A), q8));
      }
      const Mat2 A = random_residue<2>(F, rng);
      const Mat2 rb = reduce(R, Rm);
      const cplx want = R.psibar(trace(F, mul(F, conjugate(F, rb, d.calB), A)));
      EXPECT_TRUE(near(SubSums::diagonal_value(chi, d, S_good, Rm, A), want));
    }
  }
}

TEST_P(WhittakerTest, NormalizerSums) {
  std::mt19937 rng(14);
  const Gl2& G = table->group();
  const LocalRing& R = tower->ring();
  const int q = tower->q();
  const CosetGeometry geo(tower, sample_x(*tower));
  const WhittakerEngine eng(table, geo, 1);
  const PrimitiveCharacter& chi = eng.character();
  const auto norm = eng.normalizer();
  const auto oj = subgroup_members(G, {SubgroupTag::O2quadTimesJ1, {}});
  const SubgroupDescriptor ojd{SubgroupTag::O2quadTimesJ1, {}};
  std::uniform_int_distribution<std::size_t> pick_n(0, norm.size() - 1), pick_o(0, oj.size() - 1);
  const double q12 = std::pow(q, 12);
  // The J(g) sum is q^12 when S = R X3 mod varpi and vanishes for the other S with S R^{-1} in O_2^x J^1.
  const Mat2 X3 = geo.x().X3;
  for (int i = 0; i < 4; ++i) {
    const Mat2 Rm = G.decode(norm[pick_n(rng)]);
    const Mat2 h = G.decode(oj[pick_o(rng)]);
    const Mat2 S = i % 2 == 0 ? mul(R, mul(R, Rm, X3), add(R, identity<2>(), varpi(R, reduce(R, h)))) : mul(R, h, Rm);
    ASSERT_TRUE(contains(G, ojd, G.encode(mul(R, S, inverse(R, Rm)))));
    const bool aligned = reduce(R, S) == reduce(R, mul(R, Rm, X3));
    const Mat2 g = G.decode(oj[pick_o(rng)]);
    const cplx v = SubSums::jg_sum(chi, g, S, Rm);
    EXPECT_TRUE(near(v, aligned ? q12 : 0.0)) << v << " aligned=" << aligned;
  }
  for (int i = 0; i < 30; ++i) {
    const Mat2 Rm = G.decode(norm[pick_n(rng)]);
    const Mat2 S = mul(R, G.decode(oj[pick_o(rng)]), Rm);
    const Mat2 g = G.decode(oj[pick_o(rng)]);
    const Mat2 a = conjugate(R, inverse(R, S), g), b = conjugate(R, inverse(R, Rm), g);
    EXPECT_TRUE(near(chi.phi_tilde(from_blocks(a, Mat2{}, Mat2{}, b)), chi.phi_tilde(from_blocks(b, Mat2{}, Mat2{}, b))));
  }
}

INSTANTIATE_TEST_SUITE_P(Towers, WhittakerTest,
                         ::testing::Values(Case{3, Flavor::EqualChar}, Case{3, Flavor::MixedChar}),
                         [](const auto& info) {
                           return std::string("q3") + (info.param.flavor == Flavor::EqualChar ? "_eq" : "_witt");
                         });

TEST(Whittaker, MackeyOracleBudget) {
  const auto t = Tower::create(5, 1, Flavor::EqualChar);
  const CosetGeometry geo(t, RegularEllipticElement::make(*t, {1, 0, 1, 1}));
  const PrimitiveCharacter chi(t, geo.x(), 1);
  EXPECT_THROW(MackeyOracle(chi, geo.rep(0, 0)), BudgetExceeded);
}

TEST(Whittaker, MackeyOracleAgreesAtQ3) {
  const Fixture& f = fixture({3, Flavor::EqualChar});
  const Gl2& G = f.table->group();
  const CosetGeometry geo(f.tower, sample_x(*f.tower));
  const WhittakerEngine eng(f.table, geo, 1);
  const auto oj = subgroup_members(G, {SubgroupTag::O2quadTimesJ1, {}});
  for (const CosetRep& d : geo.omega0()) {
    if (!d.nonvanishing()) continue;
    const MackeyOracle mo(eng.character(), d);
    EXPECT_EQ(mo.residue_intersection_order(), eng.residue_intersection_order(d));
    const ClassFunction full = eng.theta_pi_delta_full(d);
    std::vector<code_t> sample{G.encode(mat2(2, 3, 0, 2)), oj[oj.size() / 3], G.encode(mat2(0, 1, 1, 0))};
    if (!d.is_identity()) sample.resize(2);
    for (code_t c : sample) EXPECT_TRUE(near(mo.value(G.decode(c)), full.at(c))) << to_string(G.decode(c));
  }
}

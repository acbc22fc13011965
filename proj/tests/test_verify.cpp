#include <gtest/gtest.h>

#include <algorithm>

#include "dgw/verify.hpp"

using namespace dgw;

namespace {

const Workbench& bench(Flavor f) {
  static const Workbench eq(3, Flavor::EqualChar);
  static const Workbench witt(3, Flavor::MixedChar);
  return f == Flavor::EqualChar ? eq : witt;
}

std::vector<RegularEllipticElement> all_elliptic(const Tower& t) {
  std::vector<RegularEllipticElement> out;
  const fe_t q = t.field().size();
  for (fe_t c = 0; c < q * q * q * q; ++c) {
    const std::array<fe_t, 4> a{c % q, (c / q) % q, (c / (q * q)) % q, c / (q * q * q)};
    if (a[2] != 0 || a[3] != 0) out.push_back(RegularEllipticElement::make(t, a));
  }
  return out;
}

}  // namespace

TEST(Verify, InducedSideDimensionAndConjugation) {
  const Workbench& wb = bench(Flavor::EqualChar);
  const PrimitiveCharacter chi(wb.tower(), RegularEllipticElement::make(*wb.tower(), {1, 0, 1, 1}), 2);
  const ClassFunction Pi = theta_Pi(wb.classes(), chi);
  EXPECT_TRUE(near(Pi.dim(), 54.0));
  EXPECT_LT(theta_Pi_conjugated(wb.classes(), chi, mat2(1, 1, 0, 1)).distance(Pi), kTol);
  EXPECT_LT(theta_Pi_conjugated(wb.classes(), chi, mat2(2, 3, 1, 1)).distance(Pi), kTol);
}

TEST(Verify, RestrictionFamilyEqualsPrediction) {
  const Workbench& wb = bench(Flavor::EqualChar);
  const Tower& t = *wb.tower();
  for (const auto& x : all_elliptic(t)) {
    const auto fam = restriction_family(t, x);
    EXPECT_EQ(fam, predicted_b_classes(t, x));
    EXPECT_EQ(static_cast<int>(fam.size()), t.q());
  }
}

TEST(Verify, FullReportAtQ3) {
  const Workbench& wb = bench(Flavor::EqualChar);
  VerifyOptions opt;
  const auto r = verify(wb, {0, 1, 1, 0}, 5, opt);
  EXPECT_TRUE(r.verdict);
  for (const auto& c : r.checks) EXPECT_TRUE(c.ok) << c.name << ": " << c.detail;
  EXPECT_EQ(r.mult_pi, r.mult_Pi);
  EXPECT_LT(r.max_residual, kTol);
  EXPECT_TRUE(r.structure_pi.block_irreducible);
  const auto j = r.to_json();
  EXPECT_EQ(j["schema_version"], kReportSchemaVersion);
  EXPECT_EQ(j["params"]["flavor"], "eq");
  EXPECT_EQ(j["multiplicities"]["per_delta"].size(), 4u);
}

TEST(Verify, ScalarX1GivesReducibleBlock) {
  const auto r = verify(bench(Flavor::EqualChar), {0, 0, 1, 0}, 1, VerifyOptions{});
  EXPECT_TRUE(r.verdict);
  EXPECT_FALSE(r.structure_pi.block_irreducible);
  EXPECT_GT(r.structure_pi.block_constituents, 1);
}

TEST(Verify, StructureReportFlagsCorruptedDecomposition) {
  const Workbench& wb = bench(Flavor::EqualChar);
  const auto x = RegularEllipticElement::make(*wb.tower(), {1, 2, 0, 1});
  const CosetGeometry geo(wb.tower(), x);
  const WhittakerEngine eng(wb.classes(), geo, 1);
  const auto r = verify(wb, x.a, 1, VerifyOptions{});
  ASSERT_TRUE(r.structure_pi.ok());
  auto mult = r.mult_pi;
  const auto zero = std::find(mult.begin(), mult.end(), 0LL);
  ASSERT_NE(zero, mult.end());
  *zero = 1;
  const auto bad = structure_report(wb.table(), mult, eng.character(), eng.theta_pi_delta_full(geo.rep(0, 0)));
  EXPECT_FALSE(bad.ok());
  mult = r.mult_pi;
  *std::find(mult.begin(), mult.end(), 1LL) = 2;
  EXPECT_FALSE(structure_report(wb.table(), mult, eng.character(), eng.theta_pi_delta_full(geo.rep(0, 0))).ok());
}

TEST(Verify, FlavorsAgreeOnIntegerOutputs) {
  for (const auto& x : x_sweep()) {
    const auto a = verify(bench(Flavor::EqualChar), x, 2, VerifyOptions{});
    const auto b = verify(bench(Flavor::MixedChar), x, 2, VerifyOptions{});
    EXPECT_TRUE(a.verdict && b.verdict);
    EXPECT_EQ(integer_fingerprint(a), integer_fingerprint(b));
    EXPECT_EQ(canonical_profile(a), canonical_profile(b));
  }
}

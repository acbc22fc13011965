#include <gtest/gtest.h>

#include <chrono>

#include "dgw/gl2_table.hpp"

using namespace dgw;

namespace {

// Conjugacy classes of GL_2(F_q) by brute force.
std::vector<std::vector<Mat2>> finite_classes(const Field& F) {
  std::vector<Mat2> all;
  for (fe_t c = 0; c < F.size() * F.size() * F.size() * F.size(); ++c) {
    Mat2 m;
    fe_t v = c;
    for (int i = 0; i < 4; ++i, v /= F.size()) m.e[i] = v % F.size();
    if (det(F, m) != 0) all.push_back(m);
  }
  std::vector<std::vector<Mat2>> classes;
  std::vector<char> done(all.size(), 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (done[i]) continue;
    std::vector<Mat2> cls;
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (done[j]) continue;
      for (const Mat2& y : all)
        if (mul(F, y, all[i]) == mul(F, all[j], y)) {
          cls.push_back(all[j]);
          done[j] = 1;
          break;
        }
    }
    classes.push_back(cls);
  }
  return classes;
}

}  // namespace

class FiniteTable : public ::testing::TestWithParam<int> {};

TEST_P(FiniteTable, Orthonormal) {
  const auto t = Tower::create(GetParam(), 1, Flavor::EqualChar);
  const Field& F = t->field();
  const FiniteGl2Characters fin(*t);
  const auto classes = finite_classes(F);
  const int q = F.q();
  ASSERT_EQ(static_cast<int>(classes.size()), q * q - 1);
  ASSERT_EQ(fin.count(), q * q - 1);
  const double order = static_cast<double>((q * q - 1) * (q * q - q));
  long long sum_sq = 0;
  for (int i = 0; i < fin.count(); ++i) {
    sum_sq += 1LL * fin.dim(i) * fin.dim(i);
    EXPECT_TRUE(near(fin.value(i, identity<2>()), static_cast<double>(fin.dim(i))));
    for (int j = 0; j < fin.count(); ++j) {
      cplx s = 0;
      for (const auto& c : classes)
        s += static_cast<double>(c.size()) * fin.value(i, c[0]) * std::conj(fin.value(j, c[0]));
      EXPECT_TRUE(near(s / order, i == j ? 1.0 : 0.0)) << fin.name(i) << " vs " << fin.name(j);
    }
  }
  EXPECT_EQ(sum_sq, (q * q - 1) * (q * q - q));
}

INSTANTIATE_TEST_SUITE_P(SmallQ, FiniteTable, ::testing::Values(3, 5));

TEST(Inertia, BruteForceMatchesDescriptor) {
  const auto t = Tower::create(3, 1, Flavor::EqualChar);
  const auto ct = ClassTable::build(t);
  const Gl2& G = ct->group();
  const Field& F = t->field();
  const LocalRing& R = t->ring();
  for (const Mat2& B : regular_class_reps(F)) {
    const auto d = inertia_group(F, B);
    std::size_t count = 0;
    for (code_t g : ct->elements()) {
      // g stabilises phi_B iff phi_B(g^-1 k g) = phi_B(k) for all k in J^1.
      bool stab = true;
      for (fe_t a = 0; a < 81 && stab; ++a) {
        Mat2 A;
        fe_t v = a;
        for (int i = 0; i < 4; ++i, v /= 3) A.e[i] = v % 3;
        const Mat2 k = add(R, identity<2>(), varpi(R, A));
        const Mat2 kc = mul(R, mul(R, inverse(R, G.decode(g)), k), G.decode(g));
        stab = near(phi_B(R, B, log_congruence(R, kc)), phi_B(R, B, A));
      }
      EXPECT_EQ(stab, contains(G, d, g));
      count += stab;
    }
    EXPECT_EQ(count, centralizer_order(3, classify(F, B)) * 81);
  }
  EXPECT_THROW(inertia_group(F, identity<2>()), std::invalid_argument);
}

class FullTable : public ::testing::TestWithParam<Flavor> {};

TEST_P(FullTable, CompleteAndOrthonormalAtQ3) {
  const auto t = Tower::create(3, 1, GetParam());
  const auto ct = ClassTable::build(t);
  const auto tab = build_table(ct);
  EXPECT_EQ(static_cast<int>(tab.size()), ct->num_classes());
  EXPECT_EQ(tab.n_inflated, 24);
  EXPECT_EQ(tab.n_regular, 54);
  EXPECT_LT(gram_defect(tab), kTol);
  const auto counts = regular_row_counts(tab);
  ASSERT_EQ(counts.size(), 3u);
  const int expect_count[] = {4, 3, 2};
  const int expect_dim[] = {6, 8, 12};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(counts[i].min_count, expect_count[i]);
    EXPECT_EQ(counts[i].max_count, expect_count[i]);
    EXPECT_EQ(counts[i].dim, expect_dim[i]);
  }
  for (std::size_t i = 0; i < tab.size(); ++i) {
    const MatType ty = type_of(tab.rows[i]);
    EXPECT_EQ(ty, tab.info[i].regular ? tab.info[i].type : MatType::Scalar);
    if (!tab.info[i].regular) continue;
    // Restriction to J^1: the orbit of B, each member with the same multiplicity.
    const auto prof = j1_profile(tab.rows[i]);
    const auto reps = all_class_reps(t->field());
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const bool same = residue_conjugate(t->field(), reps[k], tab.info[i].B);
      EXPECT_EQ(prof[k] != 0, same);
      if (same) EXPECT_EQ(prof[k] * static_cast<long long>(1), tab.info[i].dim * static_cast<long long>(centralizer_order(3, tab.info[i].type)) / 48);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Flavors, FullTable, ::testing::Values(Flavor::EqualChar, Flavor::MixedChar));

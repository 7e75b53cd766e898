#include <gtest/gtest.h>

#include <random>

#include "instances.hpp"

using namespace rrb;
using namespace fixtures;

TEST(ADigits, Examples) {
  EXPECT_EQ(a_value(3, 2, 5, 1), 7);
  EXPECT_EQ(a_digits(3, 2, 5, 1), (std::vector<int>{1, 2}));
  // w = b: every digit is p - 1
  for (auto [p, n, b] : std::vector<std::tuple<int, int, int>>{{2, 2, 3}, {3, 2, 5}, {2, 3, 11}}) {
    const auto d = a_digits(p, n, b, b);
    for (int x : d) EXPECT_EQ(x, p - 1);
  }
}

TEST(ADigits, SolvesCongruence) {
  for (auto [p, n, b] : std::vector<std::tuple<int, int, int>>{{2, 2, 3}, {3, 2, 5}, {2, 3, 11}, {5, 2, 7}}) {
    const long long N = ipow(p, n);
    for (long long w = -2 * N; w < 2 * N; ++w) {
      const long long a = a_value(p, n, b, w);
      ASSERT_GE(a, 0);
      ASSERT_LT(a, N);
      EXPECT_EQ(mod_floor(w + b * a, N), 0) << w;
      long long s = 0;
      const auto d = a_digits(p, n, b, w);
      for (int i = 0; i < n; ++i) s += d[i] * ipow(p, i);
      EXPECT_EQ(s, a);
    }
  }
}

TEST(Scaffold, LevelsChosenByHypothesis) {
  EXPECT_EQ(build_scaffold(Extension::build(I1())).level, ScaffoldLevel::Full);
  EXPECT_EQ(build_scaffold(Extension::build(I2())).level, ScaffoldLevel::K1);
  EXPECT_EQ(build_scaffold(Extension::build(I3())).level, ScaffoldLevel::K1);
  EXPECT_EQ(build_scaffold(Extension::build(N3())).level, ScaffoldLevel::K1);
}

TEST(Scaffold, FullLevelRefusedOnI2) {
  auto e = Extension::build(I2());
  try {
    build_scaffold(e, ScaffoldLevel::Full);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::HypothesisNotSatisfied);
  }
}

TEST(Scaffold, NeitherHypothesis) {
  // e_3 p >= b
  auto d = make(2, 3, 3, 5, "t^-5", {"1", "g", "g^2"}, {"0", "0", "t^-3"});
  auto e = Extension::build(d);
  EXPECT_THROW(build_scaffold(e), Error);
  EXPECT_NO_THROW(BreaksContext::make(e));
}

TEST(Scaffold, ChecksPassOnInstances) {
  for (const auto& d : {I1(), I2(), I3(), N3()}) {
    const auto S = build_scaffold(Extension::build(d));
    const auto rep = check_scaffold(S);
    EXPECT_TRUE(rep.passed()) << rep.summary();
    EXPECT_TRUE(rep.non_unit_u.empty());
  }
}

TEST(Scaffold, ChecksPassOnRandomR1) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const int p = trial % 2 ? 3 : 2;
    const auto d = random_as_data(rng, p, 2, 2, DataFamily::R1, p == 2 ? 11 : 8);
    const auto rep = check_scaffold(build_scaffold(Extension::build(d)));
    EXPECT_TRUE(rep.passed()) << rep.summary();
  }
}

TEST(Scaffold, CorruptedPsiIsDetected) {
  auto S = build_scaffold(Extension::build(I1()));
  const GroupAlgebra& R = S.ext->R();
  S.Psi[1] = S.Psi[1] + GAElement::u(R, 0);
  const auto rep = check_scaffold(S);
  EXPECT_FALSE(rep.passed());
  const Check* c = rep.find("(iv) Psi_i(lambda_w) = lambda_{w+p^(n-i)b} or 0");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
  EXPECT_FALSE(c->witness.empty());
}

TEST(Scaffold, PsiCompositeExamples) {
  const auto S = build_scaffold(Extension::build(I1()));
  const GroupAlgebra& R = S.ext->R();
  EXPECT_EQ(psi_composite(S, 0), GAElement::one(R));
  EXPECT_EQ(psi_composite(S, 1), S.Psi[1]);
  EXPECT_EQ(psi_composite(S, 2), S.Psi[0]);
  EXPECT_EQ(psi_composite(S, 3), S.Psi[1] * S.Psi[0]);
  EXPECT_THROW(psi_composite(S, 4), Error);
  for (const auto& P : S.Psi) EXPECT_EQ(P.aug_degree(), 1);
}

TEST(Scaffold, PsiCompositeShiftI1) {
  const auto S = build_scaffold(Extension::build(I1()));
  const Extension& e = *S.ext;
  const TowerElement rho = vc_element(S);
  const int vr = e.val_L(rho);
  for (long long t = 0; t < S.N; ++t) EXPECT_EQ(e.val_L(e.apply(psi_composite(S, t), rho)) - vr, 3 * t);
}

TEST(Scaffold, VcElementValuation) {
  EXPECT_EQ(Extension::build(I1())->val_L(vc_element(build_scaffold(Extension::build(I1())))), -9);
  auto e3 = Extension::build(I3());
  EXPECT_EQ(e3->val_L(vc_element(build_scaffold(e3))), -40);
}

TEST(Scaffold, LambdaValuations) {
  for (const auto& d : {I1(), I3()}) {
    const auto S = build_scaffold(Extension::build(d));
    for (long long w = -S.N; w < 2 * S.N; ++w) EXPECT_EQ(S.ext->val_L(S.lambda(w)), w);
  }
}

TEST(Scaffold, BackendAgreement) {
  for (const auto& d : {I1(), I3()}) {
    const auto C = BreaksContext::make(Extension::build(d));
    const Check c = backend_check(C, 200, 5);
    EXPECT_TRUE(c.passed) << c.witness;
  }
}

TEST(Scaffold, MooreShift) {
  // normalized cofactors: t_ii = 1, t_ij != 0
  const auto S = build_scaffold(Extension::build(N3()));
  for (int i = 0; i < S.n; ++i) {
    EXPECT_TRUE(S.t[i][i].is_one());
    for (int j = 0; j < i; ++j) EXPECT_FALSE(S.t[i][j].is_zero());
  }
}

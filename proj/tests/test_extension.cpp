#include <gtest/gtest.h>

#include <random>

#include "instances.hpp"

using namespace rrb;
using namespace fixtures;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

}  // namespace

TEST(ValidateData, AcceptsI1) {
  const ASData d = validate_data(I1());
  EXPECT_EQ(d.e, (std::vector<int>{kNegInf, kNegInf}));
  EXPECT_EQ(d.different(), 12);
}

TEST(ValidateData, Rejections) {
  EXPECT_EQ(kind_of([] { validate_data(make(2, 2, 2, 3, "t^-3", {"1", "1"}, {"0", "0"})); }), ErrorKind::DependentOmega);
  EXPECT_EQ(kind_of([] { validate_data(make(2, 2, 2, 4, "t^-4", {"1", "g"}, {"0", "0"})); }), ErrorKind::InvalidData);
  EXPECT_EQ(kind_of([] { validate_data(make(2, 2, 2, 3, "t^-5", {"1", "g"}, {"0", "0"})); }), ErrorKind::InvalidData);
  EXPECT_EQ(kind_of([] { validate_data(make(2, 1, 2, 3, "t^-3", {"1", "1"}, {"0", "0"})); }), ErrorKind::DependentOmega);
  EXPECT_EQ(kind_of([] { validate_data(make(2, 2, 2, 3, "t^-3", {"1", "g"}, {"0", "t^-5"})); }), ErrorKind::InvalidData);
}

TEST(ValidateData, ReducesEps) {
  const ASData d = validate_data(make(2, 2, 2, 3, "t^-3", {"1", "g"}, {"0", "t^-4"}));
  EXPECT_EQ(d.eps[1], parse_laurent(*d.field, "t^-1"));
  EXPECT_EQ(d.e[1], 1);
}

TEST(Rebase, NormalizesFirstRow) {
  const ASData d = validate_data(make(3, 2, 2, 5, "t^-5", {"g", "1"}, {"t^-1", "t^-2"}));
  const ASData r = rebase(d);
  EXPECT_TRUE(r.is_normalized_basis());
  // alpha_i unchanged
  for (int i = 0; i < 2; ++i) EXPECT_EQ(as_reduce_K(r.alpha(i) - d.alpha(i)).reduced, LaurentSeries::zero(*d.field));
}

TEST(GaloisAction, Examples) {
  auto e = Extension::build(I1());
  const TowerElement x1 = TowerElement::x(*e, 0);
  const GroupAlgebra& R = e->R();
  EXPECT_EQ(e->apply(GAElement::one(R), x1 * x1), x1 * x1);
  EXPECT_EQ(e->apply(GAElement::u(R, 0), x1), TowerElement::one(*e));
  EXPECT_EQ(e->apply(GAElement::u(R, 1), x1), TowerElement::zero(*e));
  EXPECT_EQ(e->apply(GAElement::u(R, 0), x1 * x1), TowerElement::one(*e));
}

TEST(GaloisAction, RingActionAndOrder) {
  std::mt19937_64 rng(1);
  for (auto d : {I1(), I3(), N3()}) {
    auto e = Extension::build(d);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> g(e->n());
      for (auto& x : g) x = static_cast<int>(rng() % e->p());
      const auto y = random_tower_element(*e, rng, -2, 2), z = random_tower_element(*e, rng, -2, 2);
      EXPECT_EQ(e->apply_group(g, y * z), e->apply_group(g, y) * e->apply_group(g, z));
      TowerElement w = y;
      for (int i = 0; i < e->p(); ++i) w = e->apply_group(g, w);
      EXPECT_EQ(w, y);
    }
  }
}

TEST(Norm, DegreeOneExample) {
  auto e = Extension::build(make(2, 1, 1, 1, "t^-1", {"1"}, {"0"}));
  EXPECT_EQ(e->norm(TowerElement::x(*e, 0)), parse_laurent(e->F(), "t^-1"));
}

TEST(Valuation, Examples) {
  auto e = Extension::build(I1());
  EXPECT_EQ(e->val_L(K(e, "t")), 4);
  EXPECT_EQ(e->val_L(TowerElement::x(*e, 0)), -6);
  EXPECT_EQ(e->val_L(construct_Y(*e).Y), -3);
  EXPECT_EQ(e->val_L(TowerElement::zero(*e)), kInf);
}

TEST(Valuation, Laws) {
  std::mt19937_64 rng(2);
  for (auto d : {I1(), I2(), I3()}) {
    auto e = Extension::build(d);
    for (int trial = 0; trial < 20; ++trial) {
      const auto y = random_tower_element(*e, rng, -2, 2), z = random_tower_element(*e, rng, -2, 2);
      if (y.is_zero() || z.is_zero()) continue;
      EXPECT_EQ(e->val_L(y * z), e->val_L(y) + e->val_L(z));
      if (!(y + z).is_zero()) EXPECT_GE(e->val_L(y + z), std::min(e->val_L(y), e->val_L(z)));
    }
    EXPECT_EQ(e->val_L(K(e, "t^-2 + t")), -2 * e->degree());
  }
}

TEST(Trace, FullGroupKillsK) {
  auto e = Extension::build(I3());
  std::vector<std::vector<int>> gens = {{1, 0}, {0, 1}};
  EXPECT_TRUE(e->trace_sub(K(e, "t^-1 + 2"), gens).is_zero());
}

TEST(Trace, I1SubgroupExample) {
  auto e = Extension::build(I1());
  const auto C = BreaksContext::make(e);
  const TowerElement rho = C.canonical_rho().shifted(-1);
  ASSERT_EQ(e->val_L(rho), -13);
  const TowerElement tr = e->trace_sub(rho, {{0, 1}});
  EXPECT_EQ(e->apply_group({0, 1}, tr), tr);
  EXPECT_EQ(e->val_L(tr) / 2, -5);
}

TEST(Trace, IndexPSubgroupsAndIdeals) {
  for (auto d : {I1(), I2(), I3(), N3()}) {
    const auto C = BreaksContext::make(Extension::build(d));
    const auto a = trace_valuation_check(C), b = trace_ideal_check(C);
    EXPECT_TRUE(a.passed) << a.witness;
    EXPECT_TRUE(b.passed) << b.witness;
  }
}

TEST(LeibnizExpansion, RandomElements) {
  for (auto d : {I1(), I3(), N3()}) {
    const auto c = leibniz_check(*Extension::build(d), 15, 3);
    EXPECT_TRUE(c.passed) << c.witness;
  }
}

TEST(ConstructY, I1) {
  auto e = Extension::build(I1());
  const auto Y = construct_Y(*e);
  const FieldElement g = FieldElement::generator(e->F());
  EXPECT_EQ(Y.t[0], g + FieldElement::one(e->F()));
  EXPECT_TRUE(Y.t[1].is_one());
  EXPECT_EQ(e->apply(GAElement::u(e->R(), 0), Y.Y), TowerElement::from_K(*e, LaurentSeries::constant(Y.t[0])));
  auto e1 = Extension::build(make(3, 1, 1, 2, "t^-2", {"1"}, {"0"}));
  EXPECT_EQ(construct_Y(*e1).Y, TowerElement::x(*e1, 0));
}

TEST(ConstructY, RandomR1Data) {
  std::mt19937_64 rng(4);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    for (int i = 0; i < 3; ++i) {
      auto e = Extension::build(random_as_data(rng, p, n, n, DataFamily::R1, 12));
      for (const auto& c : y_checks(*e)) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
    }
  }
}

TEST(Lift, SpecialCases) {
  auto e = Extension::build(make(3, 2, 2, 5, "t^-5", {"1", "g"}, {"0", "g"}));
  const K1Lift l = lift_to_K1(*e);
  EXPECT_EQ(l.zeta[1], TowerElement::one(*e));
  EXPECT_EQ(l.E[1], K(e, "g"));
  auto e0 = Extension::build(I1());
  const K1Lift l0 = lift_to_K1(*e0);
  EXPECT_TRUE(l0.zeta[1].is_zero());
  EXPECT_TRUE(l0.E[1].is_zero());
}

TEST(Lift, I2Example) {
  auto e = Extension::build(I2());
  const K1Lift l = lift_to_K1(*e);
  const TowerElement x1 = TowerElement::x(*e, 0);
  EXPECT_EQ(l.zeta[1], x1.scaled(L(e, "t")));
  EXPECT_EQ(l.E[1], x1.scaled(L(e, "t + t^2")));
  EXPECT_EQ(val_K1(*e, l.zeta[1]), -3);
  EXPECT_EQ(val_K1(*e, l.E[1]), -3);
  const FieldElement w = e->data().omega[1];
  EXPECT_EQ(val_K1(*e, l.E[1] - x1.scaled(w.frobenius() - w).scaled(w.frobenius() - w)), -5);
}

TEST(Lift, RandomDataSatisfiesEquation) {
  std::mt19937_64 rng(6);
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 3}}) {
    for (int i = 0; i < 4; ++i) {
      auto e = Extension::build(random_as_data(rng, p, n, n, DataFamily::Any, 10));
      const ASData& d = e->data();
      const K1Lift l = lift_to_K1(*e);
      for (int j = 1; j < n; ++j) {
        // X^p - X = Omega^(p^(n-1)) x_1 + E
        const TowerElement X = l.X[j];
        const TowerElement rhs = TowerElement::x(*e, 0).scaled(l.Omega[j].frobenius(n - 1)) + l.E[j];
        EXPECT_EQ(X.pow(p) - X, rhs);
        EXPECT_TRUE(in_K1(*e, l.zeta[j]));
        if (d.e[j] > 0) {
          EXPECT_EQ(val_K1(*e, l.zeta[j]), -d.e[j]);
          EXPECT_EQ(val_K1(*e, l.E[j]), -d.e[j]);
        }
      }
    }
  }
}

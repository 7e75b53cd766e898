#include <gtest/gtest.h>

#include <random>

#include "instances.hpp"

using namespace rrb;
using namespace fixtures;

namespace {

// min over basis elements of v_L(g(x)) - v_L(x), straight from the norm oracle.
long long hat_v_oracle(const BreaksContext& C, const GAElement& g) {
  const Extension& e = C.E();
  long long best = kInf;
  for (const auto& x : C.reps) {
    const TowerElement y = e.apply(g, x);
    if (!y.is_zero()) best = std::min<long long>(best, e.val_L(y) - e.val_L(x));
  }
  return best;
}

// Every element of g + A^k.
std::vector<GAElement> coset_elements(const GAElement& fixed, int k) {
  const GroupAlgebra& R = fixed.algebra();
  const GaloisField& f = R.field();
  std::vector<int> free;
  for (int c = 0; c < R.size(); ++c)
    if (R.degree(c) >= k) free.push_back(c);
  std::vector<GAElement> out;
  const long long total = ipow(f.q(), static_cast<int>(free.size()));
  for (long long idx = 0; idx < total; ++idx) {
    GAElement g = fixed.truncated(k);
    long long t = idx;
    for (int c : free) {
      g.set(c, static_cast<FRep>(t % f.q()));
      t /= f.q();
    }
    out.push_back(g);
  }
  return out;
}

std::string ss2(const ASData& d, SearchMode mode = SearchMode::Exhaustive, std::optional<unsigned long long> seed = {}) {
  const auto C = BreaksContext::make(Extension::build(d), seed);
  return ss_breaks(C, 2, {1LL << 26, mode}).breaks_string();
}

}  // namespace

TEST(HatV, Examples) {
  const auto C = BreaksContext::make(Extension::build(I1()));
  const GroupAlgebra& R = C.E().R();
  EXPECT_EQ(hat_v(C, GAElement::zero(R)), kInf);
  EXPECT_EQ(hat_v(C, GAElement::one(R)), 0);
  EXPECT_EQ(hat_v(C, GAElement::u(R, 1)), 3);
  EXPECT_EQ(hat_v_coset(C, CosetRep(GAElement::u(R, 1), 2)), 3);
}

TEST(HatV, MatchesNormOracle) {
  std::mt19937_64 rng(2);
  for (const auto& d : {I1(), I2(), I3()}) {
    const auto C = BreaksContext::make(Extension::build(d));
    const GroupAlgebra& R = C.E().R();
    for (int trial = 0; trial < 30; ++trial) {
      const GAElement g = detail::random_augmentation(R, rng);
      EXPECT_EQ(hat_v(C, g), hat_v_oracle(C, g));
      // lower bound on arbitrary elements
      const TowerElement x = random_tower_element(C.E(), rng);
      if (x.is_zero() || g.is_zero()) continue;
      const TowerElement y = C.E().apply(g, x);
      if (!y.is_zero()) EXPECT_GE(C.E().val_L(y) - C.E().val_L(x), hat_v(C, g));
    }
  }
}

TEST(HatV, PseudoValuationLaws) {
  std::mt19937_64 rng(3);
  const auto C = BreaksContext::make(Extension::build(I3()));
  const GroupAlgebra& R = C.E().R();
  for (int trial = 0; trial < 40; ++trial) {
    const GAElement a = detail::random_augmentation(R, rng), b = detail::random_augmentation(R, rng);
    const long long va = hat_v(C, a), vb = hat_v(C, b);
    EXPECT_GE(hat_v(C, a + b), std::min(va, vb));
    if (va != kInf && vb != kInf) EXPECT_GE(hat_v(C, a * b), va + vb);
    const FieldElement c(R.field(), static_cast<FRep>(1 + rng() % (R.field().q() - 1)));
    EXPECT_EQ(hat_v(C, a.scaled(c.rep())), va);
  }
}

TEST(HatV, CosetMatchesBruteForce) {
  std::mt19937_64 rng(4);
  for (const auto& d : {I1(), I3()}) {
    const auto C = BreaksContext::make(Extension::build(d));
    const GroupAlgebra& R = C.E().R();
    for (int k = 2; k <= R.p(); ++k)
      for (int trial = 0; trial < 10; ++trial) {
        const GAElement g = detail::random_augmentation(R, rng);
        long long best = -kInf;
        for (const auto& h : coset_elements(g, k)) {
          const long long v = hat_v(C, h);
          best = std::max(best, v);
        }
        const CosetRep cr(g, k);
        EXPECT_EQ(hat_v_coset(C, cr), best);
        EXPECT_EQ(hat_v_coset(C, cr, {1LL << 26, SearchMode::Linear}), best);
      }
  }
}

TEST(IRho, Examples) {
  const auto C = BreaksContext::make(Extension::build(I1()));
  const GroupAlgebra& R = C.E().R();
  const TowerElement rho = C.canonical_rho();
  EXPECT_EQ(i_rho(C, CosetRep(GAElement::sigma(R, 1), 2), rho) - C.valuation(rho), 3);
  // i_{c rho} = i_rho + v_L(c) for c in K
  const TowerElement c = K(C.ext, "t^-2 + 1");
  const CosetRep s(GAElement::sigma(R, 0), 2);
  EXPECT_EQ(i_rho(C, s, rho * c), i_rho(C, s, rho) + C.valuation(c));
  try {
    i_rho(C, s, TowerElement::one(C.E()));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::RhoNotValuationCriterion);
  }
}

TEST(IRho, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  const auto C = BreaksContext::make(Extension::build(I1()));
  const Extension& e = C.E();
  const GroupAlgebra& R = e.R();
  const TowerElement rho = C.canonical_rho();
  for (int trial = 0; trial < 15; ++trial) {
    const GAElement g = GAElement::one(R) + detail::random_augmentation(R, rng);
    long long best = -kInf;
    for (const auto& h : coset_elements(g, 2)) {
      const TowerElement y = e.apply(h - GAElement::one(R), rho);
      best = std::max<long long>(best, y.is_zero() ? kInf : e.val_L(y));
    }
    EXPECT_EQ(i_rho(C, CosetRep(g, 2), rho), best);
  }
}

TEST(Breaks, Instances) {
  EXPECT_EQ(ss2(I1()), "3:1;6:1");
  EXPECT_EQ(ss2(I2()), "5:1;9:1");
  EXPECT_EQ(ss2(I3()), "5:1;14:1");
  EXPECT_EQ(ss2(N3()), "11:1;22:1;43:1");
  const auto C3 = BreaksContext::make(Extension::build(I3()));
  EXPECT_EQ(ss_breaks(C3, 3).breaks_string(), "5:1;14:1");
  EXPECT_EQ(vc_breaks(C3, 3, 3, 9).breaks_string(), "5:1;14:1");
}

TEST(Breaks, LinearAndRandomizedRepsAgree) {
  for (const auto& d : {I1(), I2(), I3(), N3()}) {
    const std::string ref = ss2(d);
    EXPECT_EQ(ss2(d, SearchMode::Linear), ref);
    EXPECT_EQ(ss2(d, SearchMode::Exhaustive, 17), ref);
  }
}

TEST(Breaks, AllMethodsAgree) {
  for (const auto& d : {I1(), I2(), I3(), N3()}) {
    const auto C = BreaksContext::make(Extension::build(d));
    const auto s = ss_breaks(C, 2);
    const auto v = vc_breaks(C, 2, 3, 1);
    EXPECT_TRUE(s.same_breaks(v)) << v.breaks_string();
    EXPECT_TRUE(v.rho_independent);
    EXPECT_TRUE(v.flag.empty());
    EXPECT_TRUE(s.same_breaks(annihilator_breaks(C)));
    const auto pr = predict_breaks(d);
    EXPECT_EQ(pr.flag, "hypotheses=met");
    EXPECT_TRUE(s.same_breaks(pr)) << pr.breaks_string();
  }
}

TEST(Breaks, GenericBasisWithoutScaffold) {
  auto d = make(2, 3, 3, 5, "t^-5", {"1", "g", "g^2"}, {"0", "0", "t^-3"});
  const auto C = BreaksContext::make(Extension::build(d));
  EXPECT_FALSE(C.scaffold.has_value());
  const auto s = ss_breaks(C, 2);
  EXPECT_EQ(s.total_multiplicity(), 3);
  EXPECT_TRUE(s.same_breaks(vc_breaks(C, 2, 2, 1)));
  EXPECT_TRUE(s.same_breaks(annihilator_breaks(C)));
}

TEST(Breaks, ConjecturalFlag) {
  auto d = make(2, 3, 3, 11, "t^-11", {"1", "g", "g^2"}, {"0", "t^-3", "t^-1"});
  const auto pr = predict_breaks(d);
  EXPECT_EQ(pr.flag, "hypotheses=unmet;conjectural");
  EXPECT_EQ(pr.breaks_string(), "11:1;22:1;44:1");
  EXPECT_EQ(ss2(d), "11:1;22:1;43:1");
}

TEST(Breaks, PredictR1AndDegreeOne) {
  EXPECT_EQ(predict_breaks(I1()).breaks_string(), "3:1;6:1");
  EXPECT_EQ(predict_breaks(make(3, 1, 1, 4, "t^-4", {"1"}, {"0"})).breaks_string(), "4:1");
}

TEST(Breaks, SearchTooLarge) {
  const auto C = BreaksContext::make(Extension::build(N3()));
  try {
    ss_breaks(C, 2, {10, SearchMode::Exhaustive});
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::SearchTooLarge);
  }
  EXPECT_EQ(ss_breaks(C, 2, {10, SearchMode::Linear}).breaks_string(), "11:1;22:1;43:1");
}

TEST(Breaks, InvalidK) {
  const auto C = BreaksContext::make(Extension::build(I1()));
  EXPECT_THROW(ss_breaks(C, 3), Error);
  EXPECT_THROW(ss_breaks(C, 1), Error);
}

TEST(Breaks, SuiteOnRandomMainData) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 6; ++trial) {
    const int p = trial % 3 == 1 ? 3 : 2;
    const int n = trial % 3 == 2 ? 3 : 2;
    const auto d = random_as_data(rng, p, n, n, DataFamily::Main, p == 3 ? 10 : 13);
    const auto C = BreaksContext::make(Extension::build(d));
    BreakSuiteOptions o;
    o.samples = 2;
    const auto r = break_suite(C, d, o);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
  }
}

TEST(Breaks, Psi1Shift) {
  for (const auto& d : {I1(), I2(), I3(), N3()}) {
    const auto c = psi1_check(BreaksContext::make(Extension::build(d)));
    EXPECT_TRUE(c.passed) << c.witness;
  }
}

TEST(Breaks, FiltrationMultiplicities) {
  auto f = GaloisField::get(2, 1);
  const FieldElement z = FieldElement::zero(*f), o = FieldElement::one(*f);
  // vectors (1,0):5, (0,1):9, (1,1):5 -> 5 with multiplicity 1, 9 with 1
  const auto br = detail::filtration_breaks(*f, {{o, z}, {z, o}, {o, o}}, {5, 9, 5}, {"a", "b", "c"});
  ASSERT_EQ(br.size(), 2u);
  EXPECT_EQ(br[0].value, 5);
  EXPECT_EQ(br[1].value, 9);
  EXPECT_EQ(br[0].multiplicity + br[1].multiplicity, 2);
}

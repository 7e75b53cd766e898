#pragma once

// Named invariant suites. Each returns Check records (name, verdict, first witness).

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rrb/breaks.hpp"

namespace rrb {

namespace detail {

inline void flag(Check& c, const std::string& w) {
  if (c.passed) c.witness = w;
  c.passed = false;
}

inline GAElement random_augmentation(const GroupAlgebra& R, std::mt19937_64& rng) {
  GAElement g = GAElement::zero(R);
  for (int c = 1; c < R.size(); ++c) g.set(c, static_cast<GaloisField::Rep>(rng() % R.field().q()));
  return g;
}

}  // namespace detail

/// Coefficients drawn from t^lo..t^hi on every monomial.
inline TowerElement random_tower_element(const Extension& e, std::mt19937_64& rng, int lo = -3, int hi = 3) {
  const GaloisField& f = e.F();
  TowerElement z = TowerElement::zero(e);
  for (int a = 0; a < e.degree(); ++a) {
    std::vector<GaloisField::Rep> c(hi - lo + 1);
    for (auto& x : c) x = rng() % 2 ? static_cast<GaloisField::Rep>(rng() % f.q()) : 0;
    z += TowerElement::monomial(e, a, LaurentSeries::from_coefficients(f, lo, c, LaurentSeries::kExact));
  }
  return z;
}

/// exp/log congruences in one and two nilpotent variables, and the power-log
/// identity on random (gamma, omega) over F_(p^m) with n = 2.
inline std::vector<Check> calculus_suite(int p, int m, int trials, unsigned long long seed) {
  std::vector<Check> out;
  auto fp = GaloisField::get(p, 1);
  const GroupAlgebra R1(*fp, 1), R2(*fp, 2);
  {
    Check c{"log(exp(X)) = X mod X^p", true, ""};
    const GAElement X = GAElement::u(R1, 0);
    if (truncated_log(truncated_exp(X)) != X) detail::flag(c, "p=" + std::to_string(p));
    out.push_back(c);
  }
  {
    Check c{"exp(log(1+X)) = 1+X mod X^p", true, ""};
    const GAElement X1 = GAElement::one(R1) + GAElement::u(R1, 0);
    if (truncated_exp(truncated_log(X1)) != X1) detail::flag(c, "p=" + std::to_string(p));
    out.push_back(c);
  }
  const GAElement X = GAElement::u(R2, 0), Y = GAElement::u(R2, 1), one = GAElement::one(R2);
  {
    Check c{"exp(X+Y) = exp(X)exp(Y) mod (X,Y)^p", true, ""};
    if (truncated_exp(X + Y, p) != (truncated_exp(X) * truncated_exp(Y)).truncated(p)) detail::flag(c, "p=" + std::to_string(p));
    out.push_back(c);
  }
  {
    Check c{"log((1+X)(1+Y)) = log(1+X)+log(1+Y) mod (X,Y)^p", true, ""};
    if (truncated_log((one + X) * (one + Y), p) != (truncated_log(one + X) + truncated_log(one + Y)).truncated(p))
      detail::flag(c, "p=" + std::to_string(p));
    out.push_back(c);
  }
  {
    Check c{"log(gamma^[w]) = w log(gamma)", true, ""};
    auto f = GaloisField::get(p, m);
    const GroupAlgebra R(*f, 2);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < trials; ++i) {
      const GAElement g = GAElement::one(R) + detail::random_augmentation(R, rng);
      const FieldElement w(*f, static_cast<GaloisField::Rep>(rng() % f->q()));
      if (truncated_log(truncated_power(g, w)) != truncated_log(g).scaled(w.rep()))
        detail::flag(c, "gamma=" + g.to_string() + " w=" + w.to_string());
    }
    out.push_back(c);
  }
  return out;
}

/// (sigma-1)^r(ab) = a (sigma-1)^r(b) + sum_i (-1)^(r-i) C(r,i) (sigma^i-1)(a) sigma^i(b).
inline Check leibniz_check(const Extension& e, int trials, unsigned long long seed) {
  Check c{"(sigma-1)^r(ab) expansion", true, ""};
  std::mt19937_64 rng(seed);
  const int p = e.p(), n = e.n();
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<int> g(n);
    for (auto& x : g) x = static_cast<int>(rng() % p);
    const int r = static_cast<int>(rng() % p);
    const TowerElement a = random_tower_element(e, rng, -2, 2), b = random_tower_element(e, rng, -2, 2);
    auto s_minus_1_pow = [&](TowerElement z, int k) {
      for (int i = 0; i < k; ++i) z = e.apply_group(g, z) - z;
      return z;
    };
    auto sigma_pow = [&](const TowerElement& z, int i) {
      std::vector<int> gi(n);
      for (int j = 0; j < n; ++j) gi[j] = g[j] * i;
      return e.apply_group(gi, z);
    };
    const TowerElement lhs = s_minus_1_pow(a * b, r);
    TowerElement rhs = a * s_minus_1_pow(b, r);
    for (int i = 0; i <= r; ++i) {
      long long coeff = 1;
      for (int j = 0; j < i; ++j) coeff = coeff * (r - j) / (j + 1);
      if ((r - i) % 2) coeff = -coeff;
      const FieldElement cf = FieldElement::from_int(e.F(), static_cast<int>(mod_floor(coeff, p)));
      rhs += ((sigma_pow(a, i) - a) * sigma_pow(b, i)).scaled(cf);
    }
    if (lhs != rhs) detail::flag(c, "trial=" + std::to_string(trial) + " r=" + std::to_string(r));
  }
  return c;
}

/// t_i != 0, sigma(Y) - Y in F for all sigma, v_L(Y) = -b (last one when e_i p^(n-1) < b).
inline std::vector<Check> y_checks(const Extension& e) {
  const auto Yg = construct_Y(e);
  Check nz{"t_i != 0", true, ""}, inF{"sigma(Y) - Y in F", true, ""}, vy{"v_L(Y) = -b", true, ""};
  for (int i = 0; i < e.n(); ++i)
    if (Yg.t[i].is_zero()) detail::flag(nz, "i=" + std::to_string(i + 1));
  const GroupAlgebra& R = e.R();
  for (int c = 0; c < R.size(); ++c) {
    std::vector<int> g(e.n());
    for (int i = 0; i < e.n(); ++i) g[i] = R.digit(c, i);
    const TowerElement d = e.apply_group(g, Yg.Y) - Yg.Y;
    const bool ok = d.in_K() && (d[0].is_exact_zero() || (d[0].length() == 1 && d[0].lo() == 0));
    if (!ok) detail::flag(inF, "sigma index " + std::to_string(c));
  }
  if (e_bound_holds(e.data(), 1)) {
    const int v = e.val_L(Yg.Y);
    if (v != -e.b()) detail::flag(vy, "v_L(Y) = " + std::to_string(v));
  } else {
    vy.witness = "skipped: e_i p^(n-1) >= b";
  }
  return {nz, inF, vy};
}

/// Norm-based v_L against the valuation-basis v_L on random elements.
inline Check backend_check(const BreaksContext& C, int trials, unsigned long long seed) {
  Check c{"norm v_L = basis v_L", true, ""};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < trials; ++i) {
    const TowerElement z = random_tower_element(C.E(), rng, -2 - static_cast<int>(rng() % 3), static_cast<int>(rng() % 4));
    if (z.is_zero()) continue;
    const int a = C.E().val_L(z), b = C.valuation(z);
    if (a != b) detail::flag(c, "trial " + std::to_string(i) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
  return c;
}

/// Index-p subgroups H: v_L(Tr_H(rho))/|H| = -d_{M/K} - 1 for v_L(rho) = -d - 1.
inline Check trace_valuation_check(const BreaksContext& C) {
  Check c{"v_M(Tr_{L/M}(rho)) = -d_{M/K} - 1", true, ""};
  const Extension& e = C.E();
  const int p = e.p(), n = e.n(), N = e.degree();
  const TowerElement rho = C.canonical_rho().shifted(-1);
  const long long d = e.different();
  if (C.valuation(rho) != -d - 1) detail::flag(c, "v_L(rho) != -d-1");
  const long long dMK = static_cast<long long>(p - 1) * (e.b() + 1);
  auto fp = GaloisField::get(p, 1);
  // Index-p subgroups are kernels of nonzero functionals, one per projective class.
  for (long long idx = 1; idx < ipow(p, n); ++idx) {
    const auto phi = span_coordinates(*fp, n, idx);
    if (!is_projective_rep(phi)) continue;
    FMatrix row = {std::vector<FRep>()};
    for (const auto& x : phi) row[0].push_back(x.rep());
    const FMatrix ker = kernel(*fp, row, n);
    std::vector<std::vector<int>> gens;
    for (const auto& v : ker) gens.emplace_back(v.begin(), v.end());
    const TowerElement tr = e.trace_sub(rho, gens);
    const int H = N / p;
    const int v = tr.is_zero() ? kInf : e.val_L(tr);
    if (tr.is_zero() || v % H != 0 || v / H != -dMK - 1)
      detail::flag(c, "functional " + detail::coords_string(phi) + " gives v_L = " + std::to_string(v));
  }
  return c;
}

/// floor((r + d)/p^n) = min over w in [r, r + p^n) of v_K(Tr(lambda_w)), r in [0, p^n).
inline Check trace_ideal_check(const BreaksContext& C) {
  Check c{"Tr(M_L^r) = M_K^floor((r+d)/p^n)", true, ""};
  const Extension& e = C.E();
  const int N = e.degree();
  const long long d = e.different();
  std::vector<std::vector<int>> all;
  for (int i = 0; i < e.n(); ++i) {
    std::vector<int> g(e.n(), 0);
    g[i] = 1;
    all.push_back(g);
  }
  std::vector<long long> vt(2 * N);
  for (int w = 0; w < 2 * N; ++w) {
    const TowerElement tr = e.trace_sub(C.basis.lambda(w), all);
    vt[w] = tr.is_zero() ? kInf : tr[0].valuation();
    if (!tr.in_K()) detail::flag(c, "trace not in K at w=" + std::to_string(w));
  }
  for (int r = 0; r < N; ++r) {
    long long m = kInf;
    for (int w = r; w < r + N; ++w) m = std::min(m, vt[w]);
    if (m != floor_div(r + d, N)) detail::flag(c, "r=" + std::to_string(r) + " min " + std::to_string(m));
  }
  return c;
}

/// Sorted break values b_0 <= ... satisfy b_i <= b p^i, and multiplicities sum to n.
inline void bounds_check(Check& c, const BreakReport& r, int b, int p, int n, const std::string& tag) {
  const auto v = r.values();
  if (static_cast<int>(v.size()) != n) detail::flag(c, tag + ": " + std::to_string(v.size()) + " breaks");
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] > b * ipow(p, static_cast<int>(i))) detail::flag(c, tag + ": b_" + std::to_string(i) + " = " + std::to_string(v[i]));
}

/// a <= b entrywise on sorted values (same length).
inline bool entrywise_le(const std::vector<long long>& a, const std::vector<long long>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

struct BreakSuiteOptions {
  std::vector<int> ks;  // empty: 2..p
  int samples = 5;
  unsigned long long seed = 1;
  SearchOptions search;
  bool annihilator = true;
};

struct BreakSuiteResult {
  std::vector<BreakReport> ss, vc;  // per k
  BreakReport predicted, ann;
  std::vector<Check> checks;
};

/// SS, VC, predictor, annihilator and the relations between them.
inline BreakSuiteResult break_suite(const BreaksContext& C, const ASData& input, const BreakSuiteOptions& opt) {
  BreakSuiteResult out;
  const Extension& e = C.E();
  const int p = e.p(), n = e.n(), b = e.b();
  std::vector<int> ks = opt.ks;
  if (ks.empty())
    for (int k = 2; k <= p; ++k) ks.push_back(k);
  for (int k : ks) {
    out.ss.push_back(ss_breaks(C, k, opt.search));
    out.vc.push_back(vc_breaks(C, k, opt.samples, opt.seed + static_cast<unsigned long long>(k), opt.search));
  }
  out.predicted = predict_breaks(input);
  const bool proven = out.predicted.flag == "hypotheses=met";

  Check bounds{"b_i <= b p^i", true, ""}, mono{"SS_k monotone in k, SS_k <= VC_k", true, ""},
      same{"SS_k = VC_k", true, ""}, pred{"SS_k = predicted", true, ""}, card{"|B_rho,k| = n", true, ""},
      indep{"B_rho,k independent of rho", true, ""};
  for (size_t i = 0; i < ks.size(); ++i) {
    const std::string tag = "k=" + std::to_string(ks[i]);
    bounds_check(bounds, out.ss[i], b, p, n, "ss " + tag);
    bounds_check(bounds, out.vc[i], b, p, n, "vc " + tag);
    if (!entrywise_le(out.ss[i].values(), out.vc[i].values())) detail::flag(mono, "ss > vc at " + tag);
    for (size_t j = 0; j < ks.size(); ++j)
      if (ks[j] < ks[i] && !entrywise_le(out.ss[i].values(), out.ss[j].values()))
        detail::flag(mono, "ss at " + tag + " exceeds k=" + std::to_string(ks[j]));
    if (!out.ss[i].same_breaks(out.vc[i]))
      detail::flag(same, tag + ": " + out.ss[i].breaks_string() + " vs " + out.vc[i].breaks_string());
    if (proven && !out.ss[i].same_breaks(out.predicted))
      detail::flag(pred, tag + ": " + out.ss[i].breaks_string() + " vs " + out.predicted.breaks_string());
    for (size_t s = 0; s < out.vc[i].rho_sets.size(); ++s)
      if (static_cast<int>(out.vc[i].rho_sets[s].size()) != n) detail::flag(card, tag + " " + out.vc[i].rho_descriptors[s]);
    if (!out.vc[i].rho_independent) detail::flag(indep, tag);
  }
  if (!proven) pred.witness = "skipped: " + out.predicted.flag;
  out.checks = {bounds, mono, same, pred, card, indep};

  if (opt.annihilator) {
    Check ann{"annihilator = SS_2", true, ""};
    out.ann = annihilator_breaks(C);
    auto it = std::find(ks.begin(), ks.end(), 2);
    const BreakReport ss2 = it != ks.end() ? out.ss[it - ks.begin()] : ss_breaks(C, 2, opt.search);
    if (!out.ann.same_breaks(ss2)) detail::flag(ann, out.ann.breaks_string() + " vs " + ss2.breaks_string());
    out.checks.push_back(ann);
  }
  return out;
}

/// v_L(Psi_1(rho)) - v_L(rho) = min(b p^(n-1), (b - e_n) p^(n-1) + b).
inline Check psi1_check(const BreaksContext& C) {
  Check c{"v_L(Psi_1(rho)) - v_L(rho)", true, ""};
  if (!C.scaffold) {
    c.witness = "skipped: no scaffold";
    return c;
  }
  const Extension& e = C.E();
  const ASData& d = e.data();
  const int n = d.n, p = d.p, b = d.b, en = d.e[n - 1];
  const long long top = b * ipow(p, n - 1);
  const long long expect = en == kNegInf ? top : std::min(top, (static_cast<long long>(b) - en) * ipow(p, n - 1) + b);
  const TowerElement rho = C.canonical_rho();
  const int vr = e.val_L(rho);
  const int v = e.val_L(e.apply(C.scaffold->Psi[0], rho));
  if (v - vr != expect) detail::flag(c, "shift " + std::to_string(v - vr) + ", expected " + std::to_string(expect));
  return c;
}

}  // namespace rrb

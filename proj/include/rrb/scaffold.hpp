#pragma once

// Galois scaffolds: Y_i, t_ij, the Theta recursion, Psi_i = Theta_i - 1, and
// the binomial family B_s = prod_h binom(Y_h, s_h) with v_L(B_s) = -b s.
//
// Indices are 0-based in code: Y[0] is Y_1, Psi[0] is Psi_1. Digit s_h of
// s = sum_h s_h p^(n-1-h) is the argument of binom(Y_h, .).

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rrb/lift.hpp"
#include "rrb/valuation_basis.hpp"

namespace rrb {

enum class ScaffoldLevel { Auto, Full, K1 };

inline const char* to_string(ScaffoldLevel l) {
  switch (l) {
    case ScaffoldLevel::Auto: return "auto";
    case ScaffoldLevel::Full: return "full";
    case ScaffoldLevel::K1: return "K1";
  }
  return "?";
}

/// Little-endian base-p digits of a(w) = -b^{-1} w mod p^n.
inline std::vector<int> a_digits(int p, int n, int b, long long w) {
  require(b % p != 0, ErrorKind::InvalidArgument, "a_digits needs p not dividing b");
  const long long N = ipow(p, n);
  long long binv = 0;
  for (long long x = 1; x < N; ++x)
    if (mod_floor(x * b, N) == 1) {
      binv = x;
      break;
    }
  long long a = mod_floor(-binv * mod_floor(w, N), N);
  std::vector<int> d(n);
  for (int i = 0; i < n; ++i, a /= p) d[i] = static_cast<int>(a % p);
  return d;
}

inline long long a_value(int p, int n, int b, long long w) {
  const auto d = a_digits(p, n, b, w);
  long long a = 0;
  for (int i = n - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

/// e_i < b / p^(n-r) for all i, i.e. e_i p^(n-r) < b.
inline bool e_bound_holds(const ASData& d, int r) {
  for (int e : d.e)
    if (e != kNegInf && static_cast<long long>(e) * ipow(d.p, d.n - r) >= d.b) return false;
  return true;
}

struct Scaffold {
  ExtensionPtr ext;
  ScaffoldLevel level = ScaffoldLevel::Full;
  int p = 0, n = 0, b = 0, N = 0;
  std::vector<TowerElement> Y;                 // Y_1..Y_n
  std::vector<std::vector<FieldElement>> t;    // t[i][j] for j <= i; t[i][i] = 1
  std::vector<std::vector<FieldElement>> mu;   // unnormalized cofactors
  std::optional<K1Lift> lift;                  // K1 level
  std::vector<TowerElement> Z;                 // K1 level, Z_i in K_1 (Z[0] unused)
  std::vector<GAElement> Theta, Psi;
  std::vector<TowerElement> binom;             // B_s
  std::vector<int> lead;                       // leading monomial of B_s

  /// First Psi index that is an exact scaffold operator.
  int first_exact() const { return level == ScaffoldLevel::K1 ? 1 : 0; }
  int digit_of(int s, int h) const { return static_cast<int>((s / ipow(p, n - 1 - h)) % p); }
  /// lambda_w = t^q B_s, s = a(w), q = (w + b s)/p^n.
  TowerElement lambda(long long w) const {
    const long long s = a_value(p, n, b, w);
    return binom[s].shifted(static_cast<int>((w + b * s) / N));
  }
  ValuationBasis basis(bool trust = true) const {
    std::vector<int> vals;
    if (trust)
      for (int s = 0; s < N; ++s) vals.push_back(-b * s);
    return ValuationBasis(*ext, binom, lead, vals);
  }
};

namespace detail {

/// binom(Y, k) for k < p.
inline std::vector<TowerElement> binomials_of(const Extension& e, const TowerElement& Y) {
  std::vector<TowerElement> out = {TowerElement::one(e)};
  const GaloisField& f = e.F();
  for (int k = 1; k < e.p(); ++k) {
    const TowerElement shifted = Y - TowerElement::from_K(e, LaurentSeries::constant(FieldElement::from_int(f, k - 1)));
    out.push_back((out.back() * shifted).scaled(FieldElement(f, f.inv(f.from_int(k)))));
  }
  return out;
}

/// B_s and their leading monomials from Y_1..Y_n (Y_h has x_h-coefficient 1).
inline void binomial_family(const Extension& e, const std::vector<TowerElement>& Y, std::vector<TowerElement>& B,
                            std::vector<int>& lead) {
  const int n = e.n(), p = e.p(), N = e.degree();
  std::vector<std::vector<TowerElement>> bin(n);
  for (int h = 0; h < n; ++h) bin[h] = binomials_of(e, Y[h]);
  B.assign(N, TowerElement::zero(e));
  lead.assign(N, 0);
  for (int s = 0; s < N; ++s) {
    TowerElement prod = TowerElement::one(e);
    int a = 0;
    for (int h = 0; h < n; ++h) {
      const int sh = static_cast<int>((s / ipow(p, n - 1 - h)) % p);
      if (sh > 0) prod = prod * bin[h][sh];
      a += sh * static_cast<int>(ipow(p, h));
    }
    B[s] = prod;
    lead[s] = a;
  }
}

/// Y_i for K_i/K (full level), normalized so t_ii = 1.
inline void full_level_Y(const Extension& e, std::vector<TowerElement>& Y, std::vector<std::vector<FieldElement>>& t,
                         std::vector<std::vector<FieldElement>>& mu) {
  const ASData& d = e.data();
  const int n = d.n;
  Y.assign(n, TowerElement::zero(e));
  t.assign(n, {});
  mu.assign(n, {});
  for (int i = 0; i < n; ++i) {
    std::vector<FieldElement> w;
    for (int j = 0; j <= i; ++j) w.push_back(d.omega[j].frobenius(n - 1 - i));
    mu[i] = moore_cofactors(w);
    require(!mu[i][i].is_zero(), ErrorKind::Internal, "vanishing Moore cofactor");
    for (int j = 0; j <= i; ++j) {
      t[i].push_back(mu[i][j] / mu[i][i]);
      Y[i] += TowerElement::x(e, j).scaled(t[i][j]);
    }
  }
}

inline GAElement theta_for(const GroupAlgebra& R, const std::vector<GAElement>& Theta,
                           const std::vector<std::vector<FieldElement>>& t, int j, int n) {
  GAElement th = GAElement::sigma(R, j);
  for (int i = n - 1; i > j; --i) th = th * truncated_power(Theta[i], -t[i][j]);
  return th;
}

}  // namespace detail

/// Binomial family without any hypothesis (used by the generic valuation basis).
inline ValuationBasis generic_valuation_basis(const Extension& e) {
  std::vector<TowerElement> Y, B;
  std::vector<std::vector<FieldElement>> t, mu;
  std::vector<int> lead;
  detail::full_level_Y(e, Y, t, mu);
  detail::binomial_family(e, Y, B, lead);
  return ValuationBasis(e, B, lead);
}

inline Scaffold build_scaffold(const ExtensionPtr& ext, ScaffoldLevel level = ScaffoldLevel::Auto) {
  const Extension& e = *ext;
  const ASData& d = e.data();
  const bool r1 = e_bound_holds(d, 1);
  const bool k1 = d.n >= 2 && e_bound_holds(d, 2);
  if (level == ScaffoldLevel::Auto) {
    if (r1) {
      level = ScaffoldLevel::Full;
    } else if (k1) {
      level = ScaffoldLevel::K1;
    } else {
      fail(ErrorKind::HypothesisNotSatisfied, "neither e_i < b/p^(n-1) nor e_i < b/p^(n-2) holds for all i");
    }
  }
  if (level == ScaffoldLevel::Full)
    require(r1, ErrorKind::HypothesisNotSatisfied, "full-level scaffold needs e_i < b/p^(n-1) for all i");
  if (level == ScaffoldLevel::K1)
    require(k1, ErrorKind::HypothesisNotSatisfied, "K1-level scaffold needs n >= 2 and e_i < b/p^(n-2) for all i");

  Scaffold S;
  S.ext = ext;
  S.level = level;
  S.p = d.p;
  S.n = d.n;
  S.b = d.b;
  S.N = e.degree();
  const int n = d.n;
  const GaloisField& f = d.F();
  if (level == ScaffoldLevel::Full) {
    detail::full_level_Y(e, S.Y, S.t, S.mu);
  } else {
    K1Lift lift = lift_to_K1(e);
    S.Y.assign(n, TowerElement::zero(e));
    S.t.assign(n, {});
    S.mu.assign(n, {});
    S.Z.assign(n, TowerElement::zero(e));
    S.Y[0] = lift.generator;
    S.t[0] = {FieldElement::one(f)};
    S.mu[0] = {FieldElement::one(f)};
    for (int i = 1; i < n; ++i) {
      std::vector<FieldElement> w;
      for (int h = 1; h <= i; ++h) w.push_back(lift.Omega[h].frobenius(n - 1 - i));
      const auto mu = moore_cofactors(w);
      require(!mu.back().is_zero(), ErrorKind::Internal, "vanishing Moore cofactor over K1");
      S.mu[i].assign(i + 1, FieldElement::zero(f));
      S.t[i].assign(i + 1, FieldElement::zero(f));
      FieldElement t1 = FieldElement::zero(f);
      for (int h = 1; h <= i; ++h) {
        S.mu[i][h] = mu[h - 1];
        S.t[i][h] = mu[h - 1] / mu[i - 1];
        S.Y[i] += lift.X[h].scaled(S.t[i][h]);
        t1 -= S.t[i][h] * d.omega[h].frobenius(n - 1);
        S.Z[i] += e.apply_u(0, lift.zeta[h]).scaled(S.t[i][h]);
      }
      S.t[i][0] = t1;
    }
    S.lift = std::move(lift);
  }
  const GroupAlgebra& R = e.R();
  S.Theta.assign(n, GAElement::one(R));
  S.Psi.assign(n, GAElement::zero(R));
  S.Theta[n - 1] = GAElement::sigma(R, n - 1);
  for (int j = n - 2; j >= 0; --j) S.Theta[j] = detail::theta_for(R, S.Theta, S.t, j, n);
  for (int j = 0; j < n; ++j) S.Psi[j] = S.Theta[j] - GAElement::one(R);
  detail::binomial_family(e, S.Y, S.binom, S.lead);
  return S;
}

/// Psi^(t) = Psi_n^(t_0) Psi_(n-1)^(t_1) ... Psi_1^(t_(n-1)).
inline GAElement psi_composite(const Scaffold& S, long long t) {
  require(t >= 0 && t < S.N, ErrorKind::InvalidArgument, "psi_composite needs 0 <= t < p^n");
  const GroupAlgebra& R = S.ext->R();
  GAElement r = GAElement::one(R);
  for (int k = 0; k < S.n; ++k, t /= S.p) {
    const int d = static_cast<int>(t % S.p);
    if (d > 0) r = r * S.Psi[S.n - 1 - k].pow(d);
  }
  return r;
}

/// rho = prod binom(Y_i, p-1), v_L(rho) = -(p^n - 1) b.
inline TowerElement vc_element(const Scaffold& S) { return S.binom[S.N - 1]; }

struct Check {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct ScaffoldReport {
  std::vector<Check> checks;
  struct Unit {
    int i;
    long long w;
    FieldElement u;
  };
  std::vector<Unit> non_unit_u;  // u_iw != 1 (recorded, counted as failures of (iv))

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& c : checks) os << (c.passed ? "PASS " : "FAIL ") << c.name << (c.witness.empty() ? "" : ": " + c.witness) << '\n';
    return os.str();
  }
};

inline ScaffoldReport check_scaffold(const Scaffold& S) {
  const Extension& e = *S.ext;
  const int n = S.n, N = S.N, b = S.b, p = S.p;
  const GroupAlgebra& R = e.R();
  ScaffoldReport rep;
  auto add = [&](const std::string& name) -> Check& {
    rep.checks.push_back({name, true, ""});
    return rep.checks.back();
  };
  auto flag = [](Check& c, const std::string& w) {
    if (c.passed) c.witness = w;
    c.passed = false;
  };

  {
    Check& c = add("structure");
    for (int i = 0; i < n; ++i) {
      if (!S.t[i][i].is_one()) flag(c, "t_ii != 1 at i=" + std::to_string(i + 1));
      for (int j = 0; j < i; ++j)
        if (S.t[i][j].is_zero()) flag(c, "t_ij = 0 at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      for (int j = 0; j < n; ++j) {
        const TowerElement dY = e.apply_u(j, S.Y[i]);
        const bool in_F = dY.in_K() && (dY[0].is_exact_zero() || (dY[0].length() == 1 && dY[0].lo() == 0));
        if (S.level == ScaffoldLevel::Full || j > 0) {
          const FieldElement expect = j <= i ? S.t[i][j] : FieldElement::zero(e.F());
          if (!in_F || dY != TowerElement::from_K(e, LaurentSeries::constant(expect)))
            flag(c, "(sigma_" + std::to_string(j + 1) + "-1)(Y_" + std::to_string(i + 1) + ") != t_ij");
        }
      }
      if (!(S.Theta[i] - GAElement::one(R)).is_zero() && (S.Theta[i] - GAElement::one(R)).aug_degree() != 1)
        flag(c, "Psi_" + std::to_string(i + 1) + " not of augmentation degree 1");
      if (S.Psi[i].aug_degree() != 1) flag(c, "Psi_" + std::to_string(i + 1) + " not of augmentation degree 1");
    }
    if (S.level == ScaffoldLevel::K1) {
      for (int i = 1; i < n; ++i)
        if (S.t[i][0].is_zero()) flag(c, "t_i1 = 0 at i=" + std::to_string(i + 1));
      const ASData& d = e.data();
      const int en = d.e[n - 1];
      if (en != kNegInf && static_cast<long long>(en) * ipow(p, n - 1) >= b) {
        const int vz = val_K1(e, S.Z[n - 1]);
        if (vz != b - en) flag(c, "v_K1(Z_n) = " + std::to_string(vz) + " != b - e_n");
        for (int i = 1; i + 1 < n; ++i) {
          const int vi = val_K1(e, S.Z[i]);
          if (vi <= b - en) flag(c, "v_K1(Z_" + std::to_string(i + 1) + ") <= b - e_n");
        }
      }
    }
  }

  // (i) via the norm oracle on B_s.
  std::vector<int> vB(N);
  {
    Check& c = add("(i) v_L(lambda_w) = w");
    for (int s = 0; s < N; ++s) vB[s] = e.val_L(S.binom[s]);
    for (long long w = 0; w < 2 * N; ++w) {
      const long long s = a_value(p, n, b, w);
      const long long q = (w + b * s) / N;
      if (q * N + vB[s] != w) flag(c, "w=" + std::to_string(w) + " gives " + std::to_string(q * N + vB[s]));
    }
  }
  {
    Check& c = add("(ii) lambda_{w+p^n} = t lambda_w");
    for (long long w = 0; w < N; ++w)
      if (S.lambda(w + N) != S.lambda(w).shifted(1)) flag(c, "w=" + std::to_string(w));
  }
  {
    Check& c = add("(iii) Psi_i(1) = 0");
    for (int i = 0; i < n; ++i)
      if (!e.apply(S.Psi[i], TowerElement::one(e)).is_zero()) flag(c, "i=" + std::to_string(i + 1));
  }
  {
    Check& c = add("(iv) Psi_i(lambda_w) = lambda_{w+p^(n-i)b} or 0");
    for (int i = S.first_exact(); i < n; ++i) {
      const long long shift = ipow(p, n - 1 - i) * b;
      for (long long w = 0; w < 2 * N; ++w) {
        const auto dig = a_digits(p, n, b, w);
        const TowerElement img = e.apply(S.Psi[i], S.lambda(w));
        const std::string tag = "i=" + std::to_string(i + 1) + " w=" + std::to_string(w);
        if (dig[n - 1 - i] == 0) {
          if (!img.is_zero()) flag(c, tag + " expected 0");
          continue;
        }
        const TowerElement target = S.lambda(w + shift);
        if (img == target) continue;
        // Record the unit if img is an F-multiple of the target.
        int a = 0;
        while (a < N && target[a].is_exact_zero()) ++a;
        bool multiple = false;
        if (a < N && !img[a].is_exact_zero()) {
          const FieldElement u = img[a].leading_coefficient() / target[a].leading_coefficient();
          if (img == target.scaled(u)) {
            rep.non_unit_u.push_back({i + 1, w, u});
            multiple = true;
            flag(c, tag + " u_iw = " + u.to_string());
          }
        }
        if (!multiple) flag(c, tag + " mismatch");
      }
    }
  }
  {
    Check& c = add("Psi_j(B_s) = 0 when s_j = 0");
    for (int j = S.first_exact(); j < n; ++j)
      for (int s = 0; s < N; ++s)
        if (S.digit_of(s, j) == 0 && !e.apply(S.Psi[j], S.binom[s]).is_zero())
          flag(c, "j=" + std::to_string(j + 1) + " s=" + std::to_string(s));
  }
  {
    Check& c = add("v_L(Psi^(t)(rho)) = v_L(rho) + b t");
    const TowerElement rho = vc_element(S);
    const int vr = vB[N - 1];
    const long long tmax = S.level == ScaffoldLevel::Full ? N : N / p;
    const auto imgs = e.u_images(rho);
    for (long long t = 0; t < tmax; ++t) {
      const int v = e.val_L(e.combine(psi_composite(S, t), imgs));
      if (v - vr != b * t) flag(c, "t=" + std::to_string(t) + " shift " + std::to_string(v - vr));
    }
  }
  {
    Check& c = add("A generated by Psi_1..Psi_n");
    const int M = R.size();
    FMatrix cols;
    for (int i = 0; i < n; ++i)
      for (int cc = 0; cc < M; ++cc) cols.push_back((GAElement::monomial(R, cc) * S.Psi[i]).coefficients());
    FMatrix A(M, std::vector<FRep>(cols.size()));
    for (size_t k = 0; k < cols.size(); ++k)
      for (int r = 0; r < M; ++r) A[r][k] = cols[k][r];
    for (int j = 0; j < n; ++j) {
      std::vector<FRep> x;
      if (!solve(e.F(), A, GAElement::u(R, j).coefficients(), x)) flag(c, "u_" + std::to_string(j + 1) + " not reached");
    }
  }
  return rep;
}

}  // namespace rrb

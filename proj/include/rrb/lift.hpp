#pragma once

// One-step lift of the data to K_1 = K(x_1): X_i = x_i - omega_i^(p^(n-1)) x_1 + zeta_i
// with wp(zeta_i) = E_i - eps_i, so that X_i^p - X_i = Omega_i^(p^(n-1)) x_1 + E_i,
// Omega_i = -wp(omega_i).

#include <vector>

#include "rrb/extension.hpp"

namespace rrb {

/// v_{K_1}(sum c_j x_1^j) = min_j (p v_K(c_j) - b j). z must lie in K_1.
inline int val_K1(const Extension& e, const TowerElement& z) {
  int v = kInf;
  for (int a = 0; a < e.degree(); ++a) {
    if (z[a].is_exact_zero()) continue;
    require(a < e.p(), ErrorKind::InvalidArgument, "element does not lie in K_1");
    const int vc = z[a].valuation();
    v = std::min(v, e.p() * vc - e.b() * a);
  }
  return v;
}

inline bool in_K1(const Extension& e, const TowerElement& z) {
  for (int a = e.p(); a < e.degree(); ++a)
    if (!z[a].is_exact_zero()) return false;
  return true;
}

struct K1Lift {
  TowerElement generator;             // x_1, the new beta over K_1
  std::vector<FieldElement> Omega;    // entries 1..n-1 used
  std::vector<TowerElement> zeta, E;  // in K_1
  std::vector<TowerElement> X;        // generators of L/K_1
  std::vector<int> e;
};

inline K1Lift lift_to_K1(const Extension& ext) {
  const ASData& d = ext.data();
  require(d.is_normalized_basis(), ErrorKind::InvalidData, "lift needs omega_1 = 1 and eps_1 = 0");
  const int p = d.p, n = d.n, b = d.b;
  const GaloisField& f = d.F();
  K1Lift out;
  out.generator = TowerElement::x(ext, 0);
  out.Omega.assign(n, FieldElement::zero(f));
  out.zeta.assign(n, TowerElement::zero(ext));
  out.E.assign(n, TowerElement::zero(ext));
  out.X.assign(n, TowerElement::zero(ext));
  out.e = d.e;
  out.X[0] = out.generator;
  const FieldElement beta0 = d.beta.leading_coefficient();
  const int binv = detail::inv_mod(static_cast<int>(mod_floor(b, p)), p);
  for (int i = 1; i < n; ++i) {
    const FieldElement w = d.omega[i];
    out.Omega[i] = -(w.frobenius() - w);
    const LaurentSeries& eps = d.eps[i];
    TowerElement zeta = TowerElement::zero(ext), E = TowerElement::from_K(ext, eps);
    if (eps.is_exact_zero()) {
      E = TowerElement::zero(ext);
    } else if (eps.valuation() >= 0) {
      zeta = TowerElement::one(ext);
    } else {
      while (true) {
        const int v = val_K1(ext, E);
        if (v >= 0 || v % p != 0) break;
        const LaurentSeries& c0 = E[0];
        const int m0 = c0.valuation();
        const FieldElement a = c0.leading_coefficient();
        const int j = static_cast<int>(mod_floor(-static_cast<long long>(m0) * binv, p));
        const int k = static_cast<int>((m0 + static_cast<long long>(b) * j) / p);
        const FieldElement gamma = frobenius_root(-a / beta0.pow(j));
        const TowerElement c = TowerElement::monomial(ext, j, LaurentSeries::monomial(gamma, k));
        zeta += c;
        E += c.pow(p) - c;
      }
      const int ez = val_K1(ext, zeta), eE = val_K1(ext, E);
      require(ez == -d.e[i] && eE == -d.e[i], ErrorKind::Internal,
              "lift: valuations of zeta/E differ from -e_" + std::to_string(i + 1));
    }
    out.zeta[i] = zeta;
    out.E[i] = E;
    out.X[i] = TowerElement::x(ext, i) - TowerElement::x(ext, 0).scaled(w.frobenius(n - 1)) + zeta;
  }
  return out;
}

}  // namespace rrb

#pragma once

// Artin-Schreier data (beta, omega, eps) for an elementary abelian
// p-extension with single break b: x_i^p - x_i = omega_i^(p^n) beta + eps_i.

#include <climits>
#include <string>
#include <vector>

#include "rrb/laurent.hpp"
#include "rrb/linalg.hpp"

namespace rrb {

/// e_i for eps_i = 0.
inline constexpr int kNegInf = INT_MIN;

inline std::string format_e(int e) { return e == kNegInf ? "-inf" : std::to_string(e); }

struct ASData {
  FieldPtr field;
  int p = 0;
  int n = 0;
  int b = 0;
  LaurentSeries beta;
  std::vector<FieldElement> omega;
  std::vector<LaurentSeries> eps;
  std::vector<int> e;  // filled by validate_data

  const GaloisField& F() const { return *field; }
  int m() const { return field->m(); }
  long long degree() const { return ipow(p, n); }
  /// (p^n - 1)(b + 1)
  long long different() const { return (degree() - 1) * (b + 1); }
  /// omega_i^(p^n) beta + eps_i
  LaurentSeries alpha(int i) const {
    return beta.scaled(omega[i].frobenius(n)) + eps[i];
  }
  bool is_normalized_basis() const { return omega[0].is_one() && eps[0].is_exact_zero(); }
};

/// -v_K(eps) for negative valuation, 0 for a nonzero constant, kNegInf for 0.
inline int e_value(const LaurentSeries& eps) {
  if (eps.is_exact_zero()) return kNegInf;
  const int v = eps.valuation();
  return v < 0 ? -v : 0;
}

/// Checks the data invariants and reduces each eps_i modulo wp(K).
inline ASData validate_data(ASData d) {
  require(d.field != nullptr, ErrorKind::InvalidData, "missing residue field");
  require(d.p == d.field->p(), ErrorKind::InvalidData, "p does not match the residue field");
  require(d.n >= 1, ErrorKind::InvalidData, "n must be at least 1");
  require(d.m() >= d.n, ErrorKind::DependentOmega,
          "m = " + std::to_string(d.m()) + " < n = " + std::to_string(d.n) + ": no F_p-independent omega exists");
  require(static_cast<int>(d.omega.size()) == d.n && static_cast<int>(d.eps.size()) == d.n, ErrorKind::InvalidData,
          "omega and eps must have n entries");
  require(ipow(d.p, d.n) <= 729, ErrorKind::InvalidData, "p^n too large");
  require(d.b > 0, ErrorKind::InvalidData, "b must be positive");
  require(d.b % d.p != 0, ErrorKind::InvalidData, "p divides b = " + std::to_string(d.b));
  require(d.beta.is_exact() && !d.beta.is_exact_zero(), ErrorKind::InvalidData, "beta must be an exact nonzero series");
  require(d.beta.valuation() == -d.b, ErrorKind::InvalidData,
          "v_K(beta) = " + std::to_string(d.beta.valuation()) + " but b = " + std::to_string(d.b));
  for (const auto& w : d.omega) require(&w.field() == d.field.get(), ErrorKind::InvalidData, "omega outside F");
  if (moore_det(d.omega).is_zero()) fail(ErrorKind::DependentOmega, "omega entries are F_p-linearly dependent");
  d.e.assign(d.n, kNegInf);
  for (int i = 0; i < d.n; ++i) {
    require(d.eps[i].is_exact(), ErrorKind::InvalidData, "eps entries must be exact");
    d.eps[i] = as_reduce_K(d.eps[i]).reduced;
    d.e[i] = e_value(d.eps[i]);
    require(d.e[i] < d.b, ErrorKind::InvalidData,
            "e_" + std::to_string(i + 1) + " = " + std::to_string(d.e[i]) + " is not below b");
  }
  return d;
}

/// Same extension with beta := alpha_1, so omega_1 = 1 and eps_1 = 0.
inline ASData rebase(const ASData& d) {
  if (d.is_normalized_basis()) return d;
  ASData r = d;
  const int n = d.n;
  r.beta = d.alpha(0);
  const FieldElement w1 = d.omega[0];
  for (int i = 0; i < n; ++i) {
    r.omega[i] = d.omega[i] / w1;
    r.eps[i] = d.eps[i] - d.eps[0].scaled(r.omega[i].frobenius(n));
  }
  r.eps[0] = LaurentSeries::zero(d.F());
  return validate_data(r);
}

}  // namespace rrb

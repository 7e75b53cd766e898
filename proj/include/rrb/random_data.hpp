#pragma once

// Random valid Artin-Schreier data in a few hypothesis families.

#include <random>
#include <vector>

#include "rrb/as_data.hpp"

namespace rrb {

enum class DataFamily {
  R1,    // e_i p^(n-1) < b for all i
  Main,  // e_n p^(n-2) < b, e_i < e_n for 2 <= i < n, eps_1 = 0
  Any,   // any e_i < b
};

namespace detail {

inline int uniform(std::mt19937_64& rng, int lo, int hi) {  // [lo, hi]
  return lo + static_cast<int>(rng() % static_cast<unsigned long long>(hi - lo + 1));
}

inline FieldElement random_nonzero(const GaloisField& f, std::mt19937_64& rng) {
  return FieldElement(f, static_cast<GaloisField::Rep>(1 + rng() % (f.q() - 1)));
}

/// Series with e value exactly e: kNegInf -> 0, 0 -> nonzero constant,
/// e > 0 (p does not divide e) -> c t^-e + tail in (-e, 0].
inline LaurentSeries random_eps(const GaloisField& f, std::mt19937_64& rng, int e) {
  if (e == kNegInf) return LaurentSeries::zero(f);
  LaurentSeries s = LaurentSeries::constant(random_nonzero(f, rng));
  if (e == 0) return s;
  s = LaurentSeries::monomial(random_nonzero(f, rng), -e);
  for (int j = -e + 1; j <= 0; ++j)
    if (rng() % 3 == 0) s += LaurentSeries::monomial(FieldElement(f, static_cast<GaloisField::Rep>(rng() % f.q())), j);
  return s;
}

/// Values of e allowed below `bound` (exclusive), including -inf and 0.
inline std::vector<int> e_choices(int p, int bound) {
  std::vector<int> out = {kNegInf};
  if (bound > 0) out.push_back(0);
  for (int e = 1; e < bound; ++e)
    if (e % p != 0) out.push_back(e);
  return out;
}

}  // namespace detail

/// b is drawn from [1, bmax] (p does not divide b).
inline ASData random_as_data(std::mt19937_64& rng, int p, int n, int m, DataFamily fam, int bmax) {
  ASData d;
  d.field = GaloisField::get(p, m);
  d.p = p;
  d.n = n;
  const GaloisField& f = *d.field;
  do d.b = detail::uniform(rng, 1, bmax);
  while (d.b % p == 0);
  d.beta = LaurentSeries::monomial(detail::random_nonzero(f, rng), -d.b);
  for (int j = -d.b + 1; j <= 0; ++j)
    if (rng() % 3 == 0) d.beta += LaurentSeries::monomial(FieldElement(f, static_cast<GaloisField::Rep>(rng() % f.q())), j);
  do {
    d.omega.clear();
    for (int i = 0; i < n; ++i) d.omega.push_back(detail::random_nonzero(f, rng));
  } while (moore_det(d.omega).is_zero());

  std::vector<int> e(n, kNegInf);
  auto pick = [&](const std::vector<int>& v) { return v[rng() % v.size()]; };
  switch (fam) {
    case DataFamily::R1: {
      const long long scale = ipow(p, n - 1);
      const auto ch = detail::e_choices(p, static_cast<int>((d.b + scale - 1) / scale));
      for (int i = 1; i < n; ++i) e[i] = pick(ch);
      break;
    }
    case DataFamily::Main: {
      if (n >= 2) {
        const long long scale = ipow(p, n - 2);
        const auto ch = detail::e_choices(p, static_cast<int>(std::min<long long>((d.b + scale - 1) / scale, d.b)));
        e[n - 1] = pick(ch);
        for (int i = 1; i + 1 < n; ++i) {
          std::vector<int> lower;
          for (int x : ch)
            if (x == kNegInf || (e[n - 1] != kNegInf && x < e[n - 1])) lower.push_back(x);
          e[i] = pick(lower);
        }
      }
      break;
    }
    case DataFamily::Any: {
      const auto ch = detail::e_choices(p, d.b);
      for (int i = 0; i < n; ++i) e[i] = pick(ch);
      break;
    }
  }
  for (int i = 0; i < n; ++i) d.eps.push_back(detail::random_eps(f, rng, e[i]));
  return validate_data(d);
}

}  // namespace rrb

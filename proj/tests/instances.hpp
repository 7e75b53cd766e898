#pragma once

#include <vector>

#include "rrb/rrb.hpp"

namespace fixtures {

using namespace rrb;

inline ASData make(int p, int m, int n, int b, const char* beta, std::vector<const char*> omega,
                   std::vector<const char*> eps) {
  ASData d;
  d.field = GaloisField::get(p, m);
  d.p = p;
  d.n = n;
  d.b = b;
  d.beta = parse_laurent(*d.field, beta);
  for (auto w : omega) d.omega.push_back(parse_field_element(*d.field, w));
  for (auto e : eps) d.eps.push_back(parse_laurent(*d.field, e));
  return d;
}

inline ASData I1() { return make(2, 2, 2, 3, "t^-3", {"1", "g"}, {"0", "0"}); }
inline ASData I2() { return make(2, 2, 2, 5, "t^-5", {"1", "g"}, {"0", "t^-3"}); }
inline ASData I3() { return make(3, 2, 2, 5, "t^-5", {"1", "g"}, {"0", "t^-2"}); }
inline ASData N3() { return make(2, 3, 3, 11, "t^-11", {"1", "g", "g^2"}, {"0", "t^-1", "t^-3"}); }

inline LaurentSeries L(const ExtensionPtr& e, const char* s) { return parse_laurent(e->F(), s); }
inline TowerElement K(const ExtensionPtr& e, const char* s) { return TowerElement::from_K(*e, L(e, s)); }

}  // namespace fixtures

#pragma once

// A K-basis theta_0..theta_{N-1} of L whose valuations are pairwise distinct
// mod N = p^n, so v_L(sum c_s theta_s) = min_s (N v_K(c_s) + v_L(theta_s)).
//
// Built from a family B_s that is triangular in the monomial basis (B_s has
// an F^x coefficient at its leading monomial and nothing above it). If the
// norm oracle shows two B's sharing a class, the higher one is reduced by a
// multiple r t^k of the lower until all classes differ.

#include <vector>

#include "rrb/extension.hpp"

namespace rrb {

class ValuationBasis {
 public:
  ValuationBasis() = default;

  /// `family[s]` has leading monomial `lead[s]`. When `known_vals` is
  /// non-empty the valuations are taken as given (no norm computations).
  ValuationBasis(const Extension& e, std::vector<TowerElement> family, std::vector<int> lead,
                 std::vector<int> known_vals = {})
      : ext_(&e), tri_(std::move(family)), lead_(std::move(lead)) {
    const int N = e.degree();
    require(static_cast<int>(tri_.size()) == N && static_cast<int>(lead_.size()) == N, ErrorKind::InvalidArgument,
            "valuation basis needs p^n elements");
    s_of_lead_.assign(N, -1);
    diag_inv_.resize(N);
    for (int s = 0; s < N; ++s) {
      require(s_of_lead_[lead_[s]] < 0, ErrorKind::InvalidArgument, "leading monomials must be distinct");
      s_of_lead_[lead_[s]] = s;
      const LaurentSeries& c = tri_[s][lead_[s]];
      require(c.is_exact() && c.length() == 1 && c.lo() == 0, ErrorKind::InvalidArgument,
              "leading coefficient must be a constant");
      diag_inv_[s] = c.leading_coefficient().inverse();
      for (int a = lead_[s] + 1; a < N; ++a)
        require(tri_[s][a].is_exact_zero(), ErrorKind::InvalidArgument, "family is not triangular");
    }
    theta_ = tri_;
    if (!known_vals.empty()) {
      vals_ = std::move(known_vals);
    } else {
      vals_.resize(N);
      norms_.resize(N);
      for (int s = 0; s < N; ++s) {
        norms_[s] = e.norm(theta_[s]);
        vals_[s] = norms_[s].valuation();
      }
      reduce();
    }
    class_of_.assign(N, -1);
    for (int s = 0; s < N; ++s) {
      int& slot = class_of_[static_cast<int>(mod_floor(vals_[s], N))];
      require(slot < 0, ErrorKind::Internal, "valuation classes are not distinct");
      slot = s;
    }
  }

  const Extension& extension() const { return *ext_; }
  int size() const { return static_cast<int>(theta_.size()); }
  const TowerElement& element(int s) const { return theta_[s]; }
  const TowerElement& family_element(int s) const { return tri_[s]; }
  int val(int s) const { return vals_[s]; }
  const std::vector<int>& vals() const { return vals_; }
  /// Index s with v(theta_s) = w mod N.
  int index_of_class(long long w) const { return class_of_[static_cast<int>(mod_floor(w, size()))]; }
  /// Number of reduction steps applied (0 when the family was already good).
  int reductions() const { return reductions_; }
  bool is_family() const { return reductions_ == 0; }

  /// lambda_w = t^q theta_s with v = w.
  TowerElement lambda(long long w) const {
    const int s = index_of_class(w);
    return theta_[s].shifted(static_cast<int>((w - vals_[s]) / size()));
  }

  /// Coordinates with respect to the triangular family.
  std::vector<LaurentSeries> family_coordinates(TowerElement z) const {
    const int N = size();
    std::vector<LaurentSeries> d(N, LaurentSeries::zero(ext_->F()));
    for (int a = N - 1; a >= 0; --a) {
      if (z[a].is_exact_zero()) continue;
      const int s = s_of_lead_[a];
      const LaurentSeries c = z[a].scaled(diag_inv_[s]);
      d[s] = c;
      const TowerElement& B = tri_[s];
      for (int b = 0; b <= a; ++b)
        if (!B[b].is_exact_zero()) z[b] -= B[b] * c;
      z[a] = LaurentSeries::zero(ext_->F());
    }
    return d;
  }

  /// z = sum_s c_s theta_s.
  std::vector<LaurentSeries> coordinates(const TowerElement& z) const {
    auto d = family_coordinates(z);
    if (tinv_.empty()) return d;
    const int N = size();
    std::vector<LaurentSeries> e(N, LaurentSeries::zero(ext_->F()));
    for (int s = 0; s < N; ++s)
      for (int s2 = 0; s2 < N; ++s2)
        if (!tinv_[s2][s].is_exact_zero() && !d[s2].is_exact_zero()) e[s] += tinv_[s2][s] * d[s2];
    return e;
  }

  TowerElement from_coordinates(const std::vector<LaurentSeries>& c) const {
    TowerElement z = TowerElement::zero(*ext_);
    for (int s = 0; s < size(); ++s)
      if (!c[s].is_exact_zero()) z += theta_[s].scaled(c[s]);
    return z;
  }

  int valuation_of_coordinates(const std::vector<LaurentSeries>& c) const {
    long long v = kInf;
    for (int s = 0; s < size(); ++s) {
      if (c[s].is_exact_zero()) continue;
      v = std::min<long long>(v, static_cast<long long>(size()) * c[s].valuation() + vals_[s]);
    }
    return static_cast<int>(v);
  }

  /// Fast v_L.
  int valuation(const TowerElement& z) const { return valuation_of_coordinates(coordinates(z)); }

 private:
  void reduce() {
    const int N = size();
    const GaloisField& f = ext_->F();
    for (int guard = 0;; ++guard) {
      require(guard < 100000, ErrorKind::Internal, "valuation basis reduction does not terminate");
      int y = -1, z = -1;
      for (int i = 0; i < N && y < 0; ++i)
        for (int j = i + 1; j < N; ++j)
          if (mod_floor(vals_[i] - vals_[j], N) == 0) {
            y = vals_[i] <= vals_[j] ? i : j;
            z = vals_[i] <= vals_[j] ? j : i;
            break;
          }
      if (y < 0) return;
      if (tinv_.empty()) {
        tinv_.assign(N, std::vector<LaurentSeries>(N, LaurentSeries::zero(f)));
        for (int s = 0; s < N; ++s) tinv_[s][s] = LaurentSeries::one(f);
      }
      const int k = (vals_[z] - vals_[y]) / N;
      FieldElement r = norms_[z].leading_coefficient() / norms_[y].leading_coefficient();
      for (int i = 0; i < ext_->n(); ++i) r = frobenius_root(r);
      const LaurentSeries c = LaurentSeries::monomial(r, k);
      theta_[z] -= theta_[y].scaled(c);
      for (int s = 0; s < N; ++s)
        if (!tinv_[s][z].is_exact_zero()) tinv_[s][y] += tinv_[s][z] * c;
      norms_[z] = ext_->norm(theta_[z]);
      const int nv = norms_[z].valuation();
      require(nv > vals_[z], ErrorKind::Internal, "valuation basis reduction failed to raise the valuation");
      vals_[z] = nv;
      ++reductions_;
    }
  }

  const Extension* ext_ = nullptr;
  std::vector<TowerElement> tri_, theta_;
  std::vector<int> lead_, s_of_lead_, vals_, class_of_;
  std::vector<FieldElement> diag_inv_;
  std::vector<LaurentSeries> norms_;
  std::vector<std::vector<LaurentSeries>> tinv_;
  int reductions_ = 0;
};

}  // namespace rrb

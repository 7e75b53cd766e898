#pragma once

// L = K(x_1..x_n) as a free K-module on monomials x^a, a in {0..p-1}^n,
// indexed by a = sum a_i p^(i-1) (numeric order = lex order on (a_n..a_1)).

#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rrb/as_data.hpp"
#include "rrb/group_algebra.hpp"

namespace rrb {

class Extension;

class TowerElement {
 public:
  TowerElement() = default;
  explicit TowerElement(const Extension& e);

  static TowerElement zero(const Extension& e) { return TowerElement(e); }
  static TowerElement from_K(const Extension& e, const LaurentSeries& c);
  static TowerElement one(const Extension& e);
  /// x_i, 0-based.
  static TowerElement x(const Extension& e, int i);
  static TowerElement monomial(const Extension& e, int a, const LaurentSeries& c);

  const Extension& extension() const { return *ext_; }
  const std::vector<LaurentSeries>& coefficients() const { return c_; }
  const LaurentSeries& operator[](int a) const { return c_[a]; }
  LaurentSeries& operator[](int a) { return c_[a]; }
  int size() const { return static_cast<int>(c_.size()); }

  bool is_zero() const {
    for (const auto& s : c_)
      if (!s.is_exact_zero()) return false;
    return true;
  }
  bool is_exact() const {
    for (const auto& s : c_)
      if (!s.is_exact()) return false;
    return true;
  }
  /// Lies in K (only the x^0 coefficient is nonzero).
  bool in_K() const {
    for (size_t a = 1; a < c_.size(); ++a)
      if (!c_[a].is_exact_zero()) return false;
    return true;
  }

  TowerElement operator+(const TowerElement& o) const {
    TowerElement r = *this;
    for (size_t a = 0; a < c_.size(); ++a) r.c_[a] += o.c_[a];
    return r;
  }
  TowerElement operator-(const TowerElement& o) const {
    TowerElement r = *this;
    for (size_t a = 0; a < c_.size(); ++a) r.c_[a] -= o.c_[a];
    return r;
  }
  TowerElement operator-() const {
    TowerElement r = *this;
    for (auto& s : r.c_) s = -s;
    return r;
  }
  TowerElement& operator+=(const TowerElement& o) { return *this = *this + o; }
  TowerElement& operator-=(const TowerElement& o) { return *this = *this - o; }
  TowerElement operator*(const TowerElement& o) const;
  TowerElement& operator*=(const TowerElement& o) { return *this = *this * o; }

  TowerElement scaled(const LaurentSeries& k) const {
    TowerElement r = *this;
    for (auto& s : r.c_) s = s * k;
    return r;
  }
  TowerElement scaled(const FieldElement& a) const {
    TowerElement r = *this;
    for (auto& s : r.c_) s = s.scaled(a);
    return r;
  }
  /// Multiply by t^k.
  TowerElement shifted(int k) const {
    TowerElement r = *this;
    for (auto& s : r.c_) s = s.shifted(k);
    return r;
  }
  TowerElement add_scaled(const TowerElement& o, GaloisField::Rep a) const {
    TowerElement r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i].add_scaled(o.c_[i], a);
    return r;
  }
  TowerElement pow(int e) const;

  bool operator==(const TowerElement& o) const { return c_ == o.c_; }
  bool operator!=(const TowerElement& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  const Extension* ext_ = nullptr;
  std::vector<LaurentSeries> c_;
};

inline std::ostream& operator<<(std::ostream& os, const TowerElement& z) { return os << z.to_string(); }

class Extension {
 public:
  /// Validates, rebases to omega_1 = 1, eps_1 = 0, and builds the tables.
  static std::shared_ptr<const Extension> build(const ASData& raw) {
    return std::shared_ptr<const Extension>(new Extension(raw));
  }

  Extension(const Extension&) = delete;
  Extension& operator=(const Extension&) = delete;

  /// Data as given (validated), and the rebased data actually used.
  const ASData& input_data() const { return input_; }
  const ASData& data() const { return data_; }
  const GaloisField& F() const { return *data_.field; }
  const GroupAlgebra& R() const { return *R_; }
  int p() const { return data_.p; }
  int n() const { return data_.n; }
  int b() const { return data_.b; }
  /// [L:K] = p^n.
  int degree() const { return N_; }
  long long different() const { return data_.different(); }
  int digit(int a, int i) const { return R_->digit(a, i); }
  const LaurentSeries& alpha(int i) const { return alpha_[i]; }

  /// Galois-conjugate width cap for norm windows.
  int precision_cap() const { return precision_cap_; }
  void set_precision_cap(int cap) const { precision_cap_ = cap; }

  TowerElement multiply(const TowerElement& a, const TowerElement& b) const {
    TowerElement r = TowerElement::zero(*this);
    // acc[mask][base]: sums of products sharing an overflow pattern.
    std::vector<std::vector<LaurentSeries>> acc(1u << n(),
                                                std::vector<LaurentSeries>(N_, LaurentSeries::zero(F())));
    std::vector<char> used(static_cast<size_t>(N_) << n(), 0);
    for (int i = 0; i < N_; ++i) {
      if (a[i].is_exact_zero()) continue;
      for (int j = 0; j < N_; ++j) {
        if (b[j].is_exact_zero()) continue;
        const auto& pe = pair_[static_cast<size_t>(i) * N_ + j];
        acc[pe.mask][pe.base] += a[i] * b[j];
        used[(static_cast<size_t>(pe.mask) * N_) + pe.base] = 1;
      }
    }
    for (unsigned mask = 0; mask < (1u << n()); ++mask) {
      for (int base = 0; base < N_; ++base) {
        if (!used[static_cast<size_t>(mask) * N_ + base]) continue;
        const LaurentSeries& s = acc[mask][base];
        // subsets of mask: pick alpha_i (exponent drops by one) or not.
        for (unsigned sub = mask;; sub = (sub - 1) & mask) {
          int target = base;
          for (int i = 0; i < n(); ++i)
            if (sub & (1u << i)) target -= R_->unit_index(i);
          if (sub == 0)
            r[target] += s;
          else
            r[target] += s * alpha_prod_[sub];
          if (sub == 0) break;
        }
      }
    }
    return r;
  }

  /// (sigma_i - 1)(z): x^a -> sum_{r < a_i} C(a_i, r) x^(a with a_i = r).
  TowerElement apply_u(int i, const TowerElement& z) const {
    TowerElement r = TowerElement::zero(*this);
    const int unit = R_->unit_index(i);
    for (int a = 0; a < N_; ++a) {
      if (z[a].is_exact_zero()) continue;
      const int ai = digit(a, i);
      for (int k = 0; k < ai; ++k) {
        const int c = binom_mod_p(ai, k);
        if (c == 0) continue;
        r[a - (ai - k) * unit] = r[a - (ai - k) * unit].add_scaled(z[a], F().from_int(c));
      }
    }
    return r;
  }

  /// sigma^g(z), g in (Z/p)^n.
  TowerElement apply_group(const std::vector<int>& g, const TowerElement& z) const {
    TowerElement r = TowerElement::zero(*this);
    for (int a = 0; a < N_; ++a) {
      if (z[a].is_exact_zero()) continue;
      // prod_i (x_i + g_i)^(a_i)
      std::vector<std::pair<int, GaloisField::Rep>> terms = {{0, 1}};
      for (int i = 0; i < n(); ++i) {
        const int ai = digit(a, i);
        const int gi = static_cast<int>(mod_floor(g[i], p()));
        std::vector<std::pair<int, GaloisField::Rep>> next;
        for (int k = 0; k <= ai; ++k) {
          const long long c = binom_mod_p(ai, k) * ipow(gi, ai - k) % p();
          if (c == 0) continue;
          for (const auto& [idx, coef] : terms)
            next.push_back({idx + k * R_->unit_index(i), F().mul(coef, F().from_int(c))});
        }
        terms.swap(next);
      }
      for (const auto& [idx, coef] : terms) r[idx] = r[idx].add_scaled(z[a], coef);
    }
    return r;
  }

  /// u^c(z) for every monomial c of R.
  std::vector<TowerElement> u_images(const TowerElement& z) const {
    std::vector<TowerElement> out(N_);
    out[0] = z;
    for (int c = 1; c < N_; ++c) {
      int i = 0;
      while (digit(c, i) == 0) ++i;
      out[c] = apply_u(i, out[c - R_->unit_index(i)]);
    }
    return out;
  }

  TowerElement apply(const GAElement& g, const TowerElement& z) const {
    require(g.algebra().same(*R_), ErrorKind::InvalidArgument, "group algebra does not match the extension");
    const auto imgs = u_images(z);
    return combine(g, imgs);
  }

  TowerElement combine(const GAElement& g, const std::vector<TowerElement>& imgs) const {
    TowerElement r = TowerElement::zero(*this);
    for (int c = 0; c < N_; ++c)
      if (g[c] != 0) r = r.add_scaled(imgs[c], g[c]);
    return r;
  }

  /// Determinant of multiplication by z, windows of `width` coefficients.
  LaurentSeries norm(const TowerElement& z, int width) const {
    if (z.is_zero()) return LaurentSeries::zero(F());
    std::vector<std::vector<LaurentSeries>> m(N_, std::vector<LaurentSeries>(N_));
    for (int a = 0; a < N_; ++a) {
      const TowerElement col = z * TowerElement::monomial(*this, a, LaurentSeries::one(F()));
      for (int r = 0; r < N_; ++r) m[r][a] = col[r];
    }
    return windowed_det(std::move(m), width);
  }

  /// Norm with the doubling retry up to the precision cap.
  LaurentSeries norm(const TowerElement& z) const {
    int width = std::min(32, precision_cap_);
    while (true) {
      try {
        const LaurentSeries nz = norm(z, width);
        nz.valuation();
        return nz;
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::InsufficientPrecision || width >= precision_cap_) throw;
        width = std::min(2 * width, precision_cap_);
      }
    }
  }

  /// v_L(z) = v_K(N(z)).
  int val_L(const TowerElement& z) const {
    if (z.is_zero()) return kInf;
    return norm(z).valuation();
  }

  /// Residue of a unit u (v_L(u) = 0): the p^n-th root of lc N(u).
  FieldElement residue(const TowerElement& u) const {
    const LaurentSeries nu = norm(u);
    require(nu.valuation() == 0, ErrorKind::InvalidArgument, "residue of a non-unit");
    FieldElement r = nu.leading_coefficient();
    for (int i = 0; i < n(); ++i) r = frobenius_root(r);
    return r;
  }

  /// Elements of the subgroup generated by `gens` (vectors in (Z/p)^n).
  std::vector<std::vector<int>> subgroup(const std::vector<std::vector<int>>& gens) const {
    std::set<std::vector<int>> seen = {std::vector<int>(n(), 0)};
    std::vector<std::vector<int>> out = {std::vector<int>(n(), 0)};
    for (size_t at = 0; at < out.size(); ++at) {
      for (const auto& g : gens) {
        std::vector<int> h(n());
        for (int i = 0; i < n(); ++i) h[i] = static_cast<int>(mod_floor(out[at][i] + g[i], p()));
        if (seen.insert(h).second) out.push_back(h);
      }
    }
    return out;
  }

  /// sum_{h in H} h(z).
  TowerElement trace_sub(const TowerElement& z, const std::vector<std::vector<int>>& gens) const {
    TowerElement r = TowerElement::zero(*this);
    for (const auto& h : subgroup(gens)) r += apply_group(h, z);
    return r;
  }

  static int binom_mod_p_static(int a, int k, int p) {
    long long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
      num = num * (a - i) % p;
      den = den * (i + 1) % p;
    }
    return static_cast<int>(num * detail::inv_mod(static_cast<int>(den), p) % p);
  }
  int binom_mod_p(int a, int k) const { return binom_table_[a * p() + k]; }

 private:
  explicit Extension(const ASData& raw) {
    input_ = validate_data(raw);
    data_ = rebase(input_);
    N_ = static_cast<int>(data_.degree());
    R_ = std::make_unique<GroupAlgebra>(F(), n());
    precision_cap_ = static_cast<int>(std::min<long long>(4LL * (b() + 1) * N_, 1 << 20));
    alpha_.resize(n());
    for (int i = 0; i < n(); ++i) alpha_[i] = data_.alpha(i);
    alpha_prod_.assign(1u << n(), LaurentSeries::one(F()));
    for (unsigned s = 1; s < (1u << n()); ++s) {
      int low = 0;
      while (!(s & (1u << low))) ++low;
      alpha_prod_[s] = alpha_prod_[s & (s - 1)] * alpha_[low];
    }
    binom_table_.assign(static_cast<size_t>(p()) * p(), 0);
    for (int a = 0; a < p(); ++a)
      for (int k = 0; k <= a; ++k) binom_table_[a * p() + k] = binom_mod_p_static(a, k, p());
    pair_.resize(static_cast<size_t>(N_) * N_);
    for (int i = 0; i < N_; ++i)
      for (int j = 0; j < N_; ++j) {
        PairEntry pe;
        for (int k = 0; k < n(); ++k) {
          int d = digit(i, k) + digit(j, k);
          if (d >= p()) {
            pe.mask |= 1u << k;
            d = d - p() + 1;
          }
          pe.base += d * R_->unit_index(k);
        }
        pair_[static_cast<size_t>(i) * N_ + j] = pe;
      }
  }

  LaurentSeries windowed_det(std::vector<std::vector<LaurentSeries>> m, int width) const {
    const int sz = static_cast<int>(m.size());
    std::vector<int> rows(sz), cols(sz);
    for (int i = 0; i < sz; ++i) rows[i] = cols[i] = i;
    LaurentSeries det = LaurentSeries::one(F());
    bool negate = false;
    for (int step = 0; step < sz; ++step) {
      int br = -1, bc = -1, best = kInf;
      bool all_zero = true;
      for (int ri = step; ri < sz; ++ri)
        for (int ci = step; ci < sz; ++ci) {
          const LaurentSeries& e = m[rows[ri]][cols[ci]];
          if (e.is_exact_zero()) continue;
          all_zero = false;
          if (e.is_unknown()) continue;
          if (e.lo() < best) {
            best = e.lo();
            br = ri;
            bc = ci;
          }
        }
      if (all_zero) return LaurentSeries::zero(F());
      require(br >= 0, ErrorKind::InsufficientPrecision, "norm: no determinable pivot");
      if (br != step) {
        std::swap(rows[br], rows[step]);
        negate = !negate;
      }
      if (bc != step) {
        std::swap(cols[bc], cols[step]);
        negate = !negate;
      }
      const LaurentSeries piv = m[rows[step]][cols[step]];
      det = (det * piv).truncated_relative(width);
      const auto& prow = m[rows[step]];
      for (int ri = step + 1; ri < sz; ++ri) {
        auto& row = m[rows[ri]];
        const LaurentSeries& lead = row[cols[step]];
        if (lead.is_exact_zero()) continue;
        const LaurentSeries factor = LaurentSeries::divide(lead, piv, width).truncated_relative(width);
        for (int ci = step + 1; ci < sz; ++ci) {
          const LaurentSeries& pe = prow[cols[ci]];
          if (pe.is_exact_zero()) continue;
          row[cols[ci]] = (row[cols[ci]] - factor * pe).truncated_relative(width);
        }
      }
    }
    return negate ? -det : det;
  }

  struct PairEntry {
    int base = 0;
    unsigned mask = 0;
  };

  ASData input_, data_;
  int N_ = 0;
  std::unique_ptr<GroupAlgebra> R_;
  std::vector<LaurentSeries> alpha_, alpha_prod_;
  std::vector<PairEntry> pair_;
  std::vector<int> binom_table_;
  mutable int precision_cap_ = 0;
};

using ExtensionPtr = std::shared_ptr<const Extension>;

inline TowerElement::TowerElement(const Extension& e) : ext_(&e), c_(e.degree(), LaurentSeries::zero(e.F())) {}

inline TowerElement TowerElement::from_K(const Extension& e, const LaurentSeries& c) {
  TowerElement z(e);
  z.c_[0] = c;
  return z;
}
inline TowerElement TowerElement::one(const Extension& e) { return from_K(e, LaurentSeries::one(e.F())); }
inline TowerElement TowerElement::x(const Extension& e, int i) {
  return monomial(e, e.R().unit_index(i), LaurentSeries::one(e.F()));
}
inline TowerElement TowerElement::monomial(const Extension& e, int a, const LaurentSeries& c) {
  TowerElement z(e);
  z.c_[a] = c;
  return z;
}
inline TowerElement TowerElement::operator*(const TowerElement& o) const { return ext_->multiply(*this, o); }
inline TowerElement TowerElement::pow(int e) const {
  TowerElement r = one(*ext_), base = *this;
  for (; e > 0; e >>= 1, base = base * base)
    if (e & 1) r = r * base;
  return r;
}

inline std::string TowerElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int a = 0; a < size(); ++a) {
    if (c_[a].is_exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << c_[a].to_string() << ')';
    for (int i = 0; i < ext_->n(); ++i) {
      const int d = ext_->digit(a, i);
      if (d == 0) continue;
      os << "*x" << (i + 1);
      if (d > 1) os << '^' << d;
    }
  }
  return first ? "0" : os.str();
}

/// Cofactors mu_h of the first column of [X, phi(w), ..., phi^(m-1)(w)],
/// phi = Frobenius, so that det = sum mu_h X_h.
inline std::vector<FieldElement> moore_cofactors(const std::vector<FieldElement>& w) {
  const int m = static_cast<int>(w.size());
  const GaloisField& f = w[0].field();
  std::vector<FieldElement> mu(m, FieldElement::one(f));
  if (m == 1) return mu;
  for (int h = 0; h < m; ++h) {
    FMatrix minor;
    for (int r = 0; r < m; ++r) {
      if (r == h) continue;
      std::vector<FRep> row;
      FRep x = w[r].rep();
      for (int k = 1; k < m; ++k) {
        x = f.frob(x);
        row.push_back(x);
      }
      minor.push_back(row);
    }
    FieldElement d(f, det(f, minor));
    mu[h] = (h % 2 == 0) ? d : -d;
  }
  return mu;
}

struct YGenerator {
  TowerElement Y;
  std::vector<FieldElement> t;
};

/// Y = det([x, phi(omega), ..., phi^(n-1)(omega)]) = sum t_i x_i.
inline YGenerator construct_Y(const Extension& e) {
  const auto mu = moore_cofactors(e.data().omega);
  TowerElement y = TowerElement::zero(e);
  for (int i = 0; i < e.n(); ++i) y += TowerElement::x(e, i).scaled(mu[i]);
  return {y, mu};
}

}  // namespace rrb

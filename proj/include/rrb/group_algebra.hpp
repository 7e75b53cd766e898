#pragma once

// R = F[G] for G = (Z/p)^n, in nilpotent coordinates u_i = sigma_i - 1:
// R = F[u_1..u_n]/(u_i^p). Monomial u^c is indexed by c = sum c_i p^(i-1).

#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "rrb/finite_field.hpp"

namespace rrb {

class GroupAlgebra {
 public:
  using Rep = GaloisField::Rep;

  GroupAlgebra(const GaloisField& f, int n) : f_(&f), p_(f.p()), n_(n) {
    require(n >= 1, ErrorKind::InvalidArgument, "group rank must be positive");
    require(ipow(p_, n) <= 4096, ErrorKind::InvalidArgument, "group algebra too large");
    size_ = static_cast<int>(ipow(p_, n));
    digits_.assign(static_cast<size_t>(size_) * n_, 0);
    degree_.assign(size_, 0);
    for (int c = 0; c < size_; ++c) {
      int x = c;
      for (int i = 0; i < n_; ++i, x /= p_) {
        digits_[static_cast<size_t>(c) * n_ + i] = x % p_;
        degree_[c] += x % p_;
      }
    }
    inv_int_.assign(p_, 0);
    for (int i = 1; i < p_; ++i) inv_int_[i] = f.inv(f.from_int(i));
  }

  const GaloisField& field() const { return *f_; }
  int p() const { return p_; }
  int n() const { return n_; }
  /// Number of monomials, p^n.
  int size() const { return size_; }
  int digit(int c, int i) const { return digits_[static_cast<size_t>(c) * n_ + i]; }
  int degree(int c) const { return degree_[c]; }
  int max_degree() const { return n_ * (p_ - 1); }
  /// Index of u^c * u^d, or -1 when some exponent reaches p.
  int product_index(int c, int d) const {
    for (int i = 0; i < n_; ++i)
      if (digit(c, i) + digit(d, i) >= p_) return -1;
    return c + d;
  }
  int unit_index(int i) const { return static_cast<int>(ipow(p_, i)); }
  /// 1/i in F for 1 <= i < p.
  Rep inv_int(int i) const { return inv_int_[i]; }
  bool same(const GroupAlgebra& o) const { return f_ == o.f_ && n_ == o.n_; }

 private:
  const GaloisField* f_;
  int p_, n_, size_ = 0;
  std::vector<int> digits_, degree_;
  std::vector<Rep> inv_int_;
};

class GAElement {
 public:
  using Rep = GaloisField::Rep;

  GAElement() = default;
  explicit GAElement(const GroupAlgebra& r) : r_(&r), c_(r.size(), 0) {}

  static GAElement zero(const GroupAlgebra& r) { return GAElement(r); }
  static GAElement one(const GroupAlgebra& r) { return monomial(r, 0); }
  static GAElement monomial(const GroupAlgebra& r, int c, Rep coeff = 1) {
    GAElement e(r);
    e.c_[c] = coeff;
    return e;
  }
  /// u_i = sigma_i - 1 (i is 0-based).
  static GAElement u(const GroupAlgebra& r, int i) { return monomial(r, r.unit_index(i)); }
  static GAElement sigma(const GroupAlgebra& r, int i) { return one(r) + u(r, i); }
  /// prod sigma_i^(g_i).
  static GAElement group_element(const GroupAlgebra& r, const std::vector<int>& g) {
    GAElement e = one(r);
    for (int i = 0; i < r.n(); ++i) {
      const int gi = static_cast<int>(mod_floor(g[i], r.p()));
      for (int k = 0; k < gi; ++k) e = e * sigma(r, i);
    }
    return e;
  }

  const GroupAlgebra& algebra() const { return *r_; }
  const GaloisField& field() const { return r_->field(); }
  const std::vector<Rep>& coefficients() const { return c_; }
  Rep operator[](int c) const { return c_[c]; }
  void set(int c, Rep v) { c_[c] = v; }

  bool is_zero() const {
    for (Rep x : c_)
      if (x != 0) return false;
    return true;
  }

  /// Least total degree of a nonzero monomial; kInf for 0.
  int aug_degree() const {
    int d = kInf;
    for (int c = 0; c < r_->size(); ++c)
      if (c_[c] != 0) d = std::min(d, r_->degree(c));
    return d;
  }

  /// Drop monomials of degree >= k (representative of the class mod A^k).
  GAElement truncated(int k) const {
    GAElement e = *this;
    for (int c = 0; c < r_->size(); ++c)
      if (r_->degree(c) >= k) e.c_[c] = 0;
    return e;
  }

  GAElement operator+(const GAElement& o) const {
    GAElement e = *this;
    const auto& f = field();
    for (int c = 0; c < r_->size(); ++c) e.c_[c] = f.add(c_[c], o.c_[c]);
    return e;
  }
  GAElement operator-(const GAElement& o) const {
    GAElement e = *this;
    const auto& f = field();
    for (int c = 0; c < r_->size(); ++c) e.c_[c] = f.sub(c_[c], o.c_[c]);
    return e;
  }
  GAElement operator-() const { return zero(*r_) - *this; }
  GAElement scaled(Rep a) const {
    GAElement e = *this;
    for (auto& x : e.c_) x = field().mul(x, a);
    return e;
  }
  GAElement scaled(const FieldElement& a) const { return scaled(a.rep()); }
  GAElement operator*(const GAElement& o) const {
    GAElement e(*r_);
    const auto& f = field();
    const int sz = r_->size();
    for (int a = 0; a < sz; ++a) {
      if (c_[a] == 0) continue;
      for (int b = 0; b < sz; ++b) {
        if (o.c_[b] == 0) continue;
        const int ab = r_->product_index(a, b);
        if (ab >= 0) e.c_[ab] = f.add(e.c_[ab], f.mul(c_[a], o.c_[b]));
      }
    }
    return e;
  }
  GAElement& operator+=(const GAElement& o) { return *this = *this + o; }
  GAElement& operator-=(const GAElement& o) { return *this = *this - o; }
  GAElement& operator*=(const GAElement& o) { return *this = *this * o; }

  GAElement pow(int e) const {
    GAElement r = one(*r_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  bool operator==(const GAElement& o) const { return c_ == o.c_; }
  bool operator!=(const GAElement& o) const { return !(*this == o); }

  /// e.g. "1 + g*u1 + u1*u2^2"
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int c = 0; c < r_->size(); ++c) {
      if (c_[c] == 0) continue;
      if (!first) os << " + ";
      first = false;
      const std::string cs = field().format(c_[c]);
      const bool paren = field().literal_terms(c_[c]) > 1;
      if (c == 0) {
        os << (paren ? "(" + cs + ")" : cs);
        continue;
      }
      bool need_star = false;
      if (c_[c] != 1) {
        os << (paren ? "(" + cs + ")" : cs);
        need_star = true;
      }
      for (int i = 0; i < r_->n(); ++i) {
        const int d = r_->digit(c, i);
        if (d == 0) continue;
        if (need_star) os << '*';
        os << 'u' << (i + 1);
        if (d > 1) os << '^' << d;
        need_star = true;
      }
    }
    return first ? "0" : os.str();
  }

 private:
  const GroupAlgebra* r_ = nullptr;
  std::vector<Rep> c_;
};

inline std::ostream& operator<<(std::ostream& os, const GAElement& g) { return os << g.to_string(); }

/// gamma + A^k.
struct CosetRep {
  GAElement rep;
  int k = 2;

  CosetRep(const GAElement& g, int level) : rep(g.truncated(level)), k(level) {}
  bool operator==(const CosetRep& o) const { return k == o.k && rep == o.rep; }
};

/// binom(w, i) = w(w-1)...(w-i+1)/i! in F, for i < p.
inline FieldElement binomial(const FieldElement& w, int i) {
  const GaloisField& f = w.field();
  FieldElement r = FieldElement::one(f);
  for (int j = 0; j < i; ++j) r = r * (w - FieldElement::from_int(f, j)) / FieldElement::from_int(f, j + 1);
  return r;
}

/// e_p(delta) = sum_{i<p} delta^i / i!, reduced mod A^k (k = kInf keeps all of R).
inline GAElement truncated_exp(const GAElement& delta, int k = kInf) {
  require(delta.aug_degree() >= 1, ErrorKind::InvalidArgument, "truncated_exp needs an element of A");
  const GroupAlgebra& r = delta.algebra();
  const GaloisField& f = r.field();
  GAElement sum = GAElement::one(r), power = GAElement::one(r);
  GaloisField::Rep inv_fact = 1;
  for (int i = 1; i < r.p(); ++i) {
    power = power * delta;
    inv_fact = f.mul(inv_fact, r.inv_int(i));
    sum += power.scaled(inv_fact);
  }
  return sum.truncated(k);
}

/// l_p(gamma) = sum_{i=1}^{p-1} (-1)^(i-1) (gamma-1)^i / i, reduced mod A^k.
inline GAElement truncated_log(const GAElement& gamma, int k = kInf) {
  const GroupAlgebra& r = gamma.algebra();
  const GaloisField& f = r.field();
  const GAElement x = gamma - GAElement::one(r);
  require(x.aug_degree() >= 1, ErrorKind::InvalidArgument, "truncated_log needs an element of 1 + A");
  GAElement sum = GAElement::zero(r), power = GAElement::one(r);
  for (int i = 1; i < r.p(); ++i) {
    power = power * x;
    GaloisField::Rep c = r.inv_int(i);
    if (i % 2 == 0) c = f.neg(c);
    sum += power.scaled(c);
  }
  return sum.truncated(k);
}

/// gamma^[w] = sum_{i<p} binom(w, i) (gamma-1)^i, reduced mod A^k.
inline GAElement truncated_power(const GAElement& gamma, const FieldElement& w, int k = kInf) {
  const GroupAlgebra& r = gamma.algebra();
  const GAElement x = gamma - GAElement::one(r);
  require(x.aug_degree() >= 1, ErrorKind::InvalidArgument, "truncated_power needs an element of 1 + A");
  GAElement sum = GAElement::zero(r), power = GAElement::one(r);
  for (int i = 0; i < r.p(); ++i) {
    if (i > 0) power = power * x;
    sum += power.scaled(binomial(w, i));
  }
  return sum.truncated(k);
}

/// One element of Span_F(Lambda_p(G)) mod A^k and its preimage in G^[F].
struct SpanElement {
  std::vector<FieldElement> coords;  // w_1..w_n
  GAElement delta;                   // sum w_i l_p(sigma_i) mod A^k
  GAElement gamma;                   // e_p(delta) mod A^k
};

/// Coordinates of the i-th nonzero vector of F^n, lexicographic with w_1
/// most significant.
inline std::vector<FieldElement> span_coordinates(const GaloisField& f, int n, long long index) {
  std::vector<FieldElement> w(n, FieldElement::zero(f));
  for (int i = n - 1; i >= 0; --i, index /= f.q()) w[i] = FieldElement(f, static_cast<GaloisField::Rep>(index % f.q()));
  return w;
}

inline SpanElement span_element(const GroupAlgebra& r, const std::vector<FieldElement>& w, int k) {
  GAElement delta = GAElement::zero(r);
  for (int i = 0; i < r.n(); ++i) delta += truncated_log(GAElement::sigma(r, i), k).scaled(w[i]);
  delta = delta.truncated(k);
  SpanElement e{w, delta, delta.is_zero() ? GAElement::one(r) : truncated_exp(delta, k)};
  return e;
}

/// All q^n - 1 nonzero elements, lexicographic in the w-coordinates.
inline std::vector<SpanElement> gbar_span_enumerate(const GroupAlgebra& r, int k) {
  require(k >= 2 && k <= r.p(), ErrorKind::InvalidArgument, "k must satisfy 2 <= k <= p");
  const long long total = ipow(r.field().q(), r.n());
  std::vector<SpanElement> out;
  out.reserve(static_cast<size_t>(total - 1));
  for (long long idx = 1; idx < total; ++idx) out.push_back(span_element(r, span_coordinates(r.field(), r.n(), idx), k));
  return out;
}

/// First nonzero coordinate equals 1.
inline bool is_projective_rep(const std::vector<FieldElement>& w) {
  for (const auto& x : w)
    if (!x.is_zero()) return x.is_one();
  return false;
}

}  // namespace rrb

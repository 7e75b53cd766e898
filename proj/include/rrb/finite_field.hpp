#pragma once

// Table-driven arithmetic in F_{p^m}, p^m <= 1024.
//
// An element is stored as a 16-bit index whose base-p digits are its
// coordinates in the power basis 1, g, g^2, ... where g is a root of the field
// modulus. Fields are interned: `GaloisField::get` returns the same instance
// for the same (p, m, modulus) for the lifetime of the process, so elements
// may hold a plain pointer to their field.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rrb/errors.hpp"

namespace rrb {

/// Sentinel for +infinity in valuation-valued results.
inline constexpr int kInf = std::numeric_limits<int>::max();

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline long long ipow(long long base, int e) {
  long long r = 1;
  while (e-- > 0) r *= base;
  return r;
}

inline long long mod_floor(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }

namespace detail {

// Dense polynomials over F_p, coefficients low-to-high.
using PolyP = std::vector<int>;

inline void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int inv_mod(int a, int p) {
  int r = 1;
  for (int e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

// Remainder of a modulo a monic-or-not b over F_p.
inline PolyP poly_mod(PolyP a, const PolyP& b, int p) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  const int lead_inv = inv_mod(b.back(), p);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    const int c = a.back() * lead_inv % p;
    for (int i = 0; i <= db; ++i) a[shift + i] = static_cast<int>(mod_floor(a[shift + i] - c * b[i], p));
    trim(a);
  }
  return a;
}

inline bool is_irreducible(const PolyP& f, int p) {
  const int m = static_cast<int>(f.size()) - 1;
  if (m < 1 || f.back() == 0) return false;
  for (int d = 1; d <= m / 2; ++d) {
    // Every monic polynomial of degree d.
    const long long count = ipow(p, d);
    for (long long idx = 0; idx < count; ++idx) {
      PolyP g(d + 1, 0);
      long long t = idx;
      for (int i = 0; i < d; ++i, t /= p) g[i] = static_cast<int>(t % p);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Small table of Conway polynomials (low-to-high). Validated at construction.
inline const std::map<std::pair<int, int>, PolyP>& conway_table() {
  static const std::map<std::pair<int, int>, PolyP> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{2, 9}, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
      {{2, 10}, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{5, 4}, {2, 4, 4, 0, 1}},
      {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},
      {{7, 3}, {4, 0, 6, 1}},
      {{11, 1}, {9, 1}},
      {{11, 2}, {2, 7, 1}},
      {{13, 1}, {11, 1}},
      {{13, 2}, {2, 12, 1}},
      {{17, 1}, {14, 1}},
      {{19, 1}, {17, 1}},
      {{23, 1}, {18, 1}},
      {{29, 1}, {27, 1}},
      {{31, 1}, {28, 1}},
  };
  return table;
}

}  // namespace detail

class GaloisField {
 public:
  using Rep = std::uint16_t;
  static constexpr int kMaxOrder = 1024;

  /// Field with the built-in modulus for (p, m).
  static std::shared_ptr<const GaloisField> get(int p, int m) { return get(p, m, default_modulus(p, m)); }

  /// Field with an explicit monic modulus (coefficients low-to-high, size m+1).
  static std::shared_ptr<const GaloisField> get(int p, int m, const std::vector<int>& modulus) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, std::vector<int>>, std::shared_ptr<const GaloisField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, m, modulus);
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    auto f = std::shared_ptr<const GaloisField>(new GaloisField(p, m, modulus));
    registry.emplace(std::move(key), f);
    return f;
  }

  /// Conway polynomial when tabulated, else the first primitive monic
  /// irreducible polynomial in base-p counting order.
  static std::vector<int> default_modulus(int p, int m) {
    require(is_prime(p), ErrorKind::InvalidArgument, "characteristic " + std::to_string(p) + " is not prime");
    require(m >= 1 && ipow(p, m) <= kMaxOrder, ErrorKind::InvalidArgument,
            "field order " + std::to_string(p) + "^" + std::to_string(m) + " out of range (max 1024)");
    const auto& table = detail::conway_table();
    if (auto it = table.find({p, m}); it != table.end() && detail::is_irreducible(it->second, p)) return it->second;
    const long long count = ipow(p, m);
    for (long long idx = 0; idx < count; ++idx) {
      detail::PolyP f(m + 1, 0);
      long long t = idx;
      for (int i = 0; i < m; ++i, t /= p) f[i] = static_cast<int>(t % p);
      f[m] = 1;
      if (f[0] == 0 || !detail::is_irreducible(f, p)) continue;
      if (modulus_is_primitive(f, p)) return f;
    }
    fail(ErrorKind::Internal, "no primitive polynomial found");
  }

  static bool modulus_is_primitive(const std::vector<int>& f, int p) {
    const int m = static_cast<int>(f.size()) - 1;
    const long long order = ipow(p, m) - 1;
    // Multiplicative order of x modulo f.
    detail::PolyP x = {0, 1};
    detail::PolyP cur = {1};
    for (long long k = 1; k <= order; ++k) {
      detail::PolyP next(cur.size() + 1, 0);
      for (size_t i = 0; i < cur.size(); ++i) next[i + 1] = cur[i];
      cur = detail::poly_mod(next, f, p);
      if (cur.size() == 1 && cur[0] == 1) return k == order;
    }
    return false;
  }

  int p() const { return p_; }
  int m() const { return m_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Rep zero() const { return 0; }
  Rep one() const { return 1; }
  /// Root of the modulus.
  Rep generator() const { return gen_; }

  Rep from_int(long long k) const { return static_cast<Rep>(mod_floor(k, p_)); }

  Rep add(Rep a, Rep b) const {
    if (p_ == 2) return static_cast<Rep>(a ^ b);
    return add_[static_cast<size_t>(a) * q_ + b];
  }
  Rep neg(Rep a) const { return neg_[a]; }
  Rep sub(Rep a, Rep b) const { return add(a, neg_[b]); }
  Rep mul(Rep a, Rep b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Rep inv(Rep a) const {
    require(a != 0, ErrorKind::InvalidArgument, "inverse of zero in F_" + std::to_string(q_));
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  Rep div(Rep a, Rep b) const { return mul(a, inv(b)); }
  Rep pow(Rep a, long long e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const long long l = mod_floor(static_cast<long long>(log_[a]) * mod_floor(e, q_ - 1), q_ - 1);
    return exp_[l];
  }
  Rep frob(Rep a) const { return frob_[a]; }
  Rep frob_root(Rep a) const { return frob_root_[a]; }
  /// a^(p^k), k may be negative.
  Rep frob_pow(Rep a, int k) const {
    k = static_cast<int>(mod_floor(k, m_));
    for (int i = 0; i < k; ++i) a = frob_[a];
    return a;
  }
  bool in_prime_field(Rep a) const { return a < p_; }
  /// Integer value of a prime-field element.
  int prime_value(Rep a) const { return static_cast<int>(a); }

  std::vector<int> coefficients(Rep a) const {
    std::vector<int> c(m_, 0);
    for (int i = 0; i < m_; ++i, a = static_cast<Rep>(a / p_)) c[i] = a % p_;
    return c;
  }
  Rep from_coefficients(const std::vector<int>& c) const {
    long long v = 0;
    for (int i = std::min<int>(m_, static_cast<int>(c.size())) - 1; i >= 0; --i) v = v * p_ + mod_floor(c[i], p_);
    return static_cast<Rep>(v);
  }

  /// Literal form: polynomial in `g`, highest power first, e.g. "g^2+2*g+1".
  std::string format(Rep a) const {
    if (a == 0) return "0";
    if (m_ == 1) return std::to_string(a);
    const auto c = coefficients(a);
    std::ostringstream os;
    bool first = true;
    for (int i = m_ - 1; i >= 0; --i) {
      if (c[i] == 0) continue;
      if (!first) os << '+';
      first = false;
      if (i == 0) {
        os << c[i];
      } else {
        if (c[i] != 1) os << c[i] << '*';
        os << 'g';
        if (i > 1) os << '^' << i;
      }
    }
    return os.str();
  }

  /// Number of terms in the literal form (for parenthesization).
  int literal_terms(Rep a) const {
    if (m_ == 1) return a == 0 ? 0 : 1;
    const auto c = coefficients(a);
    return static_cast<int>(std::count_if(c.begin(), c.end(), [](int x) { return x != 0; }));
  }

 private:
  GaloisField(int p, int m, const std::vector<int>& modulus) : p_(p), m_(m), modulus_(modulus) {
    require(is_prime(p), ErrorKind::InvalidArgument, "characteristic " + std::to_string(p) + " is not prime");
    require(m >= 1 && ipow(p, m) <= kMaxOrder, ErrorKind::InvalidArgument, "field order out of range (max 1024)");
    require(static_cast<int>(modulus.size()) == m + 1 && modulus.back() == 1, ErrorKind::InvalidArgument,
            "modulus must be monic of degree m");
    for (int c : modulus)
      require(c >= 0 && c < p, ErrorKind::InvalidArgument, "modulus coefficients must lie in [0, p)");
    require(detail::is_irreducible(modulus, p), ErrorKind::InvalidArgument, "modulus is reducible over F_p");
    q_ = static_cast<int>(ipow(p, m));
    build_tables();
  }

  // Coefficient-vector multiplication modulo the field modulus.
  Rep slow_mul(Rep a, Rep b) const {
    const auto ca = coefficients(a), cb = coefficients(b);
    detail::PolyP prod(2 * m_, 0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    auto r = detail::poly_mod(prod, modulus_, p_);
    r.resize(m_, 0);
    return from_coefficients(r);
  }

  Rep slow_add(Rep a, Rep b) const {
    auto ca = coefficients(a);
    const auto cb = coefficients(b);
    for (int i = 0; i < m_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
    return from_coefficients(ca);
  }

  void build_tables() {
    neg_.resize(q_);
    for (int a = 0; a < q_; ++a) {
      auto c = coefficients(static_cast<Rep>(a));
      for (auto& x : c) x = (p_ - x) % p_;
      neg_[a] = from_coefficients(c);
    }
    if (p_ != 2) {
      add_.resize(static_cast<size_t>(q_) * q_);
      for (int a = 0; a < q_; ++a)
        for (int b = 0; b < q_; ++b) add_[static_cast<size_t>(a) * q_ + b] = slow_add(static_cast<Rep>(a), static_cast<Rep>(b));
    }
    // Root of the modulus: g itself for m > 1, -f0 for m = 1.
    gen_ = m_ == 1 ? from_int(-modulus_[0]) : static_cast<Rep>(p_);
    // Find a primitive element for log/exp tables.
    Rep prim = 0;
    for (int cand = 1; cand < q_ && prim == 0; ++cand) {
      Rep x = 1;
      int order = 0;
      do {
        x = slow_mul(x, static_cast<Rep>(cand));
        ++order;
      } while (x != 1);
      if (order == q_ - 1) prim = static_cast<Rep>(cand);
    }
    if (q_ == 2) prim = 1;
    log_.assign(q_, 0);
    exp_.assign(2 * q_, 0);
    Rep x = 1;
    for (int k = 0; k < q_ - 1; ++k) {
      exp_[k] = x;
      log_[x] = k;
      x = slow_mul(x, prim);
    }
    for (int k = q_ - 1; k < 2 * q_; ++k) exp_[k] = exp_[k - (q_ - 1)];
    frob_.resize(q_);
    frob_root_.resize(q_);
    for (int a = 0; a < q_; ++a) frob_[a] = pow(static_cast<Rep>(a), p_);
    for (int a = 0; a < q_; ++a) frob_root_[frob_[a]] = static_cast<Rep>(a);
  }

  int p_ = 0, m_ = 0, q_ = 0;
  std::vector<int> modulus_;
  Rep gen_ = 0;
  std::vector<Rep> add_, neg_, exp_, frob_, frob_root_;
  std::vector<int> log_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

/// Value-semantic element of an interned field.
class FieldElement {
 public:
  using Rep = GaloisField::Rep;

  FieldElement() = default;
  FieldElement(const GaloisField& f, Rep v) : f_(&f), v_(v) {}

  static FieldElement zero(const GaloisField& f) { return {f, 0}; }
  static FieldElement one(const GaloisField& f) { return {f, 1}; }
  static FieldElement from_int(const GaloisField& f, long long k) { return {f, f.from_int(k)}; }
  static FieldElement generator(const GaloisField& f) { return {f, f.generator()}; }

  const GaloisField& field() const { return *f_; }
  Rep rep() const { return v_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  std::vector<int> coefficients() const { return f_->coefficients(v_); }

  FieldElement operator+(const FieldElement& o) const { return {*f_, f_->add(v_, o.v_)}; }
  FieldElement operator-(const FieldElement& o) const { return {*f_, f_->sub(v_, o.v_)}; }
  FieldElement operator*(const FieldElement& o) const { return {*f_, f_->mul(v_, o.v_)}; }
  FieldElement operator/(const FieldElement& o) const { return {*f_, f_->div(v_, o.v_)}; }
  FieldElement operator-() const { return {*f_, f_->neg(v_)}; }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

  FieldElement inverse() const { return {*f_, f_->inv(v_)}; }
  FieldElement pow(long long e) const { return {*f_, f_->pow(v_, e)}; }
  FieldElement frobenius(int k = 1) const { return {*f_, f_->frob_pow(v_, k)}; }

  bool operator==(const FieldElement& o) const { return v_ == o.v_ && f_ == o.f_; }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string to_string() const { return f_->format(v_); }

 private:
  const GaloisField* f_ = nullptr;
  Rep v_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.to_string(); }

/// The unique b with b^p = a.
inline FieldElement frobenius_root(const FieldElement& a) { return {a.field(), a.field().frob_root(a.rep())}; }

}  // namespace rrb

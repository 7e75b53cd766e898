#pragma once

// Laurent series over F_q with explicit precision windows.
//
// A series is either exact (a Laurent polynomial, `hi() == kExact`), exact
// zero, or known modulo t^hi. Windows combine by
//   hi(x + y) = min(hi_x, hi_y)
//   hi(x * y) = min(lo_x + hi_y, lo_y + hi_x)
// and are never widened. Asking for the valuation of a series whose window
// holds no nonzero coefficient throws InsufficientPrecision.

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rrb/finite_field.hpp"

namespace rrb {

class LaurentSeries {
 public:
  using Rep = GaloisField::Rep;
  static constexpr int kExact = kInf;

  LaurentSeries() = default;
  explicit LaurentSeries(const GaloisField& f) : f_(&f) {}

  static LaurentSeries zero(const GaloisField& f) { return LaurentSeries(f); }
  static LaurentSeries monomial(const FieldElement& c, int e) {
    LaurentSeries s(c.field());
    if (c.is_zero()) return s;
    s.zero_ = false;
    s.lo_ = e;
    s.c_ = {c.rep()};
    return s;
  }
  static LaurentSeries constant(const FieldElement& c) { return monomial(c, 0); }
  static LaurentSeries one(const GaloisField& f) { return monomial(FieldElement::one(f), 0); }
  static LaurentSeries t_power(const GaloisField& f, int e) { return monomial(FieldElement::one(f), e); }

  /// Coefficients for exponents lo, lo+1, ...; `hi == kExact` for a polynomial.
  static LaurentSeries from_coefficients(const GaloisField& f, int lo, std::vector<Rep> coeffs, int hi = kExact) {
    LaurentSeries s(f);
    s.zero_ = false;
    s.lo_ = lo;
    s.c_ = std::move(coeffs);
    s.hi_ = hi;
    if (hi != kExact) {
      const int keep = std::max(0, std::min<int>(static_cast<int>(s.c_.size()), hi - lo));
      s.c_.resize(keep);
    }
    s.normalize();
    return s;
  }

  /// O(t^hi): nothing known below hi.
  static LaurentSeries big_o(const GaloisField& f, int hi) {
    LaurentSeries s(f);
    s.zero_ = false;
    s.lo_ = hi;
    s.hi_ = hi;
    return s;
  }

  const GaloisField& field() const { return *f_; }
  bool has_field() const { return f_ != nullptr; }
  bool is_exact() const { return zero_ || hi_ == kExact; }
  bool is_exact_zero() const { return zero_; }
  /// Not exact zero, but no nonzero coefficient below hi.
  bool is_unknown() const { return !zero_ && c_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return zero_ ? kExact : hi_; }
  /// One past the last stored coefficient.
  int end() const { return lo_ + static_cast<int>(c_.size()); }
  const std::vector<Rep>& raw() const { return c_; }
  size_t length() const { return c_.size(); }

  FieldElement coeff(int e) const {
    require(zero_ || e < hi_, ErrorKind::InsufficientPrecision,
            "coefficient of t^" + std::to_string(e) + " beyond precision " + std::to_string(hi_));
    if (zero_ || e < lo_ || e >= end()) return FieldElement::zero(*f_);
    return {*f_, c_[e - lo_]};
  }

  /// Smallest exponent with nonzero coefficient; kInf for exact zero.
  int valuation() const {
    if (zero_) return kInf;
    require(!c_.empty(), ErrorKind::InsufficientPrecision,
            "valuation undetermined: no nonzero coefficient below t^" + std::to_string(hi_));
    return lo_;
  }
  /// Guaranteed lower bound on the valuation (never throws).
  int valuation_bound() const { return zero_ ? kInf : lo_; }

  FieldElement leading_coefficient() const {
    valuation();
    return {*f_, c_.front()};
  }

  /// Absolute precision cap.
  LaurentSeries truncated(int hi) const {
    if (zero_ || hi >= hi_) return *this;
    LaurentSeries s = *this;
    s.hi_ = hi;
    const int keep = std::max(0, std::min<int>(static_cast<int>(c_.size()), hi - lo_));
    s.c_.resize(keep);
    if (hi < s.lo_) s.lo_ = hi;
    s.normalize();
    return s;
  }

  /// Keep at most `width` coefficients past the valuation. Exact series
  /// short enough stay exact.
  LaurentSeries truncated_relative(int width) const {
    if (zero_ || c_.empty()) return *this;
    if (hi_ == kExact && static_cast<int>(c_.size()) <= width) return *this;
    return truncated(lo_ + width);
  }

  LaurentSeries shifted(int k) const {
    LaurentSeries s = *this;
    if (zero_) return s;
    s.lo_ += k;
    if (s.hi_ != kExact) s.hi_ += k;
    return s;
  }

  LaurentSeries operator-() const {
    LaurentSeries s = *this;
    for (auto& x : s.c_) x = f_->neg(x);
    return s;
  }

  LaurentSeries scaled(const FieldElement& a) const {
    if (zero_) return *this;
    if (a.is_zero()) {
      if (hi_ == kExact) return zero(*f_);
      return big_o(*f_, hi_);
    }
    LaurentSeries s = *this;
    for (auto& x : s.c_) x = f_->mul(x, a.rep());
    return s;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) { return a.add_scaled(b, 1); }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) {
    return a.add_scaled(b, a.field_ref(b).neg(1));
  }
  LaurentSeries& operator+=(const LaurentSeries& b) { return *this = add_scaled(b, 1); }
  LaurentSeries& operator-=(const LaurentSeries& b) { return *this = add_scaled(b, field_ref(b).neg(1)); }

  /// this + a*b for a field scalar a.
  LaurentSeries add_scaled(const LaurentSeries& b, Rep a) const {
    if (b.zero_ || a == 0) {
      if (b.zero_ || b.hi_ == kExact) return *this;
      return truncated(b.hi_);
    }
    if (zero_) return b.scaled({*b.f_, a});
    const GaloisField& f = *f_;
    const int hi = std::min(hi_, b.hi_);
    const int lo = std::min(lo_, b.lo_);
    int stop = std::max(end(), b.end());
    if (hi != kExact) stop = std::min(stop, hi);
    LaurentSeries s(f);
    s.zero_ = false;
    s.hi_ = hi;
    s.lo_ = lo;
    if (stop > lo) {
      s.c_.assign(stop - lo, 0);
      for (int e = std::max(lo_, lo); e < std::min(end(), stop); ++e) s.c_[e - lo] = c_[e - lo_];
      for (int e = std::max(b.lo_, lo); e < std::min(b.end(), stop); ++e)
        s.c_[e - lo] = f.add(s.c_[e - lo], f.mul(a, b.c_[e - b.lo_]));
    } else {
      s.lo_ = hi;
    }
    s.normalize();
    return s;
  }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.zero_) return a;
    if (b.zero_) return b;
    const GaloisField& f = *a.f_;
    long long hi = kExact;
    if (a.hi_ != kExact || b.hi_ != kExact) {
      const long long h1 = b.hi_ == kExact ? kExact : static_cast<long long>(a.lo_) + b.hi_;
      const long long h2 = a.hi_ == kExact ? kExact : static_cast<long long>(b.lo_) + a.hi_;
      hi = std::min(h1, h2);
    }
    LaurentSeries s(f);
    s.zero_ = false;
    s.lo_ = a.lo_ + b.lo_;
    s.hi_ = static_cast<int>(hi);
    if (a.c_.empty() || b.c_.empty()) {
      s.lo_ = s.hi_;
      return s;
    }
    long long len = static_cast<long long>(a.c_.size()) + static_cast<long long>(b.c_.size()) - 1;
    if (hi != kExact) len = std::min<long long>(len, hi - s.lo_);
    if (len <= 0) {
      s.lo_ = s.hi_;
      return s;
    }
    s.c_.assign(static_cast<size_t>(len), 0);
    const int na = static_cast<int>(a.c_.size()), nb = static_cast<int>(b.c_.size());
    for (int i = 0; i < na && i < len; ++i) {
      const Rep ai = a.c_[i];
      if (ai == 0) continue;
      const int jmax = std::min<long long>(nb, len - i);
      Rep* out = s.c_.data() + i;
      for (int j = 0; j < jmax; ++j) {
        const Rep bj = b.c_[j];
        if (bj != 0) out[j] = f.add(out[j], f.mul(ai, bj));
      }
    }
    s.normalize();
    return s;
  }
  LaurentSeries& operator*=(const LaurentSeries& b) { return *this = *this * b; }

  /// x -> x^p (coefficientwise Frobenius, exponents times p).
  LaurentSeries frobenius() const {
    if (zero_) return *this;
    const GaloisField& f = *f_;
    const int p = f.p();
    LaurentSeries s(f);
    s.zero_ = false;
    s.lo_ = lo_ * p;
    s.hi_ = hi_ == kExact ? kExact : hi_ * p;
    if (c_.empty()) {
      s.lo_ = s.hi_;
      return s;
    }
    s.c_.assign((c_.size() - 1) * p + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) s.c_[i * p] = f.frob(c_[i]);
    return s;
  }

  LaurentSeries pow(int e) const {
    require(e >= 0, ErrorKind::InvalidArgument, "negative power of a series");
    LaurentSeries r = one(*f_), base = *this;
    for (; e > 0; e >>= 1, base = base * base)
      if (e & 1) r = r * base;
    return r;
  }

  /// a / d. A non-monomial exact divisor yields a window of `width`
  /// coefficients past the quotient's valuation.
  static LaurentSeries divide(const LaurentSeries& a, const LaurentSeries& d, int width) {
    require(!d.zero_, ErrorKind::InvalidArgument, "division by exact zero");
    require(!d.c_.empty(), ErrorKind::InsufficientPrecision, "divisor has no known nonzero coefficient");
    const GaloisField& f = *d.f_;
    if (a.zero_) return a;
    const int vd = d.lo_;
    const bool d_monomial = d.hi_ == kExact && d.c_.size() == 1;
    if (d_monomial) return a.scaled({f, f.inv(d.c_[0])}).shifted(-vd);
    const long long rel_d = d.hi_ == kExact ? kExact : static_cast<long long>(d.hi_) - vd;
    long long hi;
    if (a.hi_ == kExact && rel_d == kExact) {
      hi = static_cast<long long>(a.lo_) - vd + width;
    } else {
      const long long h1 = a.hi_ == kExact ? kExact : static_cast<long long>(a.hi_) - vd;
      const long long h2 = rel_d == kExact ? kExact : static_cast<long long>(a.lo_) - vd + rel_d;
      hi = std::min(h1, h2);
    }
    LaurentSeries q(f);
    q.zero_ = false;
    q.lo_ = a.lo_ - vd;
    q.hi_ = static_cast<int>(hi);
    const long long len = hi - q.lo_;
    if (len <= 0 || a.c_.empty()) {
      q.lo_ = q.hi_;
      return q;
    }
    q.c_.assign(static_cast<size_t>(len), 0);
    const Rep inv0 = f.inv(d.c_[0]);
    const int nd = static_cast<int>(d.c_.size());
    for (long long k = 0; k < len; ++k) {
      Rep acc = k < static_cast<long long>(a.c_.size()) ? a.c_[k] : 0;
      const int jmax = static_cast<int>(std::min<long long>(nd - 1, k));
      for (int j = 1; j <= jmax; ++j)
        if (d.c_[j] != 0 && q.c_[k - j] != 0) acc = f.sub(acc, f.mul(d.c_[j], q.c_[k - j]));
      q.c_[k] = f.mul(acc, inv0);
    }
    q.normalize();
    return q;
  }

  /// Exact equality of value and window.
  bool operator==(const LaurentSeries& o) const {
    if (zero_ || o.zero_) return zero_ == o.zero_;
    return hi_ == o.hi_ && c_ == o.c_ && (c_.empty() || lo_ == o.lo_);
  }
  bool operator!=(const LaurentSeries& o) const { return !(*this == o); }

  /// Agreement on the intersection of the two windows.
  bool agrees_with(const LaurentSeries& o) const {
    const int top = std::min(hi(), o.hi());
    const int lo = std::min(valuation_bound(), o.valuation_bound());
    if (top == kExact) return *this == o;
    for (int e = lo; e < top; ++e)
      if (coeff(e) != o.coeff(e)) return false;
    return true;
  }

  /// Literal form, e.g. "t^-3 + (g+1)*t^2 + O(t^5)".
  std::string to_string() const {
    if (zero_) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!first) os << " + ";
      first = false;
      const int e = lo_ + static_cast<int>(i);
      const Rep c = c_[i];
      const std::string cs = f_->format(c);
      if (e == 0) {
        os << (f_->literal_terms(c) > 1 ? "(" + cs + ")" : cs);
        continue;
      }
      if (c != 1) os << (f_->literal_terms(c) > 1 ? "(" + cs + ")" : cs) << '*';
      os << 't';
      if (e != 1) os << '^' << e;
    }
    if (hi_ != kExact) {
      if (!first) os << " + ";
      os << "O(t^" << hi_ << ")";
    }
    return os.str();
  }

 private:
  const GaloisField& field_ref(const LaurentSeries& other) const { return f_ ? *f_ : *other.f_; }

  void normalize() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      if (hi_ == kExact) {
        zero_ = true;
        lo_ = 0;
      } else {
        lo_ = hi_;
      }
      return;
    }
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      lo_ += static_cast<int>(lead);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  const GaloisField* f_ = nullptr;
  bool zero_ = true;
  int lo_ = 0;
  std::vector<Rep> c_;
  int hi_ = kExact;
};

inline std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) { return os << s.to_string(); }

/// Artin-Schreier map x -> x^p - x.
inline LaurentSeries wp(const LaurentSeries& x) { return x.frobenius() - x; }

struct ASReduction {
  LaurentSeries reduced;  // eps' = eps - wp(zeta)
  LaurentSeries zeta;
};

/// Normalize eps modulo wp(K): strip leading terms t^v with p | v < 0 by
/// Frobenius roots; a series of nonnegative valuation is replaced by its
/// constant term, with zeta = -(z + z^p + z^(p^2) + ...) carried to `width`
/// coefficients for the positive part z.
inline ASReduction as_reduce_K(const LaurentSeries& eps, int width = 64) {
  const GaloisField& f = eps.field();
  const int p = f.p();
  LaurentSeries cur = eps;
  LaurentSeries zeta = LaurentSeries::zero(f);
  while (true) {
    if (cur.is_exact_zero()) return {cur, zeta};
    const int v = cur.valuation();
    if (v < 0) {
      if (v % p != 0) return {cur, zeta};
      const FieldElement root = frobenius_root(cur.leading_coefficient());
      const LaurentSeries c = LaurentSeries::monomial(root, v / p);
      cur = cur - wp(c);
      zeta = zeta + c;
      continue;
    }
    const FieldElement c0 = cur.coeff(0);
    const LaurentSeries positive = cur - LaurentSeries::constant(c0);
    if (!positive.is_exact_zero()) {
      // z + z^p + ... converges t-adically; keep terms below the window.
      const int hi = cur.is_exact() ? positive.valuation_bound() + width : cur.hi();
      LaurentSeries term = positive.truncated(hi), sum = LaurentSeries::zero(f);
      while (!term.is_exact_zero() && term.valuation_bound() < hi) {
        sum = sum + term;
        term = term.frobenius().truncated(hi);
      }
      zeta = zeta - sum.truncated(hi);
    }
    return {cur.is_exact() ? LaurentSeries::constant(c0) : LaurentSeries::constant(c0).truncated(cur.hi()), zeta};
  }
}

}  // namespace rrb

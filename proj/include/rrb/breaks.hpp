#pragma once

// Refined breaks: SS_k by coset search over Span_F(Lambda_p(G)), (rho,k) and
// VC_k by the valuation criterion, the closed-form predictor, and the
// annihilator route for k = 2.
//
// Search core: for elements x with valuation-basis coordinates of u^c(x)
// precomputed, the t^j coefficient of coordinate s of gamma(x) is an F-linear
// functional of gamma's coefficients. Each such functional is a Row at level
// p^n j + v(theta_s) - v(x); v_L(gamma(x)) - v_L(x) is the level of the first
// row with nonzero value.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rrb/scaffold.hpp"

namespace rrb {

enum class SearchMode { Exhaustive, Linear };

struct SearchOptions {
  long long budget = 1LL << 26;
  SearchMode mode = SearchMode::Exhaustive;
};

class ActionProfile {
 public:
  struct Row {
    long long level;
    std::vector<FRep> coef;  // indexed by monomial c of R
  };

  ActionProfile() = default;

  /// Rows of x, levels relative to `base` (normally v_L(x)).
  static ActionProfile of_element(const ValuationBasis& B, const TowerElement& x, long long base) {
    ActionProfile P;
    P.add_element(B, x, base);
    P.sort();
    return P;
  }

  /// Merged rows over one representative per valuation class.
  static ActionProfile of_classes(const ValuationBasis& B, const std::vector<TowerElement>& reps) {
    ActionProfile P;
    for (const auto& x : reps) P.add_element(B, x, B.valuation(x));
    P.sort();
    return P;
  }

  const std::vector<Row>& rows() const { return rows_; }
  int width() const { return width_; }
  const GaloisField& field() const { return *f_; }

  /// Level of the first row with nonzero value at coefficient vector g; kInf if none.
  long long eval(const GAElement& g) const {
    const auto& c = g.coefficients();
    for (const auto& r : rows_) {
      FRep acc = 0;
      for (int i = 0; i < width_; ++i)
        if (c[i] != 0 && r.coef[i] != 0) acc = f_->add(acc, f_->mul(c[i], r.coef[i]));
      if (acc != 0) return r.level;
    }
    return kInf;
  }

  /// max over gamma' in fixed + A^k of eval(gamma').
  long long coset_max(const GAElement& fixed, int k, const SearchOptions& opt) const {
    const GroupAlgebra& R = fixed.algebra();
    const GAElement g0 = fixed.truncated(k);
    std::vector<int> free;
    for (int c = 0; c < R.size(); ++c)
      if (R.degree(c) >= k) free.push_back(c);
    const double raw = std::pow(static_cast<double>(f_->q()), static_cast<double>(free.size()));
    // Reduce to (constant, free part) rows.
    std::vector<long long> level;
    std::vector<FRep> cst;
    std::vector<std::vector<FRep>> lin;
    for (const auto& r : rows_) {
      FRep acc = 0;
      for (int c = 0; c < R.size(); ++c)
        if (g0[c] != 0 && r.coef[c] != 0) acc = f_->add(acc, f_->mul(g0[c], r.coef[c]));
      std::vector<FRep> l(free.size());
      bool any = false;
      for (size_t j = 0; j < free.size(); ++j) {
        l[j] = r.coef[free[j]];
        any = any || l[j] != 0;
      }
      if (!any && acc == 0) continue;
      level.push_back(r.level);
      cst.push_back(acc);
      lin.push_back(std::move(l));
      if (!any) break;  // nonzero on the whole coset: nothing later matters
    }
    if (opt.mode == SearchMode::Linear) return linear_max(level, cst, lin);
    require(raw <= static_cast<double>(opt.budget), ErrorKind::SearchTooLarge,
            "coset has q^" + std::to_string(free.size()) + " members, budget " + std::to_string(opt.budget));
    return exhaustive_max(level, cst, lin);
  }

 private:
  void add_element(const ValuationBasis& B, const TowerElement& x, long long base) {
    const Extension& e = B.extension();
    f_ = &e.F();
    width_ = e.degree();
    const int N = e.degree();
    const auto imgs = e.u_images(x);
    std::vector<std::vector<LaurentSeries>> co(N);
    for (int c = 0; c < N; ++c) co[c] = B.coordinates(imgs[c]);
    for (int s = 0; s < N; ++s) {
      int lo = kInf, hi = -kInf;
      for (int c = 0; c < N; ++c) {
        const auto& z = co[c][s];
        if (z.is_exact_zero()) continue;
        require(z.is_exact(), ErrorKind::InsufficientPrecision, "inexact coordinate in action profile");
        lo = std::min(lo, z.lo());
        hi = std::max(hi, z.end());
      }
      for (int j = lo; j < hi; ++j) {
        Row r{static_cast<long long>(N) * j + B.val(s) - base, std::vector<FRep>(N, 0)};
        bool any = false;
        for (int c = 0; c < N; ++c) {
          const auto& z = co[c][s];
          if (z.is_exact_zero() || j < z.lo() || j >= z.end()) continue;
          r.coef[c] = z.raw()[j - z.lo()];
          any = any || r.coef[c] != 0;
        }
        if (any) rows_.push_back(std::move(r));
      }
    }
  }
  void sort() {
    std::stable_sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.level < b.level; });
  }

  long long exhaustive_max(const std::vector<long long>& level, const std::vector<FRep>& cst,
                           const std::vector<std::vector<FRep>>& lin) const {
    const size_t R = level.size();
    if (R == 0) return kInf;
    const size_t F = lin[0].size();
    // Drop free coordinates that no remaining row sees.
    std::vector<size_t> cols;
    for (size_t j = 0; j < F; ++j)
      for (size_t r = 0; r < R; ++r)
        if (lin[r][j] != 0) {
          cols.push_back(j);
          break;
        }
    const size_t D = cols.size();
    std::vector<FRep> mat(R * std::max<size_t>(D, 1));
    for (size_t r = 0; r < R; ++r)
      for (size_t j = 0; j < D; ++j) mat[r * D + j] = lin[r][cols[j]];
    std::vector<FRep> x(D, 0);
    const int q = f_->q();
    long long best = -kInf;
    while (true) {
      long long v = kInf;
      for (size_t r = 0; r < R; ++r) {
        FRep acc = cst[r];
        const FRep* row = mat.data() + r * D;
        for (size_t j = 0; j < D; ++j)
          if (x[j] != 0 && row[j] != 0) acc = f_->add(acc, f_->mul(x[j], row[j]));
        if (acc != 0) {
          v = level[r];
          break;
        }
      }
      if (v > best) best = v;
      if (best == kInf) return kInf;
      size_t j = 0;
      while (j < D && ++x[j] == q) x[j++] = 0;
      if (j == D) break;
    }
    return best;
  }

  long long linear_max(const std::vector<long long>& level, const std::vector<FRep>& cst,
                       const std::vector<std::vector<FRep>>& lin) const {
    // Echelon rows (pivot, linear part, constant) of the affine system lin.f + cst = 0.
    struct ERow {
      size_t pivot;
      std::vector<FRep> l;
      FRep c;
    };
    std::vector<ERow> basis;
    for (size_t r = 0; r < level.size(); ++r) {
      std::vector<FRep> l = lin[r];
      FRep c = cst[r];
      for (const auto& b : basis) {
        const FRep a = l[b.pivot];
        if (a == 0) continue;
        for (size_t j = 0; j < l.size(); ++j) l[j] = f_->sub(l[j], f_->mul(a, b.l[j]));
        c = f_->sub(c, f_->mul(a, b.c));
      }
      size_t piv = 0;
      while (piv < l.size() && l[piv] == 0) ++piv;
      if (piv == l.size()) {
        if (c != 0) return level[r];
        continue;
      }
      const FRep inv = f_->inv(l[piv]);
      for (auto& y : l) y = f_->mul(y, inv);
      c = f_->mul(c, inv);
      for (auto& b : basis) {
        const FRep a = b.l[piv];
        if (a == 0) continue;
        for (size_t j = 0; j < l.size(); ++j) b.l[j] = f_->sub(b.l[j], f_->mul(a, l[j]));
        b.c = f_->sub(b.c, f_->mul(a, c));
      }
      basis.push_back({piv, std::move(l), c});
    }
    return kInf;
  }

  const GaloisField* f_ = nullptr;
  int width_ = 0;
  std::vector<Row> rows_;
};

/// Valuation basis, optional scaffold, and the merged class profile.
struct BreaksContext {
  ExtensionPtr ext;
  std::optional<Scaffold> scaffold;
  ValuationBasis basis;
  std::vector<TowerElement> reps;  // class representatives, reps[s] ~ theta_s
  ActionProfile classes;

  /// `random_reps` replaces each theta_s by theta_s times a random unit.
  /// A forced `level` (not Auto) refuses with HypothesisNotSatisfied.
  static BreaksContext make(const ExtensionPtr& ext, std::optional<unsigned long long> random_reps = std::nullopt,
                            ScaffoldLevel level = ScaffoldLevel::Auto) {
    BreaksContext C;
    C.ext = ext;
    try {
      C.scaffold = build_scaffold(ext, level);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::HypothesisNotSatisfied || level != ScaffoldLevel::Auto) throw;
    }
    C.basis = C.scaffold ? C.scaffold->basis(false) : generic_valuation_basis(*ext);
    for (int s = 0; s < C.basis.size(); ++s) C.reps.push_back(C.basis.element(s));
    if (random_reps) {
      std::mt19937_64 rng(*random_reps);
      for (auto& r : C.reps) r = r * C.random_unit(rng);
    }
    C.classes = ActionProfile::of_classes(C.basis, C.reps);
    return C;
  }

  const Extension& E() const { return *ext; }

  /// c0 + (random terms of positive valuation), c0 in F^x.
  TowerElement random_unit(std::mt19937_64& rng, int spread = 2) const {
    const GaloisField& f = ext->F();
    const int N = basis.size();
    TowerElement u = TowerElement::one(*ext).scaled(FieldElement(f, static_cast<FRep>(1 + rng() % (f.q() - 1))));
    for (int s = 0; s < N; ++s) {
      const int j0 = static_cast<int>(floor_div(-basis.val(s), N)) + 1;  // N j0 + v_s > 0
      for (int j = j0; j < j0 + spread; ++j) {
        const FRep c = static_cast<FRep>(rng() % f.q());
        if (c != 0) u += basis.element(s).scaled(LaurentSeries::monomial(FieldElement(f, c), j));
      }
    }
    return u;
  }

  /// rho with v_L(rho) = -(p^n - 1) b.
  TowerElement canonical_rho() const {
    if (scaffold) return vc_element(*scaffold);
    return basis.lambda(-static_cast<long long>(basis.size() - 1) * ext->b());
  }

  int valuation(const TowerElement& z) const { return basis.valuation(z); }
};

/// min over classes of v_L(gamma(theta_w)) - w.
inline long long hat_v(const BreaksContext& C, const GAElement& g) {
  if (g.is_zero()) return kInf;
  return C.classes.eval(g);
}

inline long long hat_v_coset(const BreaksContext& C, const CosetRep& g, const SearchOptions& opt = {}) {
  if (g.rep.is_zero()) return kInf;
  return C.classes.coset_max(g.rep, g.k, opt);
}

/// max over gamma' in the coset of v_L((gamma' - 1)(rho)).
inline long long i_rho(const BreaksContext& C, const CosetRep& g, const TowerElement& rho, const SearchOptions& opt = {}) {
  const int vr = C.valuation(rho);
  const int N = C.basis.size();
  require(mod_floor(vr - C.ext->b(), N) == 0, ErrorKind::RhoNotValuationCriterion,
          "v_L(rho) = " + std::to_string(vr) + " is not congruent to b mod p^n");
  const auto P = ActionProfile::of_element(C.basis, rho, vr);
  const GAElement fixed = g.rep - GAElement::one(g.rep.algebra());
  const long long m = P.coset_max(fixed, g.k, opt);
  return m == kInf ? kInf : m + vr;
}

enum class Method { SS, RHO, VC, Predicted, Annihilator };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::SS: return "ss";
    case Method::RHO: return "rho";
    case Method::VC: return "vc";
    case Method::Predicted: return "predict";
    case Method::Annihilator: return "ann";
  }
  return "?";
}

struct BreakEntry {
  long long value;
  int multiplicity;
  std::string witness;
};

struct BreakReport {
  Method method = Method::SS;
  int k = 2;
  std::vector<BreakEntry> breaks;  // ascending
  std::string flag;
  bool rho_independent = true;
  std::vector<std::vector<long long>> rho_sets;  // VC: B_{rho,k} per rho
  std::vector<std::string> rho_descriptors;

  std::string breaks_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < breaks.size(); ++i) os << (i ? ";" : "") << breaks[i].value << ':' << breaks[i].multiplicity;
    return os.str();
  }
  /// Values repeated by multiplicity, ascending.
  std::vector<long long> values() const {
    std::vector<long long> v;
    for (const auto& b : breaks)
      for (int i = 0; i < b.multiplicity; ++i) v.push_back(b.value);
    return v;
  }
  int total_multiplicity() const {
    int t = 0;
    for (const auto& b : breaks) t += b.multiplicity;
    return t;
  }
  bool same_breaks(const BreakReport& o) const { return values() == o.values(); }
};

namespace detail {

inline std::string coords_string(const std::vector<FieldElement>& w) {
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i].to_string();
  os << ')';
  return os.str();
}

/// Break values and multiplicities from the levels of an F-subspace filtration:
/// mult(h) = dim{v >= h} - dim{v > h}.
inline std::vector<BreakEntry> filtration_breaks(const GaloisField& f, const std::vector<std::vector<FieldElement>>& vecs,
                                                 const std::vector<long long>& vals,
                                                 const std::vector<std::string>& witnesses) {
  std::vector<long long> levels(vals.begin(), vals.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  auto dim_at_least = [&](long long h) {
    FMatrix m;
    for (size_t i = 0; i < vecs.size(); ++i)
      if (vals[i] >= h) {
        std::vector<FRep> row;
        for (const auto& x : vecs[i]) row.push_back(x.rep());
        m.push_back(row);
      }
    return m.empty() ? 0 : rank(f, m);
  };
  std::vector<BreakEntry> out;
  for (size_t i = 0; i < levels.size(); ++i) {
    const int d0 = dim_at_least(levels[i]);
    const int d1 = i + 1 < levels.size() ? dim_at_least(levels[i + 1]) : 0;
    if (d0 > d1) {
      std::string wit;
      for (size_t j = 0; j < vals.size(); ++j)
        if (vals[j] == levels[i]) {
          wit = witnesses[j];
          break;
        }
      out.push_back({levels[i], d0 - d1, wit});
    }
  }
  return out;
}

}  // namespace detail

inline BreakReport ss_breaks(const BreaksContext& C, int k, const SearchOptions& opt = {}) {
  const GroupAlgebra& R = C.E().R();
  require(k >= 2 && k <= R.p(), ErrorKind::InvalidArgument, "k must satisfy 2 <= k <= p");
  const GaloisField& f = R.field();
  const long long total = ipow(f.q(), R.n());
  std::vector<std::vector<FieldElement>> vecs;
  std::vector<long long> vals;
  std::vector<std::string> wit;
  for (long long idx = 1; idx < total; ++idx) {
    const auto w = span_coordinates(f, R.n(), idx);
    if (!is_projective_rep(w)) continue;
    const SpanElement el = span_element(R, w, k);
    vecs.push_back(w);
    vals.push_back(hat_v_coset(C, CosetRep(el.delta, k), opt));
    wit.push_back(detail::coords_string(w));
  }
  BreakReport rep;
  rep.method = Method::SS;
  rep.k = k;
  rep.breaks = detail::filtration_breaks(f, vecs, vals, wit);
  if (rep.total_multiplicity() != R.n()) rep.flag = "multiplicity-sum!=n";
  return rep;
}

/// B_{rho,k} as a sorted set.
inline std::vector<long long> rho_breaks(const BreaksContext& C, const TowerElement& rho, int k,
                                         const SearchOptions& opt = {}, std::vector<std::string>* witnesses = nullptr) {
  const GroupAlgebra& R = C.E().R();
  require(k >= 2 && k <= R.p(), ErrorKind::InvalidArgument, "k must satisfy 2 <= k <= p");
  const int vr = C.valuation(rho);
  const int N = C.basis.size();
  require(mod_floor(vr - C.ext->b(), N) == 0, ErrorKind::RhoNotValuationCriterion,
          "v_L(rho) = " + std::to_string(vr) + " is not congruent to b mod p^n");
  const auto P = ActionProfile::of_element(C.basis, rho, vr);
  const GaloisField& f = R.field();
  const long long total = ipow(f.q(), R.n());
  std::map<long long, std::string> seen;
  for (long long idx = 1; idx < total; ++idx) {
    const auto w = span_coordinates(f, R.n(), idx);
    const SpanElement el = span_element(R, w, k);
    const long long m = P.coset_max(el.gamma - GAElement::one(R), k, opt);
    seen.emplace(m, detail::coords_string(w));
  }
  std::vector<long long> out;
  for (const auto& [v, s] : seen) {
    out.push_back(v);
    if (witnesses) witnesses->push_back(s);
  }
  return out;
}

inline BreakReport vc_breaks(const BreaksContext& C, int k, int samples, unsigned long long seed,
                             const SearchOptions& opt = {}) {
  BreakReport rep;
  rep.method = Method::VC;
  rep.k = k;
  std::vector<std::string> wit;
  const auto base = rho_breaks(C, C.canonical_rho(), k, opt, &wit);
  rep.rho_sets.push_back(base);
  rep.rho_descriptors.push_back("canonical");
  std::mt19937_64 rng(seed);
  const int N = C.basis.size();
  for (int i = 0; i < samples; ++i) {
    const long long w = C.ext->b() + static_cast<long long>(N) * (static_cast<long long>(rng() % 5) - 2);
    const TowerElement rho = C.random_unit(rng) * C.basis.lambda(w);
    rep.rho_sets.push_back(rho_breaks(C, rho, k, opt));
    rep.rho_descriptors.push_back("unit*lambda_" + std::to_string(w));
    if (rep.rho_sets.back() != base) rep.rho_independent = false;
  }
  for (size_t i = 0; i < base.size(); ++i) rep.breaks.push_back({base[i], 1, wit[i]});
  if (static_cast<int>(base.size()) != C.E().n()) rep.flag = "|B|!=n";
  if (!rep.rho_independent) rep.flag += std::string(rep.flag.empty() ? "" : ",") + "rho-dependent";
  return rep;
}

/// Closed form. Refuses (flag, not error) outside the proven range.
inline BreakReport predict_breaks(const ASData& raw) {
  const ASData d = rebase(validate_data(raw));
  BreakReport rep;
  rep.method = Method::Predicted;
  rep.k = 0;
  const int n = d.n, p = d.p, b = d.b;
  std::vector<long long> vals;
  for (int i = 0; i + 1 < n; ++i) vals.push_back(b * ipow(p, i));
  const long long top = b * ipow(p, n - 1);
  const int en = d.e[n - 1];
  const long long bstar = en == kNegInf ? top : std::min((static_cast<long long>(b) - en) * ipow(p, n - 1) + b, top);
  bool main_hyp = n == 1 || (en == kNegInf ? false : static_cast<long long>(en) * ipow(p, std::max(n - 2, 0)) < b);
  for (int i = 1; i + 1 < n && main_hyp; ++i)
    if (!(d.e[i] == kNegInf || (en != kNegInf && d.e[i] < en))) main_hyp = false;
  const bool r1 = e_bound_holds(d, 1);
  if (n == 1) {
    vals.push_back(b);
    rep.flag = "hypotheses=met";
  } else if (r1) {
    vals.push_back(top);
    rep.flag = "hypotheses=met";
  } else {
    vals.push_back(bstar);
    rep.flag = main_hyp ? "hypotheses=met" : "hypotheses=unmet;conjectural";
  }
  std::map<long long, int> mult;
  for (long long v : vals) ++mult[v];
  for (const auto& [v, m] : mult) rep.breaks.push_back({v, m, ""});
  return rep;
}

/// SS_2 filtration from intersections of annihilators of M^r/M^(r+h).
inline BreakReport annihilator_breaks(const BreaksContext& C) {
  const Extension& e = C.E();
  const GroupAlgebra& R = e.R();
  const GaloisField& f = e.F();
  const int N = e.degree(), n = e.n();
  // Rows of lambda_w0, w0 in [0, N), with absolute levels.
  std::vector<ActionProfile> prof(N);
  for (int w0 = 0; w0 < N; ++w0) prof[w0] = ActionProfile::of_element(C.basis, C.basis.lambda(w0), 0);
  std::vector<int> aug;  // monomials of A
  for (int c = 0; c < N; ++c)
    if (R.degree(c) >= 1) aug.push_back(c);
  std::vector<int> lin_pos;  // positions of u_i within aug
  for (int i = 0; i < n; ++i) lin_pos.push_back(static_cast<int>(std::find(aug.begin(), aug.end(), R.unit_index(i)) - aug.begin()));
  auto dim_for = [&](long long h) {
    FMatrix cond;
    for (long long r = 0; r < N; ++r)
      for (long long w = r; w < r + h; ++w) {
        const int w0 = static_cast<int>(mod_floor(w, N));
        const long long shift = w - w0;
        for (const auto& row : prof[w0].rows()) {
          const long long lvl = row.level + shift;
          if (lvl >= r + h) break;
          std::vector<FRep> c(aug.size());
          bool any = false;
          for (size_t j = 0; j < aug.size(); ++j) {
            c[j] = row.coef[aug[j]];
            any = any || c[j] != 0;
          }
          if (any) cond.push_back(std::move(c));
        }
      }
    const FMatrix ker = kernel(f, cond, static_cast<int>(aug.size()));
    FMatrix proj;
    for (const auto& v : ker) {
      std::vector<FRep> row;
      for (int pos : lin_pos) row.push_back(v[pos]);
      proj.push_back(row);
    }
    return proj.empty() ? 0 : rank(f, proj);
  };
  BreakReport rep;
  rep.method = Method::Annihilator;
  rep.k = 2;
  int prev = dim_for(0);
  const long long hmax = 4LL * e.b() * N + N;
  for (long long h = 1; prev > 0; ++h) {
    require(h <= hmax, ErrorKind::Internal, "annihilator filtration did not terminate");
    const int d = dim_for(h);
    if (d < prev) rep.breaks.push_back({h - 1, prev - d, ""});
    prev = d;
  }
  if (rep.total_multiplicity() != n) rep.flag = "multiplicity-sum!=n";
  return rep;
}

}  // namespace rrb

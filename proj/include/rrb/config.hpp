#pragma once

// Flat key = value run configuration.
//
//   # comment
//   p = 3
//   omega = 1, g
//   eps = 0, t^-2
//   sweep.e = -inf,1;-inf,3     (or: all)
//
// Errors are ErrorKind::Parse with "line L, column C".

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rrb/as_data.hpp"
#include "rrb/literal.hpp"

namespace rrb {

/// A literal with its source position (for error reporting only).
struct SourceText {
  std::string text;
  int line = 0;
  int column = 0;
  bool operator==(const SourceText& o) const { return text == o.text; }
};

struct RunConfig {
  std::optional<int> p, n, m, b;
  std::vector<int> modulus;  // low-to-high, monic; empty = built-in
  std::optional<SourceText> beta;
  std::vector<SourceText> omega, eps;
  int precision = 0;  // norm window cap; 0 = 4 (b+1) p^n
  long long budget = 1LL << 26;
  std::vector<int> k;  // empty = 2..p
  int samples = 5;
  unsigned long long seed = 1;
  std::string out;
  std::string method = "all";
  std::string scaffold = "auto";  // auto | full | k1
  std::vector<int> sweep_b;
  bool sweep_e_all = false;
  std::vector<std::vector<int>> sweep_e;  // kNegInf for -inf
  std::vector<int> sweep_m;

  bool operator==(const RunConfig& o) const {
    return p == o.p && n == o.n && m == o.m && b == o.b && modulus == o.modulus && beta == o.beta && omega == o.omega &&
           eps == o.eps && precision == o.precision && budget == o.budget && k == o.k && samples == o.samples &&
           seed == o.seed && out == o.out && method == o.method && scaffold == o.scaffold && sweep_b == o.sweep_b &&
           sweep_e_all == o.sweep_e_all && sweep_e == o.sweep_e && sweep_m == o.sweep_m;
  }

  bool has_instance() const { return b.has_value() || beta.has_value() || !omega.empty() || !eps.empty(); }

  static RunConfig parse(std::string_view text);
  std::string print() const;
};

inline const std::vector<std::string>& method_names() {
  static const std::vector<std::string> v = {"ss", "vc", "predict", "ann", "all"};
  return v;
}

namespace detail {

[[noreturn]] inline void config_error(int line, int col, const std::string& msg) {
  fail(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

struct Piece {
  std::string text;
  int col;
};

/// Split on `sep`, trimming; columns are 1-based in the original line.
inline std::vector<Piece> split_trim(const std::string& s, int col0, char sep) {
  std::vector<Piece> out;
  size_t start = 0;
  while (true) {
    size_t end = s.find(sep, start);
    if (end == std::string::npos) end = s.size();
    size_t a = start, b = end;
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    out.push_back({s.substr(a, b - a), col0 + static_cast<int>(a)});
    if (end == s.size()) break;
    start = end + 1;
  }
  return out;
}

inline long long parse_int(const Piece& pc, int line, long long lo, long long hi) {
  const std::string& t = pc.text;
  if (t.empty()) config_error(line, pc.col, "expected an integer");
  size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) config_error(line, pc.col, "expected an integer");
  for (size_t j = i; j < t.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(t[j])))
      config_error(line, pc.col + static_cast<int>(j), "unexpected '" + std::string(1, t[j]) + "' in integer");
  if (t.size() - i > 18) config_error(line, pc.col, "integer out of range");
  const long long v = std::stoll(t);
  if (v < lo || v > hi)
    config_error(line, pc.col, "value " + t + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return v;
}

inline std::vector<int> parse_int_list(const std::string& s, int col0, int line, long long lo, long long hi) {
  std::vector<int> out;
  bool blank = true;
  for (char c : s) blank = blank && std::isspace(static_cast<unsigned char>(c));
  if (blank) return out;
  for (const auto& pc : split_trim(s, col0, ',')) out.push_back(static_cast<int>(parse_int(pc, line, lo, hi)));
  return out;
}

inline std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

inline std::string e_vector_string(const std::vector<int>& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + format_e(e[i]);
  return s;
}

}  // namespace detail

inline RunConfig RunConfig::parse(std::string_view text) {
  using namespace detail;
  RunConfig c;
  std::map<std::string, int> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const size_t hash = raw.find('#');
    const std::string s = hash == std::string::npos ? raw : raw.substr(0, hash);
    size_t a = 0;
    while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    if (a == s.size()) continue;
    const size_t eq = s.find('=');
    if (eq == std::string::npos) config_error(line, static_cast<int>(a) + 1, "expected 'key = value'");
    size_t ke = eq;
    while (ke > a && std::isspace(static_cast<unsigned char>(s[ke - 1]))) --ke;
    const std::string key = s.substr(a, ke - a);
    const int kcol = static_cast<int>(a) + 1;
    if (key.empty()) config_error(line, kcol, "missing key");
    if (seen.count(key)) config_error(line, kcol, "duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")");
    seen[key] = line;
    const std::string val = s.substr(eq + 1);
    const int vcol = static_cast<int>(eq) + 2;
    const Piece whole = split_trim(val, vcol, '\n')[0];
    auto one_int = [&](long long lo, long long hi) { return parse_int(whole, line, lo, hi); };

    if (key == "p") c.p = static_cast<int>(one_int(2, 1024));
    else if (key == "n") c.n = static_cast<int>(one_int(1, 16));
    else if (key == "m") c.m = static_cast<int>(one_int(1, 16));
    else if (key == "b") c.b = static_cast<int>(one_int(-1000000, 1000000));
    else if (key == "modulus") c.modulus = parse_int_list(val, vcol, line, 0, 1024);
    else if (key == "beta") c.beta = SourceText{whole.text, line, whole.col};
    else if (key == "omega" || key == "eps") {
      auto& dst = key == "omega" ? c.omega : c.eps;
      for (const auto& pc : split_trim(val, vcol, ',')) {
        if (pc.text.empty()) config_error(line, pc.col, "empty entry in '" + key + "'");
        dst.push_back({pc.text, line, pc.col});
      }
    } else if (key == "precision") c.precision = static_cast<int>(one_int(0, 1 << 20));
    else if (key == "budget") c.budget = one_int(1, 1LL << 50);
    else if (key == "k") c.k = parse_int_list(val, vcol, line, 2, 1024);
    else if (key == "samples") c.samples = static_cast<int>(one_int(0, 1000));
    else if (key == "seed") c.seed = static_cast<unsigned long long>(one_int(0, (1LL << 62)));
    else if (key == "out") c.out = whole.text;
    else if (key == "method") {
      bool ok = false;
      for (const auto& m : method_names()) ok = ok || m == whole.text;
      if (!ok) config_error(line, whole.col, "unknown method '" + whole.text + "' (ss|vc|predict|ann|all)");
      c.method = whole.text;
    } else if (key == "scaffold") {
      if (whole.text != "auto" && whole.text != "full" && whole.text != "k1")
        config_error(line, whole.col, "unknown scaffold level '" + whole.text + "' (auto|full|k1)");
      c.scaffold = whole.text;
    } else if (key == "sweep.b") c.sweep_b = parse_int_list(val, vcol, line, 1, 1000000);
    else if (key == "sweep.m") c.sweep_m = parse_int_list(val, vcol, line, 1, 16);
    else if (key == "sweep.e") {
      if (whole.text == "all") {
        c.sweep_e_all = true;
      } else if (!whole.text.empty()) {
        for (const auto& vec : split_trim(val, vcol, ';')) {
          std::vector<int> e;
          for (const auto& pc : split_trim(vec.text, vec.col, ',')) {
            if (pc.text == "-inf") e.push_back(kNegInf);
            else e.push_back(static_cast<int>(parse_int(pc, line, 0, 1000000)));
          }
          c.sweep_e.push_back(e);
        }
      }
    } else {
      config_error(line, kcol, "unknown key '" + key + "'");
    }
  }
  return c;
}

inline std::string RunConfig::print() const {
  using namespace detail;
  std::ostringstream os;
  if (p) os << "p = " << *p << '\n';
  if (n) os << "n = " << *n << '\n';
  if (m) os << "m = " << *m << '\n';
  if (!modulus.empty()) os << "modulus = " << join_ints(modulus) << '\n';
  if (b) os << "b = " << *b << '\n';
  if (beta) os << "beta = " << beta->text << '\n';
  auto texts = [](const std::vector<SourceText>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].text;
    return s;
  };
  if (!omega.empty()) os << "omega = " << texts(omega) << '\n';
  if (!eps.empty()) os << "eps = " << texts(eps) << '\n';
  os << "precision = " << precision << '\n';
  os << "budget = " << budget << '\n';
  if (!k.empty()) os << "k = " << join_ints(k) << '\n';
  os << "samples = " << samples << '\n';
  os << "seed = " << seed << '\n';
  if (!out.empty()) os << "out = " << out << '\n';
  os << "method = " << method << '\n';
  os << "scaffold = " << scaffold << '\n';
  if (!sweep_b.empty()) os << "sweep.b = " << join_ints(sweep_b) << '\n';
  if (sweep_e_all) {
    os << "sweep.e = all\n";
  } else if (!sweep_e.empty()) {
    os << "sweep.e = ";
    for (size_t i = 0; i < sweep_e.size(); ++i) os << (i ? ";" : "") << e_vector_string(sweep_e[i]);
    os << '\n';
  }
  if (!sweep_m.empty()) os << "sweep.m = " << join_ints(sweep_m) << '\n';
  return os.str();
}

/// Field, literals and validation. Literal errors carry the config position.
inline ASData data_from_config(const RunConfig& c) {
  auto need = [](bool ok, const std::string& key) {
    require(ok, ErrorKind::InvalidArgument, "config is missing '" + key + "'");
  };
  need(c.p.has_value(), "p");
  need(c.n.has_value(), "n");
  need(c.b.has_value(), "b");
  need(c.beta.has_value(), "beta");
  need(!c.omega.empty(), "omega");
  const int p = *c.p, n = *c.n, m = c.m.value_or(n);
  require(is_prime(p), ErrorKind::InvalidData, "p = " + std::to_string(p) + " is not prime");
  ASData d;
  d.field = c.modulus.empty() ? GaloisField::get(p, m) : GaloisField::get(p, m, c.modulus);
  d.p = p;
  d.n = n;
  d.b = *c.b;
  auto located = [](const SourceText& s, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Parse) throw;
      std::string msg = e.what();
      const std::string pre = "Parse: ";
      if (msg.rfind(pre, 0) == 0) msg = msg.substr(pre.size());
      fail(ErrorKind::Parse, "line " + std::to_string(s.line) + ", " + msg);
    }
  };
  d.beta = located(*c.beta, [&] { return parse_laurent(*d.field, c.beta->text, c.beta->column); });
  for (const auto& w : c.omega)
    d.omega.push_back(located(w, [&] { return parse_field_element(*d.field, w.text, w.column); }));
  if (c.eps.empty()) {
    d.eps.assign(n, LaurentSeries::zero(*d.field));
  } else {
    for (const auto& s : c.eps) d.eps.push_back(located(s, [&] { return parse_laurent(*d.field, s.text, s.column); }));
  }
  return validate_data(d);
}

/// Canonical sweep instance: beta = t^-b, omega = (1, g, ..., g^(n-1)), eps_i = t^-e_i
/// (e_i > 0), g (e_i = 0) or 0 (-inf).
inline ASData sweep_instance(int p, int n, int m, int b, const std::vector<int>& e) {
  ASData d;
  d.field = GaloisField::get(p, m);
  d.p = p;
  d.n = n;
  d.b = b;
  const GaloisField& f = *d.field;
  d.beta = LaurentSeries::t_power(f, -b);
  const FieldElement g = m == 1 ? FieldElement::one(f) : FieldElement::generator(f);
  for (int i = 0; i < n; ++i) d.omega.push_back(g.pow(i));
  require(static_cast<int>(e.size()) == n, ErrorKind::InvalidArgument,
          "e-vector " + detail::e_vector_string(e) + " does not have n = " + std::to_string(n) + " entries");
  for (int x : e) {
    if (x == kNegInf) d.eps.push_back(LaurentSeries::zero(f));
    else if (x == 0) d.eps.push_back(LaurentSeries::constant(g));
    else d.eps.push_back(LaurentSeries::t_power(f, -x));
  }
  return validate_data(d);
}

}  // namespace rrb

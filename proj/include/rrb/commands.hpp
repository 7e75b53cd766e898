#pragma once

// Command drivers behind the CLI verbs: breaks, verify, sweep, selftest.

#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rrb/config.hpp"
#include "rrb/random_data.hpp"
#include "rrb/verify.hpp"

namespace rrb {

enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitHypothesis = 3, kExitPrecision = 4, kExitBudget = 5 };

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidData:
    case ErrorKind::DependentOmega: return kExitConfig;
    case ErrorKind::HypothesisNotSatisfied:
    case ErrorKind::RhoNotValuationCriterion: return kExitHypothesis;
    case ErrorKind::InsufficientPrecision: return kExitPrecision;
    case ErrorKind::SearchTooLarge: return kExitBudget;
    case ErrorKind::Internal: return kExitFailure;
  }
  return kExitFailure;
}

struct CsvRow {
  int p = 0, n = 0, m = 0, b = 0;
  std::string e_list, k = "-", method, breaks, equal_to_ss2 = "-", flag, error, runtime_ms = "-";
  unsigned long long seed = 0;
};

inline std::string csv_header() { return "p,n,m,b,e,k,method,breaks,equal_to_ss2,flag,error,runtime_ms,seed"; }

inline std::string to_csv(const CsvRow& r) {
  std::ostringstream os;
  os << r.p << ',' << r.n << ',' << r.m << ',' << r.b << ',' << r.e_list << ',' << r.k << ',' << r.method << ','
     << r.breaks << ',' << r.equal_to_ss2 << ',' << r.flag << ',' << r.error << ',' << r.runtime_ms << ',' << r.seed;
  return os.str();
}

inline std::string e_list_string(const std::vector<int>& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) s += (i ? ";" : "") + format_e(e[i]);
  return s;
}

struct RunOptions {
  std::string method = "all";
  std::vector<int> ks;
  int samples = 5;
  unsigned long long seed = 1;
  long long budget = 1LL << 26;
  int precision = 0;
  ScaffoldLevel level = ScaffoldLevel::Auto;
  bool timing = false;
};

inline RunOptions options_from(const RunConfig& c) {
  RunOptions o;
  o.method = c.method;
  o.ks = c.k;
  o.samples = c.samples;
  o.seed = c.seed;
  o.budget = c.budget;
  o.precision = c.precision;
  o.level = c.scaffold == "full" ? ScaffoldLevel::Full : c.scaffold == "k1" ? ScaffoldLevel::K1 : ScaffoldLevel::Auto;
  return o;
}

inline std::string error_tag(const Error& e) { return to_string(e.kind()); }

struct InstanceRun {
  std::vector<CsvRow> rows;
  std::string report;           // human-readable
  std::optional<Error> failure;  // first error, if any
};

namespace detail {

inline std::vector<std::string> methods_of(const std::string& m) {
  if (m == "all") return {"ss", "vc", "predict", "ann"};
  return {m};
}

inline std::vector<int> ks_of(const RunOptions& o, int p) {
  std::vector<int> ks = o.ks;
  if (ks.empty())
    for (int k = 2; k <= p; ++k) ks.push_back(k);
  for (int k : ks) require(k >= 2 && k <= p, ErrorKind::InvalidArgument, "k = " + std::to_string(k) + " outside [2, p]");
  return ks;
}

}  // namespace detail

/// All requested (method, k) rows for one instance. Errors become row entries.
inline InstanceRun run_instance(const ASData& d, const RunOptions& o) {
  using clock = std::chrono::steady_clock;
  InstanceRun run;
  std::ostringstream rep;
  CsvRow base;
  base.p = d.p;
  base.n = d.n;
  base.m = d.m();
  base.b = d.b;
  base.e_list = e_list_string(d.e);
  base.seed = o.seed;
  rep << "instance p=" << d.p << " n=" << d.n << " m=" << d.m() << " b=" << d.b << " e=(" << detail::e_vector_string(d.e)
      << ")\n";
  const auto methods = detail::methods_of(o.method);
  const auto ks = detail::ks_of(o, d.p);
  SearchOptions search;
  search.budget = o.budget;

  auto record = [&](const Error& e) {
    if (!run.failure) run.failure = e;
  };
  std::optional<BreaksContext> ctx;
  std::optional<Error> ctx_error;
  auto context = [&]() -> const BreaksContext& {
    if (!ctx && !ctx_error) {
      try {
        auto ext = Extension::build(d);
        if (o.precision > 0) ext->set_precision_cap(o.precision);
        ctx = BreaksContext::make(ext, std::nullopt, o.level);
        rep << "scaffold: " << (ctx->scaffold ? to_string(ctx->scaffold->level) : "none (generic valuation basis)") << '\n';
      } catch (const Error& e) {
        ctx_error = e;
      }
    }
    if (ctx_error) throw *ctx_error;
    return *ctx;
  };
  std::optional<BreakReport> ss2;
  std::optional<Error> ss2_error;
  auto get_ss2 = [&]() -> const BreakReport* {
    if (!ss2 && !ss2_error) {
      try {
        ss2 = ss_breaks(context(), 2, search);
      } catch (const Error& e) {
        ss2_error = e;
      }
    }
    return ss2 ? &*ss2 : nullptr;
  };
  auto emit = [&](const std::string& method, const std::string& k, const std::function<BreakReport()>& fn) {
    CsvRow r = base;
    r.method = method;
    r.k = k;
    const auto t0 = clock::now();
    try {
      const BreakReport br = fn();
      r.breaks = br.breaks_string();
      r.flag = br.flag;
      if (const BreakReport* s2 = get_ss2()) r.equal_to_ss2 = br.same_breaks(*s2) ? "1" : "0";
      rep << std::left << std::setw(8) << method << " k=" << std::setw(2) << k << ' ' << r.breaks
          << (br.flag.empty() ? "" : "  [" + br.flag + "]") << '\n';
      for (const auto& b : br.breaks)
        if (!b.witness.empty()) rep << "    " << b.value << " witnessed by omega=" << b.witness << '\n';
      if (br.method == Method::VC)
        rep << "    rho-independent over " << br.rho_sets.size() << " choices: " << (br.rho_independent ? "yes" : "no") << '\n';
    } catch (const Error& e) {
      r.error = error_tag(e);
      rep << std::left << std::setw(8) << method << " k=" << std::setw(2) << k << " error: " << e.what() << '\n';
      record(e);
    }
    if (o.timing)
      r.runtime_ms = std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count());
    run.rows.push_back(r);
  };

  for (const auto& m : methods) {
    if (m == "ss") {
      for (int k : ks)
        emit("ss", std::to_string(k), [&] { return k == 2 && get_ss2() ? *ss2 : ss_breaks(context(), k, search); });
    } else if (m == "vc") {
      for (int k : ks)
        emit("vc", std::to_string(k), [&] { return vc_breaks(context(), k, o.samples, o.seed + k, search); });
    } else if (m == "predict") {
      emit("predict", "-", [&] { return predict_breaks(d); });
    } else if (m == "ann") {
      emit("ann", "2", [&] { return annihilator_breaks(context()); });
    }
  }
  run.report = rep.str();
  return run;
}

/// Sweep grid in input order: m outer, then b, then e-vectors.
struct SweepItem {
  int m, b;
  std::vector<int> e;
};

inline std::vector<SweepItem> sweep_items(const RunConfig& c) {
  require(c.p.has_value() && c.n.has_value(), ErrorKind::InvalidArgument, "sweep needs p and n");
  const int p = *c.p, n = *c.n;
  std::vector<int> ms = c.sweep_m;
  if (ms.empty()) ms.push_back(c.m.value_or(n));
  std::vector<SweepItem> out;
  for (int m : ms)
    for (int b : c.sweep_b) {
      if (c.sweep_e_all) {
        // e_1 = -inf; e_2..e_n over -inf, 0 and 0 < e < b prime to p.
        const auto ch = detail::e_choices(p, b);
        std::vector<size_t> idx(n > 1 ? n - 1 : 0, 0);
        while (true) {
          std::vector<int> e = {kNegInf};
          for (size_t i : idx) e.push_back(ch[i]);
          out.push_back({m, b, e});
          size_t j = 0;
          while (j < idx.size() && ++idx[j] == ch.size()) idx[j++] = 0;
          if (j == idx.size()) break;
        }
      } else {
        for (const auto& e : c.sweep_e) out.push_back({m, b, e});
      }
    }
  return out;
}

/// Header plus one row per (instance, k, method); rows in input order.
inline void cmd_sweep(const RunConfig& c, const RunOptions& o, std::ostream& csv, std::ostream& log, int threads = 0) {
  const auto items = sweep_items(c);
  std::vector<std::vector<CsvRow>> rows(items.size());
  auto work = [&](size_t i) {
    const SweepItem& it = items[i];
    try {
      const ASData d = sweep_instance(*c.p, *c.n, it.m, it.b, it.e);
      rows[i] = run_instance(d, o).rows;
    } catch (const Error& e) {
      for (const auto& m : detail::methods_of(o.method)) {
        CsvRow r;
        r.p = *c.p;
        r.n = *c.n;
        r.m = it.m;
        r.b = it.b;
        r.e_list = e_list_string(it.e);
        r.method = m;
        r.error = error_tag(e);
        r.seed = o.seed;
        rows[i].push_back(r);
      }
    }
  };
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(std::max<size_t>(items.size(), 1)));
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < items.size();) work(i);
    });
  for (auto& th : pool) th.join();
  csv << csv_header() << '\n';
  size_t errors = 0;
  for (const auto& rs : rows)
    for (const auto& r : rs) {
      csv << to_csv(r) << '\n';
      errors += !r.error.empty();
    }
  log << "sweep: " << items.size() << " instances, " << errors << " row errors\n";
}

inline void print_checks(std::ostream& os, const std::vector<Check>& cs, bool& all) {
  for (const auto& c : cs) {
    const bool skipped = c.passed && c.witness.rfind("skipped", 0) == 0;
    os << (skipped ? "SKIP " : c.passed ? "PASS " : "FAIL ") << c.name << (c.witness.empty() ? "" : "  (" + c.witness + ")") << '\n';
    all = all && c.passed;
  }
}

/// Every applicable invariant suite for the configured instance (calculus only
/// when the config has no instance). Returns true when all pass.
inline bool cmd_verify(const RunConfig& c, const RunOptions& o, std::ostream& os) {
  require(c.p.has_value(), ErrorKind::InvalidArgument, "config is missing 'p'");
  bool all = true;
  print_checks(os, calculus_suite(*c.p, c.m.value_or(c.n.value_or(2)), 100, o.seed), all);
  if (!c.has_instance()) return all;
  const ASData d = data_from_config(c);
  auto ext = Extension::build(d);
  if (o.precision > 0) ext->set_precision_cap(o.precision);
  const BreaksContext C = BreaksContext::make(ext, std::nullopt, o.level);
  print_checks(os, {leibniz_check(*ext, 20, o.seed)}, all);
  print_checks(os, y_checks(*ext), all);
  if (C.scaffold) {
    const auto sr = check_scaffold(*C.scaffold);
    std::vector<Check> cs = sr.checks;
    for (auto& ch : cs) ch.name = "scaffold " + ch.name;
    print_checks(os, cs, all);
    print_checks(os, {psi1_check(C)}, all);
  } else {
    os << "SKIP scaffold axioms  (no scaffold: e-bound fails)\n";
  }
  print_checks(os, {backend_check(C, 200, o.seed), trace_valuation_check(C), trace_ideal_check(C)}, all);
  BreakSuiteOptions bo;
  bo.ks = o.ks;
  bo.samples = o.samples;
  bo.seed = o.seed;
  bo.search.budget = o.budget;
  const auto res = break_suite(C, d, bo);
  print_checks(os, res.checks, all);
  return all;
}

struct SelftestCase {
  const char* name;
  int p, m, n, b;
  const char* beta;
  std::vector<const char*> omega, eps;
  std::vector<long long> expect;
};

inline std::vector<SelftestCase> selftest_cases() {
  return {
      {"I1", 2, 2, 2, 3, "t^-3", {"1", "g"}, {"0", "0"}, {3, 6}},
      {"I2", 2, 2, 2, 5, "t^-5", {"1", "g"}, {"0", "t^-3"}, {5, 9}},
      {"I3", 3, 2, 2, 5, "t^-5", {"1", "g"}, {"0", "t^-2"}, {5, 14}},
      {"n3", 2, 3, 3, 11, "t^-11", {"1", "g", "g^2"}, {"0", "t^-1", "t^-3"}, {11, 22, 43}},
  };
}

inline ASData selftest_data(const SelftestCase& s) {
  ASData d;
  d.field = GaloisField::get(s.p, s.m);
  d.p = s.p;
  d.n = s.n;
  d.b = s.b;
  d.beta = parse_laurent(*d.field, s.beta);
  for (auto w : s.omega) d.omega.push_back(parse_field_element(*d.field, w));
  for (auto e : s.eps) d.eps.push_back(parse_laurent(*d.field, e));
  return validate_data(d);
}

/// Built-in instances; every method at every k must give the known breaks.
inline bool cmd_selftest(const RunOptions& o, std::ostream& os) {
  bool all = true;
  for (const auto& s : selftest_cases()) {
    RunOptions ro = o;
    ro.method = "all";
    ro.ks.clear();
    const auto run = run_instance(selftest_data(s), ro);
    std::string expect;
    for (size_t i = 0; i < s.expect.size(); ++i) expect += (i ? ";" : "") + std::to_string(s.expect[i]) + ":1";
    for (const auto& r : run.rows) {
      const bool ok = r.error.empty() && r.breaks == expect;
      all = all && ok;
      os << (ok ? "PASS " : "FAIL ") << s.name << ' ' << r.method << " k=" << r.k << ' '
         << (r.error.empty() ? r.breaks : r.error) << '\n';
    }
  }
  return all;
}

}  // namespace rrb

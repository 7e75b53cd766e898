// One PASS/FAIL line per acceptance criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "rrb/rrb.hpp"

using namespace rrb;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& w) {
    if (pass) detail = w;
    pass = false;
  }
  void require(const Check& c, const std::string& tag) {
    if (!c.passed) fail(tag + ": " + c.name + " (" + c.witness + ")");
  }
};

ASData instance(int p, int m, int n, int b, const char* beta, std::vector<const char*> omega, std::vector<const char*> eps) {
  ASData d;
  d.field = GaloisField::get(p, m);
  d.p = p;
  d.n = n;
  d.b = b;
  d.beta = parse_laurent(*d.field, beta);
  for (auto w : omega) d.omega.push_back(parse_field_element(*d.field, w));
  for (auto e : eps) d.eps.push_back(parse_laurent(*d.field, e));
  return validate_data(d);
}

ASData I1() { return instance(2, 2, 2, 3, "t^-3", {"1", "g"}, {"0", "0"}); }
ASData I2() { return instance(2, 2, 2, 5, "t^-5", {"1", "g"}, {"0", "t^-3"}); }
ASData I3() { return instance(3, 2, 2, 5, "t^-5", {"1", "g"}, {"0", "t^-2"}); }
ASData N3() { return instance(2, 3, 3, 11, "t^-11", {"1", "g", "g^2"}, {"0", "t^-1", "t^-3"}); }

std::string tag_of(const ASData& d) {
  std::ostringstream os;
  os << "p=" << d.p << " n=" << d.n << " b=" << d.b << " e=(";
  for (int i = 0; i < d.n; ++i) os << (i ? "," : "") << (d.e[i] == kNegInf ? std::string("-inf") : std::to_string(d.e[i]));
  os << ')';
  return os.str();
}

struct MainCase {
  ASData data;
  std::string name;
  std::vector<long long> expect;  // empty: no fixed expectation
};

std::vector<MainCase> main_cases() {
  std::vector<MainCase> out = {{I1(), "I1", {3, 6}}, {I2(), "I2", {5, 9}}, {I3(), "I3", {5, 14}}, {N3(), "n3", {11, 22, 43}}};
  std::mt19937_64 rng(2024);
  const std::vector<std::tuple<int, int, int>> shapes = {{2, 2, 13}, {3, 2, 11}, {2, 3, 13}};
  for (int i = 0; i < 12; ++i) {
    const auto [p, n, bmax] = shapes[i % shapes.size()];
    ASData d;
    do d = random_as_data(rng, p, n, n, DataFamily::Main, bmax);
    while (e_bound_holds(d, 1));  // keep the b_* branch
    out.push_back({d, "random " + tag_of(d), {}});
  }
  return out;
}

struct MainRun {
  const MainCase* mc;
  std::optional<BreaksContext> C;
  BreakSuiteResult suite;
  std::string error;
};

// Shared by criteria 4-7 and 9.
std::vector<MainRun>& main_runs() {
  static std::vector<MainCase> cases = main_cases();
  static std::vector<MainRun> runs = [] {
    std::vector<MainRun> r;
    for (const auto& mc : cases) {
      MainRun run{&mc, std::nullopt, {}, ""};
      try {
        run.C = BreaksContext::make(Extension::build(mc.data));
        BreakSuiteOptions o;
        o.samples = 5;
        o.seed = 7;
        o.annihilator = mc.name == "I1" || mc.name == "I2" || mc.name == "I3";
        run.suite = break_suite(*run.C, mc.data, o);
      } catch (const Error& e) {
        run.error = e.what();
      }
      r.push_back(std::move(run));
    }
    return r;
  }();
  return runs;
}

const Check* find_check(const BreakSuiteResult& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

Outcome criterion1() {
  Outcome o;
  for (int p : {2, 3, 5, 7})
    for (const auto& c : calculus_suite(p, 2, 100, 1000 + p)) o.require(c, "p=" + std::to_string(p));
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::mt19937_64 rng(77);
  const std::vector<std::tuple<int, int, int>> shapes = {{2, 2, 15}, {3, 2, 14}, {2, 3, 19}, {3, 3, 28}};
  for (int i = 0; i < 50; ++i) {
    const auto [p, n, bmax] = shapes[i % shapes.size()];
    const ASData d = random_as_data(rng, p, n, n, DataFamily::R1, bmax);
    const auto e = Extension::build(d);
    for (const auto& c : y_checks(*e)) {
      if (c.witness.rfind("skipped", 0) == 0) o.fail(tag_of(d) + ": " + c.name + " skipped");
      o.require(c, tag_of(d));
    }
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::mt19937_64 rng(99);
  const std::vector<std::tuple<int, int, int>> shapes = {{2, 2, 15}, {3, 2, 14}, {2, 3, 19}};
  for (int i = 0; i < 20; ++i) {
    const auto [p, n, bmax] = shapes[i % shapes.size()];
    const ASData d = random_as_data(rng, p, n, n, DataFamily::R1, bmax);
    const auto S = build_scaffold(Extension::build(d), ScaffoldLevel::Full);
    const auto rep = check_scaffold(S);
    for (const auto& c : rep.checks) o.require(c, tag_of(d));
    if (!rep.non_unit_u.empty()) o.fail(tag_of(d) + ": u_iw != 1");
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  int randoms = 0;
  for (const auto& r : main_runs()) {
    const std::string tag = r.mc->name;
    if (!r.error.empty()) {
      o.fail(tag + ": " + r.error);
      continue;
    }
    if (r.mc->expect.empty()) ++randoms;
    if (r.suite.predicted.flag != "hypotheses=met") o.fail(tag + ": predictor " + r.suite.predicted.flag);
    for (const char* name : {"SS_k = VC_k", "SS_k = predicted"}) o.require(*find_check(r.suite, name), tag);
    if (!r.mc->expect.empty())
      for (const auto& s : r.suite.ss)
        if (s.values() != r.mc->expect) o.fail(tag + ": ss k=" + std::to_string(s.k) + " gives " + s.breaks_string());
  }
  if (randoms < 10) o.fail("only " + std::to_string(randoms) + " random instances");
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const auto& r : main_runs()) {
    if (!r.error.empty()) {
      o.fail(r.mc->name + ": " + r.error);
      continue;
    }
    o.require(*find_check(r.suite, "B_rho,k independent of rho"), r.mc->name);
    for (const auto& v : r.suite.vc)
      if (v.rho_sets.size() != 6) o.fail(r.mc->name + ": " + std::to_string(v.rho_sets.size()) + " rho choices");
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const auto& r : main_runs()) {
    if (!r.error.empty()) continue;
    for (const char* name : {"b_i <= b p^i", "SS_k monotone in k, SS_k <= VC_k"}) o.require(*find_check(r.suite, name), r.mc->name);
  }
  // criterion 3 instances: SS and VC reports at every k
  std::mt19937_64 rng(99);
  const std::vector<std::tuple<int, int, int>> shapes = {{2, 2, 15}, {3, 2, 14}, {2, 3, 19}};
  for (int i = 0; i < 20; ++i) {
    const auto [p, n, bmax] = shapes[i % shapes.size()];
    const ASData d = random_as_data(rng, p, n, n, DataFamily::R1, bmax);
    const auto C = BreaksContext::make(Extension::build(d));
    BreakSuiteOptions bo;
    bo.samples = 1;
    bo.annihilator = false;
    const auto res = break_suite(C, d, bo);
    for (const char* name : {"b_i <= b p^i", "SS_k monotone in k, SS_k <= VC_k"}) o.require(*find_check(res, name), tag_of(d));
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (const auto& r : main_runs()) {
    if (!r.error.empty() || !r.C->scaffold) continue;
    o.require(backend_check(*r.C, 200, 31), r.mc->name);
    if (r.mc->name == "I1" || r.mc->name == "I2" || r.mc->name == "I3") {
      const Check* c = find_check(r.suite, "annihilator = SS_2");
      if (!c) o.fail(r.mc->name + ": annihilator not run");
      else o.require(*c, r.mc->name);
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const auto& [name, d] : std::vector<std::pair<std::string, ASData>>{{"I1", I1()}, {"I3", I3()}}) {
    const auto C = BreaksContext::make(Extension::build(d));
    o.require(trace_valuation_check(C), name);
    o.require(trace_ideal_check(C), name);
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (const auto& r : main_runs()) {
    if (!r.error.empty()) {
      o.fail(r.mc->name + ": " + r.error);
      continue;
    }
    const Check c = psi1_check(*r.C);
    if (c.witness.rfind("skipped", 0) == 0) o.fail(r.mc->name + ": " + c.witness);
    o.require(c, r.mc->name);
    o.require(*find_check(r.suite, "|B_rho,k| = n"), r.mc->name);
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  const RunConfig c = RunConfig::parse("p = 2\nn = 2\nsweep.b = 3,5,7\nsweep.e = all\nseed = 5\n");
  const RunOptions opt = options_from(c);
  std::string first;
  for (int rep = 0; rep < 3; ++rep) {
    std::ostringstream csv, log;
    cmd_sweep(c, opt, csv, log);
    if (rep == 0) first = csv.str();
    else if (csv.str() != first) o.fail("run " + std::to_string(rep) + " differs");
  }
  if (std::count(first.begin(), first.end(), '\n') < 2) o.fail("empty sweep");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "truncated calculus", 10, criterion1},
      {2, "Moore/Y suite", 120, criterion2},
      {3, "scaffold suite", 300, criterion3},
      {4, "main equivalence", 960, criterion4},
      {5, "rho independence", 60, criterion5},
      {6, "bounds and monotonicity", 300, criterion6},
      {7, "backend equivalence", 300, criterion7},
      {8, "trace suite", 60, criterion8},
      {9, "Psi_1 shift and |B| = n", 60, criterion9},
      {10, "determinism", 60, criterion10},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_s) o.fail("runtime " + std::to_string(s) + " s over " + std::to_string(c.limit_s) + " s");
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << ") " << std::fixed;
    std::cout.precision(2);
    std::cout << s << " s" << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
  }
  return failed ? 1 : 0;
}

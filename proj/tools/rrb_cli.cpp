// rrb_cli: refined ramification breaks from Artin-Schreier data.
//
//   rrb_cli breaks   --config FILE [--method ss|vc|predict|ann|all] [--k 2,3] ...
//   rrb_cli verify   --config FILE
//   rrb_cli sweep    --config FILE --out data.csv
//   rrb_cli selftest

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rrb/rrb.hpp"

using namespace rrb;

namespace {

struct Flags {
  std::string config, k, method, out;
  std::optional<int> precision, samples;
  std::optional<long long> budget;
  std::optional<unsigned long long> seed;
  bool timing = false;
};

RunConfig load(const Flags& f) {
  RunConfig c;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    require(static_cast<bool>(in), ErrorKind::InvalidArgument, "cannot read config '" + f.config + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    c = RunConfig::parse(ss.str());
  }
  // Flags override the file.
  if (!f.k.empty()) c.k = detail::parse_int_list(f.k, 1, 0, 2, 1024);
  if (!f.method.empty()) {
    bool ok = false;
    for (const auto& m : method_names()) ok = ok || m == f.method;
    require(ok, ErrorKind::InvalidArgument, "unknown method '" + f.method + "'");
    c.method = f.method;
  }
  if (!f.out.empty()) c.out = f.out;
  if (f.precision) c.precision = *f.precision;
  if (f.samples) c.samples = *f.samples;
  if (f.budget) c.budget = *f.budget;
  if (f.seed) c.seed = *f.seed;
  return c;
}

// Writes to c.out when set, else to stdout.
template <class Fn>
void with_output(const RunConfig& c, Fn&& fn) {
  if (c.out.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream os(c.out, std::ios::binary);
  require(static_cast<bool>(os), ErrorKind::InvalidArgument, "cannot write '" + c.out + "'");
  fn(os);
}

int run_breaks(const Flags& f) {
  const RunConfig c = load(f);
  const ASData d = data_from_config(c);
  RunOptions o = options_from(c);
  o.timing = f.timing;
  const InstanceRun run = run_instance(d, o);
  // Report goes to stdout unless the CSV does.
  (c.out.empty() ? std::cerr : std::cout) << run.report;
  with_output(c, [&](std::ostream& os) {
    os << csv_header() << '\n';
    for (const auto& r : run.rows) os << to_csv(r) << '\n';
  });
  if (run.failure) {
    std::cerr << "error: " << run.failure->what() << '\n';
    return exit_code_for(run.failure->kind());
  }
  return kExitOk;
}

int run_verify(const Flags& f) {
  const RunConfig c = load(f);
  RunOptions o = options_from(c);
  return cmd_verify(c, o, std::cout) ? kExitOk : kExitFailure;
}

int run_sweep(const Flags& f) {
  const RunConfig c = load(f);
  RunOptions o = options_from(c);
  o.timing = f.timing;
  with_output(c, [&](std::ostream& os) { cmd_sweep(c, o, os, std::cerr); });
  return kExitOk;
}

int run_selftest(const Flags& f) {
  RunOptions o;
  if (f.seed) o.seed = *f.seed;
  if (f.samples) o.samples = *f.samples;
  return cmd_selftest(o, std::cout) ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rrb: refined break computations for Artin-Schreier towers"};
  app.require_subcommand(1);
  Flags f;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "key = value config file");
    sub->add_option("--k", f.k, "comma-separated k values (2 <= k <= p)");
    sub->add_option("--method", f.method, "ss|vc|predict|ann|all");
    sub->add_option("--precision", f.precision, "norm window cap");
    sub->add_option("--budget", f.budget, "max members per coset search");
    sub->add_option("--samples", f.samples, "random rho samples for vc");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--out", f.out, "CSV output path");
    sub->add_flag("--timing", f.timing, "fill runtime_ms (otherwise '-')");
  };
  CLI::App* breaks = app.add_subcommand("breaks", "compute refined breaks for one instance");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites on one instance");
  CLI::App* sweep = app.add_subcommand("sweep", "CSV over a grid of instances");
  CLI::App* selftest = app.add_subcommand("selftest", "built-in instances with known breaks");
  for (auto* s : {breaks, verify, sweep, selftest}) common(s);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }
  try {
    if (*breaks) return run_breaks(f);
    if (*verify) return run_verify(f);
    if (*sweep) return run_sweep(f);
    return run_selftest(f);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

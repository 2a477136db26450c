// Command-line front end: solve, verify, table and report.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "solvcover/solvcover.hpp"

using namespace solvcover;

namespace {

std::size_t resolve_cap(std::size_t flag) {
  if (flag) return flag;
  if (const char* env = std::getenv("SOLVCOVER_CAP")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw BadParameter(std::string("SOLVCOVER_CAP is not a positive integer: ") + env);
  }
  return kDefaultCap;
}

std::string summary(const CoverOutcome& o) {
  std::string s = render_cell(o);
  switch (o.status) {
    case CoverOutcome::Status::Exact: s += " (exact)"; break;
    case CoverOutcome::Status::Interval: s += " (interval, budget exhausted)"; break;
    case CoverOutcome::Status::Infeasible: s += " (no cover exists)"; break;
  }
  if (o.via_quotient) s += " via the quotient by the solvable radical";
  return s;
}

struct SolveArgs {
  std::string group;
  std::string mode = "all";
  double time_limit = 60;
  std::uint64_t node_limit = 10'000'000;
  bool deterministic = false;
  std::size_t cap = 0;
  std::string out;
  bool emit_certificate = false;
  unsigned jobs = 1;
};

int run_solve(const SolveArgs& a) {
  const GroupSpec spec = parse_group_spec(a.group);
  const std::size_t cap = resolve_cap(a.cap);
  SolveBudget budget;
  budget.time_limit_seconds = a.time_limit;
  budget.node_limit = a.node_limit;
  SolverOptions opts;
  opts.jobs = a.deterministic ? 1 : std::max(1u, a.jobs);

  std::vector<Mode> modes;
  if (a.mode == "all" || a.mode == "both") modes.push_back(Mode::All);
  if (a.mode == "involutions" || a.mode == "inv" || a.mode == "both") modes.push_back(Mode::Involutions);
  if (modes.empty()) throw ParseError("unknown mode '" + a.mode + "'");

  ResultRecord record;
  record.group = spec.to_string();
  bool interval = false;
  for (Mode m : modes) {
    SpecOutcome so = solve_spec(spec, m, budget, opts, cap);
    record.order = so.order;
    record.seconds += so.outcome.stats.seconds;
    interval = interval || so.outcome.status == CoverOutcome::Status::Interval;
    const char* label = m == Mode::All ? "alpha" : "alpha_inv";
    std::cout << label << " = " << summary(so.outcome) << "\n";
    if (a.emit_certificate && !so.outcome.elements.empty()) {
      std::cout << "# " << label << " certificate\n";
      for (const auto& p : so.outcome.elements) std::cout << to_cycle_string(p) << "\n";
    }
    for (const auto& n : so.outcome.notes) record.log.push_back(std::string(label) + ": " + n);
    (m == Mode::All ? record.alpha : record.alpha_inv) = std::move(so.outcome);
  }
  std::cout << "group " << record.group << " of order " << record.order << "\n";
  const std::string text = serialize(record);
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw ParseError("cannot write " + a.out);
    f << text;
  }
  return interval ? 2 : 0;
}

struct VerifyArgs {
  std::string group;
  std::string certificate;
  std::string mode;
  bool relabel = false;
  std::size_t cap = 0;
};

int run_verify(const VerifyArgs& a) {
  Certificate cert = read_certificate(a.certificate);
  if (!a.mode.empty()) cert.mode = parse_mode(a.mode);
  const std::string group = a.group.empty() ? cert.group : a.group;
  if (group.empty()) throw ParseError("no group given and the certificate names none");
  const GroupTable t = build(parse_group_spec(group), resolve_cap(a.cap));

  Verification v;
  if (a.relabel) {
    AlignedVerification av = verify_with_relabeling(t, cert);
    v = av.verification;
    if (av.alignment) std::cout << "relabeling " << to_cycle_string(av.alignment->relabel) << "\n";
  } else {
    v = verify_certificate(t, cert);
  }
  if (v.valid) {
    std::cout << "valid: " << cert.elements.size() << " elements (mode " << mode_name(cert.mode) << ") cover all " << t.order()
              << " elements of " << group << "\n";
    return 0;
  }
  std::cout << "invalid: " << v.reason << "\n";
  if (auto y = hardest_uncovered(t, v))
    std::cout << "uncovered " << to_cycle_string(t.element(*y)) << " of order " << t.order_of(*y) << " ("
              << v.uncovered.count() << " uncovered elements)\n";
  return 1;
}

int run_table(const std::string& dir, bool tsv) {
  const auto rows = table_rows(read_results(dir));
  std::cout << (tsv ? render_table_tsv(rows) : render_table(rows));
  return 0;
}

int run_report(const std::string& dir) {
  std::vector<CrossCheckEntry> entries;
  for (auto& r : read_results(dir)) entries.push_back({parse_group_spec(r.group), r.alpha, r.alpha_inv});
  for (const auto& row : cross_check(entries)) {
    std::cout << row.group << ": alpha " << row.alpha << ", alpha_inv " << row.alpha_inv << ", bounds "
              << (row.bounds.verdict == BoundReport::Verdict::Consistent ? "consistent" : "violated") << "\n";
    for (const auto& b : row.bounds.bounds) {
      std::cout << "  bound " << (b.kind == Bound::Kind::Lower ? ">= " : b.kind == Bound::Kind::Upper ? "<= " : "= ")
                << b.value << ": " << b.source;
      if (!b.caveat.empty()) std::cout << " [" << b.caveat << "]";
      std::cout << "\n";
    }
    for (const auto& v : row.bounds.violations) std::cout << "  violation: " << v << "\n";
    for (const auto& c : row.conjectures) std::cout << "  conjecture '" << c.conjecture << "': " << status_name(c.status) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solvabilizer covering numbers of finite groups"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "compute alpha and/or alpha_inv for a group");
  s->add_option("--group", solve.group, "group spec, e.g. psl2(7) or product(psl2(7),psl2(9))")->required();
  s->add_option("--mode", solve.mode, "all, involutions or both")->check(CLI::IsMember({"all", "involutions", "inv", "both"}));
  s->add_option("--time-limit", solve.time_limit, "seconds per solve")->check(CLI::NonNegativeNumber);
  s->add_option("--node-limit", solve.node_limit, "search nodes per solve");
  s->add_flag("--deterministic", solve.deterministic, "single-threaded search with reproducible certificates");
  s->add_option("--cap", solve.cap, "largest group order to enumerate (default 20000 or SOLVCOVER_CAP)");
  s->add_option("--out", solve.out, "write the result record here");
  s->add_flag("--emit-certificate", solve.emit_certificate, "print the certificate elements");
  s->add_option("--jobs", solve.jobs, "worker threads");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "check a certificate file");
  v->add_option("--group", verify.group, "group spec (default: the certificate's '# group:' line)");
  v->add_option("--certificate", verify.certificate, "certificate file")->required()->check(CLI::ExistingFile);
  v->add_option("--mode", verify.mode, "all or involutions (default: the certificate's '# mode:' line)");
  v->add_flag("--relabel", verify.relabel, "search for a relabeling of the points that places the certificate in the group");
  v->add_option("--cap", verify.cap, "largest group order to enumerate");

  std::string results_dir;
  bool tsv = false;
  auto* tb = app.add_subcommand("table", "tabulate result records");
  tb->add_option("--results", results_dir, "directory of *.result files")->required()->check(CLI::ExistingDirectory);
  tb->add_flag("--tsv", tsv, "tab-separated output");

  std::string report_dir;
  auto* rp = app.add_subcommand("report", "compare result records with theorem bounds and conjectures");
  rp->add_option("--results", report_dir, "directory of *.result files")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);
  try {
    if (s->parsed()) return run_solve(solve);
    if (v->parsed()) return run_verify(verify);
    if (tb->parsed()) return run_table(results_dir, tsv);
    if (rp->parsed()) return run_report(report_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

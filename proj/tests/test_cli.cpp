#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "solvcover/io.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status = -1;
  std::string out;  // stdout and stderr together
};

CliRun run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" SOLVCOVER_CLI "' " + args + " 2>&1";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "solvcover_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

const fs::path kA5 = fs::path(SOLVCOVER_DATA_DIR) / "certificates" / "alternating5.cert";

std::string strip_timing(const std::string& record) {
  std::istringstream in(record);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("seconds:") == std::string::npos) out += line + "\n";
  return out;
}

}  // namespace

TEST(Cli, SolvePsl27BothModes) {
  const CliRun r = run("solve --group 'psl2(7)' --mode both");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("alpha = 5 (exact)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("alpha_inv = ∞"), std::string::npos) << r.out;
}

TEST(Cli, SolveS6) {
  const CliRun r = run("solve --group 'symmetric(6)' --mode all");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("alpha = 9 (exact)"), std::string::npos) << r.out;
}

TEST(Cli, SolvableGroupIsAnError) {
  const CliRun r = run("solve --group 'symmetric(4)'");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("error: GroupSolvable"), std::string::npos) << r.out;
}

TEST(Cli, BadSpecAndCap) {
  const CliRun bad = run("solve --group 'psl2(7'");
  EXPECT_EQ(bad.status, 1);
  EXPECT_NE(bad.out.find("error: ParseError"), std::string::npos) << bad.out;
  const CliRun capped = run("solve --group 'psl2(7)'", "SOLVCOVER_CAP=100");
  EXPECT_EQ(capped.status, 1);
  EXPECT_NE(capped.out.find("error: CapExceeded"), std::string::npos) << capped.out;
  const CliRun flag = run("solve --group 'psl2(7)' --cap 100");
  EXPECT_NE(flag.out.find("error: CapExceeded"), std::string::npos) << flag.out;
}

TEST(Cli, IntervalExitsWithTwo) {
  const fs::path out = scratch("psl2_13_interval.result");
  const CliRun r = run("solve --group 'psl2(13)' --node-limit 1 --out '" + out.string() + "'");
  EXPECT_EQ(r.status, 2) << r.out;
  const auto rec = solvcover::read_result(out);
  ASSERT_TRUE(rec.alpha);
  EXPECT_EQ(rec.alpha->status, solvcover::CoverOutcome::Status::Interval);
  const std::string cell = solvcover::render_cell(rec.alpha);
  EXPECT_EQ(cell.front(), '[');
  EXPECT_EQ(cell.back(), ']');
}

TEST(Cli, OutputIsStableInDeterministicMode) {
  const fs::path a = scratch("a5_first.result"), b = scratch("a5_second.result");
  ASSERT_EQ(run("solve --group 'alternating(5)' --mode both --deterministic --out '" + a.string() + "'").status, 0);
  ASSERT_EQ(run("solve --group 'alternating(5)' --mode both --deterministic --out '" + b.string() + "'").status, 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(strip_timing(slurp(a)), strip_timing(slurp(b)));
  EXPECT_EQ(solvcover::read_result(a).alpha->lower, 3u);
}

TEST(Cli, VerifyAppendixCertificate) {
  const CliRun r = run("verify --group 'alternating(5)' --certificate '" + kA5.string() + "' --mode involutions");
  EXPECT_EQ(r.status, 0) << r.out;
  const CliRun meta = run("verify --certificate '" + kA5.string() + "'");
  EXPECT_EQ(meta.status, 0) << meta.out;
}

TEST(Cli, VerifyFailsWithALineDeleted) {
  std::ifstream in(kA5);
  std::string line, kept;
  bool dropped = false;
  while (std::getline(in, line)) {
    if (!dropped && !line.empty() && line.front() == '(') {
      dropped = true;
      continue;
    }
    kept += line + "\n";
  }
  const fs::path cut = scratch("a5_cut.cert");
  std::ofstream(cut) << kept;
  const CliRun r = run("verify --group 'alternating(5)' --certificate '" + cut.string() + "' --mode involutions");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("invalid:"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("of order 5 (12 uncovered elements)"), std::string::npos) << r.out;
}

TEST(Cli, VerifyRejectsIdentity) {
  const fs::path cert = scratch("identity.cert");
  std::ofstream(cert) << "()\n(1,2,3)\n";
  const CliRun r = run("verify --group 'alternating(5)' --certificate '" + cert.string() + "' --mode all");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("ElementInRadical"), std::string::npos) << r.out;
}

TEST(Cli, VerifyWithRelabeling) {
  const fs::path cert = fs::path(SOLVCOVER_DATA_DIR) / "certificates" / "psl2_7.cert";
  const CliRun r = run("verify --certificate '" + cert.string() + "' --relabel");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("relabeling"), std::string::npos) << r.out;
}

TEST(Cli, TableOfEmptyDirectory) {
  const fs::path dir = scratch("empty_results");
  fs::remove_all(dir);
  fs::create_directories(dir);
  const CliRun r = run("table --results '" + dir.string() + "'");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("Order | Name", 0), 0u) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
}

TEST(Cli, TableAndReport) {
  const fs::path dir = scratch("results");
  fs::remove_all(dir);
  fs::create_directories(dir);
  ASSERT_EQ(run("solve --group 'psl2(7)' --mode both --out '" + (dir / "psl2_7.result").string() + "'").status, 0);
  ASSERT_EQ(run("solve --group 'alternating(5)' --mode both --out '" + (dir / "a5.result").string() + "'").status, 0);
  const CliRun t = run("table --results '" + dir.string() + "'");
  EXPECT_EQ(t.status, 0);
  EXPECT_LT(t.out.find("A5"), t.out.find("PSL(2,7)")) << t.out;
  const CliRun tsv = run("table --tsv --results '" + dir.string() + "'");
  EXPECT_NE(tsv.out.find("168\tPSL(2,7)\tpsl2(7)\t5\t∞"), std::string::npos) << tsv.out;
  const CliRun rep = run("report --results '" + dir.string() + "'");
  EXPECT_EQ(rep.status, 0);
  EXPECT_NE(rep.out.find("violation"), std::string::npos) << rep.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_NE(run("").status, 0);
  EXPECT_NE(run("solve").status, 0);
  EXPECT_NE(run("solve --group 'psl2(7)' --mode sometimes").status, 0);
}

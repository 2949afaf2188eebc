// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance <path to qfock binary>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "qfock/verify.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) return {};
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

int run_cli(const std::string& bin, const fs::path& out) {
  const std::string cmd = "\"" + bin + "\" verify --out \"" + out.string() + "\" >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

void line(bool ok, int n, const std::string& what) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <qfock binary>\n";
    return 2;
  }
  const std::string bin = argv[1];
  bool all = true;

  const qfock::VerifyResult res = qfock::run_verify(qfock::VerifyConfig{});
  for (const auto& s : res.sections) {
    const auto& rep = s.report;
    bool ok = rep.passed();
    std::ostringstream what;
    what << rep.title() << " (" << rep.checks().size() << " checks, max deviation "
         << qfock::format_double(rep.max_deviation()) << ")";
    if (s.criterion == 7) {
      ok = ok && !res.ledger.empty();
      what << ", " << res.ledger.entries().size() << " ledger entries";
    }
    for (const auto& f : rep.failures()) what << "\n    failed: " << f;
    line(ok, s.criterion, what.str());
    all = all && ok;
  }

  // two consecutive CLI runs must agree byte for byte
  const fs::path base = fs::temp_directory_path() / "qfock_acceptance";
  fs::remove_all(base);
  const int ca = run_cli(bin, base / "a");
  const int cb = run_cli(bin, base / "b");
  bool same = ca == 0 && cb == 0;
  std::string diff;
  for (const char* name : {"ledger.json", "verify.csv", "slice.csv"}) {
    const std::string a = slurp(base / "a" / name), b = slurp(base / "b" / name);
    if (a.empty() || a != b) {
      same = false;
      diff += std::string(" ") + name;
    }
  }
  std::string what = "repeated verify runs are byte-identical";
  if (ca != 0 || cb != 0) what += " (exit codes " + std::to_string(ca) + ", " + std::to_string(cb) + ")";
  if (!diff.empty()) what += " (differs:" + diff + ")";
  line(same, 10, what);
  all = all && same;
  if (same) fs::remove_all(base);

  return all ? 0 : 1;
}

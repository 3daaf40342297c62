// Acceptance checks against the command-line tool. Prints one PASS/FAIL line per criterion
// and exits nonzero when any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

// Wall-clock limits in seconds.
constexpr double kBoundsLimit = 10;
constexpr double kMassLimit = 5;
constexpr double kAutLimit = 60;
constexpr double kCiClassifyLimit = 1800;
constexpr double kExtendedClassifyLimit = 6 * 3600;

struct RunResult {
  int status = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

RunResult run(const std::string& command) {
  RunResult r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

std::string last_line(const std::string& s) {
  std::string t = trim(s);
  auto k = t.rfind('\n');
  return k == std::string::npos ? t : t.substr(k + 1);
}

struct Criterion {
  int id;
  std::string name;
  double limit;
  std::function<bool(std::ostream&)> check;
};

struct Context {
  std::string sclat;
  std::string unit_tests;
  std::filesystem::path scratch;
};

bool bounds_table(const Context& ctx, std::ostream& why) {
  const std::vector<std::string> want = {
      "t=1/8 B={3} maxprime=61", "t=1/24 B={3} maxprime=467", "t=1/8 B={} maxprime=73",  "t=1/72 B={} maxprime=283",
      "t=1/16 B={} maxprime=139", "t=1/272 B={} maxprime=373", "t=1/32 B={} maxprime=193", "t=1/1056 B={} maxprime=421"};
  bool ok = true;
  for (int n = 3; n <= 10; ++n) {
    RunResult r = run(quote(ctx.sclat) + " bounds --dim " + std::to_string(n));
    std::string got = trim(r.out);
    if (r.status != 0 || got != want[n - 3]) {
      why << " n=" << n << " got '" << got << "'";
      ok = false;
    }
  }
  return ok;
}

bool mass_spots(const Context& ctx, std::ostream& why) {
  const std::vector<std::pair<std::string, std::string>> want = {
      {"I_{8,0}", "1/10321920"},          {"II_{8,0}", "1/696729600"},     {"II_{10,0}(3^{-1})", "1/8360755200"},
      {"II_{9,0}(2_1^{+1})", "1/1393459200"}, {"I_{4,0}", "1/384"}, {"II_{7,0}(2_7^{-1})", "1/2903040"}};
  bool ok = true;
  for (auto& [sym, mass] : want) {
    RunResult r = run(quote(ctx.sclat) + " mass --symbol " + quote(sym));
    if (r.status != 0 || trim(r.out) != mass) {
      why << " " << sym << " got '" << trim(r.out) << "'";
      ok = false;
    }
  }
  return ok;
}

std::string write_gram_file(const Context& ctx, const std::string& name, const std::vector<std::vector<int>>& g) {
  auto path = ctx.scratch / name;
  std::ofstream out(path);
  out << g.size() << "\n";
  for (auto& row : g) {
    for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "\n";
  }
  return path.string();
}

bool aut_spots(const Context& ctx, std::ostream& why) {
  bool ok = true;
  unsigned long long fact = 1;
  for (int n = 1; n <= 10; ++n) {
    fact *= n;
    if (n < 3) continue;
    std::vector<std::vector<int>> g(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) g[i][i] = 1;
    std::string file = write_gram_file(ctx, "id" + std::to_string(n) + ".gram", g);
    RunResult r = run(quote(ctx.sclat) + " aut --gram " + quote(file));
    std::string want = std::to_string((1ULL << n) * fact);
    if (r.status != 0 || trim(r.out) != want) {
      why << " Z^" << n << " got '" << trim(r.out) << "'";
      ok = false;
    }
  }
  std::vector<std::vector<int>> e8 = {{2, -1, 0, 0, 0, 0, 0, 0},  {-1, 2, -1, 0, 0, 0, 0, 0}, {0, -1, 2, -1, 0, 0, 0, -1},
                                      {0, 0, -1, 2, -1, 0, 0, 0}, {0, 0, 0, -1, 2, -1, 0, 0}, {0, 0, 0, 0, -1, 2, -1, 0},
                                      {0, 0, 0, 0, 0, -1, 2, 0},  {0, 0, -1, 0, 0, 0, 0, 2}};
  RunResult r = run(quote(ctx.sclat) + " aut --gram " + quote(write_gram_file(ctx, "e8.gram", e8)));
  if (r.status != 0 || trim(r.out) != "696729600") {
    why << " E8 got '" << trim(r.out) << "'";
    ok = false;
  }
  return ok;
}

bool verify_dims(const Context& ctx, const std::vector<int>& dims, std::ostream& why) {
  bool ok = true;
  for (int d : dims) {
    auto t0 = std::chrono::steady_clock::now();
    RunResult r = run(quote(ctx.sclat) + " verify --quiet --dim " + std::to_string(d));
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int diffs = 0;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);) diffs += line.rfind("diff: ", 0) == 0;
    why << " dim " << d << ": " << last_line(r.out) << ", " << diffs << " diffs, exit " << r.status << ", "
        << static_cast<long>(secs) << " s;";
    if (r.status != 0) {
      ok = false;
      std::cerr << "verify --dim " << d << " reported:\n" << r.out;
    }
  }
  return ok;
}

bool property_suites(const Context& ctx, std::ostream& why) {
  const std::string filter =
      "Symbol.InvariantUnderRebasing:Symbol.ParsePrintRoundTripOnTables:WatsonMap.LengthLaw:"
      "Construct.RoundTripOnTableSymbols:ShortVectors.AgreeWithBoxSearch:Hilbert.BilinearSymmetricAndReciprocal:"
      "Bounds.LowerBoundsAreSoundInDimensionFive";
  RunResult r = run(quote(ctx.unit_tests) + " --gtest_brief=1 --gtest_filter=" + quote(filter));
  why << " " << last_line(r.out);
  return r.status == 0 && r.out.find("7 tests") != std::string::npos;
}

bool determinism(const Context& ctx, std::ostream& why) {
  std::string a = (ctx.scratch / "dim7_jobs1.json").string();
  std::string b = (ctx.scratch / "dim7_jobs8.json").string();
  RunResult r1 = run(quote(ctx.sclat) + " classify --quiet --dim 7 --jobs 1 --out " + quote(a));
  RunResult r8 = run(quote(ctx.sclat) + " classify --quiet --dim 7 --jobs 8 --out " + quote(b));
  if (r1.status != 0 || r8.status != 0) {
    why << " classify exit " << r1.status << "/" << r8.status;
    return false;
  }
  auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  std::string x = slurp(a), y = slurp(b);
  why << " " << x.size() << " bytes";
  return !x.empty() && x == y;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance checks"};
  Context ctx;
  app.add_option("--sclat", ctx.sclat, "Path to the sclat tool")->required();
  app.add_option("--unit-tests", ctx.unit_tests, "Path to the unit test binary")->required();
  CLI11_PARSE(app, argc, argv);

  ctx.scratch = std::filesystem::temp_directory_path() / ("scl_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(ctx.scratch);

  std::vector<Criterion> criteria = {
      {1, "bounds table for n = 3..10", kBoundsLimit, [&](std::ostream& w) { return bounds_table(ctx, w); }},
      {2, "mass spot checks", kMassLimit, [&](std::ostream& w) { return mass_spots(ctx, w); }},
      {3, "automorphism group orders", kAutLimit, [&](std::ostream& w) { return aut_spots(ctx, w); }},
      {4, "classification of dims 10..6", kCiClassifyLimit,
       [&](std::ostream& w) { return verify_dims(ctx, {10, 9, 8, 7, 6}, w); }},
      {5, "classification of dims 5..3", kExtendedClassifyLimit,
       [&](std::ostream& w) { return verify_dims(ctx, {5, 4, 3}, w); }},
      {6, "property suites", 0, [&](std::ostream& w) { return property_suites(ctx, w); }},
      {7, "catalogue independent of worker count", 0, [&](std::ostream& w) { return determinism(ctx, w); }},
  };

  int failed = 0;
  for (auto& c : criteria) {
    std::ostringstream why;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = c.check(why);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0 && secs > c.limit) {
      ok = false;
      why << " exceeded " << c.limit << " s";
    }
    if (!ok) ++failed;
    std::cout << "criterion " << c.id << ": " << (ok ? "PASS " : "FAIL ") << c.name << " (" << std::fixed
              << std::setprecision(1) << secs << " s)" << why.str() << std::endl;
  }
  std::filesystem::remove_all(ctx.scratch);
  return failed == 0 ? 0 : 1;
}

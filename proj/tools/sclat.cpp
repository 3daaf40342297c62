#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "scl/autgroup.hpp"
#include "scl/classify.hpp"
#include "scl/mass.hpp"
#include "scl/watson.hpp"

using namespace scl;

namespace {

constexpr int kOk = 0, kMismatch = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GramLattice load_gram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return read_gram(in);
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

GenusSymbol read_symbol(const std::string& text) {
  try {
    return parse_symbol(text);
  } catch (const SymbolError& e) {
    std::ostringstream os;
    os << "cannot parse symbol at position " << e.position() << ": " << e.what() << "\n  " << text << "\n  "
       << std::string(e.position(), ' ') << "^";
    throw UsageError(os.str());
  }
}

std::string set_text(const std::set<long>& s) {
  std::string out = "{";
  for (long p : s) out += (out.size() > 1 ? "," : "") + std::to_string(p);
  return out + "}";
}

ClassifyOptions classify_options(int jobs, std::uint64_t seed, bool quiet) {
  ClassifyOptions o;
  o.jobs = jobs;
  o.seed = seed;
  if (!quiet) o.log = [](const std::string& s) { std::cerr << s << "\n"; };
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-class lattice classification tools"};
  app.require_subcommand(1);

  int dim = 0, jobs = 0;
  std::uint64_t seed = 1;
  bool squarefree_only = false, quiet = false;
  std::string out_path, symbol_text, gram_path;
  long prime = 0;

  auto* classify = app.add_subcommand("classify", "Classify single-class genera of one dimension");
  classify->add_option("--dim", dim, "Dimension (3-10)")->required()->check(CLI::Range(3, 10));
  classify->add_flag("--squarefree-only", squarefree_only, "Stop after the square-free genera");
  classify->add_option("--jobs", jobs, "Worker threads (0: all cores)");
  classify->add_option("--out", out_path, "Catalogue JSON file (default: stdout)");
  classify->add_option("--seed", seed, "Seed for the randomized sublattice search");
  classify->add_flag("--quiet", quiet, "No progress messages");

  auto* verify = app.add_subcommand("verify", "Classify and compare with the stored tables");
  verify->add_option("--dim", dim, "Dimension (3-10)")->required()->check(CLI::Range(3, 10));
  verify->add_option("--jobs", jobs, "Worker threads (0: all cores)");
  verify->add_option("--seed", seed, "Seed for the randomized sublattice search");
  verify->add_flag("--quiet", quiet, "No progress messages");

  auto* mass_cmd = app.add_subcommand("mass", "Exact mass of a genus");
  mass_cmd->add_option("--symbol", symbol_text, "Genus symbol, e.g. II_{10,0}(3^{-1})")->required();

  auto* symbol_cmd = app.add_subcommand("symbol", "Genus symbol of a Gram matrix");
  symbol_cmd->add_option("--gram", gram_path, "Gram matrix file")->required();

  auto* construct = app.add_subcommand("construct", "Representative lattice of a genus");
  construct->add_option("--symbol", symbol_text, "Genus symbol")->required();
  construct->add_option("--seed", seed, "Seed for the randomized sublattice search");

  auto* watson = app.add_subcommand("watson", "Watson map rescale(L & pL^#)");
  watson->add_option("--gram", gram_path, "Gram matrix file")->required();
  watson->add_option("--p", prime, "Prime")->required();

  auto* aut = app.add_subcommand("aut", "Order of the automorphism group");
  aut->add_option("--gram", gram_path, "Gram matrix file")->required();

  auto* bounds = app.add_subcommand("bounds", "Mass bounds t, B and maxprime");
  bounds->add_option("--dim", dim, "Dimension (3-10)")->required()->check(CLI::Range(3, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*classify) {
      auto results = classify_dimension(dim, squarefree_only, classify_options(jobs, seed, quiet));
      auto families = group_families(results);
      std::string json = catalogue_json(dim, results, families);
      if (out_path.empty()) {
        std::cout << json;
      } else {
        std::ofstream out(out_path);
        if (!out) throw UsageError("cannot write " + out_path);
        out << json;
      }
      return kOk;
    }
    if (*verify) {
      auto tables = load_expected_tables();
      auto results = classify_dimension(dim, false, classify_options(jobs, seed, quiet));
      auto families = group_families(results);
      bool symbols = false;
      for (auto& e : tables.entries) symbols = symbols || e.dim == dim;
      VerifyReport rep = compare_with_tables(dim, results, families, tables, symbols);
      for (auto& d : rep.differences) std::cout << "diff: " << d << "\n";
      std::cout << rep.matched << "/" << rep.expected << " genera matched\n";
      return rep.ok() ? kOk : kMismatch;
    }
    if (*mass_cmd) {
      GenusSymbol s = read_symbol(symbol_text);
      std::string problem = validity_problem(s);
      if (!problem.empty()) throw UsageError("invalid genus symbol: " + problem);
      std::cout << to_string(mass(s)) << "\n";
      return kOk;
    }
    if (*symbol_cmd) {
      std::cout << print_symbol(symbol_from_lattice(load_gram(gram_path))) << "\n";
      return kOk;
    }
    if (*construct) {
      GenusSymbol s = read_symbol(symbol_text);
      std::string problem = validity_problem(s);
      if (!problem.empty()) throw UsageError("invalid genus symbol: " + problem);
      ConstructOptions opt;
      opt.seed = seed;
      std::cout << write_gram(construct_any(s, opt));
      return kOk;
    }
    if (*watson) {
      if (prime < 2 || !is_prime(prime)) throw UsageError("--p must be a prime");
      GramLattice l = load_gram(gram_path);
      GramLattice w = watson_map(l, prime);
      std::cout << write_gram(w) << "input: " << print_symbol(symbol_from_lattice(l)) << "\n"
                << "image: " << print_symbol(symbol_from_lattice(w)) << "\n";
      return kOk;
    }
    if (*aut) {
      std::cout << aut_group_order(load_gram(gram_path)).get_str() << "\n";
      return kOk;
    }
    if (*bounds) {
      MassBounds b = mass_bounds(dim);
      std::cout << "t=" << to_string(b.t_min.to_rational()) << " B=" << set_text(b.B_set) << " maxprime=" << b.maxprime
                << "\n";
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "scl/genus.hpp"
#include "scl/lattice.hpp"

namespace scl {

struct ClassifiedGenus {
  GenusSymbol symbol;  // canonical
  GramLattice representative;
  Rat mass;
  Int aut_order;
  bool maximal = false;
  bool qf_maximal = false;
  std::string family_id;  // key of the family representative
};

struct DualFamily {
  std::string id;             // symbol key of the representative
  std::vector<size_t> members;  // indices into the result list
  size_t representative = 0;
  int m1 = 0, m2 = 0;         // maximal and qf-maximal members
  Int aut_order;
  std::string annotation;     // mu^{*N}_{m1,m2}
  size_t size() const { return members.size(); }
};

struct ClassifyOptions {
  int jobs = 0;  // 0: hardware concurrency
  std::uint64_t seed = 1;
  // Progress messages; may be empty.
  std::function<void(const std::string&)> log;
};

// Outcome of every genus examined by classify_all, keyed by symbol key.
enum class Verdict { single_class, fails_mass_condition, not_single_class };
using SearchRecord = std::map<std::string, Verdict>;

// Square-free primitive symbols of dimension n satisfying the mass condition.
std::vector<GenusSymbol> enumerate_squarefree_candidates(int n, const ClassifyOptions& opt = {});

std::vector<ClassifiedGenus> classify_squarefree(int n, const ClassifyOptions& opt = {});

// Closure of seeds under Watson preimages. Sorted by determinant, then symbol text.
std::vector<ClassifiedGenus> classify_all(int n, const std::vector<ClassifiedGenus>& seeds, const ClassifyOptions& opt = {},
                                          SearchRecord* record = nullptr);

std::vector<ClassifiedGenus> classify_dimension(int n, bool squarefree_only, const ClassifyOptions& opt = {});

// Partial-dual families; also fills family_id in results.
std::vector<DualFamily> group_families(std::vector<ClassifiedGenus>& results);

std::string family_annotation(const Int& aut, size_t n, int m1, int m2);

struct SummaryStatistics {
  int dim = 0;
  size_t total = 0, maximal = 0, qf_maximal = 0;
  long max_prime = 0;
  Int max_det = 0;
};
SummaryStatistics summary_statistics(int dim, const std::vector<ClassifiedGenus>& results);

ClassifiedGenus certify(const GenusSymbol& sym, const GramLattice& l);

// Runs f(0..count-1) on up to jobs threads.
void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& f);

// Catalogue JSON (version 1).
std::string catalogue_json(int dim, const std::vector<ClassifiedGenus>& results, const std::vector<DualFamily>& families);

struct ExpectedEntry {
  int dim = 0;
  std::string symbol;
  Int aut;
  int N = 0, m1 = 0, m2 = 0;
};
struct ExpectedSummary {
  int dim = 0;
  size_t total = 0, maximal = 0, qf_maximal = 0;
  long max_prime = 0;
  Int max_det;
};
struct ExpectedBounds {
  int n = 0;
  std::string t;
  std::vector<long> B;
  long maxprime = 0;
};
struct ExpectedTables {
  std::vector<ExpectedEntry> entries;
  std::vector<ExpectedSummary> summary;
  std::vector<ExpectedBounds> bounds;
};
ExpectedTables load_expected_tables(const std::string& data_dir = SCL_DATA_DIR);

struct VerifyReport {
  size_t expected = 0, matched = 0;
  std::vector<std::string> differences;
  bool ok() const { return differences.empty(); }
};
VerifyReport compare_with_tables(int dim, const std::vector<ClassifiedGenus>& results,
                                 const std::vector<DualFamily>& families, const ExpectedTables& tables,
                                 bool compare_symbols = true);

}  // namespace scl

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "scl/classify.hpp"

namespace scl {

namespace {

using ojson = nlohmann::ordered_json;

ojson number(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

}  // namespace

std::string catalogue_json(int dim, const std::vector<ClassifiedGenus>& results, const std::vector<DualFamily>& families) {
  std::map<std::string, std::string> annotation;
  for (auto& f : families) annotation[f.id] = f.annotation;
  ojson genera = ojson::array();
  for (auto& r : results) {
    ojson g;
    g["dim"] = dim;
    g["symbol"] = print_symbol(r.symbol);
    ojson gram = ojson::array();
    int n = r.representative.dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) gram.push_back(number(r.representative(i, j)));
    g["gram"] = gram;
    g["mass_num"] = number(r.mass.get_num());
    g["mass_den"] = number(r.mass.get_den());
    g["aut_order"] = number(r.aut_order);
    g["maximal"] = r.maximal;
    g["qf_maximal"] = r.qf_maximal;
    g["family_id"] = r.family_id;
    g["family_annotation"] = annotation.count(r.family_id) ? annotation[r.family_id] : "";
    genera.push_back(g);
  }
  ojson doc;
  doc["version"] = 1;
  doc["dim"] = dim;
  doc["genera"] = genera;
  return doc.dump(1) + "\n";
}

ExpectedTables load_expected_tables(const std::string& data_dir) {
  ExpectedTables t;
  auto app = read_json(data_dir + "/appendix_tables.json");
  for (auto& e : app.at("entries")) {
    ExpectedEntry x;
    x.dim = e.at("dim");
    x.symbol = e.at("symbol");
    x.aut = Int(e.at("aut").get<std::string>());
    x.N = e.at("N");
    x.m1 = e.at("m1");
    x.m2 = e.at("m2");
    t.entries.push_back(x);
  }
  auto ov = read_json(data_dir + "/overview.json");
  for (auto& e : ov.at("summary")) {
    ExpectedSummary s;
    s.dim = e.at("dim");
    s.total = e.at("total");
    s.maximal = e.at("maximal");
    s.qf_maximal = e.at("qf_maximal");
    s.max_prime = e.at("max_prime");
    s.max_det = Int(e.at("max_det").get<std::string>());
    t.summary.push_back(s);
  }
  for (auto& e : ov.at("bounds")) {
    ExpectedBounds b;
    b.n = e.at("n");
    b.t = e.at("t");
    b.B = e.at("B").get<std::vector<long>>();
    b.maxprime = e.at("maxprime");
    t.bounds.push_back(b);
  }
  return t;
}

VerifyReport compare_with_tables(int dim, const std::vector<ClassifiedGenus>& results,
                                 const std::vector<DualFamily>& families, const ExpectedTables& tables,
                                 bool compare_symbols) {
  VerifyReport rep;
  auto diff = [&](const std::string& s) { rep.differences.push_back(s); };
  SummaryStatistics got = summary_statistics(dim, results);
  bool have_summary = false;
  for (auto& s : tables.summary) {
    if (s.dim != dim) continue;
    have_summary = true;
    auto cmp = [&](const std::string& what, const auto& expected, const auto& actual) {
      if (expected != actual) {
        std::ostringstream os;
        os << what << ": expected " << expected << ", got " << actual;
        diff(os.str());
      }
    };
    cmp("total", s.total, got.total);
    cmp("maximal", s.maximal, got.maximal);
    cmp("qf-maximal", s.qf_maximal, got.qf_maximal);
    cmp("largest prime dividing a determinant", s.max_prime, got.max_prime);
    cmp("maximal determinant", s.max_det, got.max_det);
    if (!compare_symbols) {
      rep.expected = s.total;
      rep.matched = std::min(s.total, got.total);
    }
  }
  if (!have_summary) diff("no expected summary for dimension " + std::to_string(dim));
  if (!compare_symbols) return rep;

  std::map<std::string, size_t> family_of;
  for (size_t f = 0; f < families.size(); ++f)
    for (size_t i : families[f].members) family_of[symbol_key(results[i].symbol)] = f;
  std::vector<bool> used(families.size(), false);
  for (auto& e : tables.entries) {
    if (e.dim != dim) continue;
    rep.expected += e.N;
    std::string key;
    try {
      key = symbol_key(parse_symbol(e.symbol));
    } catch (const std::exception& ex) {
      diff(e.symbol + ": unreadable table symbol (" + ex.what() + ")");
      continue;
    }
    auto it = family_of.find(key);
    if (it == family_of.end()) {
      diff(e.symbol + ": missing");
      continue;
    }
    const DualFamily& f = families[it->second];
    used[it->second] = true;
    std::string want = family_annotation(e.aut, e.N, e.m1, e.m2);
    if (f.annotation != want) {
      diff(e.symbol + ": annotation " + f.annotation + ", expected " + want);
      continue;
    }
    rep.matched += e.N;
  }
  for (size_t f = 0; f < families.size(); ++f)
    if (!used[f]) diff(families[f].id + ": not in the table (family " + families[f].annotation + ")");
  return rep;
}

}  // namespace scl

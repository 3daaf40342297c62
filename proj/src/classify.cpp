#include "scl/classify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <thread>

#include "scl/autgroup.hpp"
#include "scl/construct.hpp"
#include "scl/mass.hpp"
#include "scl/watson.hpp"

namespace scl {

void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& f) {
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  size_t workers = std::min<size_t>(jobs, count);
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> threads;
  for (size_t w = 0; w < workers; ++w)
    threads.emplace_back([&] {
      for (size_t i; (i = next++) < count;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

void say(const ClassifyOptions& opt, const std::string& msg) {
  if (opt.log) opt.log(msg);
}

// MinimalMass <= 1/2, keeping the branch when the comparison cannot be decided.
bool may_reach_mass_condition(const LocalSymbol& u, const std::vector<LocalSymbol>& v, long q) {
  try {
    return minimal_mass_at_most(u, v, q, Rat(1, 2));
  } catch (const std::runtime_error&) {
    return true;
  }
}

bool sort_order(const ClassifiedGenus& a, const ClassifiedGenus& b) {
  Int da = determinant(a.representative), db = determinant(b.representative);
  if (da != db) return da < db;
  return print_symbol(a.symbol) < print_symbol(b.symbol);
}

}  // namespace

std::vector<GenusSymbol> enumerate_squarefree_candidates(int n, const ClassifyOptions& opt) {
  if (n < 3) throw std::invalid_argument("enumerate_squarefree_candidates: n must be at least 3");
  std::set<GenusSymbol> out;
  auto consider = [&](const LocalSymbol& u, const std::vector<LocalSymbol>& odd) {
    GenusSymbol g;
    g.n = n;
    g.locals.push_back(u);
    g.locals.insert(g.locals.end(), odd.begin(), odd.end());
    if (!is_valid_genus_symbol(g)) return;
    if (mass_condition(mass(g))) out.insert(canonical(g));
  };
  struct Item {
    LocalSymbol two;
    std::vector<LocalSymbol> odd;
    long p;
  };
  std::vector<Item> work;
  for (auto& u : enumerate_squarefree_local(2, n)) {
    consider(u, {});
    work.push_back({u, {}, 3});
  }
  std::map<long, std::vector<LocalSymbol>> local_lists;
  while (!work.empty()) {
    Item it = std::move(work.back());
    work.pop_back();
    long q = next_prime(it.p);
    auto& vs = local_lists[it.p];
    if (vs.empty()) vs = enumerate_squarefree_local(it.p, n);
    for (auto& v : vs) {
      auto odd = it.odd;
      odd.push_back(v);
      consider(it.two, odd);
      if (may_reach_mass_condition(it.two, odd, q)) work.push_back({it.two, odd, q});
    }
    if (may_reach_mass_condition(it.two, it.odd, q)) work.push_back({it.two, it.odd, q});
  }
  say(opt, "dim " + std::to_string(n) + ": " + std::to_string(out.size()) + " square-free candidates");
  return {out.begin(), out.end()};
}

ClassifiedGenus certify(const GenusSymbol& sym, const GramLattice& l) {
  ClassifiedGenus c;
  c.symbol = canonical(sym);
  c.representative = l;
  c.mass = mass(c.symbol);
  c.aut_order = aut_group_order(l);
  c.maximal = is_maximal(l);
  c.qf_maximal = is_qf_maximal(l);
  return c;
}

namespace {

bool certified_single_class(const ClassifiedGenus& c) { return c.mass * Rat(c.aut_order) == 1; }

}  // namespace

std::vector<ClassifiedGenus> classify_squarefree(int n, const ClassifyOptions& opt) {
  auto cands = enumerate_squarefree_candidates(n, opt);
  std::vector<std::optional<ClassifiedGenus>> slot(cands.size());
  ConstructOptions copt;
  copt.seed = opt.seed;
  parallel_for(cands.size(), opt.jobs, [&](size_t i) {
    GramLattice l = construct_representative(cands[i], copt);
    ClassifiedGenus c = certify(cands[i], l);
    if (certified_single_class(c)) slot[i] = std::move(c);
  });
  std::vector<ClassifiedGenus> out;
  for (auto& s : slot)
    if (s) out.push_back(std::move(*s));
  std::sort(out.begin(), out.end(), sort_order);
  say(opt, "dim " + std::to_string(n) + ": " + std::to_string(out.size()) + " square-free single-class genera");
  return out;
}

std::vector<ClassifiedGenus> classify_all(int n, const std::vector<ClassifiedGenus>& seeds, const ClassifyOptions& opt,
                                          SearchRecord* record) {
  std::vector<ClassifiedGenus> out = seeds;
  std::set<std::string> seen;
  std::set<std::pair<Int, std::string>> work;
  for (size_t i = 0; i < out.size(); ++i) {
    std::string key = symbol_key(out[i].symbol);
    seen.insert(key);
    if (record) (*record)[key] = Verdict::single_class;
    work.insert({determinant(out[i].representative), key});
  }
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < out.size(); ++i) index[symbol_key(out[i].symbol)] = i;
  ConstructOptions copt;
  copt.seed = opt.seed;

  while (!work.empty()) {
    auto [det, key] = *work.begin();
    work.erase(work.begin());
    const GramLattice base = out[index.at(key)].representative;
    const GenusSymbol base_sym = out[index.at(key)].symbol;
    const Rat base_mass = out[index.at(key)].mass;
    std::vector<long> primes = prime_divisors(2 * det);
    for (long p = 3;; p = next_prime(p)) {
      bool in = true;
      try {
        in = decide_at_most([&](int d) { return b_bound(n, p, d) * Interval(base_mass); }, Rat(1, 2));
      } catch (const std::runtime_error&) {
      }
      if (!in) break;
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());

    for (long p : primes) {
      std::vector<GenusSymbol> todo;
      std::vector<std::string> keys;
      for (auto& s : watson_preimage_symbols(base_sym, p)) {
        std::string k = symbol_key(s);
        if (!seen.insert(k).second) continue;
        if (!mass_condition(s)) {
          if (record) (*record)[k] = Verdict::fails_mass_condition;
          continue;
        }
        todo.push_back(s);
        keys.push_back(k);
      }
      std::vector<std::optional<ClassifiedGenus>> slot(todo.size());
      parallel_for(todo.size(), opt.jobs, [&](size_t i) {
        std::mt19937_64 rng(seed_from_string(keys[i], opt.seed));
        GramLattice l = realize_preimage(base, p, todo[i], rng, copt);
        slot[i] = certify(todo[i], l);
      });
      for (size_t i = 0; i < todo.size(); ++i) {
        bool single = certified_single_class(*slot[i]);
        if (record) (*record)[keys[i]] = single ? Verdict::single_class : Verdict::not_single_class;
        if (!single) continue;
        index[keys[i]] = out.size();
        work.insert({determinant(slot[i]->representative), keys[i]});
        out.push_back(std::move(*slot[i]));
      }
    }
  }
  std::sort(out.begin(), out.end(), sort_order);
  say(opt, "dim " + std::to_string(n) + ": " + std::to_string(out.size()) + " single-class genera");
  return out;
}

std::vector<ClassifiedGenus> classify_dimension(int n, bool squarefree_only, const ClassifyOptions& opt) {
  auto seeds = classify_squarefree(n, opt);
  if (squarefree_only) return seeds;
  return classify_all(n, seeds, opt);
}

std::string family_annotation(const Int& aut, size_t n, int m1, int m2) {
  std::string s = aut.get_str();
  if (n > 1) s += "^{*" + std::to_string(n) + "}";
  if (m1 || m2) s += "_{" + std::to_string(m1) + "," + std::to_string(m2) + "}";
  return s;
}

std::vector<DualFamily> group_families(std::vector<ClassifiedGenus>& results) {
  size_t m = results.size();
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < m; ++i) index[symbol_key(results[i].symbol)] = i;
  std::vector<size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (size_t i = 0; i < m; ++i) {
    const GramLattice& l = results[i].representative;
    for (long p : prime_divisors(determinant(l))) {
      std::string k = symbol_key(symbol_from_lattice(partial_dual(l, p)));
      auto it = index.find(k);
      if (it == index.end())
        throw std::logic_error("group_families: partial dual " + k + " of " + print_symbol(results[i].symbol) +
                               " is missing from the results");
      parent[find(i)] = find(it->second);
    }
  }
  std::map<size_t, std::vector<size_t>> groups;
  for (size_t i = 0; i < m; ++i) groups[find(i)].push_back(i);
  std::vector<DualFamily> fams;
  for (auto& [root, members] : groups) {
    DualFamily f;
    f.members = members;
    f.representative = *std::min_element(members.begin(), members.end(), [&](size_t a, size_t b) {
      return sort_order(results[a], results[b]);
    });
    for (size_t i : members) {
      f.m1 += results[i].maximal;
      f.m2 += results[i].qf_maximal;
    }
    f.aut_order = results[f.representative].aut_order;
    f.id = print_symbol(results[f.representative].symbol);
    f.annotation = family_annotation(f.aut_order, f.size(), f.m1, f.m2);
    for (size_t i : members) results[i].family_id = f.id;
    fams.push_back(std::move(f));
  }
  std::sort(fams.begin(), fams.end(), [&](const DualFamily& a, const DualFamily& b) {
    return sort_order(results[a.representative], results[b.representative]);
  });
  return fams;
}

SummaryStatistics summary_statistics(int dim, const std::vector<ClassifiedGenus>& results) {
  SummaryStatistics s;
  s.dim = dim;
  s.total = results.size();
  for (auto& r : results) {
    s.maximal += r.maximal;
    s.qf_maximal += r.qf_maximal;
    Int d = determinant(r.representative);
    s.max_det = std::max(s.max_det, d);
    for (long p : prime_divisors(d)) s.max_prime = std::max(s.max_prime, p);
  }
  return s;
}

}  // namespace scl

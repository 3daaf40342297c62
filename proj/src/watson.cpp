#include "scl/watson.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "scl/local.hpp"

namespace scl {

GramLattice watson_map(const GramLattice& l, long p) {
  int n = l.dim();
  IntMatrix b = sublattice_basis(n, p, left_kernel_mod(l.gram(), p));
  return lll_reduce(rescale_primitive(congruent(b, l.gram())));
}

namespace {

void merge_into(std::vector<Constituent>& cs, const Constituent& c) {
  for (auto& x : cs)
    if (x.scale == c.scale) {
      x.rank += c.rank;
      x.eps *= c.eps;
      x.odd = x.odd || c.odd;
      x.oddity = (x.oddity + c.oddity) % 8;
      return;
    }
  cs.push_back(c);
}

GenusSymbol with_local(const GenusSymbol& others, const LocalSymbol& l) {
  GenusSymbol s;
  s.n = others.n;
  for (auto& x : others.locals)
    if (x.p != l.p) s.locals.push_back(x);
  if (!(l.p != 2 && l.cs.size() == 1 && l.cs[0].scale == 0)) s.locals.push_back(l);
  std::sort(s.locals.begin(), s.locals.end(), [](const LocalSymbol& a, const LocalSymbol& b) { return a.p < b.p; });
  return s;
}

bool text_order(const GenusSymbol& a, const GenusSymbol& b) {
  Int da = determinant(a), db = determinant(b);
  if (da != db) return da < db;
  return print_symbol(a) < print_symbol(b);
}

}  // namespace

GenusSymbol watson_symbol(const GenusSymbol& sym, long p) {
  LocalSymbol in = sym.local_at(p);
  LocalSymbol out;
  out.p = p;
  for (auto c : in.cs) {
    if (c.scale == 0) c.scale = 2;
    merge_into(out.cs, c);
  }
  std::sort(out.cs.begin(), out.cs.end());
  int m = out.min_scale();
  // Keep the unshifted p-part even when it looks trivial; scale_symbol shifts and cleans up.
  GenusSymbol s;
  s.n = sym.n;
  for (auto& x : sym.locals)
    if (x.p != p) s.locals.push_back(x);
  s.locals.push_back(out);
  std::sort(s.locals.begin(), s.locals.end(), [](const LocalSymbol& a, const LocalSymbol& b) { return a.p < b.p; });
  return scale_symbol(s, p, -m);
}

std::vector<GenusSymbol> watson_preimage_symbols(const GenusSymbol& sym_in, long p) {
  GenusSymbol k = canonical(sym_in);
  LocalSymbol kp = k.local_at(p);
  struct Slot {
    int scale, rank;
    bool odd;
  };
  std::set<GenusSymbol> found;

  auto search = [&](const std::vector<Slot>& slots, const GenusSymbol& others) {
    std::vector<Constituent> cs(slots.size());
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == slots.size()) {
        LocalSymbol l;
        l.p = p;
        l.cs = cs;
        GenusSymbol m = with_local(others, l);
        if (!validity_problem(m).empty()) return;
        if (watson_symbol(m, p) != k) return;
        found.insert(canonical(m));
        return;
      }
      Constituent c{slots[i].scale, slots[i].rank, 1, slots[i].odd, 0};
      for (int eps : {1, -1}) {
        c.eps = eps;
        if (p != 2 || !c.odd) {
          if (p != 2 || realizable_2adic(c.rank, eps, false, 0)) {
            cs[i] = c;
            rec(i + 1);
          }
          continue;
        }
        for (int t = 0; t < 8; ++t) {
          if (!realizable_2adic(c.rank, eps, true, t)) continue;
          c.oddity = t;
          cs[i] = c;
          rec(i + 1);
        }
      }
    };
    rec(0);
  };

  // Ways to split c into a nonempty scale-0 part of rank a and a scale-2 part of rank c.rank - a.
  auto split_types = [&](const Constituent& c, int a) {
    int b = c.rank - a;
    std::vector<std::pair<bool, bool>> out;
    if (p != 2 || !c.odd) {
      if (p != 2 || (a % 2 == 0 && b % 2 == 0)) out.push_back({false, false});
      return out;
    }
    if (b == 0) return std::vector<std::pair<bool, bool>>{{true, false}};
    out.push_back({true, true});
    if (b % 2 == 0) out.push_back({true, false});
    if (a % 2 == 0) out.push_back({false, true});
    return out;
  };
  auto expand = [&](const Constituent& c, int shift_rest, const Constituent* fixed1, const GenusSymbol& others) {
    for (int a = 1; a <= c.rank; ++a)
      for (auto [t0, t2] : split_types(c, a)) {
        std::vector<Slot> slots = {{0, a, t0}};
        if (fixed1) slots.push_back({1, fixed1->rank, fixed1->odd});
        if (c.rank > a) slots.push_back({2, c.rank - a, t2});
        for (auto& x : kp.cs)
          if (x.scale >= 3 - shift_rest) slots.push_back({x.scale + shift_rest, x.rank, x.odd});
        search(slots, others);
      }
  };

  // M_1 = K_0, M_0 + M_2 = K_1, M_j = K_{j-1} for j >= 3; Wat_p divided out one power of p.
  if (const Constituent* k1 = kp.at(1)) expand(*k1, 1, kp.at(0), scale_symbol(k, p, 1));
  // M_1 = 0, M_0 + M_2 = K_0, M_j = K_{j-2} for j >= 3; the p^2 rescaling changes nothing elsewhere.
  expand(*kp.at(0), 2, nullptr, k);

  std::vector<GenusSymbol> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), text_order);
  return out;
}

GramLattice realize_preimage(const GramLattice& l, long p, const GenusSymbol& target_in, std::mt19937_64& rng,
                             const ConstructOptions& opt) {
  GenusSymbol target = canonical(target_in);
  int n = l.dim();
  IntMatrix g2 = l.gram();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g2(i, j) *= 2;
  int v_l = valuation(determinant(l), p);
  GenusSymbol current = symbol_from_lattice(l);
  // With M the preimage, M & pM^# is l scaled by p^a, a = 1 when M has a p-modular constituent
  // and 2 otherwise; then pl <= pM <= l and pM carries the target scaled by p^(2-a).
  GenusSymbol scaled = scale_symbol(target, p, target.local_at(p).at(1) ? 1 : 0);
  int diff = scaled.local_at(p).valuation() - v_l;
  if (diff > 0 && diff % 2 == 0 && diff / 2 <= n && with_local(scaled, current.local_at(p)) == current) {
    IntMatrix sub = sublattice_with_local_symbol(g2, p, scaled.local_at(p), rng, opt);
    IntMatrix g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = sub(i, j) / 2;
    GramLattice out = lll_reduce(rescale_primitive(g));
    if (symbol_from_lattice(out) == target) return out;
  }
  throw ConstructionError("realize_preimage: no sublattice with symbol " + print_symbol(target));
}

GramLattice construct_any(const GenusSymbol& sym_in, const ConstructOptions& opt) {
  std::string problem = validity_problem(sym_in);
  if (!problem.empty()) throw std::invalid_argument("construct_any: invalid symbol: " + problem);
  GenusSymbol sym = canonical(sym_in);
  if (!is_primitive(sym)) throw std::invalid_argument("construct_any: symbol must be primitive");
  std::vector<std::pair<GenusSymbol, long>> chain;
  GenusSymbol cur = sym;
  while (!is_squarefree(cur)) {
    long p = 0;
    for (auto& l : cur.locals)
      if (l.max_scale() >= 2) {
        p = l.p;
        break;
      }
    chain.push_back({cur, p});
    cur = watson_symbol(cur, p);
  }
  GramLattice l = construct_representative(cur, opt);
  std::mt19937_64 rng(seed_from_string(print_symbol(sym), opt.seed));
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) l = realize_preimage(l, it->second, it->first, rng, opt);
  return l;
}

}  // namespace scl

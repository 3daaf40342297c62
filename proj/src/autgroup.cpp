#include "scl/autgroup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "scl/genus.hpp"
#include "scl/mass.hpp"

namespace scl {

ShortVectorSet short_vectors(const GramLattice& l, const Int& bound) {
  int n = l.dim();
  if (!is_positive_definite(l.gram())) throw std::invalid_argument("short_vectors: lattice not positive definite");
  // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2
  RatMatrix q = to_rational(l.gram());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      q(j, i) = q(i, j);
      q(i, j) /= q(i, i);
    }
    for (int k = i + 1; k < n; ++k)
      for (int m = k; m < n; ++m) q(k, m) -= q(k, i) * q(i, m);
  }
  ShortVectorSet out;
  out.bound = bound;
  std::vector<long> x(n, 0);
  std::function<void(int, const Rat&, bool)> rec = [&](int i, const Rat& remaining, bool all_zero) {
    if (i < 0) {
      if (all_zero) return;
      Int norm = 0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) norm += l(a, b) * x[a] * x[b];
      out.vectors.push_back(x);
      out.norms.push_back(norm);
      return;
    }
    Rat c = 0;
    for (int j = i + 1; j < n; ++j) c += q(i, j) * x[j];
    Rat r = remaining / q(i, i);
    Int s = isqrt(r.get_num() / r.get_den()) + 1;
    Int fl = c.get_num() / c.get_den();  // truncation; widened by s + 1 below
    long lo = Int(-fl - s - 1).get_si(), hi = Int(-fl + s + 1).get_si();
    if (all_zero) lo = std::max(lo, 0L);
    for (long v = lo; v <= hi; ++v) {
      Rat t = c + v;
      Rat used = q(i, i) * t * t;
      if (used > remaining) continue;
      x[i] = v;
      rec(i - 1, remaining - used, all_zero && v == 0);
    }
    x[i] = 0;
  };
  rec(n - 1, Rat(bound), true);
  return out;
}

namespace {

struct AutSearch {
  int n;
  std::vector<std::vector<long>> gram;   // basis order already applied
  std::vector<std::vector<long>> vecs;   // both signs
  std::vector<std::vector<long>> vg;     // vecs[a] * G
  std::map<std::vector<long>, int> index;
  std::vector<std::vector<int>> by_norm;  // by_norm[j] = candidates with Q = G_jj
  // expected[i][j]: number of candidates for position j once positions < i are fixed to the identity.
  std::vector<std::vector<size_t>> expected;
  std::vector<int> basis_index;

  long ip(int a, int b) const {
    long s = 0;
    for (int k = 0; k < n; ++k) s += vg[a][k] * vecs[b][k];
    return s;
  }

  // Filters every list for positions > i by the inner product with the image chosen for i.
  bool narrow(int i, int img, const std::vector<std::vector<int>>& cur, std::vector<std::vector<int>>& next) const {
    next.assign(n, {});
    for (int j = i + 1; j < n; ++j) {
      for (int c : cur[j])
        if (c != img && ip(img, c) == gram[i][j]) next[j].push_back(c);
      if (next[j].size() != expected[i + 1][j]) return false;
    }
    return true;
  }

  // Extends fixed images of positions < i to a full isometry; returns images on success.
  bool extend(int i, std::vector<int>& images, const std::vector<std::vector<int>>& cur) const {
    if (i == n) return true;
    for (int c : cur[i]) {
      std::vector<std::vector<int>> next;
      if (!narrow(i, c, cur, next)) continue;
      images[i] = c;
      if (extend(i + 1, images, next)) return true;
    }
    return false;
  }

  std::vector<int> apply(const std::vector<int>& images) const {
    std::vector<int> perm(vecs.size());
    for (size_t a = 0; a < vecs.size(); ++a) {
      std::vector<long> y(n, 0);
      for (int k = 0; k < n; ++k)
        if (long c = vecs[a][k])
          for (int m = 0; m < n; ++m) y[m] += c * vecs[images[k]][m];
      auto it = index.find(y);
      if (it == index.end()) throw std::logic_error("aut_group_order: candidate set not closed under isometry");
      perm[a] = it->second;
    }
    return perm;
  }
};

std::vector<int> orbit(int start, const std::vector<std::vector<int>>& gens, std::vector<char>& mark) {
  std::vector<int> out = {start};
  mark[start] = 1;
  for (size_t k = 0; k < out.size(); ++k)
    for (auto& g : gens) {
      int y = g[out[k]];
      if (!mark[y]) {
        mark[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

}  // namespace

Int aut_group_order(const GramLattice& l_in) {
  LllResult red = lll_gram(l_in.gram());
  GramLattice l(red.gram);
  int n = l.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!l(i, j).fits_slong_p()) throw std::runtime_error("aut_group_order: Gram entries too large");
  Int bound = 0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, l(i, i));
  ShortVectorSet sv = short_vectors(l, bound);

  AutSearch s;
  s.n = n;
  for (size_t a = 0; a < sv.vectors.size(); ++a) {
    auto v = sv.vectors[a];
    for (int sign : {1, -1}) {
      std::vector<long> w(n);
      for (int k = 0; k < n; ++k) w[k] = sign * v[k];
      s.index[w] = static_cast<int>(s.vecs.size());
      s.vecs.push_back(w);
    }
  }
  // Positions with fewer candidates first.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::map<long, size_t> count_by_norm;
  for (auto& v : s.vecs) {
    long q = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) q += l(a, b).get_si() * v[a] * v[b];
    ++count_by_norm[q];
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return count_by_norm[l(a, a).get_si()] < count_by_norm[l(b, b).get_si()];
  });
  s.gram.assign(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.gram[i][j] = l(order[i], order[j]).get_si();
  // Re-express vectors in the permuted basis.
  for (auto& v : s.vecs) {
    std::vector<long> w(n);
    for (int i = 0; i < n; ++i) w[i] = v[order[i]];
    v = w;
  }
  s.index.clear();
  for (size_t a = 0; a < s.vecs.size(); ++a) s.index[s.vecs[a]] = static_cast<int>(a);
  s.vg.assign(s.vecs.size(), std::vector<long>(n, 0));
  for (size_t a = 0; a < s.vecs.size(); ++a)
    for (int k = 0; k < n; ++k)
      if (long c = s.vecs[a][k])
        for (int m = 0; m < n; ++m) s.vg[a][m] += c * s.gram[k][m];
  s.by_norm.assign(n, {});
  for (size_t a = 0; a < s.vecs.size(); ++a) {
    long q = s.ip(static_cast<int>(a), static_cast<int>(a));
    for (int j = 0; j < n; ++j)
      if (q == s.gram[j][j]) s.by_norm[j].push_back(static_cast<int>(a));
  }
  s.basis_index.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    s.basis_index[i] = s.index.at(e);
  }
  // Candidate lists along the identity, which also fix the expected counts.
  std::vector<std::vector<std::vector<int>>> ident(n + 1);
  s.expected.assign(n + 1, std::vector<size_t>(n, 0));
  ident[0] = s.by_norm;
  for (int j = 0; j < n; ++j) s.expected[0][j] = ident[0][j].size();
  for (int i = 0; i < n; ++i) {
    ident[i + 1].assign(n, {});
    for (int j = i + 1; j < n; ++j) {
      for (int c : ident[i][j])
        if (c != s.basis_index[i] && s.ip(s.basis_index[i], c) == s.gram[i][j]) ident[i + 1][j].push_back(c);
      s.expected[i + 1][j] = ident[i + 1][j].size();
    }
  }

  // Stabilizer chain from the last position up: |G_{i-1}| = |orbit of b_i under G_{i-1}| * |G_i|.
  std::vector<std::vector<int>> gens;
  Int order_total = 1;
  std::vector<int> images(n);
  for (int i = n - 1; i >= 0; --i) {
    std::vector<char> in_orbit(s.vecs.size(), 0), failed(s.vecs.size(), 0);
    std::vector<int> orb = orbit(s.basis_index[i], gens, in_orbit);
    for (int c : ident[i][i]) {
      if (in_orbit[c] || failed[c]) continue;
      std::vector<std::vector<int>> next;
      bool found = false;
      if (s.narrow(i, c, ident[i], next)) {
        for (int k = 0; k < i; ++k) images[k] = s.basis_index[k];
        images[i] = c;
        found = s.extend(i + 1, images, next);
      }
      if (found) {
        gens.push_back(s.apply(images));
        std::fill(in_orbit.begin(), in_orbit.end(), 0);
        orb = orbit(s.basis_index[i], gens, in_orbit);
      } else {
        orbit(c, gens, failed);
      }
    }
    order_total *= static_cast<long>(orb.size());
  }
  return order_total;
}

bool is_single_class(const GramLattice& l) {
  Rat m = mass(symbol_from_lattice(l));
  if (m.get_num() != 1) return false;
  return aut_group_order(l) == m.get_den();
}

}  // namespace scl

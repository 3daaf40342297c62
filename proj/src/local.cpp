#include "scl/local.hpp"

#include <map>
#include <stdexcept>

namespace scl {

namespace {

struct Piece {
  int scale;
  std::vector<Rat> entries;  // 1 (a) or 3 (a, b, c) values of the unit part
};

Rat scaled(const Rat& x, long p, int v) {
  return v >= 0 ? Rat(x / Rat(ipow(Int(p), v))) : Rat(x * Rat(ipow(Int(p), -v)));
}

}  // namespace

JordanDecomposition jordan_decompose(const RatMatrix& gram, long p) {
  int n = gram.rows();
  RatMatrix a = gram;
  std::vector<int> live(n);
  for (int i = 0; i < n; ++i) live[i] = i;
  std::vector<Piece> pieces;

  auto eliminate_1 = [&](int i) {
    for (int k : live) {
      if (k == i || a(k, i) == 0) continue;
      Rat f = a(k, i) / a(i, i);
      for (int j : live) a(k, j) -= f * a(i, j);
      for (int j : live) a(j, k) = a(k, j);
    }
  };

  while (!live.empty()) {
    int vmin = kInfiniteValuation, di = -1, oi = -1, oj = -1;
    int vdiag = kInfiniteValuation;
    for (size_t x = 0; x < live.size(); ++x) {
      int i = live[x];
      int v = valuation(a(i, i), p);
      if (v < vdiag) vdiag = v, di = i;
      for (size_t y = x + 1; y < live.size(); ++y) {
        int j = live[y];
        int w = valuation(a(i, j), p);
        if (w < vmin) vmin = w, oi = i, oj = j;
      }
    }
    if (vdiag == kInfiniteValuation && vmin == kInfiniteValuation)
      throw std::invalid_argument("jordan_decompose: degenerate form");
    if (vdiag <= vmin) {
      pieces.push_back({vdiag, {scaled(a(di, di), p, vdiag)}});
      eliminate_1(di);
      std::erase(live, di);
      continue;
    }
    if (p != 2) {
      // b_i += b_j makes the diagonal attain the minimal valuation.
      for (int k : live) a(oi, k) += a(oj, k);
      for (int k : live) a(k, oi) = a(oi, k);
      a(oi, oi) += a(oi, oj);
      // a(oi, oi) = a_ii + 2 a_ij + a_jj after the two updates
      continue;
    }
    // 2x2 even block at p = 2.
    Rat x = a(oi, oi), y = a(oi, oj), z = a(oj, oj);
    Rat det = x * z - y * y;
    for (int k : live) {
      if (k == oi || k == oj) continue;
      Rat u = a(k, oi), w = a(k, oj);
      if (u == 0 && w == 0) continue;
      // (u, w) * B^{-1}
      Rat c1 = (u * z - w * y) / det, c2 = (w * x - u * y) / det;
      for (int j : live) a(k, j) -= c1 * a(oi, j) + c2 * a(oj, j);
      for (int j : live) a(j, k) = a(k, j);
    }
    pieces.push_back({vmin, {scaled(x, p, vmin), scaled(y, p, vmin), scaled(z, p, vmin)}});
    std::erase(live, oi);
    std::erase(live, oj);
  }

  std::map<int, std::vector<const Piece*>> by_scale;
  for (auto& pc : pieces) by_scale[pc.scale].push_back(&pc);
  JordanDecomposition out;
  out.p = p;
  for (auto& [s, list] : by_scale) {
    JordanBlock b;
    b.scale = s;
    for (auto* pc : list) b.rank += pc->entries.size() == 1 ? 1 : 2;
    b.unit_gram = RatMatrix(b.rank, b.rank);
    int pos = 0;
    for (auto* pc : list) {
      if (pc->entries.size() == 1) {
        b.unit_gram(pos, pos) = pc->entries[0];
        ++b.odd_entries;
        ++pos;
      } else {
        b.unit_gram(pos, pos) = pc->entries[0];
        b.unit_gram(pos, pos + 1) = b.unit_gram(pos + 1, pos) = pc->entries[1];
        b.unit_gram(pos + 1, pos + 1) = pc->entries[2];
        pos += 2;
      }
    }
    out.blocks.push_back(std::move(b));
  }
  return out;
}

JordanDecomposition jordan_decompose(const GramLattice& l, long p) { return jordan_decompose(to_rational(l.gram()), p); }

int len_p(const GramLattice& l, long p) {
  auto j = jordan_decompose(l, p);
  return j.blocks.back().scale - j.blocks.front().scale + 1;
}

bool is_padically_squarefree(const GramLattice& l, long p) {
  for (auto& b : jordan_decompose(l, p).blocks)
    if (b.scale >= 2) return false;
  return true;
}

bool is_squarefree(const GramLattice& l) {
  for (long p : prime_divisors(determinant(l)))
    if (!is_padically_squarefree(l, p)) return false;
  return true;
}

bool is_strongly_primitive(const GramLattice& l) {
  if (!is_squarefree(l)) return false;
  for (long p : prime_divisors(determinant(l))) {
    int r0 = 0, r1 = 0;
    for (auto& b : jordan_decompose(l, p).blocks) (b.scale == 0 ? r0 : r1) += b.rank;
    if (r0 < r1) return false;
  }
  return true;
}

}  // namespace scl

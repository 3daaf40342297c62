#include "scl/lattice.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>

namespace scl {

GramLattice::GramLattice(IntMatrix gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw std::invalid_argument("gram matrix must be square");
  if (!is_symmetric(gram_)) throw std::invalid_argument("gram matrix must be symmetric");
}

GramLattice GramLattice::identity(int n) { return GramLattice(IntMatrix::identity(n)); }

GramLattice GramLattice::diagonal(const std::vector<long>& d) {
  IntMatrix g(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) g(i, i) = d[i];
  return GramLattice(g);
}

bool is_symmetric(const IntMatrix& m) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < i; ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

bool is_positive_definite(const IntMatrix& m) {
  // Leading principal minors.
  for (int k = 1; k <= m.rows(); ++k) {
    IntMatrix s(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) s(i, j) = m(i, j);
    if (determinant(s) <= 0) return false;
  }
  return true;
}

Int determinant(const GramLattice& l) { return determinant(l.gram()); }

RatMatrix dual(const GramLattice& l) { return inverse(to_rational(l.gram())); }

Int content(const IntMatrix& m) {
  Int g = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m(i, j).get_mpz_t());
  return g;
}

bool is_primitive(const GramLattice& l) { return content(l.gram()) == 1; }

bool is_even(const GramLattice& l) {
  for (int i = 0; i < l.dim(); ++i)
    if (mpz_odd_p(l(i, i).get_mpz_t())) return false;
  return true;
}

GramLattice rescale_primitive(const IntMatrix& gram) {
  Int g = content(gram);
  if (g == 0) throw std::invalid_argument("rescale_primitive: zero matrix");
  IntMatrix out = gram;
  for (int i = 0; i < out.rows(); ++i)
    for (int j = 0; j < out.cols(); ++j) mpz_divexact(out(i, j).get_mpz_t(), out(i, j).get_mpz_t(), g.get_mpz_t());
  return GramLattice(out);
}

GramLattice rescale_primitive(const RatMatrix& gram) {
  Int den = 1;
  for (int i = 0; i < gram.rows(); ++i)
    for (int j = 0; j < gram.cols(); ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), gram(i, j).get_den_mpz_t());
  IntMatrix m(gram.rows(), gram.cols());
  for (int i = 0; i < gram.rows(); ++i)
    for (int j = 0; j < gram.cols(); ++j) {
      Rat x = gram(i, j) * den;
      m(i, j) = x.get_num();
    }
  return rescale_primitive(m);
}

GramLattice span_rescaled(const GramLattice& l, const RatMatrix& rows) {
  RatMatrix b = hermite_basis(rows);
  if (b.rows() != l.dim()) throw std::invalid_argument("span_rescaled: generators do not span a full lattice");
  return rescale_primitive(congruent(b, to_rational(l.gram())));
}

GramLattice partial_dual(const GramLattice& l, long p) {
  Int d = determinant(l);
  Int m = strip(d, p);
  if (m == d) return l;
  int n = l.dim();
  RatMatrix inv = dual(l);
  RatMatrix gens(2 * n, n);
  for (int i = 0; i < n; ++i) {
    gens(i, i) = 1;
    for (int j = 0; j < n; ++j) gens(n + i, j) = inv(i, j) * m;
  }
  return span_rescaled(l, gens);
}

IntMatrix sublattice_basis(int n, long p, const std::vector<std::vector<long>>& subspace) {
  auto w = span_mod(subspace, p);
  IntMatrix gens(static_cast<int>(w.size()) + n, n);
  for (size_t i = 0; i < w.size(); ++i) {
    if (static_cast<int>(w[i].size()) != n) throw std::invalid_argument("subspace vector of wrong length");
    for (int j = 0; j < n; ++j) gens(i, j) = w[i][j];
  }
  for (int i = 0; i < n; ++i) gens(static_cast<int>(w.size()) + i, i) = p;
  return hermite_basis(gens);
}

GramLattice sublattice_from_fp_subspace(const GramLattice& l, long p, const std::vector<std::vector<long>>& subspace) {
  return GramLattice(congruent(sublattice_basis(l.dim(), p, subspace), l.gram()));
}

namespace {

// Projective enumeration of kernel vectors v (mod p) with v G v^T = 0 mod p^2 (mod 2p^2 when even).
std::optional<std::vector<long>> isotropic_kernel_vector(const IntMatrix& gram, long p, bool even) {
  auto ker = left_kernel_mod(gram, p);
  int k = static_cast<int>(ker.size());
  if (k == 0) return std::nullopt;
  int n = gram.rows();
  long mod = p * p * (even ? 2 : 1);
  std::vector<std::vector<long>> g(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g[i][j] = mpz_fdiv_ui(gram(i, j).get_mpz_t(), mod);
  std::vector<long> coef(k, 0), v(n);
  // The first nonzero coefficient is 1.
  for (int lead = 0; lead < k; ++lead) {
    std::fill(coef.begin(), coef.end(), 0);
    coef[lead] = 1;
    while (true) {
      for (int j = 0; j < n; ++j) {
        long s = 0;
        for (int t = lead; t < k; ++t) s = (s + coef[t] * ker[t][j]) % p;
        v[j] = s;
      }
      __int128 q = 0;
      for (int i = 0; i < n; ++i) {
        if (!v[i]) continue;
        long row = 0;
        for (int j = 0; j < n; ++j) row = (row + g[i][j] * v[j]) % mod;
        q += static_cast<__int128>(v[i]) * row;
      }
      if (q % mod == 0) return v;
      int t = k - 1;
      while (t > lead && coef[t] == p - 1) coef[t--] = 0;
      if (t == lead) break;
      ++coef[t];
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<IntMatrix> overlattice_step(const IntMatrix& gram, bool even) {
  Int d = determinant(gram);
  for (auto& [p, e] : factor(d)) {
    if (e < 2) continue;
    if (!p.fits_slong_p() || p > 3037000499L) throw std::runtime_error("overlattice_step: prime too large");
    long pp = p.get_si();
    auto v = isotropic_kernel_vector(gram, pp, even);
    if (!v) continue;
    int n = gram.rows();
    RatMatrix gens(n + 1, n);
    for (int i = 0; i < n; ++i) gens(i, i) = 1;
    for (int j = 0; j < n; ++j) gens(n, j) = Rat((*v)[j], pp);
    RatMatrix b = hermite_basis(gens);
    RatMatrix g = congruent(b, to_rational(gram));
    IntMatrix out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (g(i, j).get_den() != 1) throw std::logic_error("overlattice_step: result not integral");
        out(i, j) = g(i, j).get_num();
      }
    return out;
  }
  return std::nullopt;
}

bool admits_overlattice(const IntMatrix& gram, bool even) { return overlattice_step(gram, even).has_value(); }

bool is_maximal(const GramLattice& l) { return !admits_overlattice(l.gram(), false); }

bool is_qf_maximal(const GramLattice& l) {
  if (is_even(l)) return !admits_overlattice(l.gram(), true);
  IntMatrix g2 = l.gram();
  for (int i = 0; i < g2.rows(); ++i)
    for (int j = 0; j < g2.cols(); ++j) g2(i, j) *= 2;
  return !admits_overlattice(g2, true);
}

GramLattice lll_reduce(const GramLattice& l) { return GramLattice(lll_gram(l.gram()).gram); }

GramLattice read_gram(std::istream& in) {
  int n;
  if (!(in >> n) || n <= 0) throw std::invalid_argument("gram file: expected dimension on first line");
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok)) throw std::invalid_argument("gram file: too few entries");
      if (g(i, j).set_str(tok, 10) != 0) throw std::invalid_argument("gram file: bad integer '" + tok + "'");
    }
  GramLattice l(g);
  if (!is_positive_definite(g)) throw std::invalid_argument("gram file: matrix is not positive definite");
  return l;
}

std::string write_gram(const GramLattice& l) {
  std::ostringstream os;
  os << l.dim() << "\n" << format(l.gram());
  return os.str();
}

}  // namespace scl

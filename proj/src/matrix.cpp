#include "scl/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace scl {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

IntMatrix congruent(const IntMatrix& b, const IntMatrix& g) { return b * g * b.transpose(); }
RatMatrix congruent(const RatMatrix& b, const RatMatrix& g) { return b * g * b.transpose(); }

Int determinant(const IntMatrix& m_in) {
  // Bareiss fraction-free elimination.
  int n = m_in.rows();
  if (n == 0) return 1;
  IntMatrix m = m_in;
  int sign = 1;
  Int prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m(k, k) == 0) {
      int s = k + 1;
      while (s < n && m(s, k) == 0) ++s;
      if (s == n) return 0;
      m.swap_rows(k, s);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rat determinant(const RatMatrix& m_in) {
  int n = m_in.rows();
  RatMatrix m = m_in;
  Rat d = 1;
  for (int k = 0; k < n; ++k) {
    int s = k;
    while (s < n && m(s, k) == 0) ++s;
    if (s == n) return 0;
    if (s != k) {
      m.swap_rows(k, s);
      d = -d;
    }
    d *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

RatMatrix inverse(const RatMatrix& m_in) {
  int n = m_in.rows();
  RatMatrix m = m_in, inv = RatMatrix::identity(n);
  for (int k = 0; k < n; ++k) {
    int s = k;
    while (s < n && m(s, k) == 0) ++s;
    if (s == n) throw std::invalid_argument("inverse: singular matrix");
    m.swap_rows(k, s);
    inv.swap_rows(k, s);
    Rat piv = m(k, k);
    for (int j = 0; j < n; ++j) {
      m(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      Rat f = m(i, k);
      for (int j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

IntMatrix hermite_basis(const IntMatrix& gens) {
  IntMatrix a = gens;
  int rows = a.rows(), cols = a.cols();
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    // gcd-combine column c into row r
    for (int i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      if (a(r, c) == 0) {
        a.swap_rows(r, i);
        continue;
      }
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a(r, c).get_mpz_t(), a(i, c).get_mpz_t());
      Int u = a(r, c) / g, v = a(i, c) / g;
      for (int j = c; j < cols; ++j) {
        Int x = a(r, j), y = a(i, j);
        a(r, j) = s * x + t * y;
        a(i, j) = -v * x + u * y;
      }
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (int j = c; j < cols; ++j) a(r, j) = -a(r, j);
    for (int i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
      if (q != 0)
        for (int j = c; j < cols; ++j) a(i, j) -= q * a(r, j);
    }
    ++r;
  }
  IntMatrix out(r, cols);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

RatMatrix hermite_basis(const RatMatrix& gens) {
  Int den = 1;
  for (int i = 0; i < gens.rows(); ++i)
    for (int j = 0; j < gens.cols(); ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), gens(i, j).get_den_mpz_t());
  IntMatrix a(gens.rows(), gens.cols());
  for (int i = 0; i < gens.rows(); ++i)
    for (int j = 0; j < gens.cols(); ++j) {
      Rat x = gens(i, j) * den;
      a(i, j) = x.get_num();
    }
  IntMatrix h = hermite_basis(a);
  RatMatrix out(h.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j) {
      out(i, j) = Rat(h(i, j), den);
      out(i, j).canonicalize();
    }
  return out;
}

namespace {

Int round_nearest(const Rat& x) {
  Rat y = x + Rat(1, 2);
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  return q;
}

struct LllState {
  int n;
  IntMatrix g, h;
  RatMatrix mu;
  std::vector<Rat> b;

  void reduce(int k, int l) {
    if (abs(mu(k, l)) * 2 <= 1) return;
    Int q = round_nearest(mu(k, l));
    for (int j = 0; j < n; ++j) h(k, j) -= q * h(l, j);
    // b_k <- b_k - q b_l on the Gram matrix
    Int gll = g(l, l), gkl = g(k, l);
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      g(k, j) -= q * g(l, j);
      g(j, k) = g(k, j);
    }
    g(k, k) = g(k, k) - 2 * q * gkl + q * q * gll;
    mu(k, l) -= q;
    for (int i = 0; i < l; ++i) mu(k, i) -= q * mu(l, i);
  }

  void swap(int k, int kmax) {
    g.swap_rows(k, k - 1);
    for (int i = 0; i < n; ++i) std::swap(g(i, k), g(i, k - 1));
    h.swap_rows(k, k - 1);
    for (int j = 0; j < k - 1; ++j) std::swap(mu(k, j), mu(k - 1, j));
    Rat m = mu(k, k - 1);
    Rat bn = b[k] + m * m * b[k - 1];
    mu(k, k - 1) = m * b[k - 1] / bn;
    b[k] = b[k - 1] * b[k] / bn;
    b[k - 1] = bn;
    for (int i = k + 1; i <= kmax; ++i) {
      Rat t = mu(i, k);
      mu(i, k) = mu(i, k - 1) - m * t;
      mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
    }
  }
};

}  // namespace

LllResult lll_gram(const IntMatrix& gram) {
  int n = gram.rows();
  LllState s{n, gram, IntMatrix::identity(n), RatMatrix(n, n), std::vector<Rat>(n)};
  if (n <= 1) return {s.g, s.h};
  s.b[0] = s.g(0, 0);
  int k = 1, kmax = 0;
  const Rat delta(3, 4);
  while (k < n) {
    if (k > kmax) {
      kmax = k;
      for (int j = 0; j < k; ++j) {
        Rat v = s.g(k, j);
        for (int i = 0; i < j; ++i) v -= s.mu(j, i) * s.mu(k, i) * s.b[i];
        s.mu(k, j) = v / s.b[j];
      }
      Rat v = s.g(k, k);
      for (int j = 0; j < k; ++j) v -= s.mu(k, j) * s.mu(k, j) * s.b[j];
      s.b[k] = v;
      if (v <= 0) throw std::invalid_argument("lll_gram: matrix not positive definite");
    }
    s.reduce(k, k - 1);
    if (s.b[k] < (delta - s.mu(k, k - 1) * s.mu(k, k - 1)) * s.b[k - 1]) {
      s.swap(k, kmax);
      if (k > 1) --k;
    } else {
      for (int l = k - 2; l >= 0; --l) s.reduce(k, l);
      ++k;
    }
  }
  return {s.g, s.h};
}

namespace {

long mod(const Int& a, long p) { return mpz_fdiv_ui(a.get_mpz_t(), p); }

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = a % p;
  while (nr) {
    long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return (t % p + p) % p;
}

}  // namespace

std::vector<std::vector<long>> span_mod(std::vector<std::vector<long>> v, long p) {
  std::vector<std::vector<long>> out;
  if (v.empty()) return out;
  int cols = static_cast<int>(v[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(v.size()); ++c) {
    int s = r;
    while (s < static_cast<int>(v.size()) && v[s][c] % p == 0) ++s;
    if (s == static_cast<int>(v.size())) continue;
    std::swap(v[r], v[s]);
    long iv = inv_mod(v[r][c], p);
    for (auto& x : v[r]) x = (x % p * iv) % p;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      if (i == r || v[i][c] % p == 0) continue;
      long f = v[i][c] % p;
      for (int j = 0; j < cols; ++j) v[i][j] = ((v[i][j] - f * v[r][j]) % p + p) % p;
    }
    ++r;
  }
  v.resize(r);
  return v;
}

std::vector<std::vector<long>> left_kernel_mod(const IntMatrix& m, long p) {
  // Row-reduce [M | I]; rows whose M part vanishes give the kernel.
  int rows = m.rows(), cols = m.cols();
  std::vector<std::vector<long>> a(rows, std::vector<long>(cols + rows, 0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a[i][j] = mod(m(i, j), p);
    a[i][cols + i] = 1;
  }
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int s = r;
    while (s < rows && a[s][c] == 0) ++s;
    if (s == rows) continue;
    std::swap(a[r], a[s]);
    long iv = inv_mod(a[r][c], p);
    for (auto& x : a[r]) x = x * iv % p;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      long f = a[i][c];
      for (int j = 0; j < cols + rows; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
    }
    ++r;
  }
  std::vector<std::vector<long>> out;
  for (int i = r; i < rows; ++i) out.emplace_back(a[i].begin() + cols, a[i].end());
  return span_mod(out, p);
}

std::string format(const IntMatrix& m) {
  std::ostringstream os;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).get_str();
    os << "\n";
  }
  return os.str();
}

}  // namespace scl

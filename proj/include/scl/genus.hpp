#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "scl/local.hpp"

namespace scl {

// (p^scale)^{eps rank}, with type and oddity at p = 2 (type I when odd == true).
struct Constituent {
  int scale = 0;
  int rank = 0;
  int eps = 1;
  bool odd = false;
  int oddity = 0;

  auto operator<=>(const Constituent&) const = default;
};

struct LocalSymbol {
  long p = 2;
  std::vector<Constituent> cs;  // increasing scale, positive ranks, scale 0 included

  auto operator<=>(const LocalSymbol&) const = default;

  int rank() const;
  int valuation() const;  // v_p(det)
  int min_scale() const;
  int max_scale() const;
  const Constituent* at(int scale) const;
};

struct GenusSymbol {
  int n = 0;
  std::vector<LocalSymbol> locals;  // 2 first, then odd primes dividing det in increasing order

  auto operator<=>(const GenusSymbol&) const = default;

  const LocalSymbol* local(long p) const;
  // The stored local symbol, or the unimodular one when p does not divide det (odd p).
  LocalSymbol local_at(long p) const;
};

class SymbolError : public std::runtime_error {
 public:
  SymbolError(const std::string& what, size_t pos) : std::runtime_error(what), pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

// Local data of a single Jordan decomposition.
LocalSymbol local_symbol(const JordanDecomposition& j);
LocalSymbol local_symbol(const GramLattice& l, long p);

GenusSymbol symbol_from_lattice(const GramLattice& l);

// Whether a single p^i-modular 2-adic constituent with these invariants exists.
bool realizable_2adic(int rank, int eps, bool odd, int oddity);

LocalSymbol canonical_2adic(const LocalSymbol& s);
LocalSymbol canonical_local(const LocalSymbol& s);
GenusSymbol canonical(const GenusSymbol& s);
bool symbols_equal(const GenusSymbol& a, const GenusSymbol& b);
bool locals_equal(const LocalSymbol& a, const LocalSymbol& b);

Int determinant(const GenusSymbol& s);
bool is_even(const GenusSymbol& s);
bool is_primitive(const GenusSymbol& s);
bool is_squarefree(const GenusSymbol& s);

// Oddity relation term of an odd-prime local symbol (its p-excess) or of the 2-adic symbol.
int p_excess(const LocalSymbol& s);
int two_signature(const LocalSymbol& s);

bool is_valid_genus_symbol(const GenusSymbol& s);
// Reason for invalidity, empty when valid.
std::string validity_problem(const GenusSymbol& s);

// Symbol of the lattice with form multiplied by p^k (k may be negative).
GenusSymbol scale_symbol(const GenusSymbol& s, long p, int k);
GenusSymbol rescale_symbol(const GenusSymbol& s);

struct SpaceInvariants {
  int n = 0;
  Int det_class;           // positive squarefree representative
  std::set<long> hasse_minus;  // primes with Hasse invariant -1
  auto operator<=>(const SpaceInvariants&) const = default;
};
SpaceInvariants space_invariants(const GenusSymbol& s);
// Diagonal Q_p-form (entries) with the local invariants of one local symbol.
std::vector<Rat> local_diagonal(const LocalSymbol& s);

// Square-free local symbols of rank n with nonempty scale 0 and nonempty scale 1.
// At p = 2 the symbols with only scale 0 are included as well.
std::vector<LocalSymbol> enumerate_squarefree_local(long p, int n);

// Text form used in the tables, e.g. "II_{8,0}(2_0^{+4}4^{+2})".
GenusSymbol parse_symbol(const std::string& text);
std::string print_symbol(const GenusSymbol& s);
// print_symbol of the canonical rescaled symbol; used as a dedup key.
std::string symbol_key(const GenusSymbol& s);

std::string describe(const LocalSymbol& s);

}  // namespace scl

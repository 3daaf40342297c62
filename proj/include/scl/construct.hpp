#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "scl/genus.hpp"

namespace scl {

int hilbert_symbol(const Rat& a, const Rat& b, long p);
int hasse_invariant(const std::vector<Rat>& diagonal, long p);
int hasse_invariant(const std::vector<Int>& diagonal, long p);

// Positive diagonal form <a_1, ..., a_n> with the given rational invariants.
std::vector<Int> find_diagonal_form(const SpaceInvariants& target);

// Repeated prime-index enlargement until none is possible. even=true keeps the
// lattice even (used for integrality of x -> beta(x,x)/2 on a doubled form).
IntMatrix maximal_overlattice(const IntMatrix& gram, bool even = false);
GramLattice maximal_overlattice(const GramLattice& l);

struct ConstructOptions {
  std::uint64_t seed = 1;
  long attempts_per_unit = 10;  // retry budget is attempts_per_unit * n * p before the sweep
};

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Works on the doubled Gram matrix g2 = 2*beta (even, integral). Returns the doubled Gram
// matrix of a sublattice e_p L <= L' <= L whose p-adic symbol (of beta) equals target.
IntMatrix sublattice_with_local_symbol(const IntMatrix& g2, long p, const LocalSymbol& target, std::mt19937_64& rng,
                                       const ConstructOptions& opt = {});

GramLattice construct_representative(const GenusSymbol& sym, const ConstructOptions& opt = {});

// Deterministic seed derived from a string (FNV-1a).
std::uint64_t seed_from_string(const std::string& s, std::uint64_t salt = 0);

// Random lattices pL <= L' <= L; dims of the subspace chosen by the caller.
std::vector<std::vector<long>> random_subspace(int n, int k, long p, std::mt19937_64& rng);

}  // namespace scl

#pragma once

#include <optional>
#include <random>
#include <vector>

#include "scl/construct.hpp"
#include "scl/genus.hpp"

namespace scl {

// rescale(L ∩ pL^#).
GramLattice watson_map(const GramLattice& l, long p);

// The same map on genus symbols: the scale-0 part moves to scale 2, everything is then
// shifted down to a primitive symbol.
GenusSymbol watson_symbol(const GenusSymbol& sym, long p);

// All canonical symbols g with watson_symbol(g, p) = sym, ordered by determinant then text.
std::vector<GenusSymbol> watson_preimage_symbols(const GenusSymbol& sym, long p);

// A lattice with symbol target obtained as rescale(L') for a sublattice L' of l of p-power index.
// target must be a Watson preimage of the genus of l at p.
GramLattice realize_preimage(const GramLattice& l, long p, const GenusSymbol& target, std::mt19937_64& rng,
                             const ConstructOptions& opt = {});

// Representative of any valid primitive symbol: square-free symbols are built directly,
// the others by descending along Watson maps and realizing the preimages back up.
GramLattice construct_any(const GenusSymbol& sym, const ConstructOptions& opt = {});

}  // namespace scl

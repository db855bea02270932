#pragma once

// Simplicial homology over GF(2) by sparse column reduction of boundary
// matrices.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cracklelab/simplicial_complex.hpp"

namespace cracklelab {

using BettiVector = std::vector<std::int64_t>;

/// Rank over GF(2) of ∂_k: C_k → C_{k−1}. Zero for empty dimensions and
/// for k outside [1, max_dim].
std::size_t boundary_rank(const SimplicialComplex& complex, int k);

/// β_0..β_max_dim with β_k = c_k − rank ∂_k − rank ∂_{k+1}. Empty for the
/// empty complex. Requires a canonical, downward-closed complex.
BettiVector betti(const SimplicialComplex& complex);

/// Components of the 1-skeleton among the vertices present in the complex.
std::size_t connected_components(const SimplicialComplex& complex);

std::int64_t euler_characteristic(const SimplicialComplex& complex);

/// "1,0,0"
std::string format_betti(const BettiVector& betti);

}  // namespace cracklelab

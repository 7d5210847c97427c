#pragma once

#include <string>

#include "uchi/presentation.hpp"

namespace uchi {

// Chevalley-basis presentations with fixed sign conventions, built from the
// defining matrix realization. Basis order: negative root vectors, Cartan
// (plus central) elements, positive root vectors.
//
//   sl(k):  p must not divide k; rank k-1
//   gl(k):  p must not divide k; rank k (adds the identity I to the Cartan)
//   sp4:    any odd p; rank 2
//   torus:  any odd p; rank = dim
LiePresentation make_catalog_algebra(const std::string& family, std::uint32_t size,
                                     std::uint32_t p);

// g1 + g2 with block structure constants, block p-map, block Gram; the rank
// adds and the Cartan sets concatenate.
LiePresentation direct_sum(const LiePresentation& a, const LiePresentation& b);

// "sl2", "gl3", "sp4", "torus2", or sums like "sl2+torus1".
LiePresentation algebra_from_name(const std::string& name, std::uint32_t p);

}  // namespace uchi

#pragma once

#include <string>

#include "uchi/presentation.hpp"

namespace uchi {

// Canonical JSON document:
//   {p, n, labels, brackets: [[i, j, [[k, c], ...]], ...] (i < j, nonempty),
//    pmap: [[i, [[k, c], ...]], ...] (nonzero only), gram, rank, cartan}
// All indices 0-based; export -> import -> export is byte-identical.
std::string presentation_to_json(const LiePresentation& g);
LiePresentation presentation_from_json(const std::string& text);

}  // namespace uchi

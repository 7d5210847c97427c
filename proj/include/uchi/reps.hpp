#pragma once

#include <string>
#include <variant>
#include <vector>

#include "uchi/centers.hpp"
#include "uchi/presentation.hpp"

namespace uchi {

using ChiSpec = std::variant<LinearForm, JordanPair>;

// Resolve a character specification against a catalog algebra:
//   named representatives: e, h, zero, regnilp, subregnilp, regss,
//                          mixed:<levi>:<nilp>  (nilp: zero | regnilp)
//   inline JSON: {"coeffs": [...]} or {"chi_s": [...], "chi_n": [...]}
// Jordan pairs are certified before they are returned.
ChiSpec parse_chi(const LiePresentation& g, const std::string& spec);

// The shipped representative catalog (versioned JSON data); exposed for
// inspection and the CLI.
const std::string& representative_catalog_json();

// Representative labels a sweep runs by default for this algebra.
std::vector<std::string> default_sweep_labels(const LiePresentation& g);

// Flatten a ChiSpec to the character it denotes (chi_s + chi_n for pairs).
LinearForm chi_of(const LiePresentation& g, const ChiSpec& spec);

std::vector<RepSpec> resolve_reps(const LiePresentation& g,
                                  const std::vector<std::string>& labels);

// Resolve labels and sweep; representative-resolution failures land in the
// outcome's error list instead of aborting the sweep.
SweepOutcome sweep_by_labels(const LiePresentation& g, const std::vector<std::string>& labels,
                             const CenterOptions& opts = {}, unsigned threads = 1);

}  // namespace uchi

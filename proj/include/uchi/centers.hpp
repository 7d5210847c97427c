#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "uchi/enveloping.hpp"
#include "uchi/presentation.hpp"

namespace uchi {

struct CenterOptions {
  std::uint64_t matrix_budget = 59049;     // cap for full p^n x p^n matrices (3^10)
  std::uint64_t enum_budget = 20000000;    // cap for monomial enumeration (toral path)
  bool force_dense = false;                // refuse the toral reduction
  bool store_basis = false;
  KernelBackend backend = KernelBackend::Sparse;
};

struct CenterComputation {
  std::uint64_t dim = 0;
  // center basis in the PBW monomial coding of the computing context
  std::optional<std::vector<TermMap>> basis;
};

// dim of the intersection of ker ad_chi(x_i) over all basis generators.
// Pipeline: toral reduction to the weight-zero monomial span, restriction of
// the non-toral operators, iterative stacked kernel. Falls back to full
// matrices when no Cartan indices are designated.
CenterComputation center_dimension(const LiePresentation& g, const LinearForm& chi,
                                   const CenterOptions& opts = {});

// Independent oracle route: dense Gaussian elimination on the physically
// stacked ad matrices, no toral reduction. Capped at p^n <= 3^9.
CenterComputation center_dimension_dense(const LiePresentation& g, const LinearForm& chi);

struct CenterReport {
  std::string label;
  LinearForm chi;
  std::string algebra;  // catalog name or "custom"
  std::uint32_t p = 0;
  std::uint32_t dim_g = 0;
  std::uint32_t rank = 0;
  std::uint32_t dim_stab = 0;
  bool regular = false;
  bool surjective_predicted = false;  // regular => surjective, main theorem
  std::uint64_t dim_center = 0;
  std::uint64_t p_to_ell = 0;
  bool consistent = false;  // dim_center = p^ell  <=>  regular
  std::optional<std::vector<TermMap>> basis;
  std::string diagnostic;  // filled on a consistency alert
  std::int64_t elapsed_ms = 0;
};

CenterReport center_report(const LiePresentation& g, const LinearForm& chi,
                           const std::string& label = "chi", const CenterOptions& opts = {});

struct KWReport {
  std::uint32_t d = 0;  // (dim g - dim g_{chi_s}) / 2
  std::uint64_t dim_center_g = 0;
  std::uint64_t dim_center_levi = 0;
  std::uint32_t dim_levi = 0;
  bool match = false;       // dim Z_chi(g) = dim Z_{chi_n}(g_{chi_s})
  bool size_check = false;  // 2d + dim g_{chi_s} = dim g
};

KWReport kw_check(const LiePresentation& g, const JordanPair& jp,
                  const CenterOptions& opts = {});

// dim Z_chi(g) = dim Z_{chi'}(g) with the central part of chi zeroed.
bool support_lemma_check(const LiePresentation& g, const LinearForm& chi,
                         const CenterOptions& opts = {});

struct RepSpec {
  std::string label;
  std::variant<LinearForm, JordanPair> chi;
};

struct SweepOutcome {
  std::vector<CenterReport> reports;            // sorted by label
  std::vector<std::pair<std::string, std::string>> errors;  // (label, message)
  bool all_consistent = true;
};

SweepOutcome theorem_sweep(const LiePresentation& g, const std::vector<RepSpec>& reps,
                           const CenterOptions& opts = {}, unsigned threads = 1);

struct LineProbe {
  std::vector<std::pair<fp_t, std::uint64_t>> dims;  // (t, dim Z_{chi0 + t psi})
  bool base_geq_min = false;  // dim at t=0 >= min over t != 0
  bool base_geq_all = false;  // dim at t=0 >= every t != 0
  // The topological statement lives over the algebraic closure; F_p points
  // give one-directional evidence only.
  std::string caveat = "semicontinuity checked on F_p-points only";
};

LineProbe line_probe(const LiePresentation& g, const LinearForm& chi0, const LinearForm& psi,
                     const CenterOptions& opts = {});

struct CensusMode {
  bool exhaustive = true;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

struct CensusReport {
  std::map<std::uint32_t, std::uint64_t> histogram;  // dim g_chi -> count
  CensusMode mode;
  std::uint64_t total = 0;
  bool min_is_rank = false;
  bool parity_ok = false;  // all observed dims = rank (mod 2)
};

CensusReport census(const LiePresentation& g, const CensusMode& mode,
                    std::uint64_t exhaustive_cap = 10000000);

// center_dimension(g1 + g2, chi) = product of the factor center dimensions
bool tensor_factor_check(const LiePresentation& g1, const LiePresentation& g2,
                         const LinearForm& chi_sum, const CenterOptions& opts = {});

// report serialization; columns: label,p,algebra,dim_g,rank,dim_stab,regular,
// dim_center,p_to_ell,consistent[,elapsed_ms]
std::string reports_to_csv(const std::vector<CenterReport>& reports, bool include_timing = true);
std::string reports_to_json(const std::vector<CenterReport>& reports, bool include_timing = true);
std::string census_to_csv(const CensusReport& report);
std::string probe_to_csv(const LineProbe& probe);

}  // namespace uchi

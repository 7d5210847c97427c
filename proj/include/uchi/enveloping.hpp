#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "uchi/presentation.hpp"

namespace uchi {

// PBW exponent vectors are packed into 64 bits, one field per basis index
// with bit_width(p-1) bits each, highest basis index in the lowest bits so
// that numeric order on codes equals lexicographic order on exponents.
using mono_t = std::uint64_t;

// Coefficient map of a straightened element; keys iterate in lexicographic
// monomial order, no zero values are stored.
using TermMap = std::map<mono_t, fp_t>;

class UchiContext;

struct UchiElement {
  const UchiContext* ctx = nullptr;
  TermMap terms;

  bool is_zero() const { return terms.empty(); }
  bool operator==(const UchiElement& o) const { return terms == o.terms; }
};

// Shared straightening state for one (g, chi): the packing layout, the
// substitution x_i^p -> x_i^{[p]} + chi(x_i)^p, and memo tables for the
// swap products of generator powers.
class UchiContext {
 public:
  UchiContext(const LiePresentation& g, LinearForm chi, std::uint64_t matrix_budget = 59049);

  const LiePresentation& g() const { return *g_; }
  const LinearForm& chi() const { return chi_; }
  std::uint64_t matrix_budget() const { return matrix_budget_; }
  // p^n, saturating at 2^63 to keep budget comparisons safe
  std::uint64_t monomial_count() const { return nmono_; }

  mono_t encode(const std::vector<std::uint8_t>& exps) const;
  std::vector<std::uint8_t> decode(mono_t code) const;
  std::uint32_t exp_at(mono_t code, std::uint32_t i) const {
    return static_cast<std::uint32_t>((code >> shift_[i]) & field_mask_);
  }
  std::uint32_t total_degree(mono_t code) const;
  // lexicographic column index of a monomial (requires p^n within 2^63)
  std::uint64_t lex_index(mono_t code) const;
  mono_t from_lex_index(std::uint64_t idx) const;

  UchiElement zero() const { return UchiElement{this, {}}; }
  UchiElement one() const;
  UchiElement monomial(mono_t code, fp_t coeff = 1) const;
  UchiElement generator(std::uint32_t i) const;

  UchiElement add(const UchiElement& u, const UchiElement& v) const;
  UchiElement scale(const UchiElement& u, fp_t s) const;
  UchiElement multiply(const UchiElement& u, const UchiElement& v) const;
  // x_i * u - u * x_i
  UchiElement ad_apply(std::uint32_t i, const UchiElement& u) const;

  std::uint32_t max_total_degree(const UchiElement& u) const;

  void clear_memos() const;
  std::string to_json(const UchiElement& u) const;  // [[[a_1..a_n], c], ...]

  // straightening primitives (canonical element * generator and mirror)
  TermMap mul_mono_gen(mono_t a, std::uint32_t i) const;
  TermMap prepend_mono_gen(mono_t a, std::uint32_t i) const;
  TermMap mul_mono_mono(mono_t a, mono_t b) const;

 private:
  const LiePresentation* g_;
  LinearForm chi_;
  std::uint64_t matrix_budget_;
  std::uint32_t bits_;
  std::uint64_t field_mask_;
  std::vector<std::uint32_t> shift_;      // shift of basis index i
  std::vector<mono_t> step_;              // 1 << shift_[i]
  std::vector<mono_t> mask_above_;        // fields with index > i
  std::vector<mono_t> mask_below_;        // fields with index < i
  std::vector<fp_t> chi_pow_p_;           // chi(x_i)^p
  std::uint64_t nmono_;

  mutable std::vector<std::unordered_map<mono_t, TermMap>> append_suffix_memo_;
  mutable std::vector<std::unordered_map<mono_t, TermMap>> prepend_prefix_memo_;

  void add_term(TermMap& m, mono_t code, fp_t c) const;
  void add_scaled(TermMap& dst, const TermMap& src, fp_t s) const;
  TermMap mul_terms_gen(const TermMap& e, std::uint32_t i) const;
  TermMap prepend_terms_gen(const TermMap& e, std::uint32_t i) const;
  const TermMap& append_suffix(mono_t high, std::uint32_t i) const;
  const TermMap& prepend_prefix(mono_t low, std::uint32_t i) const;
};

// The matrix of ad_chi(x_i) in the PBW basis, columns indexed by the
// lexicographic monomial enumeration. Signals when p^n exceeds the budget.
SparseMatFp ad_chi_matrix(const UchiContext& ctx, std::uint32_t i);

struct WeightZeroSpan {
  std::vector<mono_t> codes;  // sorted lexicographically
  std::uint64_t dim = 0;
};

// Monomials of weight zero at every Cartan generator; this spans the joint
// kernel of the toral ad operators exactly (their action is diagonal with
// eigenvalue equal to the monomial weight, independent of chi).
WeightZeroSpan weight_zero_subspace(const UchiContext& ctx, std::uint64_t enum_budget = 20000000);

struct PCenterCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

// Assert x_i^p = x_i^{[p]} + chi(x_i)^p for every basis generator.
PCenterCheck p_center_relation_check(const UchiContext& ctx);

}  // namespace uchi
